"""Standalone re-derivation of the static selection series.

Deliberately avoids importing the package: it reads the catalog JSON with
the stdlib and re-implements ranking with plain dict/loop arithmetic, so
the harness and this module only agree if both encode the same rules.
"""
from __future__ import annotations

import json
from pathlib import Path

EPSILON = 1e-6
W_BENEFIT, W_COST = 0.6, 0.4
RHO = 1.0


def _entries(catalog_path: Path, result: str) -> list[dict]:
    doc = json.loads(catalog_path.read_text(encoding="utf-8"))
    kept = []
    for resp in doc["responses"]:
        if not resp.get("general") and result not in resp.get("applies_to", ()):
            continue
        cost = resp["cost"]
        bene = resp["benefit"]
        kept.append(
            {
                "idx": resp["index"],
                "general": bool(resp.get("general")),
                "place": resp.get("place", "destination"),
                "terminal": bool(resp.get("terminal")),
                "cost": cost["w_a"] * cost["a"] + cost["w_perf"] * cost["perf"],
                "benefit": (
                    bene["w_s"] * bene["s"] + bene["w_f"] * bene["f"]
                    + bene["w_o"] * bene["o"] + bene["w_p"] * bene["p"]
                ),
            }
        )
    return kept


def _instances(entries: list[dict], infected: str, affected: str) -> list[dict]:
    out = []
    for e in sorted(entries, key=lambda e: (e["general"], e["idx"])):
        if e["place"] == "both" and infected != affected:
            out.append({**e, "target": infected})
            out.append({**e, "target": affected})
        elif e["place"] == "source":
            out.append({**e, "target": infected})
        else:
            out.append({**e, "target": affected})
    return out


def _eff_cost(c: dict, impact: float) -> float:
    return float(impact) if c["terminal"] else c["cost"]


def _pick(cands: list[dict], impact: float, algo: str) -> dict:
    if algo == "saw":
        bs = [c["benefit"] or EPSILON for c in cands]
        cs = [_eff_cost(c, impact) or EPSILON for c in cands]
        max_b, min_c = max(bs), min(cs)
        prefs = [W_BENEFIT * b / max_b + W_COST * min_c / c for b, c in zip(bs, cs)]
        elig = [i for i, p in enumerate(prefs) if p < RHO * 3.0]
        if not elig:
            elig = list(range(len(cands)))
        best = min(elig, key=lambda i: (-prefs[i], cands[i]["idx"], i))
        return cands[best]
    feasible = [
        (i, c) for i, c in enumerate(cands)
        if not c["terminal"] and c["cost"] < impact
    ]
    if not feasible:
        return next(c for c in cands if c["terminal"])
    if algo == "lp-max":
        key = lambda ic: (-ic[1]["benefit"], ic[1]["idx"], ic[0])
    else:
        key = lambda ic: (ic[1]["cost"], ic[1]["idx"], ic[0])
    return min(feasible, key=key)[1]


def static_series(
    catalog_path: Path,
    result: str,
    infected: str,
    affected: str,
    impact: float,
    algo: str,
) -> list[tuple[int, int, str, float, float]]:
    """(step, index, target, effective cost, benefit) until the terminal."""
    cands = _instances(_entries(catalog_path, result), infected, affected)
    steps = []
    while True:
        c = _pick(cands, impact, algo)
        steps.append(
            (len(steps) + 1, c["idx"], c["target"], _eff_cost(c, impact), c["benefit"])
        )
        cands.remove(c)
        if c["terminal"]:
            return steps
