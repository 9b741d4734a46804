"""JSON file formats: architecture, response catalog, and scenario.

Every document carries ``schema_version`` and a ``kind`` discriminator.
Parsing is strict (unknown enum values, bad levels, duplicate indices and
unresolvable references all raise :class:`SchemaError`), and
``parse -> dump -> parse`` is an identity on the parsed structures.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .engine import Failure, FeedbackVerdict, NewIntrusion, Success
from .model import (
    Asset,
    AssetKind,
    CostVector,
    DomainError,
    EnvironmentTerm,
    ImpactVector,
    IntrusionEvent,
    IntrusionResult,
    Place,
    ResponseSpec,
    StopCondition,
    StopKind,
    VehicleState,
)
from .preconditions import Precondition, PreconditionError

SCHEMA_VERSION = 1

VERDICT_NAMES = ("success", "failure", "new_intrusion")


class SchemaError(DomainError):
    """A document does not conform to the expected schema."""


def data_dir() -> Path:
    """Directory of the packaged data files (catalogs, scenarios, fixtures)."""
    return Path(str(resources.files(__package__) / "data"))


def _require(doc: Mapping[str, Any], key: str, context: str) -> Any:
    if key not in doc:
        raise SchemaError(f"{context}: missing required field {key!r}")
    return doc[key]


def _check_header(doc: Mapping[str, Any], kind: str, context: str) -> None:
    version = _require(doc, "schema_version", context)
    if version != SCHEMA_VERSION:
        raise SchemaError(
            f"{context}: unsupported schema_version {version!r} (expected {SCHEMA_VERSION})"
        )
    actual = _require(doc, "kind", context)
    if actual != kind:
        raise SchemaError(f"{context}: expected kind {kind!r}, got {actual!r}")


def _enum(enum_cls, value: Any, context: str):
    try:
        return enum_cls(value)
    except ValueError:
        valid = ", ".join(m.value for m in enum_cls)
        raise SchemaError(f"{context}: {value!r} is not one of: {valid}") from None


# --------------------------------------------------------------------------
# architecture


def parse_architecture(doc: Mapping[str, Any]) -> dict[str, Asset]:
    _check_header(doc, "architecture", "architecture")
    assets: dict[str, Asset] = {}
    for entry in _require(doc, "assets", "architecture"):
        asset = Asset(
            id=_require(entry, "id", "asset"),
            name=entry.get("name", entry["id"]),
            kind=_enum(AssetKind, _require(entry, "kind", "asset"), "asset.kind"),
        )
        if asset.id in assets:
            raise SchemaError(f"duplicate asset id {asset.id!r}")
        assets[asset.id] = asset
    return assets


def dump_architecture(assets: Mapping[str, Asset]) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "architecture",
        "assets": [
            {"id": a.id, "name": a.name, "kind": a.kind.value}
            for a in assets.values()
        ],
    }


def load_architecture(path: str | Path) -> dict[str, Asset]:
    return parse_architecture(_read_json(path))


# --------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class Catalog:
    name: str
    responses: tuple[ResponseSpec, ...]
    notes: str = ""

    def by_index(self, index: int) -> ResponseSpec:
        for spec in self.responses:
            if spec.index == index:
                return spec
        raise KeyError(index)


def _parse_impact_vector(doc: Mapping[str, Any], context: str) -> ImpactVector:
    try:
        return ImpactVector(
            s=_require(doc, "s", context),
            f=_require(doc, "f", context),
            o=_require(doc, "o", context),
            p=_require(doc, "p", context),
            w_s=doc.get("w_s", 1.0),
            w_f=doc.get("w_f", 1.0),
            w_o=doc.get("w_o", 1.0),
            w_p=doc.get("w_p", 1.0),
        )
    except DomainError as exc:
        raise SchemaError(f"{context}: {exc}") from None


def _parse_cost_vector(doc: Mapping[str, Any], context: str) -> CostVector:
    try:
        return CostVector(
            a=_require(doc, "a", context),
            perf=_require(doc, "perf", context),
            w_a=doc.get("w_a", 1.0),
            w_perf=doc.get("w_perf", 1.0),
        )
    except DomainError as exc:
        raise SchemaError(f"{context}: {exc}") from None


def _parse_stop(doc: Mapping[str, Any], context: str) -> StopCondition:
    kind = _enum(StopKind, _require(doc, "kind", context), f"{context}.kind")
    try:
        return StopCondition(kind=kind, seconds=doc.get("seconds"))
    except DomainError as exc:
        raise SchemaError(f"{context}: {exc}") from None


def _parse_response(doc: Mapping[str, Any]) -> ResponseSpec:
    index = _require(doc, "index", "response")
    context = f"response {index}"
    is_general = bool(doc.get("general", False))
    applies = frozenset(
        _enum(IntrusionResult, value, f"{context}.applies_to")
        for value in doc.get("applies_to", [])
    )
    if not is_general and not applies:
        raise SchemaError(f"{context}: needs applies_to entries or general=true")
    try:
        precondition = Precondition.parse(doc.get("precondition", "true"))
    except PreconditionError as exc:
        raise SchemaError(f"{context}: bad precondition: {exc}") from None
    benefit = _parse_impact_vector(_require(doc, "benefit", context), f"{context}.benefit")
    return ResponseSpec(
        index=index,
        action=_require(doc, "action", context),
        applicable_results=applies,
        is_general=is_general,
        precondition=precondition,
        place=_enum(Place, doc.get("place", "destination"), f"{context}.place"),
        stop=_parse_stop(doc.get("stop", {"kind": "persistent"}), f"{context}.stop"),
        cost=_parse_cost_vector(_require(doc, "cost", context), f"{context}.cost"),
        benefit=benefit,
        original_benefit=benefit,
        terminal=bool(doc.get("terminal", index == 31)),
    )


def parse_catalog(doc: Mapping[str, Any]) -> Catalog:
    _check_header(doc, "catalog", "catalog")
    responses = tuple(_parse_response(d) for d in _require(doc, "responses", "catalog"))
    seen: set[int] = set()
    for spec in responses:
        if spec.index in seen:
            raise SchemaError(f"duplicate response index {spec.index}")
        seen.add(spec.index)
    terminals = [spec for spec in responses if spec.terminal]
    if len(terminals) != 1:
        raise SchemaError(f"catalog needs exactly one terminal entry, found {len(terminals)}")
    if terminals[0].index != 31:
        raise SchemaError(
            f"the terminal entry must be index 31, found {terminals[0].index}"
        )
    return Catalog(
        name=doc.get("name", ""),
        responses=responses,
        notes=doc.get("notes", ""),
    )


def _dump_impact_vector(vec: ImpactVector) -> dict[str, Any]:
    return {
        "s": vec.s,
        "f": vec.f,
        "o": vec.o,
        "p": vec.p,
        "w_s": vec.w_s,
        "w_f": vec.w_f,
        "w_o": vec.w_o,
        "w_p": vec.w_p,
    }


def _dump_response(spec: ResponseSpec) -> dict[str, Any]:
    doc: dict[str, Any] = {"index": spec.index, "action": spec.action}
    if spec.is_general:
        doc["general"] = True
    if spec.applicable_results:
        doc["applies_to"] = sorted(r.value for r in spec.applicable_results)
    doc["precondition"] = spec.precondition.source
    doc["place"] = spec.place.value
    stop: dict[str, Any] = {"kind": spec.stop.kind.value}
    if spec.stop.seconds is not None:
        stop["seconds"] = spec.stop.seconds
    doc["stop"] = stop
    doc["cost"] = {
        "a": spec.cost.a,
        "perf": spec.cost.perf,
        "w_a": spec.cost.w_a,
        "w_perf": spec.cost.w_perf,
    }
    doc["benefit"] = _dump_impact_vector(spec.benefit)
    if spec.terminal:
        doc["terminal"] = True
    return doc


def dump_catalog(catalog: Catalog) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "kind": "catalog",
        "name": catalog.name,
    }
    if catalog.notes:
        doc["notes"] = catalog.notes
    doc["responses"] = [_dump_response(spec) for spec in catalog.responses]
    return doc


def load_catalog(path: str | Path) -> Catalog:
    return parse_catalog(_read_json(path))


# --------------------------------------------------------------------------
# scenario


@dataclass(frozen=True)
class Scenario:
    name: str
    architecture_ref: str
    infected_asset: str
    affected_asset: str
    intrusion_result: IntrusionResult
    velocity_kmh: float
    impact_params: ImpactVector
    environment_weight: float
    facts: Mapping[str, bool]
    catalog_ref: str
    catalog_overrides: Mapping[str, str]
    feedback_script: tuple[str, ...]
    effects: Mapping[int, Mapping[str, bool]]
    notes: str = ""
    base_dir: Path = field(default=Path("."), compare=False)

    def event(self, velocity_kmh: float | None = None) -> IntrusionEvent:
        from .risk import environment_from_velocity

        velocity = self.velocity_kmh if velocity_kmh is None else velocity_kmh
        return IntrusionEvent(
            infected_asset=self.infected_asset,
            affected_asset=self.affected_asset,
            result=self.intrusion_result,
            impact_params=self.impact_params,
            env=EnvironmentTerm(
                e=environment_from_velocity(velocity), w_e=self.environment_weight
            ),
            vehicle=VehicleState(velocity_kmh=velocity, facts=dict(self.facts)),
        )

    def catalog_path(self, mode: str, algorithm: str) -> Path:
        """Resolve the catalog for a run mode/algorithm combination.

        Lookup order: exact "mode:algorithm" override, then "mode:*",
        then the default ``catalog_ref``.
        """
        ref = self.catalog_overrides.get(f"{mode}:{algorithm}")
        if ref is None:
            ref = self.catalog_overrides.get(f"{mode}:*")
        if ref is None:
            ref = self.catalog_ref
        return (self.base_dir / ref).resolve()

    def architecture_path(self) -> Path:
        return (self.base_dir / self.architecture_ref).resolve()

    def verdicts(self, event: IntrusionEvent) -> list[FeedbackVerdict]:
        """Materialize the file's feedback script against a concrete event."""
        mapping: dict[str, FeedbackVerdict] = {
            "success": Success(),
            "failure": Failure(),
            "new_intrusion": NewIntrusion(event),
        }
        return [mapping[name] for name in self.feedback_script]


def parse_scenario(doc: Mapping[str, Any], base_dir: str | Path = ".") -> Scenario:
    _check_header(doc, "scenario", "scenario")
    context = f"scenario {doc.get('name', '?')!r}"
    script = tuple(doc.get("feedback_script", []))
    for name in script:
        if name not in VERDICT_NAMES:
            raise SchemaError(
                f"{context}: feedback_script entry {name!r} not in {VERDICT_NAMES}"
            )
    effects_doc = doc.get("effects", {})
    try:
        effects = {
            int(index): {str(k): bool(v) for k, v in updates.items()}
            for index, updates in effects_doc.items()
        }
    except (TypeError, ValueError):
        raise SchemaError(f"{context}: effects keys must be response indices") from None
    velocity = _require(doc, "velocity_kmh", context)
    if velocity < 0:
        raise SchemaError(f"{context}: velocity_kmh must be >= 0")
    return Scenario(
        name=_require(doc, "name", context),
        architecture_ref=doc.get("architecture_ref", "architecture.json"),
        infected_asset=_require(doc, "infected_asset", context),
        affected_asset=_require(doc, "affected_asset", context),
        intrusion_result=_enum(
            IntrusionResult,
            _require(doc, "intrusion_result", context),
            f"{context}.intrusion_result",
        ),
        velocity_kmh=float(velocity),
        impact_params=_parse_impact_vector(
            _require(doc, "impact_params", context), f"{context}.impact_params"
        ),
        environment_weight=float(doc.get("environment_weight", 1.0)),
        facts={str(k): bool(v) for k, v in doc.get("facts", {}).items()},
        catalog_ref=_require(doc, "catalog_ref", context),
        catalog_overrides=dict(doc.get("catalog_overrides", {})),
        feedback_script=script,
        effects=effects,
        notes=doc.get("notes", ""),
        base_dir=Path(base_dir),
    )


def dump_scenario(scenario: Scenario) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "kind": "scenario",
        "name": scenario.name,
        "architecture_ref": scenario.architecture_ref,
        "infected_asset": scenario.infected_asset,
        "affected_asset": scenario.affected_asset,
        "intrusion_result": scenario.intrusion_result.value,
        "velocity_kmh": scenario.velocity_kmh,
        "impact_params": _dump_impact_vector(scenario.impact_params),
        "environment_weight": scenario.environment_weight,
        "facts": dict(scenario.facts),
        "catalog_ref": scenario.catalog_ref,
        "catalog_overrides": dict(scenario.catalog_overrides),
        "feedback_script": list(scenario.feedback_script),
        "effects": {str(k): dict(v) for k, v in scenario.effects.items()},
    }
    if scenario.notes:
        doc["notes"] = scenario.notes
    return doc


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    scenario = parse_scenario(_read_json(path), base_dir=path.parent)
    architecture = load_architecture(scenario.architecture_path())
    for role, asset_id in (
        ("infected_asset", scenario.infected_asset),
        ("affected_asset", scenario.affected_asset),
    ):
        if asset_id not in architecture:
            raise SchemaError(
                f"scenario {scenario.name!r}: {role} {asset_id!r} not in architecture"
            )
    return scenario


# --------------------------------------------------------------------------
# generic entry points


def _read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None


def validate_file(path: str | Path) -> str:
    """Validate any known document kind; returns the kind on success."""
    doc = _read_json(path)
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")
    kind = doc.get("kind")
    if kind == "architecture":
        parse_architecture(doc)
    elif kind == "catalog":
        parse_catalog(doc)
    elif kind == "scenario":
        load_scenario(path)
    else:
        raise SchemaError(f"{path}: unknown document kind {kind!r}")
    return str(kind)


def resolve_scenario_ref(ref: str) -> Path:
    """Accept either a filesystem path or the name of a packaged scenario."""
    path = Path(ref)
    if path.exists():
        return path
    packaged = data_dir() / (ref if ref.endswith(".json") else f"{ref}.json")
    if packaged.exists():
        return packaged
    raise SchemaError(f"scenario not found: {ref!r} (no such file or packaged scenario)")
