"""The decision loops.

Inner loop: select the optimal candidate, check its precondition, and on
rejection remove the instance and reselect — guaranteed to terminate
because the terminal "No Action" entry is always applicable.

Outer loop: apply the chosen response, ask the detector for a verdict,
and adapt the catalog parameters — benefit levels decay one step per
failure; on success the levels are restored and the benefit weights get
a random nudge within a configured band.  Adaptation is tracked per
(response index, target asset) instance for the lifetime of the engine.

Also hosts the analytic estimator comparing the two possible loop
orderings (check-all-preconditions-first vs select-first-then-check).
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Mapping, Sequence, Union

from .model import (
    CandidateInstance,
    DomainError,
    EnvironmentTerm,
    ImpactVector,
    IntrusionEvent,
    ResponseSpec,
    VehicleState,
)
from .responses import effective_cost, generate_candidates, response_benefit
from .risk import environment_from_velocity, event_impact
from .selection import SelectionOutcome

#: Benefit level decay applied on a failure verdict.
FAILURE_DECAY = {100: 10, 10: 1, 1: 0, 0: 0}

#: Safety bound on outer-loop iterations.
DEFAULT_MAX_ITERATIONS = 10

# A selector takes (candidates, impact, event) and returns a SelectionOutcome.
Selector = Callable[[Sequence[CandidateInstance], float, IntrusionEvent], SelectionOutcome]


@dataclass(frozen=True)
class Success:
    """The applied response ended the intrusion."""


@dataclass(frozen=True)
class Failure:
    """The intrusion persists; the response did not work."""


@dataclass(frozen=True)
class NewIntrusion:
    """The previous intrusion is handled but a follow-up was detected."""

    event: IntrusionEvent


FeedbackVerdict = Union[Success, Failure, NewIntrusion]

# Feedback is injected: (iteration, applied candidate) -> verdict.
FeedbackSource = Callable[[int, CandidateInstance], FeedbackVerdict]


@dataclass(frozen=True)
class AdaptationConfig:
    r_min: float = 0.8
    r_max: float = 1.2
    rng_seed: int = 7

    def __post_init__(self) -> None:
        if not (0 < self.r_min <= self.r_max):
            raise DomainError(
                f"need 0 < r_min <= r_max, got {self.r_min!r}, {self.r_max!r}"
            )


@dataclass(frozen=True)
class Attempt:
    """One selection inside the inner loop and its precondition outcome."""

    response_index: int
    target_asset: str
    score: float
    cost: float
    benefit: float
    precondition_passed: bool
    selection_time_ms: float = 0.0


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    velocity_kmh: float
    impact: float
    candidate_count: int
    attempts: tuple[Attempt, ...]
    applied: Attempt
    verdict: str
    adapted_weights: tuple[float, float, float, float] | None
    adapted_levels: tuple[int, int, int, int] | None
    selection_time_ms: float


@dataclass
class EngineTrace:
    seed: int
    records: list[IterationRecord] = field(default_factory=list)


def adapt_on_failure(spec: ResponseSpec) -> ResponseSpec:
    """Decay each benefit level one step (100->10->1->0); weights unchanged.

    Level order is preserved: the mapping is monotone, so a metric that
    dominated before the decay still dominates after it.
    """
    b = spec.benefit
    decayed = ImpactVector(
        s=FAILURE_DECAY[b.s],
        f=FAILURE_DECAY[b.f],
        o=FAILURE_DECAY[b.o],
        p=FAILURE_DECAY[b.p],
        w_s=b.w_s,
        w_f=b.w_f,
        w_o=b.w_o,
        w_p=b.w_p,
    )
    return replace(spec, benefit=decayed)


def adapt_on_success(
    spec: ResponseSpec, cfg: AdaptationConfig, rng: random.Random
) -> ResponseSpec:
    """Restore pristine benefit levels, then nudge each current weight by an
    independent uniform factor in [r_min, r_max].

    The factors compound across repeated successes; each single call stays
    within [r_min * w, r_max * w] of the pre-call weight.
    """
    orig, cur = spec.original_benefit, spec.benefit
    draws = tuple(rng.uniform(cfg.r_min, cfg.r_max) for _ in range(4))
    adapted = ImpactVector(
        s=orig.s,
        f=orig.f,
        o=orig.o,
        p=orig.p,
        w_s=cur.w_s * draws[0],
        w_f=cur.w_f * draws[1],
        w_o=cur.w_o * draws[2],
        w_p=cur.w_p * draws[3],
    )
    return replace(spec, benefit=adapted)


def inner_loop(
    event: IntrusionEvent,
    candidates: Sequence[CandidateInstance],
    selector: Selector,
    facts: Mapping[str, bool],
    precondition_policy: Callable[[CandidateInstance], bool] | None = None,
) -> tuple[CandidateInstance, list[Attempt]]:
    """Select-then-check until a candidate's precondition holds.

    Returns the applicable instance and the full attempt record
    (rejections included).  ``precondition_policy`` overrides normal
    evaluation — the harness uses it to force rejections; the terminal
    entry is exempt and always passes.
    """
    working = list(candidates)
    impact = event_impact(event)
    attempts: list[Attempt] = []
    while working:
        t0 = time.perf_counter()
        outcome = selector(working, impact, event)
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        cand = outcome.chosen
        if cand.response.terminal:
            passed = True
        elif precondition_policy is not None:
            passed = precondition_policy(cand)
        else:
            passed = cand.response.precondition.evaluate(facts)
        attempts.append(
            Attempt(
                response_index=cand.response.index,
                target_asset=cand.target_asset,
                score=outcome.score,
                cost=effective_cost(cand, impact),
                benefit=response_benefit(cand.response.benefit),
                precondition_passed=passed,
                selection_time_ms=elapsed_ms,
            )
        )
        if passed:
            return cand, attempts
        working.remove(cand)
    raise DomainError("candidate set exhausted without an applicable response")


class Engine:
    """One engine instance handles one intrusion sequence.

    Keeps the per-instance adaptation state and the seeded RNG; not meant
    to be shared between threads.
    """

    def __init__(
        self,
        catalog: Sequence[ResponseSpec],
        selector: Selector,
        adaptation: AdaptationConfig = AdaptationConfig(),
        effects: Mapping[int, Mapping[str, bool]] | None = None,
    ):
        self._catalog = list(catalog)
        self._selector = selector
        self._adaptation = adaptation
        self._rng = random.Random(adaptation.rng_seed)
        self._effects = {int(k): dict(v) for k, v in (effects or {}).items()}
        self._adapted: dict[tuple[int, str], ResponseSpec] = {}

    def adapted_catalog(self) -> dict[tuple[int, str], ResponseSpec]:
        """Current per-instance adaptation state (index, target) -> spec."""
        return dict(self._adapted)

    def _overlay(self, candidates: Sequence[CandidateInstance]) -> list[CandidateInstance]:
        out = []
        for cand in candidates:
            adapted = self._adapted.get((cand.response.index, cand.target_asset))
            out.append(
                CandidateInstance(adapted, cand.target_asset) if adapted else cand
            )
        return out

    def run(
        self,
        initial_event: IntrusionEvent,
        feedback: FeedbackSource,
        max_iterations: int = DEFAULT_MAX_ITERATIONS,
    ) -> EngineTrace:
        if max_iterations < 1:
            raise DomainError(f"max_iterations must be >= 1, got {max_iterations!r}")
        trace = EngineTrace(seed=self._adaptation.rng_seed)
        event = initial_event
        for iteration in range(1, max_iterations + 1):
            event = self._refresh_environment(event)
            impact = event_impact(event)
            candidates = self._overlay(generate_candidates(event, self._catalog))
            t0 = time.perf_counter()
            chosen, attempts = inner_loop(
                event, candidates, self._selector, event.vehicle.facts
            )
            selection_ms = (time.perf_counter() - t0) * 1000.0

            event = self._apply_effects(event, chosen)
            verdict = feedback(iteration, chosen)
            adapted_spec, verdict_name, next_event, stop = self._adapt(
                chosen, verdict, event
            )

            trace.records.append(
                IterationRecord(
                    iteration=iteration,
                    velocity_kmh=event.vehicle.velocity_kmh,
                    impact=impact,
                    candidate_count=len(candidates),
                    attempts=tuple(attempts),
                    applied=attempts[-1],
                    verdict=verdict_name,
                    adapted_weights=adapted_spec.benefit.weights(),
                    adapted_levels=adapted_spec.benefit.levels(),
                    selection_time_ms=selection_ms,
                )
            )
            if stop:
                break
            event = next_event
        return trace

    def _refresh_environment(self, event: IntrusionEvent) -> IntrusionEvent:
        env = EnvironmentTerm(
            e=environment_from_velocity(event.vehicle.velocity_kmh),
            w_e=event.env.w_e,
        )
        return replace(event, env=env)

    def _apply_effects(
        self, event: IntrusionEvent, chosen: CandidateInstance
    ) -> IntrusionEvent:
        updates = self._effects.get(chosen.response.index)
        if not updates:
            return event
        facts = dict(event.vehicle.facts)
        facts.update(updates)
        vehicle = VehicleState(velocity_kmh=event.vehicle.velocity_kmh, facts=facts)
        return replace(event, vehicle=vehicle)

    def _adapt(
        self,
        chosen: CandidateInstance,
        verdict: FeedbackVerdict,
        event: IntrusionEvent,
    ) -> tuple[ResponseSpec, str, IntrusionEvent, bool]:
        key = (chosen.response.index, chosen.target_asset)
        match verdict:
            case Failure():
                spec = adapt_on_failure(chosen.response)
                self._adapted[key] = spec
                return spec, "failure", event, False
            case Success():
                spec = adapt_on_success(chosen.response, self._adaptation, self._rng)
                self._adapted[key] = spec
                return spec, "success", event, True
            case NewIntrusion(event=next_event):
                spec = adapt_on_success(chosen.response, self._adaptation, self._rng)
                self._adapted[key] = spec
                return spec, "new_intrusion", next_event, False
        raise DomainError(f"unknown feedback verdict: {verdict!r}")


def outer_loop(
    initial_event: IntrusionEvent,
    catalog: Sequence[ResponseSpec],
    selector: Selector,
    feedback: FeedbackSource,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    adaptation: AdaptationConfig = AdaptationConfig(),
    effects: Mapping[int, Mapping[str, bool]] | None = None,
) -> EngineTrace:
    """Convenience wrapper: build an engine and run one intrusion sequence."""
    engine = Engine(catalog, selector, adaptation=adaptation, effects=effects)
    return engine.run(initial_event, feedback, max_iterations)


def scripted_feedback(verdicts: Sequence[FeedbackVerdict]) -> FeedbackSource:
    """Feedback source that replays a fixed verdict list (Success once
    exhausted)."""
    script = list(verdicts)

    def source(iteration: int, applied: CandidateInstance) -> FeedbackVerdict:
        if iteration <= len(script):
            return script[iteration - 1]
        return Success()

    return source


def always_success_script(event: IntrusionEvent, iterations: int) -> list[FeedbackVerdict]:
    """Every response works, but the detector keeps re-reporting the event
    until the final iteration — the sustained-success evaluation shape."""
    return [NewIntrusion(event)] * (iterations - 1) + [Success()]


def always_failure_script(iterations: int) -> list[FeedbackVerdict]:
    return [Failure()] * iterations


class LoopOrder(Enum):
    CHECK_FIRST = "check-first"
    SELECT_FIRST = "select-first"


def estimate_loop_time(
    order: LoopOrder,
    t_check: float,
    t_select: float,
    t_execute: float,
    p: float,
    n: int,
) -> float:
    """Analytic per-intrusion handling time for the two loop orderings.

    ``p`` is the probability that a selected response's precondition
    holds; ``n`` the candidate count.  Check-first always evaluates every
    precondition; select-first pays for expected reselections instead.
    """
    if not 0 <= p <= 1:
        raise DomainError(f"p must be in [0, 1], got {p!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    if order is LoopOrder.CHECK_FIRST:
        return n * t_check + t_select + t_execute
    return t_select + t_check + p * t_execute + (1 - p) * (n - 1) * (t_select + t_check)
