"""Domain types shared by every layer: assets, intrusion events, the
four-level impact bundles, and response catalog entries.

Impact-style values live on the discrete level scale {0, 1, 10, 100};
weights are non-negative reals.  All types are immutable values, safe to
share between threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .preconditions import Precondition

#: The only admissible discrete impact levels.
LEVELS = (0, 1, 10, 100)


class DomainError(ValueError):
    """A value outside the modeled domain (bad level, negative velocity, ...)."""


def check_level(value: int, what: str = "level") -> int:
    if value not in LEVELS:
        raise DomainError(f"{what} must be one of {LEVELS}, got {value!r}")
    return value


def check_weight(value: float, what: str = "weight") -> float:
    if value < 0:
        raise DomainError(f"{what} must be non-negative, got {value!r}")
    return float(value)


class AssetKind(str, Enum):
    SENSOR = "sensor"
    ECU = "ecu"
    GATEWAY = "gateway"
    BUS = "bus"


class IntrusionResult(str, Enum):
    """The five modeled classes of what an intrusion does to a system."""

    FALSIFY_ALTER_INFORMATION = "falsify_alter_information"
    FALSIFY_ALTER_TIMING = "falsify_alter_timing"
    INFORMATION_DISCLOSURE = "information_disclosure"
    SYSTEM_UNAVAILABILITY = "system_unavailability"
    FALSIFY_ALTER_BEHAVIOR = "falsify_alter_behavior"


class Place(str, Enum):
    """Where a response is applied relative to the intrusion path."""

    SOURCE = "source"
    DESTINATION = "destination"
    BOTH = "both"


class StopKind(str, Enum):
    AFTER_DURATION = "after_duration"
    POLICY_REESTABLISHED = "policy_reestablished"
    PERSISTENT = "persistent"


@dataclass(frozen=True)
class Asset:
    id: str
    name: str
    kind: AssetKind


@dataclass(frozen=True)
class ImpactVector:
    """Safety/financial/operational/privacy levels with their weights.

    Used both for intrusion impact parameters and for response benefits.
    """

    s: int
    f: int
    o: int
    p: int
    w_s: float = 1.0
    w_f: float = 1.0
    w_o: float = 1.0
    w_p: float = 1.0

    def __post_init__(self) -> None:
        for name in ("s", "f", "o", "p"):
            check_level(getattr(self, name), name.upper())
        for name in ("w_s", "w_f", "w_o", "w_p"):
            check_weight(getattr(self, name), name)

    def levels(self) -> tuple[int, int, int, int]:
        return (self.s, self.f, self.o, self.p)

    def weights(self) -> tuple[float, float, float, float]:
        return (self.w_s, self.w_f, self.w_o, self.w_p)


@dataclass(frozen=True)
class EnvironmentTerm:
    """The dynamic context level E (derived from velocity) and its weight."""

    e: int
    w_e: float = 1.0

    def __post_init__(self) -> None:
        check_level(self.e, "E")
        check_weight(self.w_e, "w_e")


@dataclass(frozen=True)
class VehicleState:
    velocity_kmh: float
    facts: Mapping[str, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.velocity_kmh < 0:
            raise DomainError(f"velocity must be >= 0, got {self.velocity_kmh!r}")


@dataclass(frozen=True)
class IntrusionEvent:
    """One detector report: who attacked whom, what it does, how bad it is."""

    infected_asset: str
    affected_asset: str
    result: IntrusionResult
    impact_params: ImpactVector
    env: EnvironmentTerm
    vehicle: VehicleState


@dataclass(frozen=True)
class CostVector:
    """Availability / performance cost levels of applying a response."""

    a: int
    perf: int
    w_a: float = 1.0
    w_perf: float = 1.0

    def __post_init__(self) -> None:
        check_level(self.a, "A")
        check_level(self.perf, "Perf")
        check_weight(self.w_a, "w_a")
        check_weight(self.w_perf, "w_perf")


@dataclass(frozen=True)
class StopCondition:
    kind: StopKind
    seconds: float | None = None

    def __post_init__(self) -> None:
        if self.kind is StopKind.AFTER_DURATION and (
            self.seconds is None or self.seconds <= 0
        ):
            raise DomainError("after_duration stop requires positive seconds")
        if self.kind is not StopKind.AFTER_DURATION and self.seconds is not None:
            raise DomainError(f"{self.kind.value} stop takes no duration")


@dataclass(frozen=True)
class ResponseSpec:
    """One catalog entry.

    ``original_benefit`` is the pristine copy taken at load time; the
    adaptation logic restores levels from it and never mutates it.
    ``terminal`` marks the always-applicable "No Action" entry whose
    effective cost is pegged to the current intrusion impact.
    """

    index: int
    action: str
    applicable_results: frozenset[IntrusionResult]
    is_general: bool
    precondition: Precondition
    place: Place
    stop: StopCondition
    cost: CostVector
    benefit: ImpactVector
    original_benefit: ImpactVector
    terminal: bool = False

    def applies_to(self, result: IntrusionResult) -> bool:
        return self.is_general or result in self.applicable_results


@dataclass(frozen=True)
class CandidateInstance:
    """A response bound to a concrete target asset.

    The same catalog entry can appear twice in a candidate set — once per
    involved asset — which is why selection operates on instances rather
    than on raw specs.
    """

    response: ResponseSpec
    target_asset: str
