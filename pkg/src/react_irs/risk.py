"""Intrusion impact scoring.

The impact of an active intrusion is the weighted sum of its four
static levels plus a dynamic environment term derived from vehicle
velocity:

    I = w_S*S + w_F*F + w_O*O + w_P*P + w_E*E

The environment level is a step function of velocity: faster vehicle,
higher stakes.
"""
from __future__ import annotations

from .model import DomainError, EnvironmentTerm, ImpactVector, IntrusionEvent


def environment_from_velocity(velocity_kmh: float) -> int:
    """Map velocity (km/h) onto the discrete environment level.

    Bands are half-open: [0, 30) -> 0, [30, 50) -> 1, [50, 75) -> 10,
    [75, inf) -> 100.
    """
    if velocity_kmh < 0:
        raise DomainError(f"velocity must be >= 0, got {velocity_kmh!r}")
    if velocity_kmh >= 75:
        return 100
    if velocity_kmh >= 50:
        return 10
    if velocity_kmh >= 30:
        return 1
    return 0


def legacy_impact(params: ImpactVector) -> int:
    """Unweighted sum S + F + O + P (the static reference score)."""
    return params.s + params.f + params.o + params.p


def intrusion_impact(params: ImpactVector, env: EnvironmentTerm) -> float:
    """Weighted impact including the environment term, computed exactly."""
    return (
        params.w_s * params.s
        + params.w_f * params.f
        + params.w_o * params.o
        + params.w_p * params.p
        + env.w_e * env.e
    )


def event_impact(event: IntrusionEvent) -> float:
    """Impact of an event with E re-derived from the current velocity.

    The stored environment level is an initial snapshot; re-deriving on
    every evaluation is what makes the score dynamic.
    """
    env = EnvironmentTerm(
        e=environment_from_velocity(event.vehicle.velocity_kmh), w_e=event.env.w_e
    )
    return intrusion_impact(event.impact_params, env)
