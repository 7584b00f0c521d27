"""Feasibility deciders for state transformations under incoherent operations.

Qubit-to-qubit conversion is decided by two monotones (the off-diagonal
magnitude and its pure-state-normalized ratio). Direct-sum-to-direct-sum
conversion is decided by the clipped-ratio family: the inequality must hold
for every mu in [0, 1], which reduces to a finite critical set because both
sides are of the form A + B/mu between consecutive breakpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadOrderingError, MuRangeError
from .states import DirectSumState, PureQubit, QubitState, lower_population

# States equal up to floating-point noise must stay mutually convertible.
SLACK = 1e-12


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of a transformation-feasibility check.

    When infeasible, witness_mu is a family parameter violating the monotone
    inequality and (lhs, rhs) are the two side values there. When feasible,
    witness_mu is None and (lhs, rhs) report the tightest margin found.
    """

    feasible: bool
    witness_mu: float | None
    lhs: float
    rhs: float


def conversion_monotones(state: QubitState) -> tuple[float, float]:
    """The two quantities deciding qubit-to-qubit convertibility.

    zeta = |rho01| and xi = |rho01| / sqrt(rho00 * rho11), with xi defined as
    0 on diagonal states (positivity forces rho01 = 0 there). xi is clamped
    into [0, 1]; it equals 1 exactly on pure coherent states.
    """
    zeta = abs(state.rho01)
    denom2 = state.rho00 * state.rho11
    if denom2 <= 0.0:
        return zeta, 0.0
    return zeta, min(zeta / math.sqrt(denom2), 1.0)


def qubit_transform_verdict(source: QubitState, target: QubitState) -> FeasibilityVerdict:
    """Feasibility of source -> target with the failing monotone values."""
    zs, xs = conversion_monotones(source)
    zt, xt = conversion_monotones(target)
    if zs < zt - SLACK:
        return FeasibilityVerdict(False, None, zs, zt)
    if xs < xt - SLACK:
        return FeasibilityVerdict(False, None, xs, xt)
    if zs - zt <= xs - xt:
        return FeasibilityVerdict(True, None, zs, zt)
    return FeasibilityVerdict(True, None, xs, xt)


def qubit_transform_feasible(source: QubitState, target: QubitState) -> bool:
    """True iff both monotones of the source dominate the target's."""
    return qubit_transform_verdict(source, target).feasible


def pure_transform_feasible(source: PureQubit, target: PureQubit) -> bool:
    """Deterministic pure-to-pure conversion: the source's lower population
    must dominate the target's. Phase-insensitive."""
    return lower_population(source) >= lower_population(target) - SLACK


def max_conversion_probability(a_source: float, theta: float, tau: float) -> float:
    """Largest probability of reaching a pure target with lower population
    theta from a source with lower population a_source, when the failure
    branch falls to a state with lower population tau <= theta.

    Equals clamp((a_source - tau) / (theta - tau), 0, 1); the degenerate case
    theta = tau is decided by the deterministic criterion a_source >= theta.
    """
    if tau > theta:
        raise BadOrderingError(f"tau = {tau!r} exceeds theta = {theta!r}")
    if theta == tau:
        return 1.0 if a_source >= theta else 0.0
    return min(max((a_source - tau) / (theta - tau), 0.0), 1.0)


def _block_value(mu: float, a: float) -> float:
    if mu == 0.0:
        return 1.0 if a > 0.0 else 0.0
    return min(a / mu, 1.0)


def c_mu_direct_sum(mu: float, state: DirectSumState) -> float:
    """Clipped-ratio value of a direct sum via blockwise additivity:
    p * min(a1/mu, 1) + (1-p) * min(a2/mu, 1), with the coherence indicator
    at mu = 0."""
    mu = float(mu)
    if not 0.0 <= mu <= 1.0:
        raise MuRangeError(f"mu = {mu!r} outside [0, 1]")
    a1 = lower_population(state.phi1)
    a2 = lower_population(state.phi2)
    return state.p * _block_value(mu, a1) + (1.0 - state.p) * _block_value(mu, a2)


def critical_mu_values(source: DirectSumState, target: DirectSumState) -> list[float]:
    """Finite set of mu values deciding the direct-sum inequality.

    Between consecutive block lower populations both sides are A + B/mu, so
    their difference is monotone on each interval and endpoint checks decide
    it; mu = 0 covers the indicator endpoint.
    """
    values = {0.0, 1.0}
    for state in (source, target):
        for phi in (state.phi1, state.phi2):
            a = lower_population(phi)
            if a > 0.0:
                values.add(a)
    return sorted(values)


def direct_sum_transform_verdict(
    source: DirectSumState, target: DirectSumState
) -> FeasibilityVerdict:
    """Feasibility of source -> target under incoherent operations.

    Feasible iff the clipped-ratio value of the source dominates the target's
    at every critical mu (within 1e-12 slack). On failure, reports the
    smallest violating mu with both side values.
    """
    tightest: tuple[float, float, float] | None = None
    for mu in critical_mu_values(source, target):
        lhs = c_mu_direct_sum(mu, source)
        rhs = c_mu_direct_sum(mu, target)
        if lhs < rhs - SLACK:
            return FeasibilityVerdict(False, mu, lhs, rhs)
        if tightest is None or lhs - rhs < tightest[0]:
            tightest = (lhs - rhs, lhs, rhs)
    return FeasibilityVerdict(True, None, tightest[1], tightest[2])
