"""Coherence measures defined by their pure-state profiles.

A measure is registered through its profile f(m) over the off-diagonal
magnitude m = |c0 * conj(c1)| of a pure state, m in [0, 1/2]. Profiles that
are continuous and convex in m admit the closed form f(|rho01|) on mixed
states; everything else needs the roof oracle, except the coherence rank,
which has its own piecewise closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import MuRangeError, NonConvexMeasureError
from .states import PureQubit, QubitState

_MONOTONE_GRID = 1024
PROFILE_ATOL = 1e-12


def lower_population_from_offdiag(m: float) -> float:
    """Smaller population a of a pure state with off-diagonal magnitude m.

    Solves a(1-a) = m^2 with a <= 1/2, written as 2m^2 / (1 + sqrt(1-4m^2))
    to stay accurate for small m.
    """
    m = min(max(m, 0.0), 0.5)
    return 2.0 * m * m / (1.0 + math.sqrt(max(0.0, 1.0 - 4.0 * m * m)))


def binary_entropy(x: float) -> float:
    """Binary entropy in bits, with the limit value 0 at x = 0 and x = 1."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


@dataclass(frozen=True)
class MeasureSpec:
    """A coherence measure identified by its pure-state profile.

    continuous / convex_in_m describe the profile as a function of the
    off-diagonal magnitude m; both must hold for closed_form to apply.
    mu is set only for the clipped-ratio family.
    """

    id: str
    profile: Callable[[float], float]
    continuous: bool
    convex_in_m: bool
    mu: float | None = field(default=None)

    def __post_init__(self) -> None:
        if abs(self.profile(0.0)) > PROFILE_ATOL:
            raise ValueError(f"{self.id}: profile(0) must vanish")
        values = [self.profile(0.5 * k / (_MONOTONE_GRID - 1)) for k in range(_MONOTONE_GRID)]
        for lo, hi in zip(values, values[1:]):
            if hi < lo - PROFILE_ATOL:
                raise ValueError(f"{self.id}: profile must be nondecreasing on [0, 1/2]")


def _rank_profile(m: float) -> float:
    return 1.0 if m > 0.0 else 0.0


CONCURRENCE = MeasureSpec("concurrence", lambda m: 2.0 * m, True, True)
FORMATION = MeasureSpec(
    "formation", lambda m: binary_entropy(lower_population_from_offdiag(m)), True, True
)
GEOMETRIC = MeasureSpec("geometric", lower_population_from_offdiag, True, True)
CMAX = MeasureSpec("cmax", lambda m: math.log2(1.0 + 2.0 * m), True, False)
RANK = MeasureSpec("rank", _rank_profile, False, False)


def cmu(mu: float) -> MeasureSpec:
    """Clipped-ratio measure min(a/mu, 1) over the lower population a.

    mu = 0 degenerates to the coherence indicator (the rank measure) and
    mu = 1 to the geometric measure. The clip is inactive for mu >= 1/2
    (a never exceeds 1/2), so those profiles are convex in m.
    """
    mu = float(mu)
    if not 0.0 <= mu <= 1.0:
        raise MuRangeError(f"mu = {mu!r} outside [0, 1]")
    if mu == 0.0:
        profile = _rank_profile
    else:
        def profile(m: float, _mu: float = mu) -> float:
            return min(lower_population_from_offdiag(m) / _mu, 1.0)

    return MeasureSpec(f"cmu:{mu:g}", profile, mu > 0.0, mu >= 0.5, mu)


_BUILTINS = {spec.id: spec for spec in (CONCURRENCE, FORMATION, GEOMETRIC, CMAX, RANK)}


def get_measure(token: str) -> MeasureSpec:
    """Resolve a CLI token: concurrence | formation | geometric | cmax |
    cmu:<mu> | rank."""
    if token in _BUILTINS:
        return _BUILTINS[token]
    if token.startswith("cmu:"):
        try:
            mu = float(token[4:])
        except ValueError:
            raise ValueError(f"bad mu in measure token {token!r}") from None
        return cmu(mu)
    raise ValueError(f"unknown measure token {token!r}")


def eval_pure(spec: MeasureSpec, phi: PureQubit) -> float:
    """Measure value of a pure state; depends only on |c0 * conj(c1)|."""
    return spec.profile(abs(phi.offdiag()))


def closed_form(spec: MeasureSpec, state: QubitState) -> float:
    """Mixed-state value profile(|rho01|), valid for profiles that are
    continuous and convex in the off-diagonal magnitude.

    Raises NonConvexMeasureError otherwise: plugging |rho01| into a
    non-convex profile overestimates the roof, so the caller must fall back
    to the oracle (or to coherence_rank for the rank measure).
    """
    if not (spec.continuous and spec.convex_in_m):
        raise NonConvexMeasureError(
            f"{spec.id}: profile is not convex and continuous in m; "
            "use the roof oracle"
        )
    return spec.profile(abs(state.rho01))


def coherence_rank(state: QubitState) -> float:
    """Roof of the coherence indicator, in closed piecewise form.

    With d = min(rho00, rho11) and r = |rho01|: 2r when d >= r, else
    d + r^2/d. Continuous across the branch boundary and equal to 1 exactly
    on pure coherent states.
    """
    d = min(state.rho00, state.rho11)
    r = abs(state.rho01)
    if d >= r:
        return 2.0 * r
    return d + r * r / d


def convexity_probe(spec: MeasureSpec, grid_size: int = 129) -> str:
    """Classify the profile by midpoint tests over all grid pairs.

    Returns one of 'convex', 'concave', 'affine', 'neither' with tolerance
    1e-9; 'affine' means both one-sided tests pass.
    """
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    tol = 1e-9
    grid = [0.5 * k / (grid_size - 1) for k in range(grid_size)]
    values = [spec.profile(m) for m in grid]
    convex_ok = True
    concave_ok = True
    for i in range(grid_size):
        for j in range(i + 1, grid_size):
            mid = spec.profile(0.5 * (grid[i] + grid[j]))
            avg = 0.5 * (values[i] + values[j])
            if mid > avg + tol:
                convex_ok = False
            if mid < avg - tol:
                concave_ok = False
            if not convex_ok and not concave_ok:
                return "neither"
    if convex_ok and concave_ok:
        return "affine"
    return "convex" if convex_ok else "concave"


def curve_sample(spec: MeasureSpec, n_points: int) -> list[tuple[float, float]]:
    """Profile values over a uniform grid of pure-state l1 coherence in [0, 1]."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    out = []
    for k in range(n_points):
        c_l1 = k / (n_points - 1)
        out.append((c_l1, spec.profile(0.5 * c_l1)))
    return out
