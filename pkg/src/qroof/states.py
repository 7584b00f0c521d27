"""Single-qubit states: pure amplitude pairs, 2x2 density matrices, ensembles,
and block-diagonal direct sums, with exact validation and elementary manipulation.

All types are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NormalizationError,
    NotPositiveError,
    TraceRangeError,
    WeightRangeError,
)

# Validation invariants tolerate 1e-12; matrix reassembly checks 1e-10.
ATOL = 1e-12
REBUILD_ATOL = 1e-10


@dataclass(frozen=True)
class PureQubit:
    """Normalized amplitude pair (c0, c1) of a pure qubit state."""

    c0: complex
    c1: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "c0", complex(self.c0))
        object.__setattr__(self, "c1", complex(self.c1))
        norm2 = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(norm2 - 1.0) > ATOL:
            raise NormalizationError(f"|c0|^2 + |c1|^2 = {norm2!r}, expected 1")

    @classmethod
    def normalized(cls, c0: complex, c1: complex) -> "PureQubit":
        """Build a state from an unnormalized amplitude pair."""
        scale = math.sqrt(abs(c0) ** 2 + abs(c1) ** 2)
        if scale < 1e-15:
            raise NormalizationError("cannot normalize the zero vector")
        return cls(c0 / scale, c1 / scale)

    def offdiag(self) -> complex:
        """Off-diagonal element c0 * conj(c1) of the projector."""
        return self.c0 * self.c1.conjugate()

    def density(self) -> "QubitState":
        """Projector |phi><phi| as a density matrix."""
        return QubitState(abs(self.c0) ** 2, self.offdiag())


@dataclass(frozen=True)
class QubitState:
    """2x2 density matrix with unit trace, stored as (rho00, rho01).

    rho11 is derived as 1 - rho00 so the trace is exactly one. Construction
    rejects rho00 outside [0, 1] and off-diagonals violating positivity by
    more than 1e-12; a sub-tolerance excess is clamped down to the boundary
    so downstream square roots never see negative radicands.
    """

    rho00: float
    rho01: complex

    def __post_init__(self) -> None:
        rho00 = float(self.rho00)
        if not -ATOL <= rho00 <= 1.0 + ATOL:
            raise TraceRangeError(f"rho00 = {rho00!r} outside [0, 1]")
        rho00 = min(max(rho00, 0.0), 1.0)
        rho01 = complex(self.rho01)
        bound = rho00 * (1.0 - rho00)
        r2 = rho01.real**2 + rho01.imag**2
        if r2 > bound + ATOL:
            raise NotPositiveError(
                f"|rho01|^2 = {r2!r} exceeds rho00*rho11 = {bound!r}"
            )
        if r2 > bound:
            rho01 = 0.0 if bound == 0.0 else rho01 * math.sqrt(bound / r2)
        object.__setattr__(self, "rho00", rho00)
        object.__setattr__(self, "rho01", rho01)

    @property
    def rho11(self) -> float:
        return 1.0 - self.rho00

    def matrix(self) -> np.ndarray:
        """Dense 2x2 complex matrix."""
        return np.array(
            [[self.rho00, self.rho01], [self.rho01.conjugate(), self.rho11]]
        )

    def is_pure(self, atol: float = ATOL) -> bool:
        r2 = abs(self.rho01) ** 2
        return abs(r2 - self.rho00 * self.rho11) <= atol


@dataclass(frozen=True)
class Ensemble:
    """Weighted list of pure qubit states; weights sum to one."""

    members: tuple[tuple[float, PureQubit], ...]

    def __post_init__(self) -> None:
        cleaned = []
        total = 0.0
        for weight, state in self.members:
            w = float(weight)
            if w < -ATOL:
                raise WeightRangeError(f"negative weight {w!r}")
            w = max(w, 0.0)
            total += w
            cleaned.append((w, state))
        if abs(total - 1.0) > ATOL:
            raise WeightRangeError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "members", tuple(cleaned))

    def mix(self) -> QubitState:
        return mix(self)


@dataclass(frozen=True)
class DirectSumState:
    """Block-diagonal state p * phi1 (+) (1-p) * phi2 on two orthogonal
    qubit blocks."""

    p: float
    phi1: PureQubit
    phi2: PureQubit

    def __post_init__(self) -> None:
        p = float(self.p)
        if not -ATOL <= p <= 1.0 + ATOL:
            raise WeightRangeError(f"block weight p = {p!r} outside [0, 1]")
        object.__setattr__(self, "p", min(max(p, 0.0), 1.0))


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a qubit state, eigenvalues sorted descending."""

    eigenvalues: tuple[float, float]
    eigenvectors: tuple[PureQubit, PureQubit]


def validate_density(rho00: float, rho01: complex) -> QubitState:
    """Validate (rho00, rho01) and return the corresponding state."""
    return QubitState(rho00, rho01)


def l1_coherence(state: QubitState) -> float:
    """Sum of the absolute values of the off-diagonal elements: 2|rho01|."""
    return 2.0 * abs(state.rho01)


def phase_normalize(state: QubitState) -> tuple[QubitState, float]:
    """Rotate the off-diagonal onto the nonnegative real axis.

    Returns the normalized state and the removed phase arg(rho01) (0 when
    rho01 = 0). The diagonal is untouched, so every coherence quantity that
    depends only on |rho01| is preserved exactly.
    """
    phase = cmath.phase(state.rho01) if state.rho01 != 0 else 0.0
    return QubitState(state.rho00, complex(abs(state.rho01), 0.0)), phase


def mix(ensemble: Ensemble) -> QubitState:
    """Weighted sum of member projectors."""
    rho00 = 0.0
    rho01 = 0j
    for weight, phi in ensemble.members:
        rho00 += weight * abs(phi.c0) ** 2
        rho01 += weight * phi.offdiag()
    return QubitState(rho00, rho01)


def lower_population(phi: PureQubit) -> float:
    """Smaller diagonal population min(|c0|^2, |c1|^2), clamped to [0, 1/2]."""
    return min(abs(phi.c0) ** 2, abs(phi.c1) ** 2, 0.5)


def label_swap(state: QubitState) -> QubitState:
    """Relabel the basis states |0> <-> |1| (an incoherent permutation)."""
    return QubitState(state.rho11, state.rho01.conjugate())


def eigendecompose(state: QubitState) -> EigenDecomposition:
    """Analytic eigendecomposition of the 2x2 density matrix.

    A degenerate spectrum (the maximally mixed state) returns the
    computational basis.
    """
    rho00, rho11 = state.rho00, state.rho11
    r = abs(state.rho01)
    half_gap = 0.5 * math.hypot(rho00 - rho11, 2.0 * r)
    lam1 = 0.5 + half_gap
    lam2 = max(0.0, 0.5 - half_gap)
    if r < 1e-15:
        if rho00 >= rho11:
            vecs = (PureQubit(1.0, 0.0), PureQubit(0.0, 1.0))
        else:
            vecs = (PureQubit(0.0, 1.0), PureQubit(1.0, 0.0))
        return EigenDecomposition((lam1, lam2), vecs)
    # (lam - rho11, conj(rho01)) is an unnormalized eigenvector for lam;
    # the second eigenvector is its orthogonal complement.
    a = lam1 - rho11
    b = state.rho01.conjugate()
    scale = math.hypot(a, abs(b))
    v1 = PureQubit(a / scale, b / scale)
    v2 = PureQubit(-v1.c1.conjugate(), v1.c0.conjugate())
    return EigenDecomposition((lam1, lam2), (v1, v2))


def direct_sum(p: float, phi1: PureQubit, phi2: PureQubit) -> DirectSumState:
    """Block-diagonal state p * phi1 (+) (1-p) * phi2."""
    return DirectSumState(p, phi1, phi2)
