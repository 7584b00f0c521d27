"""Shared test utilities: seeded samplers and independent oracles."""

import cmath
import math
from fractions import Fraction

import numpy as np

from qroof import PureQubit
from qroof.reproduce import (  # noqa: F401  (re-exported for test modules)
    dense_grid_feasible,
    random_direct_sum,
    random_mixed_state,
    random_pure_state,
)


def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_isometry(gen: np.random.Generator, n: int) -> np.ndarray:
    """Haar-ish n x 2 isometry from the QR of a complex Gaussian matrix."""
    z = gen.standard_normal((n, 2)) + 1j * gen.standard_normal((n, 2))
    q, _ = np.linalg.qr(z)
    return q[:, :2]


def pure_with_lower_population(a: float, phase: float = 0.0) -> PureQubit:
    """Pure state (sqrt(a), sqrt(1-a) e^{i phase}) with a <= 1/2."""
    return PureQubit(math.sqrt(a), math.sqrt(1.0 - a) * cmath.exp(1j * phase))


def fraction_c_mu(mu: Fraction, blocks: list[tuple[Fraction, Fraction]]) -> Fraction:
    """Exact clipped-ratio value of a direct sum from rational block data.

    blocks is a list of (weight, lower population) pairs.
    """
    total = Fraction(0)
    for weight, a in blocks:
        if mu == 0:
            value = Fraction(1) if a != 0 else Fraction(0)
        else:
            value = min(a / mu, Fraction(1))
        total += weight * value
    return total
