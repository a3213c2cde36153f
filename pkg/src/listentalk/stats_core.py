"""Numerical primitives: Gaussian tails, CSCG sampling, 2x2 correlation roots,
sample moments and seeded random streams."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "MomentPair",
    "q_function",
    "q_inverse",
    "sample_cscg",
    "corr_sqrt_2x2",
    "moment_estimate",
    "power",
    "seed_sequence",
    "spawn_generators",
]


@dataclass(frozen=True)
class MomentPair:
    """Mean and variance of a test statistic under one hypothesis."""

    mean: float
    variance: float

    def __post_init__(self):
        if self.variance < 0:
            raise ValueError(f"variance must be >= 0, got {self.variance}")


def q_function(x):
    """Gaussian tail probability ``P(Z > x)`` for standard normal ``Z``.

    Accepts scalars or arrays; raises ``ValueError`` on non-finite input.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("q_function requires finite input")
    out = 0.5 * special.erfc(arr / math.sqrt(2.0))
    return float(out) if out.ndim == 0 else out


def q_inverse(p):
    """Inverse of :func:`q_function` on the open interval (0, 1)."""
    arr = np.asarray(p, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise ValueError("q_inverse requires 0 < p < 1")
    # Q^{-1}(p) = Phi^{-1}(1 - p) = -Phi^{-1}(p); ndtri is accurate in both tails
    out = -special.ndtri(arr)
    return float(out) if out.ndim == 0 else out


def sample_cscg(variance: float, count, rng: np.random.Generator) -> np.ndarray:
    """Draw i.i.d. circularly-symmetric complex Gaussian samples.

    ``E|y|^2 = variance``; real and imaginary parts each carry half of it.
    ``count`` may be an int or a shape tuple.
    """
    if variance < 0:
        raise ValueError(f"variance must be >= 0, got {variance}")
    shape = (count,) if np.isscalar(count) else tuple(count)
    if any(int(s) < 1 for s in shape):
        raise ValueError("count must be >= 1")
    z = rng.standard_normal((*shape, 2)).view(np.complex128)[..., 0]
    z *= math.sqrt(variance / 2.0)
    return z


def corr_sqrt_2x2(beta: complex) -> np.ndarray:
    """Principal square root of ``[[1, beta], [conj(beta), 1]]``.

    Uses the eigen-decomposition of the exponential correlation matrix
    (eigenvalues ``1 +- |beta|``), so the result is Hermitian and ``S @ S^H``
    reproduces the matrix.
    """
    b = abs(beta)
    if not b < 1.0:
        raise ValueError(f"|beta| must be < 1, got {b}")
    hi, lo = math.sqrt(1.0 + b), math.sqrt(1.0 - b)
    diag = 0.5 * (hi + lo)
    # (hi - lo) / (2b) -> 1/2 as b -> 0; the off-diagonal vanishes anyway
    off = 0.5 * (hi - lo) / b * beta if b > 0 else 0.0
    return np.array([[diag, off], [np.conj(off), diag]], dtype=complex)


def power(y: np.ndarray) -> np.ndarray:
    """``|y|^2`` without the square root of ``np.abs``."""
    return y.real**2 + y.imag**2


def moment_estimate(samples) -> MomentPair:
    """Unbiased sample mean and variance."""
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < 2:
        raise ValueError("moment_estimate needs at least 2 samples")
    return MomentPair(float(x.mean()), float(x.var(ddof=1)))


def seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def spawn_generators(seed, n: int) -> list[np.random.Generator]:
    """Independent child streams of ``seed``, one per worker or block."""
    return [np.random.default_rng(s) for s in seed_sequence(seed).spawn(n)]
