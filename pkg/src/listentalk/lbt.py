"""Closed-form sensing and throughput analysis of the half-duplex LBT baseline.

Detector model variants
-----------------------
The Gaussian model of the two-antenna energy statistic is available in three
forms, selected with :class:`LbtVariant`:

``consistent``
    H1 standard deviation ``sqrt(xi) * sigma_u2 / sqrt(N)``, the square root
    of the H1 variance; H0 variance ``sigma_u2^2 / N``.
``literal``
    Miss-detection and false-alarm expressions with ``xi`` itself used as
    the standard-deviation multiplier, H0 variance ``sigma_u2^2 / N``.
``corrected``
    As ``consistent`` but with the H0 variance of the two-antenna average,
    ``sigma_u2^2 / (2 N)``. Averaging two independent noise powers halves the
    per-sample variance; this is the form that agrees with Monte Carlo and
    is the default.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import gen_mimo_channel
from .params import JointState, SystemParams, derived_ratios
from .stats_core import MomentPair, q_function, q_inverse, seed_sequence

__all__ = [
    "LbtVariant",
    "DEFAULT_VARIANT",
    "LbtReport",
    "xi",
    "lbt_moments",
    "lbt_error_probs",
    "lbt_threshold",
    "lbt_pf_given_pm",
    "per_antenna_power",
    "log2det_2x2",
    "ergodic_rate_mc",
    "rate_high_snr",
    "lbt_overall",
]

RATE_BLOCK = 1 << 14
DEFAULT_DRAWS = 100_000


class LbtVariant(str, enum.Enum):
    CONSISTENT = "consistent"
    LITERAL = "literal"
    CORRECTED = "corrected"


DEFAULT_VARIANT = LbtVariant.CORRECTED


@dataclass(frozen=True)
class LbtReport:
    pf: float
    pm: float
    threshold: float
    rate_exact: float
    rate_exact_stderr: float
    rate_approx: float
    throughput: float
    variant: LbtVariant

    @property
    def throughput_approx(self) -> float:
        return self.rate_approx * (1.0 - self.pf)


def xi(params: SystemParams) -> float:
    """Per-sample H1 variance of the averaged power, in units of ``sigma_u2^2``."""
    g = params.gamma_s
    return ((params.beta_s * g) ** 2 + (g + 1.0) ** 2) / 2.0


def _n(params: SystemParams, tau: float | None) -> float:
    if tau is None:
        return params.n_lbt
    if not 0.0 < tau < params.slot_T:
        raise ValueError(f"tau must lie in (0, slot_T), got {tau}")
    return params.fs * tau


def _h1_sd_factor(params: SystemParams, variant: LbtVariant) -> float:
    return xi(params) if LbtVariant(variant) is LbtVariant.LITERAL else math.sqrt(xi(params))


def _h0_var_factor(variant: LbtVariant) -> float:
    return 0.5 if LbtVariant(variant) is LbtVariant.CORRECTED else 1.0


def lbt_moments(state: JointState, params: SystemParams, variant: LbtVariant = DEFAULT_VARIANT) -> MomentPair:
    """Mean and variance of the LBT statistic; ``variant`` only changes the H0 row."""
    n = params.n_lbt
    su4 = params.sigma_u2**2
    if state is JointState.H0:
        return MomentPair(params.sigma_u2, _h0_var_factor(variant) * su4 / n)
    if state is JointState.H1:
        return MomentPair((params.gamma_s + 1.0) * params.sigma_u2, xi(params) * su4 / n)
    raise ValueError(f"{state.name} is not an LBT hypothesis")


def lbt_error_probs(
    threshold: float,
    params: SystemParams,
    variant: LbtVariant = DEFAULT_VARIANT,
    tau: float | None = None,
) -> tuple[float, float]:
    """``(pf, pm)`` of the LBT energy detector at ``threshold``."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    n = _n(params, tau)
    su2 = params.sigma_u2
    pf = q_function((threshold / su2 - 1.0) * math.sqrt(n / _h0_var_factor(variant)))
    z = (threshold - (params.gamma_s + 1.0) * su2) / (_h1_sd_factor(params, variant) * su2)
    pm = 1.0 - q_function(z * math.sqrt(n))
    return pf, pm


def lbt_threshold(
    pm: float,
    params: SystemParams,
    variant: LbtVariant = DEFAULT_VARIANT,
    tau: float | None = None,
) -> float:
    """Threshold meeting miss probability ``pm`` under the chosen detector model."""
    if not 0.0 < pm < 1.0:
        raise ValueError(f"pm must lie in (0, 1), got {pm}")
    n = _n(params, tau)
    spread = _h1_sd_factor(params, variant) * q_inverse(1.0 - pm) / math.sqrt(n)
    return ((params.gamma_s + 1.0) + spread) * params.sigma_u2


def lbt_pf_given_pm(
    pm: float,
    tau: float | None,
    params: SystemParams,
    variant: LbtVariant = DEFAULT_VARIANT,
) -> float:
    """False-alarm probability at miss target ``pm`` with sensing time ``tau``.

    ``tau=None`` uses ``params.tau``.
    """
    if not 0.0 < pm < 1.0:
        raise ValueError(f"pm must lie in (0, 1), got {pm}")
    n = _n(params, tau)
    arg = _h1_sd_factor(params, variant) * q_inverse(1.0 - pm) + params.gamma_s * math.sqrt(n)
    return q_function(arg / math.sqrt(_h0_var_factor(variant)))


def per_antenna_power(params: SystemParams, tau: float | None = None) -> float:
    """Transmit power per antenna when the slot energy budget is spent in ``T - tau``."""
    tau = params.tau if tau is None else tau
    if not 0.0 <= tau < params.slot_T:
        raise ValueError(f"tau must lie in [0, slot_T), got {tau}")
    return params.sigma_s2 / 2.0 * params.slot_T / (params.slot_T - tau)


def log2det_2x2(h: np.ndarray, snr: float) -> np.ndarray:
    """``log2 det(I + snr * H H^H)`` for a stack of 2x2 matrices.

    Uses ``det(I + aG) = 1 + a tr(G) + a^2 det(G)`` with ``G = H H^H``.
    """
    fro = np.sum(np.abs(h) ** 2, axis=(-2, -1))
    det = np.abs(h[..., 0, 0] * h[..., 1, 1] - h[..., 0, 1] * h[..., 1, 0]) ** 2
    return np.log2(1.0 + snr * fro + snr**2 * det)


def _rate_block(params, snr, count, seed):
    rng = np.random.default_rng(seed)
    vals = log2det_2x2(gen_mimo_channel(params, rng, size=count), snr)
    return vals.sum(), np.square(vals).sum()


def ergodic_rate_mc(
    params: SystemParams,
    draws: int = DEFAULT_DRAWS,
    seed=0,
    workers: int = 1,
    tau: float | None = None,
) -> tuple[float, float]:
    """Monte-Carlo ergodic rate of the 2x2 link and its standard error.

    Draws are split into fixed-size blocks, each with its own child stream of
    ``seed``, so the result does not depend on ``workers``.
    """
    if draws < 1:
        raise ValueError("draws must be >= 1")
    snr = per_antenna_power(params, tau) / params.sigma_u2
    sizes = [RATE_BLOCK] * (draws // RATE_BLOCK)
    if draws % RATE_BLOCK:
        sizes.append(draws % RATE_BLOCK)
    children = seed_sequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, children))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda job: _rate_block(params, snr, *job), jobs))
    else:
        parts = [_rate_block(params, snr, *job) for job in jobs]
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    mean = total / draws
    if draws < 2:
        return float(mean), float("nan")
    var = max(total_sq / draws - mean**2, 0.0) * draws / (draws - 1)
    return float(mean), float(math.sqrt(var / draws))


def rate_high_snr(params: SystemParams, tau: float | None = None) -> float:
    """High-SNR approximation of the ergodic rate (drops the identity term)."""
    tau = params.tau if tau is None else tau
    gamma_t = derived_ratios(params).gamma_t
    if gamma_t <= 0:
        raise ValueError("high-SNR rate needs gamma_t > 0")
    T = params.slot_T
    return (
        2.0 * math.log2(T / (2.0 * (T - tau)))
        + 2.0 * math.log2(gamma_t)
        + math.log2(1.0 - params.beta_t**2)
        + math.log2(1.0 - params.beta_r**2)
    )


def lbt_overall(
    params: SystemParams,
    variant: LbtVariant = DEFAULT_VARIANT,
    draws: int = DEFAULT_DRAWS,
    seed=0,
    workers: int = 1,
) -> LbtReport:
    threshold = lbt_threshold(params.pm_target, params, variant)
    pf, pm = lbt_error_probs(threshold, params, variant)
    if params.sigma_s2 == 0:
        rate, stderr, approx = 0.0, 0.0, float("-inf")
    else:
        rate, stderr = ergodic_rate_mc(params, draws, seed, workers)
        approx = rate_high_snr(params)
    return LbtReport(
        pf=pf,
        pm=pm,
        threshold=threshold,
        rate_exact=rate,
        rate_exact_stderr=stderr,
        rate_approx=approx,
        throughput=rate * (1.0 - pf),
        variant=LbtVariant(variant),
    )
