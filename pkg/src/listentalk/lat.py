"""Closed-form sensing and throughput analysis of the full-duplex LAT protocol.

The SU senses for the whole slot (``N = fs * T`` samples) while its other
antenna transmits, so the test statistic sees residual self-interference
whenever the SU is active. Two thresholds are used: ``eps0`` while silent and
``eps1`` while active, both chosen to hit the same miss-detection target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import JointState, SystemParams, derived_ratios
from .stats_core import MomentPair, q_function, q_inverse

__all__ = [
    "LatThresholds",
    "SteadyState",
    "LatReport",
    "DegenerateChainError",
    "lat_moments",
    "lat_error_probs",
    "threshold_for_pm",
    "lat_thresholds",
    "pf_given_pm",
    "steady_state",
    "lat_overall",
]


class DegenerateChainError(ValueError):
    """Both states of a decision chain are absorbing; no unique steady state."""


@dataclass(frozen=True)
class LatThresholds:
    eps0: float
    eps1: float


@dataclass(frozen=True)
class SteadyState:
    """Occupancies ``p_ij``: SU activity ``i`` given PU state ``j``."""

    p00: float
    p01: float
    p10: float
    p11: float


@dataclass(frozen=True)
class LatReport:
    pf0: float
    pm0: float
    pf1: float
    pm1: float
    pf_overall: float
    pm_overall: float
    rate: float
    throughput: float
    thresholds: LatThresholds


def _power_factor(state: JointState, params: SystemParams) -> float:
    gamma_i = derived_ratios(params).gamma_i
    return 1.0 + params.gamma_s * state.pu_busy + gamma_i * state.su_active


def lat_moments(state: JointState, params: SystemParams) -> MomentPair:
    """Mean and variance of the LAT energy statistic under ``state``."""
    if not state.is_lat:
        raise ValueError(f"{state.name} is not a LAT hypothesis")
    mean = _power_factor(state, params) * params.sigma_u2
    return MomentPair(mean, mean**2 / params.n_lat)


def lat_error_probs(thresholds: LatThresholds, params: SystemParams) -> tuple[float, float, float, float]:
    """``(pf0, pm0, pf1, pm1)`` under the Gaussian approximation of the statistic."""
    if thresholds.eps0 <= 0 or thresholds.eps1 <= 0:
        raise ValueError("thresholds must be positive")
    root_n = math.sqrt(params.n_lat)
    su2 = params.sigma_u2

    def tail(eps, state):
        return q_function((eps / (_power_factor(state, params) * su2) - 1.0) * root_n)

    pf0 = tail(thresholds.eps0, JointState.H00)
    pm0 = 1.0 - tail(thresholds.eps0, JointState.H01)
    pf1 = tail(thresholds.eps1, JointState.H10)
    pm1 = 1.0 - tail(thresholds.eps1, JointState.H11)
    return pf0, pm0, pf1, pm1


def threshold_for_pm(pm: float, su_active: bool, params: SystemParams) -> float:
    """Detection threshold that yields miss probability ``pm`` in the given SU state."""
    if not 0.0 < pm < 1.0:
        raise ValueError(f"pm must lie in (0, 1), got {pm}")
    busy = JointState.lat(True, su_active)
    return (q_inverse(1.0 - pm) / math.sqrt(params.n_lat) + 1.0) * _power_factor(busy, params) * params.sigma_u2


def lat_thresholds(params: SystemParams, pm: float | None = None) -> LatThresholds:
    pm = params.pm_target if pm is None else pm
    return LatThresholds(threshold_for_pm(pm, False, params), threshold_for_pm(pm, True, params))


def pf_given_pm(pm: float, su_active: bool, params: SystemParams) -> float:
    """False-alarm probability at the threshold that meets ``pm``, in closed form."""
    if not 0.0 < pm < 1.0:
        raise ValueError(f"pm must lie in (0, 1), got {pm}")
    gamma_i = derived_ratios(params).gamma_i if su_active else 0.0
    # effective SNR over the idle-state power level
    snr = params.gamma_s / (1.0 + gamma_i)
    return q_function(q_inverse(1.0 - pm) * (1.0 + snr) + snr * math.sqrt(params.n_lat))


def steady_state(pm0: float, pm1: float, pf0: float, pf1: float) -> SteadyState:
    """Stationary occupancies of the two per-PU-state decision chains.

    Busy PU: silent -> active with prob ``pm0``, active -> silent with ``1 - pm1``.
    Idle PU: silent -> active with ``1 - pf0``, active -> silent with ``pf1``.
    """
    for name, v in (("pm0", pm0), ("pm1", pm1), ("pf0", pf0), ("pf1", pf1)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    busy_den = 1.0 + pm0 - pm1
    idle_den = 1.0 - pf0 + pf1
    if busy_den <= 0.0:
        raise DegenerateChainError("busy-PU chain: pm0 = 0 and pm1 = 1, both states absorbing")
    if idle_den <= 0.0:
        raise DegenerateChainError("idle-PU chain: pf0 = 1 and pf1 = 0, both states absorbing")
    p11 = pm0 / busy_den
    p00 = pf1 / idle_den
    return SteadyState(p00=p00, p01=1.0 - p11, p10=1.0 - p00, p11=p11)


def lat_overall(params: SystemParams) -> LatReport:
    """Thresholds, error probabilities, steady state and throughput at ``pm_target``.

    Both SU states use the same miss target, so the overall miss probability
    equals ``pm_target``. The overall false alarm is the idle-PU occupancy of
    the silent state, and throughput is ``log2(1 + gamma_t) * (1 - pf)``.
    """
    thresholds = lat_thresholds(params)
    pf0, pm0, pf1, pm1 = lat_error_probs(thresholds, params)
    ss = steady_state(pm0, pm1, pf0, pf1)
    rate = math.log2(1.0 + derived_ratios(params).gamma_t)
    return LatReport(
        pf0=pf0,
        pm0=pm0,
        pf1=pf1,
        pm1=pm1,
        pf_overall=ss.p00,
        pm_overall=ss.p11,
        rate=rate,
        throughput=rate * (1.0 - ss.p00),
        thresholds=thresholds,
    )
