"""Slot-level Monte-Carlo engine for both protocols.

The PU state is held fixed for an epoch of ``n_slots`` slots; idle and busy
epochs are simulated separately, each with its own child random stream.
Within an LAT epoch the SU decision made at the end of slot ``t`` sets its
activity (and therefore the threshold and the self-interference) in slot
``t + 1``.

Thresholds come from the closed forms (``threshold_mode="analytic"``) or
from a pilot run that places them at the empirical ``pm_target`` quantile of
the busy-PU statistic (``"calibrated"``). The calibrated mode checks the
false-alarm/miss relation at the operating point the analysis describes,
free of the Gaussian approximation's bias in the miss probability itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import gen_lbt_samples, gen_mimo_channel, lat_received, pu_signal
from .lat import lat_moments, lat_thresholds
from .lbt import DEFAULT_VARIANT, LbtVariant, lbt_moments, lbt_threshold, log2det_2x2, per_antenna_power
from .params import JointState, SystemParams, derived_ratios
from .stats_core import MomentPair, moment_estimate, power, sample_cscg, seed_sequence

__all__ = [
    "SimConfig",
    "EmpiricalReport",
    "MomentCheck",
    "lat_statistics",
    "lbt_statistics",
    "lat_epoch",
    "run_lat",
    "run_lbt",
    "verify_moments",
    "empirical_roc",
    "empirical_pf_at_pm",
]

# complex samples held in memory per chunk
CHUNK_SAMPLES = 1 << 21


@dataclass(frozen=True)
class SimConfig:
    n_slots: int = 10_000
    n_epochs: int = 1
    burn_in: int = 100
    seed: int = 0
    threshold_mode: str = "analytic"
    n_calibration: int | None = None
    initial_active: bool = False
    variant: LbtVariant = DEFAULT_VARIANT

    def __post_init__(self):
        if self.n_slots < 1 or self.n_epochs < 1:
            raise ValueError("n_slots and n_epochs must be >= 1")
        if not 0 <= self.burn_in < self.n_slots:
            raise ValueError("burn_in must satisfy 0 <= burn_in < n_slots")
        if self.threshold_mode not in ("analytic", "calibrated"):
            raise ValueError(f"unknown threshold_mode {self.threshold_mode!r}")

    @property
    def calibration_count(self) -> int:
        if self.n_calibration is not None:
            return self.n_calibration
        return max(self.n_slots * self.n_epochs, 10_000)


@dataclass
class EmpiricalReport:
    """Empirical counterpart of the closed-form sensing report.

    For LAT, ``p_ij`` is the frequency of SU activity ``i`` during PU state
    ``j`` and ``state_errors`` holds per-SU-state error frequencies
    (``pf0``, ``pm0``, ``pf1``, ``pm1``). For LBT only ``pf_hat``,
    ``pm_hat`` and ``throughput_hat`` are meaningful and the ``p_ij`` mirror
    the per-slot decision frequencies.
    """

    protocol: str
    p00_hat: float
    p01_hat: float
    p10_hat: float
    p11_hat: float
    pf_hat: float
    pm_hat: float
    throughput_hat: float
    ci_halfwidth: dict = field(default_factory=dict)
    state_errors: dict = field(default_factory=dict)
    thresholds: tuple = ()
    counts: dict = field(default_factory=dict)


def _ci3(p: float, n: int) -> float:
    return 3.0 * math.sqrt(max(p * (1.0 - p), 0.0) / n) if n else float("nan")


def _chunks(total: int, per_item: int):
    step = max(1, CHUNK_SAMPLES // per_item)
    for start in range(0, total, step):
        yield min(step, total - start)


def lat_statistics(state: JointState, params: SystemParams, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` independent LAT test statistics, each over ``params.n_lat`` samples."""
    N = params.n_lat
    out = [np.mean(power(lat_received(state, params, (k, N), rng)), axis=1) for k in _chunks(n, N)]
    return np.concatenate(out)


def lbt_statistics(state: JointState, params: SystemParams, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` independent LBT test statistics, each over ``params.n_lbt`` two-antenna samples."""
    N = params.n_lbt
    out = [np.mean(gen_lbt_samples(state, params, (k, N), rng), axis=1) for k in _chunks(n, 2 * N)]
    return np.concatenate(out)


def _calibrated_lat(params: SystemParams, n: int, seed) -> tuple[float, float]:
    rngs = [np.random.default_rng(s) for s in seed_sequence(seed).spawn(2)]
    eps0 = np.quantile(lat_statistics(JointState.H01, params, n, rngs[0]), params.pm_target)
    eps1 = np.quantile(lat_statistics(JointState.H11, params, n, rngs[1]), params.pm_target)
    return float(eps0), float(eps1)


def lat_epoch(
    params: SystemParams,
    pu_busy: bool,
    n_slots: int,
    eps0: float,
    eps1: float,
    rng: np.random.Generator,
    initial_active: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Run one fixed-PU-state epoch of the LAT decision chain.

    Returns ``(active, stat)``: SU activity during each slot and the test
    statistic observed in it. The SU transmits in slot ``t + 1`` iff
    ``stat[t] <= threshold(active[t])``.
    """
    N = params.n_lat
    si_power = params.chi**2 * params.sigma_s2
    active = np.empty(n_slots, dtype=bool)
    stat = np.empty(n_slots)
    current = bool(initial_active)
    t = 0
    for k in _chunks(n_slots, 2 * N):
        base = sample_cscg(params.sigma_u2, (k, N), rng)
        if pu_busy:
            base += pu_signal(params, (k, N), rng)
        si = sample_cscg(si_power, (k, N), rng)
        m_silent = np.mean(power(base), axis=1)
        m_active = np.mean(power(base + si), axis=1)
        for j in range(k):
            m = m_active[j] if current else m_silent[j]
            active[t] = current
            stat[t] = m
            current = m <= (eps1 if current else eps0)
            t += 1
    return active, stat


def run_lat(params: SystemParams, sim: SimConfig) -> EmpiricalReport:
    """Empirical LAT occupancies, error rates and throughput."""
    root = seed_sequence(sim.seed)
    cal_seed, *epoch_seeds = root.spawn(1 + 2 * sim.n_epochs)
    if sim.threshold_mode == "calibrated":
        eps0, eps1 = _calibrated_lat(params, sim.calibration_count, cal_seed)
    else:
        th = lat_thresholds(params)
        eps0, eps1 = th.eps0, th.eps1

    tallies = {}
    for pu_busy in (False, True):
        act_all, stat_all = [], []
        for e in range(sim.n_epochs):
            rng = np.random.default_rng(epoch_seeds[2 * e + int(pu_busy)])
            active, stat = lat_epoch(params, pu_busy, sim.n_slots, eps0, eps1, rng, sim.initial_active)
            act_all.append(active[sim.burn_in:])
            stat_all.append(stat[sim.burn_in:])
        tallies[pu_busy] = (np.concatenate(act_all), np.concatenate(stat_all))

    idle_act, idle_stat = tallies[False]
    busy_act, busy_stat = tallies[True]
    n_idle, n_busy = idle_act.size, busy_act.size

    p10 = float(idle_act.mean())
    p11 = float(busy_act.mean())
    idle_thr = np.where(idle_act, eps1, eps0)
    busy_thr = np.where(busy_act, eps1, eps0)
    pf_hat = float(np.mean(idle_stat > idle_thr))
    pm_hat = float(np.mean(busy_stat <= busy_thr))

    def cond(mask, hit):
        n = int(mask.sum())
        return (float(hit[mask].mean()) if n else float("nan")), n

    pf0, n00 = cond(~idle_act, idle_stat > eps0)
    pf1, n10 = cond(idle_act, idle_stat > eps1)
    pm0, n01 = cond(~busy_act, busy_stat <= eps0)
    pm1, n11 = cond(busy_act, busy_stat <= eps1)

    rate = math.log2(1.0 + derived_ratios(params).gamma_t)
    ci = {
        "p00_hat": _ci3(1 - p10, n_idle),
        "p11_hat": _ci3(p11, n_busy),
        "pf_hat": _ci3(pf_hat, n_idle),
        "pm_hat": _ci3(pm_hat, n_busy),
        "pf0": _ci3(pf0, n00),
        "pf1": _ci3(pf1, n10),
        "pm0": _ci3(pm0, n01),
        "pm1": _ci3(pm1, n11),
    }
    ci["p10_hat"], ci["p01_hat"] = ci["p00_hat"], ci["p11_hat"]
    ci["throughput_hat"] = rate * ci["p00_hat"]
    return EmpiricalReport(
        protocol="LAT",
        p00_hat=1.0 - p10,
        p01_hat=1.0 - p11,
        p10_hat=p10,
        p11_hat=p11,
        pf_hat=pf_hat,
        pm_hat=pm_hat,
        throughput_hat=rate * p10,
        ci_halfwidth=ci,
        state_errors={"pf0": pf0, "pm0": pm0, "pf1": pf1, "pm1": pm1},
        thresholds=(eps0, eps1),
        counts={"idle": n_idle, "busy": n_busy, "H00": n00, "H10": n10, "H01": n01, "H11": n11},
    )


def run_lbt(params: SystemParams, sim: SimConfig) -> EmpiricalReport:
    """Empirical LBT error rates and throughput.

    Every slot senses for ``tau`` and transmits for the rest of the slot iff
    the channel is declared idle; a transmitting idle-PU slot is credited the
    instantaneous 2x2 rate of a fresh channel draw at ``P_each``.
    """
    root = seed_sequence(sim.seed)
    cal_seed, *epoch_seeds = root.spawn(1 + 2 * sim.n_epochs)
    if sim.threshold_mode == "calibrated":
        cal = lbt_statistics(JointState.H1, params, sim.calibration_count, np.random.default_rng(cal_seed))
        eps = float(np.quantile(cal, params.pm_target))
    else:
        eps = lbt_threshold(params.pm_target, params, sim.variant)

    snr = per_antenna_power(params) / params.sigma_u2
    n_keep = sim.n_slots - sim.burn_in
    false_alarms = misses = 0
    credited = 0.0
    for e in range(sim.n_epochs):
        rng0 = np.random.default_rng(epoch_seeds[2 * e])
        rng1 = np.random.default_rng(epoch_seeds[2 * e + 1])
        m0 = lbt_statistics(JointState.H0, params, sim.n_slots, rng0)[sim.burn_in:]
        m1 = lbt_statistics(JointState.H1, params, sim.n_slots, rng1)[sim.burn_in:]
        idle_tx = m0 <= eps
        false_alarms += int(np.count_nonzero(~idle_tx))
        misses += int(np.count_nonzero(m1 <= eps))
        n_tx = int(np.count_nonzero(idle_tx))
        if n_tx and params.sigma_s2 > 0:
            credited += float(log2det_2x2(gen_mimo_channel(params, rng0, size=n_tx), snr).sum())

    n = n_keep * sim.n_epochs
    pf_hat, pm_hat = false_alarms / n, misses / n
    return EmpiricalReport(
        protocol="LBT",
        p00_hat=pf_hat,
        p01_hat=1.0 - pm_hat,
        p10_hat=1.0 - pf_hat,
        p11_hat=pm_hat,
        pf_hat=pf_hat,
        pm_hat=pm_hat,
        throughput_hat=credited / n,
        ci_halfwidth={"pf_hat": _ci3(pf_hat, n), "pm_hat": _ci3(pm_hat, n)},
        thresholds=(eps,),
        counts={"idle": n, "busy": n},
    )


@dataclass(frozen=True)
class MomentCheck:
    protocol: str
    state: JointState
    passed: bool
    measured: MomentPair
    expected: MomentPair
    z_mean: float
    z_variance: float


def verify_moments(
    protocol: str,
    state: JointState,
    params: SystemParams,
    n: int = 100_000,
    seed=0,
    variant: LbtVariant = DEFAULT_VARIANT,
) -> MomentCheck:
    """Compare sample moments of ``n`` statistics against the closed forms.

    Passes when both mean and variance lie within three standard errors of
    the estimator (the variance's standard error uses the sample fourth
    central moment).
    """
    if n < 10_000:
        raise ValueError("verify_moments needs n >= 10_000")
    rng = np.random.default_rng(seed_sequence(seed))
    if protocol.upper() == "LAT":
        stats = lat_statistics(state, params, n, rng)
        expected = lat_moments(state, params)
    elif protocol.upper() == "LBT":
        stats = lbt_statistics(state, params, n, rng)
        expected = lbt_moments(state, params, variant)
    else:
        raise ValueError(f"unknown protocol {protocol!r}")
    measured = moment_estimate(stats)
    centred = stats - measured.mean
    m4 = float(np.mean(centred**4))
    se_mean = math.sqrt(measured.variance / n)
    se_var = math.sqrt(max(m4 - measured.variance**2, 0.0) / n)
    z_mean = (measured.mean - expected.mean) / se_mean if se_mean else 0.0
    z_var = (measured.variance - expected.variance) / se_var if se_var else 0.0
    passed = abs(z_mean) <= 3.0 and abs(z_var) <= 3.0
    return MomentCheck(protocol.upper(), state, passed, measured, expected, z_mean, z_var)


def _hypothesis_pair(protocol: str, params, n, seed, su_active):
    r0, r1 = [np.random.default_rng(s) for s in seed_sequence(seed).spawn(2)]
    if protocol.upper() == "LAT":
        m0 = lat_statistics(JointState.lat(False, su_active), params, n, r0)
        m1 = lat_statistics(JointState.lat(True, su_active), params, n, r1)
    elif protocol.upper() == "LBT":
        m0 = lbt_statistics(JointState.H0, params, n, r0)
        m1 = lbt_statistics(JointState.H1, params, n, r1)
    else:
        raise ValueError(f"unknown protocol {protocol!r}")
    return m0, m1


def empirical_roc(
    protocol: str,
    params: SystemParams,
    threshold_grid,
    n_per_point: int,
    seed=0,
    su_active: bool = False,
) -> list[tuple[float, float]]:
    """Empirical ``(pf, pm)`` for each threshold.

    One set of statistics per hypothesis is shared by every threshold, so the
    curve is exactly monotone along an ascending grid.
    """
    grid = np.asarray(threshold_grid, dtype=float)
    if grid.size == 0 or np.any(np.diff(grid) < 0):
        raise ValueError("threshold_grid must be non-empty and ascending")
    m0, m1 = _hypothesis_pair(protocol, params, n_per_point, seed, su_active)
    m0.sort()
    m1.sort()
    pf = 1.0 - np.searchsorted(m0, grid, side="right") / m0.size
    pm = np.searchsorted(m1, grid, side="right") / m1.size
    return list(zip(pf.tolist(), pm.tolist()))


def empirical_pf_at_pm(
    protocol: str,
    params: SystemParams,
    pm: float,
    n: int,
    seed=0,
    su_active: bool = False,
) -> tuple[float, float, float]:
    """False-alarm frequency at the threshold whose empirical miss rate is ``pm``.

    Returns ``(pf_hat, threshold, se)``; ``se`` combines the binomial error in
    ``pf_hat`` with the propagated error of the empirical quantile.
    """
    m0, m1 = _hypothesis_pair(protocol, params, n, seed, su_active)
    eps = float(np.quantile(m1, pm))
    pf = float(np.mean(m0 > eps))
    # density ratio f0/f1 at the threshold, from histogram counts in a small window
    width = 0.05 * float(np.std(m1))
    f0 = np.count_nonzero(np.abs(m0 - eps) < width) / (2 * width * n)
    f1 = np.count_nonzero(np.abs(m1 - eps) < width) / (2 * width * n)
    ratio = f0 / f1 if f1 > 0 else 0.0
    se = math.sqrt(pf * (1 - pf) / n + ratio**2 * pm * (1 - pm) / n)
    return pf, eps, se
