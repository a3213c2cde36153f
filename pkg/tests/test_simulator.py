import math

import numpy as np
import pytest
from scipy import integrate, optimize, special, stats

from listentalk.lat import lat_overall, pf_given_pm, steady_state
from listentalk.lbt import LbtVariant, ergodic_rate_mc, lbt_pf_given_pm, lbt_threshold
from listentalk.params import JointState, SystemParams, derived_ratios
from listentalk.simulator import (
    SimConfig,
    empirical_pf_at_pm,
    empirical_roc,
    lat_epoch,
    run_lat,
    run_lbt,
    verify_moments,
)

P = SystemParams()
SIM = SimConfig(n_slots=20_000, burn_in=100, seed=42)


# --- exact-distribution oracles (no Gaussian approximation) ----------------

def exact_lat_errors(p, eps0, eps1):
    """The LAT statistic is Gamma(N, level/N) exactly for CSCG samples."""
    n = p.n_lat
    gi = derived_ratios(p).gamma_i
    pf0 = special.gammaincc(n, n * eps0)
    pm0 = special.gammainc(n, n * eps0 / (1 + p.gamma_s))
    pf1 = special.gammaincc(n, n * eps1 / (1 + gi))
    pm1 = special.gammainc(n, n * eps1 / (1 + p.gamma_s + gi))
    return pf0, pm0, pf1, pm1


def exact_lbt_pf(p, eps):
    n = p.n_lbt
    return special.gammaincc(2 * n, 2 * n * eps / p.sigma_u2)


def exact_lbt_pm(p, eps):
    """H1 statistic = (l1 G1 + l2 G2) / (2N), G ~ Gamma(N), eigen-levels l = 1 + gamma_s (1 +- beta)."""
    n = p.n_lbt
    l1 = 1 + p.gamma_s * (1 + p.beta_s)
    l2 = 1 + p.gamma_s * (1 - p.beta_s)
    def f(g):
        return stats.gamma.pdf(g, n) * stats.gamma.cdf((2 * n * eps - g * l1) / l2, n)
    return integrate.quad(f, 0, 2 * n * eps / l1, limit=400, points=[n])[0]


def test_exact_oracle_sanity():
    # Gaussian and exact agree closely for large N
    p = P.replace(fs=1e8)
    eps = 1.0 + 2.0 / math.sqrt(p.n_lat)
    assert special.gammaincc(p.n_lat, p.n_lat * eps) == pytest.approx(stats.norm.sf(2.0), abs=2e-3)


# --- LAT ---------------------------------------------------------------------

def test_lat_analytic_thresholds_match_exact_chain():
    r = run_lat(P, SIM)
    th = lat_overall(P).thresholds
    assert r.thresholds == (th.eps0, th.eps1)
    exact = exact_lat_errors(P, th.eps0, th.eps1)
    pf0, pm0, pf1, pm1 = exact
    ss = steady_state(pm0, pm1, pf0, pf1)
    assert abs(r.p00_hat - ss.p00) <= r.ci_halfwidth["p00_hat"]
    assert abs(r.p11_hat - ss.p11) <= r.ci_halfwidth["p11_hat"]
    for key, val in zip(("pf0", "pm0", "pf1", "pm1"), exact):
        assert abs(r.state_errors[key] - val) <= r.ci_halfwidth[key]


def test_lat_calibrated_operating_point():
    r = run_lat(P, SimConfig(n_slots=40_000, seed=7, threshold_mode="calibrated"))
    assert abs(r.p11_hat - 0.3) <= r.ci_halfwidth["p11_hat"]
    assert abs(r.p00_hat - lat_overall(P).pf_overall) <= r.ci_halfwidth["p00_hat"]


@pytest.mark.parametrize("mode", ["analytic", "calibrated"])
def test_lat_without_interference(mode):
    p = P.replace(chi=0.0)
    r = run_lat(p, SimConfig(n_slots=20_000, seed=3, threshold_mode=mode))
    assert abs(r.p00_hat - pf_given_pm(0.3, False, p)) <= r.ci_halfwidth["p00_hat"]


def test_lat_chain_normalisation_and_throughput():
    r = run_lat(P, SIM)
    assert r.p00_hat + r.p10_hat == 1.0
    assert r.p01_hat + r.p11_hat == 1.0
    rate = math.log2(1 + derived_ratios(P).gamma_t)
    assert r.throughput_hat == pytest.approx(rate * r.p10_hat)


def test_lat_deterministic():
    a, b = run_lat(P, SIM), run_lat(P, SIM)
    assert a == b


def test_lat_initial_state_washes_out():
    a = run_lat(P, SIM)
    b = run_lat(P, SimConfig(n_slots=SIM.n_slots, seed=SIM.seed, initial_active=True))
    assert abs(a.p00_hat - b.p00_hat) <= math.hypot(a.ci_halfwidth["p00_hat"], b.ci_halfwidth["p00_hat"])


def test_lat_one_slot_decision_lag():
    th = lat_overall(P).thresholds
    active, stat = lat_epoch(P, False, 5000, th.eps0, th.eps1, np.random.default_rng(0))
    thr = np.where(active, th.eps1, th.eps0)
    assert not active[0]
    assert np.array_equal(active[1:], stat[:-1] <= thr[:-1])


def test_lat_ci_shrinks_with_slots():
    small = run_lat(P, SimConfig(n_slots=10_000, seed=1))
    large = run_lat(P, SimConfig(n_slots=100_000, seed=1))
    ratio = small.ci_halfwidth["p00_hat"] / large.ci_halfwidth["p00_hat"]
    assert ratio == pytest.approx(math.sqrt(10), rel=0.05)
    assert abs(small.p00_hat - large.p00_hat) <= small.ci_halfwidth["p00_hat"] + large.ci_halfwidth["p00_hat"]


def test_lat_multiple_epochs():
    r = run_lat(P, SimConfig(n_slots=5_000, n_epochs=4, seed=2))
    assert r.counts["idle"] == 4 * 4_900


# --- LBT ---------------------------------------------------------------------

def test_lbt_calibrated_hits_miss_target():
    r = run_lbt(P, SimConfig(n_slots=100_000, seed=4, threshold_mode="calibrated"))
    assert abs(r.pm_hat - 0.3) <= r.ci_halfwidth["pm_hat"]


@pytest.mark.parametrize("variant", list(LbtVariant))
def test_lbt_analytic_threshold_matches_exact(variant):
    sim = SimConfig(n_slots=50_000, seed=5, variant=variant)
    r = run_lbt(P, sim)
    eps = lbt_threshold(0.3, P, variant)
    assert r.thresholds == (eps,)
    assert abs(r.pf_hat - exact_lbt_pf(P, eps)) <= r.ci_halfwidth["pf_hat"]
    assert abs(r.pm_hat - exact_lbt_pm(P, eps)) <= r.ci_halfwidth["pm_hat"]


def test_lbt_throughput_matches_rate_times_idle_fraction():
    r = run_lbt(P, SimConfig(n_slots=50_000, seed=6))
    rate, _ = ergodic_rate_mc(P, 200_000, seed=1)
    # per-slot rate sd is about 1.5 bits; 3 sigma over ~33k transmitting slots
    assert r.throughput_hat == pytest.approx(rate * (1 - r.pf_hat), abs=0.05)


def test_lbt_deterministic():
    sim = SimConfig(n_slots=5_000, seed=8)
    assert run_lbt(P, sim) == run_lbt(P, sim)


def test_exact_pf_at_matched_pm_favours_corrected_variant():
    thr = optimize.brentq(lambda x: exact_lbt_pm(P, x) - 0.3, 0.8, 1.5, xtol=1e-12)
    exact = exact_lbt_pf(P, thr)
    gaps = {v: abs(exact - lbt_pf_given_pm(0.3, None, P, v)) for v in LbtVariant}
    assert min(gaps, key=gaps.get) is LbtVariant.CORRECTED
    assert gaps[LbtVariant.CORRECTED] < 2e-3


# --- moments -------------------------------------------------------------------

def test_verify_moments_examples():
    p = P.replace(sigma_s2=0.798 / 0.04)
    chk = verify_moments("LAT", JointState.H10, p, 100_000, seed=1)
    assert chk.passed
    assert chk.expected.variance == pytest.approx(1.798**2 / 200)
    assert verify_moments("LBT", JointState.H1, P.replace(beta_s=0.9), 100_000, seed=2).passed


def test_verify_moments_pure_noise():
    p = P.replace(gamma_s=0.0, chi=0.0, beta_s=0.0)
    for i, s in enumerate((JointState.H00, JointState.H01, JointState.H10, JointState.H11)):
        chk = verify_moments("LAT", s, p, 20_000, seed=i)
        assert chk.passed and chk.expected.mean == 1.0
    for s in (JointState.H0, JointState.H1):
        assert verify_moments("LBT", s, p, 20_000, seed=9).passed


def test_verify_moments_detects_wrong_h0_row():
    chk = verify_moments("LBT", JointState.H0, P, 50_000, seed=3, variant=LbtVariant.CONSISTENT)
    assert not chk.passed and chk.z_variance < -10


def test_verify_moments_input_checks():
    with pytest.raises(ValueError):
        verify_moments("LAT", JointState.H00, P, 100)
    with pytest.raises(ValueError):
        verify_moments("XYZ", JointState.H00, P, 10_000)


# --- ROC -----------------------------------------------------------------------

def test_empirical_roc_extremes_and_monotone():
    grid = [1e-6, 0.9, 1.0, 1.1, 1.3, 100.0]
    roc = empirical_roc("LAT", P, grid, 5_000, seed=1)
    assert roc[0] == (1.0, 0.0)
    assert roc[-1] == (0.0, 1.0)
    pf, pm = np.array(roc).T
    assert np.all(np.diff(pf) <= 0) and np.all(np.diff(pm) >= 0)
    lbt = empirical_roc("LBT", P, grid, 5_000, seed=1)
    assert lbt[0] == (1.0, 0.0) and lbt[-1] == (0.0, 1.0)
    with pytest.raises(ValueError):
        empirical_roc("LAT", P, [1.2, 1.0], 100)


@pytest.mark.parametrize("pm", [0.1, 0.3, 0.5])
def test_active_roc_worse_with_more_interference(pm):
    lo, _, se_lo = empirical_pf_at_pm("LAT", P.replace(chi=0.2), pm, 50_000, seed=10, su_active=True)
    hi, _, se_hi = empirical_pf_at_pm("LAT", P.replace(chi=0.4), pm, 50_000, seed=11, su_active=True)
    assert hi > lo + 3 * math.hypot(se_lo, se_hi)


def test_sim_config_validation():
    with pytest.raises(ValueError):
        SimConfig(n_slots=10, burn_in=10)
    with pytest.raises(ValueError):
        SimConfig(threshold_mode="magic")
