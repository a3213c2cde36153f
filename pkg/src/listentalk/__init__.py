"""Full-duplex listen-and-talk vs half-duplex listen-before-talk spectrum access.

Closed-form sensing and throughput analysis for both protocols, a slot-level
Monte-Carlo simulator to check it, and the sweeps that compare them.
"""

from .lat import LatReport, LatThresholds, lat_overall, lat_thresholds, pf_given_pm, steady_state
from .lbt import DEFAULT_VARIANT, LbtReport, LbtVariant, ergodic_rate_mc, lbt_overall, rate_high_snr
from .params import JointState, SystemParams, derived_ratios
from .simulator import EmpiricalReport, SimConfig, run_lat, run_lbt, verify_moments
from .switching import ModeDecision, delta_c, roc_sweep, select_mode, sweep_beta, sweep_power

__version__ = "0.1.0"

__all__ = [
    "SystemParams",
    "JointState",
    "derived_ratios",
    "LatReport",
    "LatThresholds",
    "lat_overall",
    "lat_thresholds",
    "pf_given_pm",
    "steady_state",
    "LbtVariant",
    "DEFAULT_VARIANT",
    "LbtReport",
    "lbt_overall",
    "ergodic_rate_mc",
    "rate_high_snr",
    "SimConfig",
    "EmpiricalReport",
    "run_lat",
    "run_lbt",
    "verify_moments",
    "ModeDecision",
    "select_mode",
    "delta_c",
    "sweep_beta",
    "sweep_power",
    "roc_sweep",
]
