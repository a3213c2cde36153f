"""Protocol selection and the parameter sweeps behind the throughput figures."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .lat import LatReport, lat_overall, pf_given_pm
from .lbt import DEFAULT_DRAWS, DEFAULT_VARIANT, LbtReport, LbtVariant, lbt_overall, lbt_pf_given_pm
from .params import SystemParams, db_to_linear

__all__ = [
    "ModeDecision",
    "SweepPoint",
    "SweepResult",
    "select_mode",
    "delta_c",
    "crossovers",
    "sweep_beta",
    "sweep_power",
    "roc_sweep",
    "POINT_COLUMNS",
]


@dataclass(frozen=True)
class ModeDecision:
    delta_c: float
    mode: str
    c_lbt: float
    c_lat: float

    @property
    def c_selected(self) -> float:
        return self.c_lbt if self.mode == "LBT" else self.c_lat


def select_mode(c_lbt: float, c_lat: float) -> ModeDecision:
    """LBT when it is at least as good (ties go to LBT), LAT otherwise."""
    d = c_lbt - c_lat
    return ModeDecision(delta_c=d, mode="LBT" if d >= 0 else "LAT", c_lbt=c_lbt, c_lat=c_lat)


@dataclass(frozen=True)
class EvalOptions:
    variant: LbtVariant = DEFAULT_VARIANT
    approx_rate: bool = False
    draws: int = DEFAULT_DRAWS
    seed: int = 0


@dataclass(frozen=True)
class SweepPoint:
    axis_value: float
    params: SystemParams
    lat: LatReport
    lbt: LbtReport
    decision: ModeDecision


POINT_COLUMNS = (
    "pf_lbt", "pm_lbt", "pf_lat", "pm_lat",
    "rate_lbt", "rate_lat", "c_lbt", "c_lat", "delta_c", "mode",
)


@dataclass
class SweepResult:
    axis_name: str
    axis_values: np.ndarray
    columns: tuple
    rows: list
    points: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)


def _evaluate(params: SystemParams, opts: EvalOptions):
    lat = lat_overall(params)
    lbt = lbt_overall(params, opts.variant, opts.draws, opts.seed)
    c_lbt = lbt.throughput_approx if opts.approx_rate else lbt.throughput
    return lat, lbt, select_mode(c_lbt, lat.throughput)


def delta_c(
    params: SystemParams,
    variant: LbtVariant = DEFAULT_VARIANT,
    approx_rate: bool = False,
    draws: int = DEFAULT_DRAWS,
    seed: int = 0,
) -> ModeDecision:
    """Throughput difference ``C_LBT - C_LAT`` and the selected mode."""
    return _evaluate(params, EvalOptions(variant, approx_rate, draws, seed))[2]


def _point_row(axis_value, lat, lbt, dec, opts) -> tuple:
    rate_lbt = lbt.rate_approx if opts.approx_rate else lbt.rate_exact
    return (
        axis_value, lbt.pf, lbt.pm, lat.pf_overall, lat.pm_overall,
        rate_lbt, lat.rate, dec.c_lbt, dec.c_lat, dec.delta_c, dec.mode,
    )


def _sweep(axis_name, values, make_params, opts, workers):
    values = np.asarray(values, dtype=float)
    plist = [make_params(v) for v in values]

    def job(p):
        return _evaluate(p, opts)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(job, plist))
    else:
        results = [job(p) for p in plist]
    points = [SweepPoint(float(v), p, *r) for v, p, r in zip(values, plist, results)]
    rows = [_point_row(pt.axis_value, pt.lat, pt.lbt, pt.decision, opts) for pt in points]
    meta = {
        "variant": LbtVariant(opts.variant).value,
        "rate": "high-snr approximation" if opts.approx_rate else f"monte-carlo ({opts.draws} draws)",
        "seed": opts.seed,
    }
    return SweepResult(axis_name, values, (axis_name, *POINT_COLUMNS), rows, points, meta)


def crossovers(result: SweepResult) -> list[float]:
    """Axis values where ``delta_c`` changes sign, by linear interpolation."""
    x = result.axis_values
    d = np.array([pt.decision.delta_c for pt in result.points])
    out = []
    for i in range(len(d) - 1):
        if (d[i] >= 0) != (d[i + 1] >= 0):
            out.append(float(x[i] + (x[i + 1] - x[i]) * d[i] / (d[i] - d[i + 1])))
    return out


def sweep_beta(
    params: SystemParams,
    beta_grid,
    variant: LbtVariant = DEFAULT_VARIANT,
    approx_rate: bool = False,
    draws: int = DEFAULT_DRAWS,
    seed: int = 0,
    workers: int = 1,
) -> SweepResult:
    """Throughputs of both protocols with ``beta_s = beta_t = beta_r = beta``.

    The same seed is reused at every grid point (common random numbers).
    """
    grid = np.asarray(beta_grid, dtype=float)
    if np.any((grid < 0) | (grid >= 1)):
        raise ValueError("beta grid must lie in [0, 1)")
    res = _sweep("beta", grid, params.with_beta, EvalOptions(variant, approx_rate, draws, seed), workers)
    res.metadata["crossovers"] = crossovers(res)
    if len(grid) > 1:
        res.metadata["crossover_resolution"] = float(np.min(np.diff(grid)))
    return res


def sweep_power(
    params: SystemParams,
    power_grid_db,
    variant: LbtVariant = DEFAULT_VARIANT,
    approx_rate: bool = False,
    draws: int = DEFAULT_DRAWS,
    seed: int = 0,
    workers: int = 1,
) -> SweepResult:
    """Throughputs versus SU transmit power, given in dB relative to ``sigma_u2``.

    Both the interference-to-noise ratio and the transmission SNR scale with
    the transmit power. ``metadata["lat_argmax_db"]`` is the grid point of
    maximum LAT throughput.
    """
    grid = np.asarray(power_grid_db, dtype=float)
    if grid.size == 0 or np.any(np.diff(grid) <= 0):
        raise ValueError("power grid must be non-empty and ascending")

    def make(db):
        return params.replace(sigma_s2=db_to_linear(db) * params.sigma_u2)

    res = _sweep("power_db", grid, make, EvalOptions(variant, approx_rate, draws, seed), workers)
    c_lat = np.array([pt.lat.throughput for pt in res.points])
    k = int(np.argmax(c_lat))
    res.metadata.update(
        lat_argmax_db=float(grid[k]),
        lat_max=float(c_lat[k]),
        lat_interior_max=bool(0 < k < len(grid) - 1 and c_lat[k] > c_lat[0] and c_lat[k] > c_lat[-1]),
        power_scaling="gamma_i and gamma_t both scale with transmit power",
    )
    res.metadata["crossovers_db"] = crossovers(res)
    return res


def roc_sweep(
    params: SystemParams,
    pm_grid,
    tau_list,
    chi_list,
    variants=tuple(LbtVariant),
) -> SweepResult:
    """Analytic false-alarm probability versus miss target for every configuration.

    Columns: ``pm``, then for each ``chi`` the LAT silent / active / overall
    false alarm, then for each ``tau`` and detector variant the LBT false alarm.
    """
    pm = np.asarray(pm_grid, dtype=float)
    if np.any((pm <= 0) | (pm >= 1)):
        raise ValueError("pm grid must lie in (0, 1)")
    columns = ["pm"]
    for chi in chi_list:
        columns += [f"lat_pf0_chi{chi:g}", f"lat_pf1_chi{chi:g}", f"lat_pf_chi{chi:g}"]
    for tau in tau_list:
        for v in variants:
            columns.append(f"lbt_pf_tau{tau / params.slot_T:g}T_{LbtVariant(v).value}")
    rows = []
    for p in pm:
        row = [float(p)]
        for chi in chi_list:
            q = params.replace(chi=chi)
            pf0 = pf_given_pm(p, False, q)
            pf1 = pf_given_pm(p, True, q)
            row += [pf0, pf1, pf1 / (1.0 - pf0 + pf1)]
        for tau in tau_list:
            for v in variants:
                row.append(lbt_pf_given_pm(p, tau, params, v))
        rows.append(tuple(row))
    return SweepResult("pm", pm, tuple(columns), rows, metadata={"beta_s": params.beta_s})
