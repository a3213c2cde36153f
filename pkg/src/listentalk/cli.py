"""Command-line front end.

Configuration is a ``key = value`` text file (``#`` starts a comment). Lists
are comma separated and ranges may be written ``start:stop:step`` (stop
inclusive). Keys and their defaults::

    T               slot length in seconds             0.0002
    tau             LBT sensing time(s); seconds or a  0.25T, 0.1T
                    multiple of T such as 0.25T
    fs              sampling frequency, Hz             1e6
    sigma_u2        noise power                        1
    pt_db           SU transmit power over noise, dB   13
    gamma_s_db      sensing SNR, dB                    -10
    sigma_h_tilde2  SU-SU channel gain                 1
    pm              miss-detection target              0.3
    chi             SIS factor(s)                      0.2, 0.4
    beta            spatial correlation(s), applied    0.7, 0.8, 0.9
                    to sensing, transmit and receive
    beta_s/beta_t/beta_r   override one coefficient
    beta_grid       sweep-beta axis                    0.5:0.95:0.05
    power_grid_db   sweep-power axis                   0:20:0.25
    pm_grid         roc axis                           0.01:0.99:0.01
    seed            random seed                        0
    slots           slots per PU epoch (simulate)      10000
    epochs          epochs per PU state (simulate)     1
    burn_in         discarded slots per epoch          100
    calibration     pilot statistics for calibrated thresholds
    threshold_mode  analytic | calibrated              analytic
    draws           Monte-Carlo draws for the LBT rate 100000
    variant         consistent | literal | corrected   corrected
    approx_rate     use the high-SNR LBT rate          false
    verify_n        statistics per moment check        100000

The first ``chi``, ``beta`` and ``tau`` values define the single operating
point used by ``simulate``; the other commands run over every combination.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import itertools
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .lat import lat_overall
from .lbt import DEFAULT_VARIANT, LbtVariant, lbt_overall
from .params import JointState, SystemParams, db_to_linear
from .simulator import SimConfig, run_lat, run_lbt, verify_moments
from .switching import POINT_COLUMNS, roc_sweep, select_mode, sweep_beta, sweep_power

COMMANDS = ("analyze", "simulate", "roc", "sweep-beta", "sweep-power", "switch", "verify")

EXIT_FAILURE = 1
EXIT_MISSING = 2
EXIT_PARSE = 3
EXIT_INVALID = 4


class ConfigError(Exception):
    exit_code = EXIT_INVALID


class ConfigParseError(ConfigError):
    exit_code = EXIT_PARSE


class ConfigMissingError(ConfigError):
    exit_code = EXIT_MISSING


def _inclusive_range(start, stop, step):
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


DEFAULTS = {
    "T": "0.0002",
    "tau": "0.25T, 0.1T",
    "fs": "1e6",
    "sigma_u2": "1",
    "pt_db": "13",
    "gamma_s_db": "-10",
    "sigma_h_tilde2": "1",
    "pm": "0.3",
    "chi": "0.2, 0.4",
    "beta": "0.7, 0.8, 0.9",
    "beta_s": "",
    "beta_t": "",
    "beta_r": "",
    "beta_grid": "0.5:0.95:0.05",
    "power_grid_db": "0:20:0.25",
    "pm_grid": "0.01:0.99:0.01",
    "seed": "0",
    "slots": "10000",
    "epochs": "1",
    "burn_in": "100",
    "calibration": "",
    "threshold_mode": "analytic",
    "draws": "100000",
    "variant": DEFAULT_VARIANT.value,
    "approx_rate": "false",
    "verify_n": "100000",
}


@dataclass
class RunConfig:
    params: SystemParams
    sim: SimConfig
    chi_values: list
    beta_values: list
    tau_values: list
    beta_grid: list
    power_grid_db: list
    pm_grid: list
    draws: int = 100_000
    variant: LbtVariant = DEFAULT_VARIANT
    approx_rate: bool = False
    verify_n: int = 100_000
    resolved: dict = field(default_factory=dict)

    def points(self):
        """Every (chi, beta, tau) operating point, as SystemParams."""
        for chi, beta, tau in itertools.product(self.chi_values, self.beta_values, self.tau_values):
            yield self.point(chi, beta, tau)

    def point(self, chi, beta, tau) -> SystemParams:
        overrides = {k: self.resolved[k] for k in ("beta_s", "beta_t", "beta_r") if self.resolved.get(k)}
        p = self.params.replace(chi=chi, tau=tau).with_beta(beta)
        return p.replace(**{k: float(v) for k, v in overrides.items()})

    def describe(self) -> str:
        return " ".join(f"{k}={self.resolved[k].replace(' ', '')}" for k in sorted(self.resolved))


def _read_pairs(text: str) -> dict:
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in DEFAULTS:
            raise ConfigParseError(f"line {lineno}: unknown key {key!r}")
        pairs[key] = value
    return pairs


def _number(key, text, kind=float):
    try:
        v = kind(text)
    except ValueError:
        raise ConfigParseError(f"{key}: cannot parse {text!r} as {kind.__name__}") from None
    if kind is float and not math.isfinite(v):
        raise ConfigError(f"{key}: value must be finite")
    return v


def _number_list(key, text, slot_T=None):
    text = text.strip()
    if ":" in text and "," not in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigParseError(f"{key}: range must be start:stop:step, got {text!r}")
        start, stop, step = (_number(key, s) for s in parts)
        if step <= 0 or stop < start:
            raise ConfigError(f"{key}: range needs step > 0 and stop >= start")
        return _inclusive_range(start, stop, step)
    out = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        if slot_T is not None and item.endswith("T"):
            out.append(_number(key, item[:-1]) * slot_T)
        else:
            out.append(_number(key, item))
    if not out:
        raise ConfigError(f"{key}: list must be non-empty")
    return out


def _check(key, value, ok, constraint):
    if not ok:
        raise ConfigError(f"{key}={value} violates {constraint}")


def build_config(pairs: dict | None = None) -> RunConfig:
    """Resolve ``key = value`` pairs over the defaults and validate them."""
    resolved = dict(DEFAULTS)
    resolved.update(pairs or {})
    r = resolved

    T = _number("T", r["T"])
    _check("T", T, T > 0, "T > 0")
    taus = _number_list("tau", r["tau"], slot_T=T)
    for t in taus:
        _check("tau", t, 0 < t < T, "0 < tau < T")
    chis = _number_list("chi", r["chi"])
    for c in chis:
        _check("chi", c, 0 <= c <= 1, "chi in [0, 1]")
    betas = _number_list("beta", r["beta"])
    for b in betas:
        _check("beta", b, 0 <= b < 1, "beta in [0, 1)")
    for k in ("beta_s", "beta_t", "beta_r"):
        if r[k]:
            b = _number(k, r[k])
            _check(k, b, 0 <= b < 1, f"{k} in [0, 1)")
    pm = _number("pm", r["pm"])
    _check("pm", pm, 0 < pm < 1, "pm in (0, 1)")
    sigma_u2 = _number("sigma_u2", r["sigma_u2"])
    _check("sigma_u2", sigma_u2, sigma_u2 > 0, "sigma_u2 > 0")
    fs = _number("fs", r["fs"])
    _check("fs", fs, fs > 0, "fs > 0")
    gh = _number("sigma_h_tilde2", r["sigma_h_tilde2"])
    _check("sigma_h_tilde2", gh, gh >= 0, "sigma_h_tilde2 >= 0")

    variant = r["variant"].strip().lower()
    _check("variant", variant, variant in {v.value for v in LbtVariant},
           "variant in {consistent, literal, corrected}")
    approx = r["approx_rate"].strip().lower()
    _check("approx_rate", approx, approx in {"true", "false", "1", "0", "yes", "no"}, "approx_rate is a boolean")
    mode = r["threshold_mode"].strip().lower()
    _check("threshold_mode", mode, mode in {"analytic", "calibrated"}, "threshold_mode in {analytic, calibrated}")

    slots = _number("slots", r["slots"], int)
    burn_in = _number("burn_in", r["burn_in"], int)
    epochs = _number("epochs", r["epochs"], int)
    seed = _number("seed", r["seed"], int)
    _check("slots", slots, slots >= 1, "slots >= 1")
    _check("epochs", epochs, epochs >= 1, "epochs >= 1")
    _check("burn_in", burn_in, 0 <= burn_in < slots, "0 <= burn_in < slots")
    _check("seed", seed, 0 <= seed < 2**64, "seed is an unsigned 64-bit integer")
    draws = _number("draws", r["draws"], int)
    _check("draws", draws, draws >= 1, "draws >= 1")
    verify_n = _number("verify_n", r["verify_n"], int)
    _check("verify_n", verify_n, verify_n >= 10_000, "verify_n >= 10000")
    calibration = _number("calibration", r["calibration"], int) if r["calibration"] else None

    pm_grid = _number_list("pm_grid", r["pm_grid"])
    for p in pm_grid:
        _check("pm_grid", p, 0 < p < 1, "pm_grid values in (0, 1)")
    beta_grid = _number_list("beta_grid", r["beta_grid"])
    for b in beta_grid:
        _check("beta_grid", b, 0 <= b < 1, "beta_grid values in [0, 1)")
    power_grid = _number_list("power_grid_db", r["power_grid_db"])
    _check("power_grid_db", r["power_grid_db"].strip(), all(np.diff(power_grid) > 0), "power_grid_db ascending")

    try:
        params = SystemParams(
            slot_T=T,
            tau=taus[0],
            fs=fs,
            sigma_u2=sigma_u2,
            sigma_s2=db_to_linear(_number("pt_db", r["pt_db"])) * sigma_u2,
            gamma_s=db_to_linear(_number("gamma_s_db", r["gamma_s_db"])),
            sigma_h_tilde2=gh,
            chi=chis[0],
            pm_target=pm,
        ).with_beta(betas[0])
        for k in ("beta_s", "beta_t", "beta_r"):
            if r[k]:
                params = params.replace(**{k: float(r[k])})
        for t in taus:
            params.replace(tau=t)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    sim = SimConfig(
        n_slots=slots,
        n_epochs=epochs,
        burn_in=burn_in,
        seed=seed,
        threshold_mode=mode,
        n_calibration=calibration,
        variant=LbtVariant(variant),
    )
    return RunConfig(
        params=params,
        sim=sim,
        chi_values=chis,
        beta_values=betas,
        tau_values=taus,
        beta_grid=beta_grid,
        power_grid_db=power_grid,
        pm_grid=pm_grid,
        draws=draws,
        variant=LbtVariant(variant),
        approx_rate=approx in {"true", "1", "yes"},
        verify_n=verify_n,
        resolved=resolved,
    )


def load_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigMissingError(f"config file not found: {path}")
    return build_config(_read_pairs(path.read_text()))


# --- output ---------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".6g")
    return str(v)


def write_csv(stream, command: str, cfg: RunConfig, columns, rows, notes=()):
    stream.write(f"# listentalk {command}\n")
    stream.write(f"# config: {cfg.describe()}\n")
    for note in notes:
        stream.write(f"# {note}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(v) for v in row) + "\n")


def _tau_frac(p: SystemParams) -> float:
    return p.tau / p.slot_T


# --- commands -------------------------------------------------------------

def cmd_analyze(cfg: RunConfig, out):
    cols = (
        "chi", "beta", "tau_over_T", "eps0", "eps1", "pf0_lat", "pf1_lat", "pf_lat", "rate_lat", "c_lat",
        "threshold_lbt", "pf_lbt", "pm_lbt", "rate_lbt", "rate_lbt_stderr", "rate_lbt_approx",
        "c_lbt", "c_lbt_approx",
    )
    rows = []
    for p in cfg.points():
        lat = lat_overall(p)
        lbt = lbt_overall(p, cfg.variant, cfg.draws, cfg.sim.seed)
        rows.append((
            p.chi, p.beta_s, _tau_frac(p), lat.thresholds.eps0, lat.thresholds.eps1, lat.pf0, lat.pf1,
            lat.pf_overall, lat.rate, lat.throughput, lbt.threshold, lbt.pf, lbt.pm, lbt.rate_exact,
            lbt.rate_exact_stderr, lbt.rate_approx, lbt.throughput, lbt.throughput_approx,
        ))
        out.summary(
            f"chi={p.chi:g} beta={p.beta_s:g} tau={_tau_frac(p):g}T | LAT: eps0={lat.thresholds.eps0:.5f} "
            f"eps1={lat.thresholds.eps1:.5f} pf={lat.pf_overall:.5f} R={lat.rate:.4f} C={lat.throughput:.4f} | "
            f"LBT: pf={lbt.pf:.4f} R={lbt.rate_exact:.4f}+-{lbt.rate_exact_stderr:.4f} "
            f"R_approx={lbt.rate_approx:.4f} C={lbt.throughput:.4f}"
        )
    return cols, rows, ()


def cmd_switch(cfg: RunConfig, out):
    cols = ("chi", "beta", "tau_over_T", "c_lbt", "c_lat", "delta_c", "mode")
    rows = []
    for p in cfg.points():
        lat = lat_overall(p)
        lbt = lbt_overall(p, cfg.variant, cfg.draws, cfg.sim.seed)
        dec = select_mode(lbt.throughput_approx if cfg.approx_rate else lbt.throughput, lat.throughput)
        rows.append((p.chi, p.beta_s, _tau_frac(p), dec.c_lbt, dec.c_lat, dec.delta_c, dec.mode))
        out.summary(
            f"chi={p.chi:g} beta={p.beta_s:g} tau={_tau_frac(p):g}T: C_LBT={dec.c_lbt:.4f} "
            f"C_LAT={dec.c_lat:.4f} delta_C={dec.delta_c:+.4f} -> {dec.mode}"
        )
    return cols, rows, ()


def cmd_simulate(cfg: RunConfig, out):
    p = cfg.params
    lat = lat_overall(p)
    lbt = lbt_overall(p, cfg.variant, cfg.draws, cfg.sim.seed)
    emp_lat = run_lat(p, cfg.sim)
    emp_lbt = run_lbt(p, cfg.sim)
    checks = [
        ("lat_p00", lat.pf_overall, emp_lat.p00_hat, emp_lat.ci_halfwidth["p00_hat"]),
        ("lat_p11", lat.pm_overall, emp_lat.p11_hat, emp_lat.ci_halfwidth["p11_hat"]),
        ("lat_pf0", lat.pf0, emp_lat.state_errors["pf0"], emp_lat.ci_halfwidth["pf0"]),
        ("lat_pm0", lat.pm0, emp_lat.state_errors["pm0"], emp_lat.ci_halfwidth["pm0"]),
        ("lat_pf1", lat.pf1, emp_lat.state_errors["pf1"], emp_lat.ci_halfwidth["pf1"]),
        ("lat_pm1", lat.pm1, emp_lat.state_errors["pm1"], emp_lat.ci_halfwidth["pm1"]),
        ("lat_throughput", lat.throughput, emp_lat.throughput_hat, emp_lat.ci_halfwidth["throughput_hat"]),
        ("lbt_pf", lbt.pf, emp_lbt.pf_hat, emp_lbt.ci_halfwidth["pf_hat"]),
        ("lbt_pm", lbt.pm, emp_lbt.pm_hat, emp_lbt.ci_halfwidth["pm_hat"]),
    ]
    rows = []
    out.summary(f"threshold mode: {cfg.sim.threshold_mode}; slots/epoch={cfg.sim.n_slots} epochs={cfg.sim.n_epochs}")
    out.summary(f"{'quantity':<16}{'analytic':>11}{'empirical':>11}{'3sigma':>10}  within")
    for name, a, e, ci in checks:
        within = abs(a - e) <= ci
        rows.append((name, a, e, ci, within))
        out.summary(f"{name:<16}{a:>11.5f}{e:>11.5f}{ci:>10.5f}  {'yes' if within else 'NO'}")
    out.summary(f"lbt_throughput   analytic {lbt.throughput:.4f}  empirical {emp_lbt.throughput_hat:.4f}")
    rows.append(("lbt_throughput", lbt.throughput, emp_lbt.throughput_hat, float("nan"), ""))
    notes = (f"lat thresholds used: {emp_lat.thresholds[0]:.6g}, {emp_lat.thresholds[1]:.6g}",
             f"lbt threshold used: {emp_lbt.thresholds[0]:.6g}")
    return ("quantity", "analytic", "empirical", "ci3", "within"), rows, notes


def cmd_roc(cfg: RunConfig, out):
    res = roc_sweep(cfg.params, cfg.pm_grid, cfg.tau_values, cfg.chi_values)
    out.summary(f"roc: {len(res.rows)} miss targets, {len(res.columns) - 1} curves (beta_s={cfg.params.beta_s:g})")
    return res.columns, res.rows, ()


def cmd_sweep_beta(cfg: RunConfig, out):
    rows, notes = [], []
    for chi, tau in itertools.product(cfg.chi_values, cfg.tau_values):
        p = cfg.params.replace(chi=chi, tau=tau)
        res = sweep_beta(p, cfg.beta_grid, cfg.variant, cfg.approx_rate, cfg.draws, cfg.sim.seed)
        crossing = ", ".join(f"{b:.4f}" for b in res.metadata["crossovers"]) or "none"
        out.summary(f"chi={chi:g} tau={tau / p.slot_T:g}T: crossover beta* = {crossing}")
        notes.append(f"chi={chi:g} tau={tau / p.slot_T:g}T crossover_beta={crossing}")
        rows += [(r[0], chi, tau / p.slot_T, *r[1:]) for r in res.rows]
    notes.append(f"rate: {res.metadata['rate']}; variant: {res.metadata['variant']}")
    return ("beta", "chi", "tau_over_T", *POINT_COLUMNS), rows, notes


def cmd_sweep_power(cfg: RunConfig, out):
    rows, notes = [], []
    beta = cfg.params.beta_s
    for chi, tau in itertools.product(cfg.chi_values, cfg.tau_values):
        p = cfg.params.replace(chi=chi, tau=tau)
        res = sweep_power(p, cfg.power_grid_db, cfg.variant, cfg.approx_rate, cfg.draws, cfg.sim.seed)
        m = res.metadata
        out.summary(
            f"chi={chi:g} tau={tau / p.slot_T:g}T: max C_LAT={m['lat_max']:.4f} at {m['lat_argmax_db']:g} dB "
            f"(interior: {'yes' if m['lat_interior_max'] else 'no'})"
        )
        notes.append(f"chi={chi:g} tau={tau / p.slot_T:g}T lat_argmax_db={m['lat_argmax_db']:g}")
        rows += [(r[0], chi, tau / p.slot_T, *r[1:]) for r in res.rows]
    notes.append(f"beta={beta:g}; rate: {res.metadata['rate']}; {res.metadata['power_scaling']}")
    return ("power_db", "chi", "tau_over_T", *POINT_COLUMNS), rows, notes


def moment_cases(cfg: RunConfig):
    """(protocol, state, params) triples covering every hypothesis row.

    Rows whose distribution does not depend on the varied parameter are
    checked once.
    """
    base = cfg.params
    chis = sorted({0.0, *cfg.chi_values})
    betas = sorted({0.0, *cfg.beta_values})
    cases = [("LAT", JointState.H00, base), ("LAT", JointState.H01, base)]
    for chi in chis:
        p = base.replace(chi=chi)
        cases += [("LAT", JointState.H10, p), ("LAT", JointState.H11, p)]
    cases.append(("LBT", JointState.H0, base))
    cases += [("LBT", JointState.H1, base.replace(beta_s=b)) for b in betas]
    return cases


def cmd_verify(cfg: RunConfig, out):
    rows = []
    for i, (proto, state, p) in enumerate(moment_cases(cfg)):
        chk = verify_moments(proto, state, p, cfg.verify_n, seed=(cfg.sim.seed, i), variant=cfg.variant)
        rows.append((
            proto, state.name, p.chi, p.beta_s, chk.expected.mean, chk.measured.mean, chk.z_mean,
            chk.expected.variance, chk.measured.variance, chk.z_variance, chk.passed,
        ))
        out.summary(
            f"{'PASS' if chk.passed else 'FAIL'} {proto} {state.name} chi={p.chi:g} beta_s={p.beta_s:g}: "
            f"mean {chk.measured.mean:.6f} vs {chk.expected.mean:.6f} (z={chk.z_mean:+.2f}), "
            f"var {chk.measured.variance:.4e} vs {chk.expected.variance:.4e} (z={chk.z_variance:+.2f})"
        )
        if not chk.passed:
            out.failed = True
    cols = ("protocol", "state", "chi", "beta_s", "mean_expected", "mean_measured", "z_mean",
            "var_expected", "var_measured", "z_var", "passed")
    return cols, rows, (f"n={cfg.verify_n} statistics per row; pass = |z| <= 3 for mean and variance",)


HANDLERS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "roc": cmd_roc,
    "sweep-beta": cmd_sweep_beta,
    "sweep-power": cmd_sweep_power,
    "switch": cmd_switch,
    "verify": cmd_verify,
}


class _Output:
    def __init__(self, stream):
        self.stream = stream
        self.failed = False

    def summary(self, line: str):
        print(line, file=self.stream)


def run_command(name: str, cfg: RunConfig, out_path=None, stdout=None) -> int:
    """Run one command; returns the process exit status."""
    stdout = stdout or sys.stdout
    # with no --out the CSV goes to stdout, so summaries move to stderr
    out = _Output(stdout if out_path else sys.stderr)
    cols, rows, notes = HANDLERS[name](cfg, out)
    buf = io.StringIO()
    write_csv(buf, name, cfg, cols, rows, notes)
    if out_path:
        Path(out_path).write_text(buf.getvalue())
    else:
        stdout.write(buf.getvalue())
    return EXIT_FAILURE if out.failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value configuration file (see module help for keys)")
    common.add_argument("--seed", type=int, help="random seed (unsigned 64-bit)")
    common.add_argument("--slots", type=int, help="slots per PU epoch for simulate")
    common.add_argument("--variant", choices=[v.value for v in LbtVariant], help="LBT detector model")
    common.add_argument("--approx-rate", action="store_true", help="use the high-SNR LBT rate formula")
    common.add_argument("--threshold-mode", choices=("analytic", "calibrated"), help="simulator thresholds")
    common.add_argument("--draws", type=int, help="Monte-Carlo draws for the LBT ergodic rate")
    common.add_argument("--out", help="CSV output path (default: stdout)")
    parser = argparse.ArgumentParser(
        prog="listentalk",
        description="Listen-and-talk vs listen-before-talk cognitive radio analysis.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], epilog=parser.epilog,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        pairs = {}
        if args.config:
            path = Path(args.config)
            if not path.is_file():
                raise ConfigMissingError(f"config file not found: {path}")
            pairs = _read_pairs(path.read_text())
        cli_overrides = {
            "seed": args.seed, "slots": args.slots, "variant": args.variant,
            "threshold_mode": args.threshold_mode, "draws": args.draws,
        }
        pairs.update({k: str(v) for k, v in cli_overrides.items() if v is not None})
        if args.approx_rate:
            pairs["approx_rate"] = "true"
        cfg = build_config(pairs)
    except ConfigError as exc:
        print(f"listentalk: config error: {exc}", file=sys.stderr)
        return exc.exit_code
    if cfg.variant is LbtVariant.CORRECTED:
        print(
            "note: LBT detector variant 'corrected' (H0 variance of the two-antenna average, sqrt(xi) H1 spread); "
            "'consistent' and 'literal' use sigma_u2^2/N for the H0 variance",
            file=sys.stderr,
        )
    else:
        print(f"note: LBT detector variant '{cfg.variant.value}'", file=sys.stderr)
    try:
        return run_command(args.command, cfg, args.out)
    except (ValueError, ArithmeticError) as exc:
        print(f"listentalk {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
