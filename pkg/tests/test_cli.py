import csv
import io
import math
import subprocess
import sys

import pytest

from listentalk.cli import (
    EXIT_INVALID,
    EXIT_MISSING,
    EXIT_PARSE,
    ConfigError,
    build_config,
    load_config,
    main,
    run_command,
)
from listentalk.lbt import LbtVariant

SMALL = {
    "slots": "2000", "burn_in": "50", "draws": "4096", "verify_n": "10000",
    "beta_grid": "0.5:0.95:0.15", "power_grid_db": "0:20:5", "pm_grid": "0.1:0.9:0.2",
    "calibration": "10000",
}


def write(tmp_path, text, name="run.cfg"):
    f = tmp_path / name
    f.write_text(text)
    return f


def small_config(tmp_path, extra=""):
    return write(tmp_path, "\n".join(f"{k} = {v}" for k, v in SMALL.items()) + "\n" + extra)


def body(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.reader(lines))


def test_empty_file_gives_reference_defaults(tmp_path):
    cfg = load_config(write(tmp_path, ""))
    p = cfg.params
    assert p.slot_T == 2e-4 and p.fs == 1e6 and p.sigma_u2 == 1.0
    assert p.sigma_s2 == pytest.approx(10 ** 1.3)
    assert p.gamma_s == pytest.approx(0.1)
    assert p.pm_target == 0.3
    assert cfg.chi_values == [0.2, 0.4]
    assert cfg.beta_values == [0.7, 0.8, 0.9]
    assert cfg.tau_values == pytest.approx([5e-5, 2e-5])
    assert cfg.variant is LbtVariant.CORRECTED
    assert len(list(cfg.points())) == 12


def test_comments_and_whitespace(tmp_path):
    cfg = load_config(write(tmp_path, "# header\n\n  chi = 0.3   # inline\nbeta=0.5,0.6\n"))
    assert cfg.chi_values == [0.3]
    assert cfg.beta_values == [0.5, 0.6]


def test_invalid_chi_rejected(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(write(tmp_path, "chi = 1.5\n"))
    assert err.value.exit_code == EXIT_INVALID
    assert "chi" in str(err.value) and "1.5" in str(err.value)


def test_tau_in_seconds_is_quarter_slot(tmp_path):
    cfg = load_config(write(tmp_path, "tau = 0.00005\n"))
    assert cfg.params.tau / cfg.params.slot_T == pytest.approx(0.25)
    assert cfg.params.n_lbt == 50 and cfg.params.n_lat == 200
    assert load_config(write(tmp_path, "tau = 0.25T\n")).params.tau == pytest.approx(5e-5)


@pytest.mark.parametrize("text,code", [
    ("chi 0.2\n", EXIT_PARSE),
    ("bogus = 1\n", EXIT_PARSE),
    ("chi = abc\n", EXIT_PARSE),
    ("pm = 1.2\n", EXIT_INVALID),
    ("tau = 0.0003\n", EXIT_INVALID),
    ("beta_grid = \n", EXIT_INVALID),
    ("variant = sideways\n", EXIT_INVALID),
])
def test_bad_configs_have_distinct_codes(tmp_path, text, code, capsys):
    f = write(tmp_path, text)
    assert main(["switch", "--config", str(f)]) == code
    assert "config error" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["analyze", "--config", str(tmp_path / "nope.cfg")]) == EXIT_MISSING
    assert "not found" in capsys.readouterr().err


def test_switch_reference_point(tmp_path):
    cfg = build_config({**SMALL, "chi": "0.2", "beta": "0.7", "tau": "0.25T", "approx_rate": "true",
                        "variant": "consistent"})
    buf = io.StringIO()
    assert run_command("switch", cfg, tmp_path / "s.csv", stdout=buf) == 0
    assert "C_LBT=3.4101" in buf.getvalue() and "C_LAT=2.9054" in buf.getvalue() and "LBT" in buf.getvalue()
    rows = body((tmp_path / "s.csv").read_text())
    assert rows[0] == ["chi", "beta", "tau_over_T", "c_lbt", "c_lat", "delta_c", "mode"]
    assert rows[1][-1] == "LBT"


COMMANDS = ["analyze", "simulate", "roc", "sweep-beta", "sweep-power", "switch", "verify"]


@pytest.mark.parametrize("command", COMMANDS)
def test_outputs_byte_identical_and_self_describing(tmp_path, command):
    cfg_file = small_config(tmp_path, "chi = 0.2\nbeta = 0.7\n")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main([command, "--config", str(cfg_file), "--seed", "11", "--out", str(a)]) in (0, 1)
    main([command, "--config", str(cfg_file), "--seed", "11", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.startswith(f"# listentalk {command}\n# config: ")
    assert "seed=11" in text.splitlines()[1]
    rows = body(text)
    assert len(rows) >= 2 and all(len(r) == len(rows[0]) for r in rows)


def test_sweep_beta_schema(tmp_path):
    cfg = build_config({**SMALL, "chi": "0.2", "tau": "0.25T"})
    out = tmp_path / "beta.csv"
    run_command("sweep-beta", cfg, out, stdout=io.StringIO())
    rows = body(out.read_text())
    header = rows[0]
    assert header[0] == "beta"
    for col in ("c_lbt", "c_lat", "delta_c", "mode"):
        assert col in header
    assert header.index("c_lbt") < header.index("c_lat") < header.index("delta_c") < header.index("mode")
    assert [float(r[0]) for r in rows[1:]] == pytest.approx([0.5, 0.65, 0.8, 0.95])


def test_float_format_six_significant(tmp_path):
    cfg = build_config({**SMALL, "chi": "0.2", "beta": "0.7"})
    out = tmp_path / "a.csv"
    run_command("switch", cfg, out, stdout=io.StringIO())
    value = body(out.read_text())[1][4]
    assert len(value.replace(".", "").lstrip("0")) <= 6
    assert float(value) == pytest.approx(2.90543, abs=1e-5)


def test_verify_default_passes(tmp_path):
    cfg = build_config({"verify_n": "20000", "seed": "0"})
    assert run_command("verify", cfg, tmp_path / "v.csv", stdout=io.StringIO()) == 0
    rows = body((tmp_path / "v.csv").read_text())
    assert all(r[-1] == "true" for r in rows[1:])


def test_verify_fails_on_uncorrected_noise_row(tmp_path):
    cfg = build_config({"verify_n": "50000", "variant": "consistent"})
    buf = io.StringIO()
    assert run_command("verify", cfg, tmp_path / "v.csv", stdout=buf) == 1
    assert "FAIL LBT H0" in buf.getvalue()


def test_stdout_mode_keeps_csv_clean(tmp_path):
    f = small_config(tmp_path, "chi = 0.2\nbeta = 0.7\n")
    proc = subprocess.run([sys.executable, "-m", "listentalk", "switch", "--config", str(f)],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("# listentalk switch")
    assert "C_LBT" in proc.stderr and "C_LBT" not in proc.stdout
    assert "variant" in proc.stderr


def test_simulate_flags(tmp_path):
    f = small_config(tmp_path)
    out = tmp_path / "sim.csv"
    code = main(["simulate", "--config", str(f), "--threshold-mode", "calibrated", "--slots", "3000",
                 "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert "threshold_mode=calibrated" in text and "slots=3000" in text
    names = [r[0] for r in body(text)[1:]]
    assert names[:2] == ["lat_p00", "lat_p11"]


def test_approx_rate_flag(tmp_path):
    cfg = build_config({**SMALL, "chi": "0.2", "beta": "0.7", "approx_rate": "true"})
    out = tmp_path / "a.csv"
    run_command("analyze", cfg, out, stdout=io.StringIO())
    header, *rows = body(out.read_text())
    row = dict(zip(header, rows[0]))
    assert math.isfinite(float(row["rate_lbt_approx"]))
