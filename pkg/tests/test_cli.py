import csv
import io
import json
import math
import subprocess
import sys

import pytest

from hybridamp.cli import main

REFERENCE = """[system]
delta = -10
g_opa = 120
lambda_kerr = 0.0005
epsilon = 1000
kappa = 500
"""

EMPTY = """[system]
delta = 0
g_opa = 0
lambda_kerr = 0
epsilon = 10
kappa = 2
"""


@pytest.fixture
def write(tmp_path):
    def _write(text, name="run.ini"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_steady_json(capsys, write):
    code, out, _ = run(capsys, "steady", "--config", write(REFERENCE))
    data = json.loads(out)
    assert code == 0
    assert data["n_s"] == pytest.approx(1e4) and data["alpha"] == {"re": pytest.approx(100.0), "im": pytest.approx(0.0, abs=1e-9)}
    assert data["single_valued"] is True and len(data["roots"]) == 1


def test_steady_csv(capsys, write):
    code, out, _ = run(capsys, "steady", "--config", write(REFERENCE), "--format", "csv")
    (row,) = read_csv(out)
    assert code == 0 and list(row) == ["n_s", "alpha_re", "alpha_im", "n_roots", "n_stable", "single_valued"]
    assert float(row["n_s"]) == pytest.approx(1e4) and row["single_valued"] == "true"


def test_steady_undriven(capsys, write):
    code, out, _ = run(capsys, "steady", "--config", write(EMPTY.replace("epsilon = 10", "epsilon = 0")))
    assert code == 0 and json.loads(out)["n_s"] == 0.0


def test_unsupported_theta_is_validation_exit(capsys, write):
    code, _, err = run(capsys, "steady", "--config", write(REFERENCE + "theta = 0.1\n"))
    assert code == 1 and "UnsupportedConfigurationError" in err


def test_gain_spectrum(capsys, write):
    code, out, _ = run(capsys, "gain-spectrum", "--config", write(REFERENCE))
    rows = read_csv(out)
    assert code == 0 and len(rows) == 2001
    assert list(rows[0]) == ["omega", "gain", "re_gx", "im_gx", "re_gp", "im_gp"]
    gain = [float(r["gain"]) for r in rows]
    assert gain[0] == pytest.approx(2401) and all(a > b for a, b in zip(gain, gain[1:]))
    assert "\r" not in out


def test_gain_spectrum_empty_cavity(capsys, write):
    code, out, _ = run(capsys, "gain-spectrum", "--config", write(EMPTY), "--omega-count", "11")
    assert code == 0 and all(float(r["gain"]) == pytest.approx(1.0) for r in read_csv(out))


def test_gain_spectrum_unstable_lists_eigenvalues(capsys, write):
    # linear cavity above the parametric threshold: the only fixed point is a saddle
    cfg = EMPTY.replace("g_opa = 0", "g_opa = 1")
    code, _, err = run(capsys, "gain-spectrum", "--config", write(cfg))
    assert code == 2 and "UnstableSystemError" in err and "eigenvalues: 1+0j, -3+0j" in err


def test_gain_spectrum_multistable(capsys, write):
    cfg = EMPTY.replace("delta = 0", "delta = 5").replace("lambda_kerr = 0", "lambda_kerr = -0.01").replace("epsilon = 10", "epsilon = 25")
    code, _, err = run(capsys, "gain-spectrum", "--config", write(cfg))
    assert code == 2 and "MultistableError" in err


@pytest.mark.parametrize("kappa, g0", [("490", 9409.0), ("520", 625.0)])
def test_gain_spectrum_kappa_runs(capsys, write, kappa, g0):
    cfg = REFERENCE.replace("kappa = 500", f"kappa = {kappa}").replace("lambda_kerr = 0.0005", "lambda_kerr = auto")
    code, out, _ = run(capsys, "gain-spectrum", "--config", write(cfg), "--omega-count", "3")
    assert code == 0 and float(read_csv(out)[0]["gain"]) == pytest.approx(g0)


def test_noise_report(capsys, write):
    code, out, _ = run(capsys, "noise-report", "--config", write(REFERENCE))
    data = json.loads(out)
    assert code == 0
    assert data["s_zz"] == pytest.approx(0.050005) and data["s_ff"] == pytest.approx(5e4)
    assert data["s_zf"] == pytest.approx(50) and data["ql_product"] == pytest.approx(0.25)


def test_noise_report_blind_phase(capsys, write):
    code, _, err = run(capsys, "noise-report", "--config", write(REFERENCE + "[measurement]\nphi_h = 0\n"))
    assert code == 2 and "NoTransductionError" in err and "phi_h = 0" in err


def test_noise_report_empty_cavity(capsys, write):
    code, out, _ = run(capsys, "noise-report", "--config", write(EMPTY))
    assert code == 0 and json.loads(out)["ql_product"] == pytest.approx(0.25)


def test_sweep_overrides_and_closed_form(capsys, write):
    cfg = write(REFERENCE)
    code, out, _ = run(
        capsys, "sweep", "--config", cfg, "--variable", "kappa", "--start", "485", "--stop", "600", "--count", "24",
        "--lambda-mode", "auto_real_alpha",
    )
    rows = read_csv(out)
    assert code == 0 and len(rows) == 24 and list(rows[0])[0] == "kappa"
    for r in rows:
        k = float(r["kappa"])
        assert float(r["g0"]) == pytest.approx(((k + 480) / (k - 480)) ** 2, rel=1e-10)
        assert float(r["n_s"]) == pytest.approx(4e6 / (480 - k) ** 2, rel=1e-10)


def test_sweep_below_threshold_rows(capsys, write):
    text = REFERENCE + "[sweep]\nvariable = kappa\nstart = 460\nstop = 500\ncount = 5\nlambda_mode = auto_real_alpha\n"
    code, out, _ = run(capsys, "sweep", "--config", write(text))
    rows = read_csv(out)
    assert code == 0
    assert [r["status"] for r in rows] == ["unstable", "unstable", "unstable", "ok", "ok"]
    assert [r["g0"] for r in rows[:3]] == ["", "", ""]


def test_sweep_row_matches_standalone(capsys, write):
    code, out, _ = run(capsys, "sweep", "--config", write(REFERENCE), "--variable", "phi_h", "--start", "0.5", "--stop", "1.0", "--count", "2")
    row = read_csv(out)[-1]
    code2, report, _ = run(capsys, "noise-report", "--config", write(REFERENCE + "[measurement]\nphi_h = 1.0\n", "b.ini"))
    assert code == code2 == 0
    assert float(row["ql_product"]) == json.loads(report)["ql_product"]
    assert float(row["m22"]) == pytest.approx(-490) and float(row["eig1_re"]) == pytest.approx(-10)


def test_sweep_needs_spec(capsys, write):
    code, _, err = run(capsys, "sweep", "--config", write(REFERENCE))
    assert code == 1 and "sweep" in err


def test_sweep_output_is_deterministic(tmp_path, write, capsys, monkeypatch):
    cfg = write(REFERENCE + "[sweep]\nvariable = g_opa\nstart = 118\nstop = 120\ncount = 9\nlambda_mode = auto_real_alpha\n")
    monkeypatch.setenv("HYBRIDAMP_OUTPUT_DIR", str(tmp_path))
    assert main(["sweep", "--config", cfg, "--out", "a.csv"]) == 0
    assert main(["sweep", "--config", cfg, "--out", "b.csv", "--jobs", "2"]) == 0
    a, b = (tmp_path / "a.csv").read_bytes(), (tmp_path / "b.csv").read_bytes()
    assert a == b
    g0 = [float(r["g0"]) for r in read_csv(a.decode())]
    assert g0[0] == pytest.approx(1205.08, rel=1e-5) and g0[-1] == pytest.approx(2401)


def test_ql_check(capsys):
    code, out, _ = run(capsys, "ql-check", "--n-samples", "300", "--seed", "42")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["max_deviation"] < 1e-9 and data["seed"] == 42


def test_ql_check_forced_reference(capsys, write):
    code, out, _ = run(capsys, "ql-check", "--n-samples", "1", "--config", write(REFERENCE), "--include-config")
    data = json.loads(out)
    assert code == 0 and data["n_evaluated"] == 1 and data["max_deviation"] < 1e-15


def test_ql_check_zero_samples(capsys):
    code, _, _ = run(capsys, "ql-check", "--n-samples", "0")
    assert code == 1


def test_oracle_verify_empty_cavity(capsys, write):
    text = EMPTY + "[oracle]\ndt = 0.01\nduration = 40\nsegments = 128\n"
    code, out, err = run(capsys, "oracle-verify", "--config", write(text))
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# seed=0") and "rng=PCG64" in lines[0]
    rows = read_csv("\n".join(lines[1:]))
    assert [r["quantity"] for r in rows] == ["gain"] * 5 + ["current_psd"]
    assert all(r["passed"] == "true" for r in rows)
    assert err.count("PASS") == 6


def test_oracle_verify_coarse_step(capsys, write):
    code, _, err = run(capsys, "oracle-verify", "--config", write(REFERENCE), "--dt", "0.1")
    assert code == 1 and "dt" in err


def test_oracle_verify_mismatch_exit_code(capsys, write, monkeypatch):
    import hybridamp.cli as cli

    monkeypatch.setattr(cli, "stochastic_current_psd", lambda *a, **k: 1.2)
    text = EMPTY + "[oracle]\ndt = 0.01\nduration = 40\nsegments = 2\n"
    code, out, err = run(capsys, "oracle-verify", "--config", write(text))
    assert code == 3 and "FAIL current_psd" in err
    assert read_csv("\n".join(out.splitlines()[1:]))[-1]["passed"] == "false"


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["steady"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 1


def test_missing_config_file(capsys, tmp_path):
    code, _, _ = run(capsys, "steady", "--config", str(tmp_path / "missing.ini"))
    assert code == 1


def test_module_entry_point(write):
    proc = subprocess.run(
        [sys.executable, "-m", "hybridamp", "steady", "--config", write(EMPTY)], capture_output=True, text=True
    )
    assert proc.returncode == 0 and math.isclose(json.loads(proc.stdout)["n_s"], 100.0)
