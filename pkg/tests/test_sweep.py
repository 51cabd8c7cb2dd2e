import numpy as np
import pytest

from hybridamp.config import SweepSpec
from hybridamp.errors import PreconditionError
from hybridamp.model import MeasurementParams, SystemParams, reference_params
from hybridamp.sweep import evaluate_point, random_configuration, run_ql_check, run_sweep


def test_kappa_sweep_crossing_threshold():
    spec = SweepSpec("kappa", 400, 600, 21, lambda_mode="auto_real_alpha")
    rows = run_sweep(reference_params(), MeasurementParams(), spec)
    for row in rows:
        if row["kappa"] < 480:
            assert row["status"] == "unstable" and row["g0"] is None
        elif row["kappa"] > 480:
            assert row["status"] == "ok"
    # the unstable real-amplitude root coexists with Kerr-stabilized branches
    assert rows[0]["n_stable"] == 2
    assert [r["status"] for r in rows if r["kappa"] == 480] == ["unstable"]


def test_g_sweep_gain_rises():
    spec = SweepSpec("g_opa", 118, 120, 5, lambda_mode="auto_real_alpha")
    rows = run_sweep(reference_params(), MeasurementParams(), spec)
    g0 = [r["g0"] for r in rows]
    assert g0[0] == pytest.approx((972 / 28) ** 2) and g0[-1] == pytest.approx(2401)
    assert all(np.diff(g0) > 0)


def test_fixed_lambda_off_real_alpha_is_flagged():
    spec = SweepSpec("kappa", 490, 510, 3)
    rows = run_sweep(reference_params(), MeasurementParams(), spec)
    assert [r["status"] for r in rows] == ["complex_alpha", "ok", "complex_alpha"]


def test_multistable_row():
    p = SystemParams(delta=5.0, g_opa=0.0, theta=0.0, lambda_kerr=-0.01, epsilon=25.0, kappa=2.0)
    row = evaluate_point(p, MeasurementParams())
    assert row["status"] == "multistable" and row["n_stable"] == 2 and row["n_s"] is None


def test_parallel_sweep_matches_serial():
    spec = SweepSpec("delta", -20, 20, 9, lambda_mode="auto_real_alpha")
    serial = run_sweep(reference_params(), MeasurementParams(), spec)
    parallel = run_sweep(reference_params(), MeasurementParams(), spec, jobs=2)
    assert serial == parallel


def test_ql_check_summary():
    summary = run_ql_check(200, seed=1)
    assert summary.n_evaluated + summary.n_skipped == 200
    assert summary.passed and summary.max_deviation < 1e-9
    assert run_ql_check(200, seed=1).to_dict() == summary.to_dict()
    with pytest.raises(PreconditionError):
        run_ql_check(0)


def test_ql_check_base_is_first_sample():
    base = (reference_params(), MeasurementParams())
    summary = run_ql_check(1, base=base)
    assert summary.n_evaluated == 1


def test_random_configuration_is_real_alpha():
    rng = np.random.Generator(np.random.PCG64(0))
    for _ in range(50):
        system, meas = random_configuration(rng)
        assert system.kappa > 4 * system.g_opa
        assert 0 <= meas.phi_h < 2 * np.pi
