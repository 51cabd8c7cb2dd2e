import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hybridamp.errors import LinearizationInvalidError, LinearizationWarning
from hybridamp.linearization import LinearizedSystem, build_m_matrix, drift_matrix, eigenvalues, is_stable
from hybridamp.model import empty_cavity_params, reference_params
from hybridamp.steady_state import solve_photon_number

entries = st.floats(-1e3, 1e3, allow_nan=False)


def test_reference_matrix():
    lin = build_m_matrix(reference_params(), 1e4)
    assert (lin.m11, lin.m12, lin.m21, lin.m22) == pytest.approx((-10, 0, 20, -490), abs=1e-9)
    assert lin.stable
    assert eigenvalues(lin) == (pytest.approx(-10), pytest.approx(-490))


def test_trace_is_minus_kappa():
    p = reference_params(g_opa=80, kappa=700)
    lin = build_m_matrix(p, solve_photon_number(p).n_s)
    assert lin.trace == pytest.approx(-700)


def test_requires_real_alpha():
    with pytest.raises(LinearizationInvalidError):
        build_m_matrix(reference_params().replace(lambda_kerr=1e-3), 1e4)


def test_theta_nonzero_skips_real_alpha_check():
    p = reference_params().replace(theta=math.pi / 2, lambda_kerr=0.0)
    lin = build_m_matrix(p, 1e4)
    assert lin.m11 == pytest.approx(-250) and lin.m22 == pytest.approx(-250)
    assert lin.m12 == pytest.approx(250) and lin.m21 == pytest.approx(230)


def test_few_photons_warn():
    with pytest.warns(LinearizationWarning):
        build_m_matrix(empty_cavity_params(epsilon=1.0), 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        build_m_matrix(empty_cavity_params(), 100.0)


def test_general_jacobian_reduces_to_m_matrix():
    for p in (reference_params(), reference_params(g_opa=60, kappa=900), empty_cavity_params()):
        s = solve_photon_number(p)
        lin = build_m_matrix(p, s.n_s)
        assert drift_matrix(p, s.alpha) == pytest.approx(lin.matrix, abs=1e-9)


@settings(max_examples=300, deadline=None)
@given(entries, entries, entries, entries)
def test_eigenvalues_match_numpy(m11, m12, m21, m22):
    lin = LinearizedSystem.from_entries(m11, m12, m21, m22)
    scale = max(1.0, abs(m11), abs(m12), abs(m21), abs(m22))
    assert lin.eig1 + lin.eig2 == pytest.approx(lin.trace, abs=1e-9 * scale)
    assert lin.eig1 * lin.eig2 == pytest.approx(lin.det, abs=1e-9 * scale**2)
    ref = sorted(np.linalg.eigvals(lin.matrix), key=lambda z: (z.real, z.imag))
    ours = sorted((lin.eig1, lin.eig2), key=lambda z: (z.real, z.imag))
    assert np.allclose(ours, ref, atol=1e-6 * scale)
    assert lin.eig1.real >= lin.eig2.real
    assert lin.stable == is_stable(lin)
    assert lin.stable == bool(lin.trace < 0 and lin.det > 0)


def test_marginal_det_is_unstable():
    lin = LinearizedSystem.from_entries(-1.0, 0.0, 0.0, 0.0)
    assert not lin.stable
