"""Zero-frequency noise of the homodyne current and of the back-action force.

Vacuum inputs have symmetrized quadrature spectral density 1/2, from
<x_in[w] x_in[w']> = <p_in[w] p_in[w']> = pi delta(w + w'). The cross
correlators <x_in p_in> = -<p_in x_in> = i pi delta(w + w') drop out of every
symmetrized spectrum at omega = 0, so with I0 = f1 x_in + f2 p_in and
F = h1 x_in + h2 p_in:

    S_I0I0 = (f1^2 + f2^2) / 2
    S_FF   = (h1^2 + h2^2) / 2
    S_IF   = (f1 h1 + f2 h2) / 2
"""

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

from .errors import (
    InconsistentSpectraError,
    NoTransductionError,
    PreconditionError,
    UnstableSystemError,
)
from .linearization import build_m_matrix
from .model import validate, validate_measurement
from .response import _check_j, forward_gain_zero, j_of_omega, require_transduction
from .steady_state import require_operating_point


class HomodyneCoefficients(NamedTuple):
    f1: float
    f2: float
    gamma1: float
    gamma2: float
    nu1: float
    nu2: float


@dataclass(frozen=True)
class NoiseReport:
    f1: float
    f2: float
    h1: float
    h2: float
    gamma1: float
    gamma2: float
    nu1: float
    nu2: float
    s_ii: float
    s_zz: float
    s_ff: float
    s_zf: float
    ql_product: float
    added_noise_quanta: float
    chi_if: float

    def to_dict(self):
        return asdict(self)


def _j0(lin, kappa):
    j0 = j_of_omega(lin, 0.0).real
    _check_j(j0, kappa)
    return j0


def homodyne_coefficients(lin, kappa, phi_h):
    """Weights of x_in and p_in in the zero-frequency homodyne current."""
    j0 = _j0(lin, kappa)
    s, c = math.sin(phi_h), math.cos(phi_h)
    nu1 = j0 - kappa * lin.m22
    nu2 = j0 - kappa * lin.m11
    gamma1 = nu1 * c + kappa * lin.m21 * s
    gamma2 = nu2 * s + kappa * lin.m12 * c
    rk = math.sqrt(kappa)
    return HomodyneCoefficients(rk * gamma1 / j0, rk * gamma2 / j0, gamma1, gamma2, nu1, nu2)


def backaction_coefficients(lin, kappa, coupling_a, n_s):
    """Weights (h1, h2) of the linearized force F = A sqrt(2 n_s) x on the inputs."""
    if n_s <= 0:
        raise PreconditionError("back-action coefficients need n_s > 0")
    j0 = _j0(lin, kappa)
    pref = coupling_a * math.sqrt(2 * n_s * kappa) / j0
    return -pref * lin.m22, pref * lin.m12


def current_noise_zero(f1, f2):
    return 0.5 * (f1 * f1 + f2 * f2)


def imprecision_noise(s_ii, chi_if):
    """Current noise referred back to the signal: S_I0I0 / |chi_IF|^2."""
    if chi_if == 0:
        raise NoTransductionError("forward gain is zero; imprecision noise diverges")
    return s_ii / abs(chi_if) ** 2


def backaction_noise(h1, h2):
    return 0.5 * (h1 * h1 + h2 * h2)


def backaction_noise_closed_form(lin, kappa, coupling_a, n_s):
    """A^2 (m12^2 + m22^2) n_s kappa / J[0]^2."""
    j0 = _j0(lin, kappa)
    return coupling_a**2 * (lin.m12**2 + lin.m22**2) * n_s * kappa / j0**2


def cross_correlation(f1, f2, h1, h2, chi_if):
    """Symmetrized current/force correlation referred to the signal, S_IF / chi_IF."""
    if chi_if == 0:
        raise NoTransductionError("forward gain is zero; cross-correlation undefined")
    return (f1 * h1 + f2 * h2) / (2 * chi_if)


def cross_correlation_closed_form(lin, kappa, phi_h):
    """S_zF[0] written in drift-matrix entries (independent of A and n_s).

    [(-m22 J + kappa (m22^2 + m12^2)) cos + (m12 J - kappa (m11 m12 + m21 m22)) sin]
        / (2 J (m11 sin - m12 cos))
    """
    j0 = _j0(lin, kappa)
    s, c = math.sin(phi_h), math.cos(phi_h)
    mu1 = -lin.m22 * j0 + kappa * (lin.m22**2 + lin.m12**2)
    mu2 = lin.m12 * j0 - kappa * (lin.m11 * lin.m12 + lin.m21 * lin.m22)
    return (mu1 * c + mu2 * s) / (2 * j0 * (lin.m11 * s - lin.m12 * c))


def quantum_limit_product(s_zz, s_ff, s_zf):
    """S_zz S_FF - S_zF^2; the Heisenberg bound is 1/4 with hbar = 1."""
    return s_zz * s_ff - s_zf * s_zf


def quantum_limit_bracket(lin, kappa, phi_h):
    """(1/4) [(m12 cos + (kappa + m22) sin) / (m12 cos - m11 sin)]^2."""
    s, c = math.sin(phi_h), math.cos(phi_h)
    ratio = (lin.m12 * c + (kappa + lin.m22) * s) / (lin.m12 * c - lin.m11 * s)
    return 0.25 * ratio * ratio


def added_noise_bound(s_zz, s_ff, s_zf_real, s_zf_imag=0.0):
    """Lower bound on the added noise in quanta, k_B T_N / (hbar omega).

    sqrt(S_zz S_FF - (Re S_zF)^2) - Im S_zF
    """
    det = s_zz * s_ff - s_zf_real * s_zf_real
    if det < 0:
        if det < -1e-12 * s_zz * s_ff:
            raise InconsistentSpectraError("S_zz S_FF < (Re S_zF)^2: spectra violate Cauchy-Schwarz")
        det = 0.0
    return _bound_from_det(det, s_zf_imag)


def _bound_from_det(det, s_zf_imag):
    return math.sqrt(det) - s_zf_imag


def noise_report(params, meas, n_s=None):
    """Full zero-frequency noise budget of one operating point.

    ``n_s`` defaults to the unique stable root of the steady-state polynomial.
    The quantum-limit product is evaluated as (f1 h2 - f2 h1)^2 / (4 chi_IF^2),
    which equals S_zz S_FF - S_zF^2 identically (Lagrange identity) but keeps
    full relative precision when the two terms nearly cancel.
    """
    validate(params)
    validate_measurement(meas)
    if n_s is None:
        n_s = require_operating_point(params).n_s
    lin = build_m_matrix(params, n_s)
    if not lin.stable:
        raise UnstableSystemError(
            f"drift matrix is unstable (eigenvalues {lin.eig1:.6g}, {lin.eig2:.6g})",
            eigenvalues=(lin.eig1, lin.eig2),
        )
    require_transduction(lin, meas)
    kappa = params.kappa
    hc = homodyne_coefficients(lin, kappa, meas.phi_h)
    h1, h2 = backaction_coefficients(lin, kappa, meas.coupling_a, n_s)
    chi = forward_gain_zero(params, meas, lin, n_s)
    s_ii = current_noise_zero(hc.f1, hc.f2)
    s_zz = imprecision_noise(s_ii, chi)
    s_ff = backaction_noise(h1, h2)
    s_zf = cross_correlation(hc.f1, hc.f2, h1, h2, chi)
    wedge = hc.f1 * h2 - hc.f2 * h1
    ql = wedge * wedge / (4 * chi * chi)
    return NoiseReport(
        f1=hc.f1,
        f2=hc.f2,
        h1=h1,
        h2=h2,
        gamma1=hc.gamma1,
        gamma2=hc.gamma2,
        nu1=hc.nu1,
        nu2=hc.nu2,
        s_ii=s_ii,
        s_zz=s_zz,
        s_ff=s_ff,
        s_zf=s_zf,
        ql_product=ql,
        added_noise_quanta=_bound_from_det(ql, 0.0),
        chi_if=chi,
    )
