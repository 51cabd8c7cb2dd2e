"""Linearized quadrature dynamics around the classical steady state.

With a = alpha + d and x = (d + d^dag)/sqrt(2), p = i(d^dag - d)/sqrt(2) the
fluctuations obey

    dx/dt = m11 x + m12 p - sqrt(kappa) x_in
    dp/dt = m21 x + m22 p - sqrt(kappa) p_in

for a real coherent amplitude alpha.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import LinearizationInvalidError, LinearizationWarning

REAL_ALPHA_TOL = 1e-6
MIN_PHOTONS = 100.0


@dataclass(frozen=True)
class LinearizedSystem:
    m11: float
    m12: float
    m21: float
    m22: float
    K: float
    eig1: complex
    eig2: complex
    stable: bool

    @property
    def matrix(self):
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @property
    def trace(self):
        return self.m11 + self.m22

    @property
    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    @classmethod
    def from_entries(cls, m11, m12, m21, m22):
        m11, m12, m21, m22 = float(m11), float(m12), float(m21), float(m22)
        K = (m11 - m22) ** 2 + 4 * m12 * m21
        eig1, eig2 = _eigenpair(m11, m12, m21, m22, K)
        stable = (m11 + m22) < 0 and (m11 * m22 - m12 * m21) > 0
        return cls(m11, m12, m21, m22, K, eig1, eig2, stable)


def _eigenpair(m11, m12, m21, m22, K):
    tr = m11 + m22
    det = m11 * m22 - m12 * m21
    if K >= 0:
        # larger-magnitude root first, then Vieta for the other (no cancellation)
        root = math.sqrt(K)
        q = 0.5 * (tr + math.copysign(root, tr))
        if q == 0:
            return complex(0.0), complex(0.0)
        other = det / q
        hi, lo = (q, other) if q >= other else (other, q)
        return complex(hi), complex(lo)
    half = 0.5 * cmath.sqrt(K)
    return complex(0.5 * tr) + half, complex(0.5 * tr) - half


def real_alpha_mismatch(params, n_s):
    """Effective detuning delta + 2 Lambda n_s; zero when alpha is real (theta = 0)."""
    return params.delta + 2 * params.lambda_kerr * n_s


def build_m_matrix(params, n_s):
    """Drift matrix of the linearized fluctuations at photon number ``n_s``.

    For theta = 0 the entries assume a real steady amplitude, so
    delta + 2 Lambda n_s must vanish (relative tolerance 1e-6).
    """
    if n_s < 0:
        raise LinearizationInvalidError("n_s must be non-negative")
    if params.theta == 0:
        mismatch = real_alpha_mismatch(params, n_s)
        if abs(mismatch) > REAL_ALPHA_TOL * max(abs(params.delta), 1.0):
            raise LinearizationInvalidError(
                f"steady amplitude is not real (delta + 2 Lambda n_s = {mismatch:.6g}); "
                "choose lambda_kerr with lambda_for_real_alpha"
            )
    if n_s < MIN_PHOTONS:
        warnings.warn("linearization assumes n_s >> 1", LinearizationWarning, stacklevel=2)
    kappa, g, th = params.kappa, params.g_opa, params.theta
    lam_n = params.lambda_kerr * n_s
    m11 = -kappa / 2 + 2 * g * math.cos(th)
    m12 = -(params.delta + 2 * lam_n - 2 * g * math.sin(th))
    m21 = params.delta + 6 * lam_n + 2 * g * math.sin(th)
    m22 = -(kappa / 2 + 2 * g * math.cos(th))
    return LinearizedSystem.from_entries(m11, m12, m21, m22)


def eigenvalues(lin):
    """(eig1, eig2) = trace/2 +- sqrt(K)/2, eig1 having the larger real part."""
    return lin.eig1, lin.eig2


def is_stable(lin):
    """Both eigenvalues strictly in the left half-plane; det = 0 counts as unstable."""
    return lin.trace < 0 and lin.det > 0


def drift_matrix(params, alpha):
    """Jacobian of the mean-field equation in (x, p) at an arbitrary complex ``alpha``.

    Writing the linearized field equation as dd/dt = P d + Q d^dag with
    P = i(delta + 4 Lambda |alpha|^2) - kappa/2 and
    Q = 2 G e^{i theta} + 2 i Lambda alpha^2. For real alpha and theta = 0
    this reduces to the m-matrix above.
    """
    n = abs(alpha) ** 2
    P = 1j * (params.delta + 4 * params.lambda_kerr * n) - params.kappa / 2
    Q = 2 * params.g_opa * cmath.exp(1j * params.theta) + 2j * params.lambda_kerr * alpha**2
    return np.array(
        [
            [P.real + Q.real, -P.imag + Q.imag],
            [P.imag + Q.imag, P.real - Q.real],
        ]
    )


def fixed_point_is_stable(params, alpha):
    """Stability of a classical fixed point (trace is always -kappa, so det decides)."""
    m = drift_matrix(params, alpha)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return det > 0
