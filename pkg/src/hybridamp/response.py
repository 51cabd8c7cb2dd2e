"""Frequency-domain transfer functions of the linearized amplifier.

Fourier convention: C[omega] = int dt C(t) exp(-i omega t).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    GridTooNarrowError,
    NoTransductionError,
    PreconditionError,
    ResonanceSingularityError,
    UnstableSystemError,
)

SINGULAR_J_TOL = 1e-12


@dataclass(frozen=True)
class ResponseSpectrum:
    omegas: np.ndarray
    j_vals: np.ndarray
    gx: np.ndarray
    gp: np.ndarray
    gain: np.ndarray


def omega_grid(start=0.0, stop=100.0, count=2001):
    if count < 2:
        raise PreconditionError("omega grid needs at least two points")
    if not start < stop:
        raise PreconditionError("omega grid needs start < stop")
    return np.linspace(start, stop, count)


def j_of_omega(lin, omega):
    """J[omega] = m12 m21 + (i m11 + omega)(i m22 + omega); J[0] = -det(M)."""
    omega = np.asarray(omega, dtype=float)
    val = lin.m12 * lin.m21 + (1j * lin.m11 + omega) * (1j * lin.m22 + omega)
    return val if val.ndim else complex(val)


def _check_j(j, kappa):
    if np.any(np.abs(j) <= SINGULAR_J_TOL * kappa**2):
        raise ResonanceSingularityError("J[omega] vanishes: the system is marginally stable at this frequency")


def quadrature_gains(lin, kappa, omega):
    """Reflection coefficients of x_out on (x_in, p_in).

    gx = 1 + kappa (i omega - m22) / J,  gp = kappa m12 / J
    """
    j = j_of_omega(lin, omega)
    _check_j(j, kappa)
    gx = 1 + kappa * (1j * np.asarray(omega) - lin.m22) / j
    gp = kappa * lin.m12 / j
    if np.ndim(gx) == 0:
        return complex(gx), complex(gp)
    return gx, np.broadcast_to(gp, gx.shape).copy()


def gain_spectrum(params, lin, omegas):
    """Gain |gx[omega]|^2 on a frequency grid; refuses unstable systems."""
    if not lin.stable:
        raise UnstableSystemError(
            f"drift matrix is unstable (eigenvalues {lin.eig1:.6g}, {lin.eig2:.6g})",
            eigenvalues=(lin.eig1, lin.eig2),
        )
    omegas = np.asarray(omegas, dtype=float)
    j = j_of_omega(lin, omegas)
    gx, gp = quadrature_gains(lin, params.kappa, omegas)
    return ResponseSpectrum(omegas, np.asarray(j), gx, gp, np.abs(gx) ** 2)


def _zero_index(omegas):
    hits = np.flatnonzero(np.abs(omegas) <= 1e-12 * max(1.0, np.max(np.abs(omegas))))
    if hits.size == 0:
        raise PreconditionError("frequency grid must contain omega = 0")
    return int(hits[0])


def bandwidth_3db(spec):
    """Smallest omega > 0 where the gain falls to half its zero-frequency value.

    Linear interpolation between the bracketing grid points.
    """
    omegas, gain = spec.omegas, spec.gain
    i0 = _zero_index(omegas)
    g0 = gain[i0]
    if np.max(gain) > g0 * (1 + 1e-12):
        raise PreconditionError("zero-frequency gain is not the grid maximum")
    half = g0 / 2
    pos = np.flatnonzero(omegas > omegas[i0])
    order = pos[np.argsort(omegas[pos])]
    w = np.concatenate(([omegas[i0]], omegas[order]))
    g = np.concatenate(([g0], gain[order]))
    below = np.flatnonzero(g <= half)
    if below.size == 0:
        raise GridTooNarrowError("gain never drops to half its maximum on this grid")
    k = below[0]
    w0, w1, g0_, g1 = w[k - 1], w[k], g[k - 1], g[k]
    return float(w0 + (half - g0_) * (w1 - w0) / (g1 - g0_))


def forward_gain_zero(params, meas, lin, n_s):
    """Zero-frequency forward gain from the signal z to the homodyne current.

    chi_IF[0] = A kappa sqrt(2 n_s) (m11 sin(phi_h) - m12 cos(phi_h)) / J[0]
    """
    if n_s <= 0:
        raise PreconditionError("forward gain needs n_s > 0")
    kappa = params.kappa
    j0 = j_of_omega(lin, 0.0).real
    _check_j(j0, kappa)
    s, c = math.sin(meas.phi_h), math.cos(meas.phi_h)
    lever = lin.m11 * s - lin.m12 * c
    return meas.coupling_a * kappa * math.sqrt(2 * n_s) * lever / j0


def require_transduction(lin, meas):
    """Raise when the homodyne quadrature is blind to the signal (chi_IF = 0)."""
    s, c = math.sin(meas.phi_h), math.cos(meas.phi_h)
    lever = lin.m11 * s - lin.m12 * c
    if abs(lever) <= 1e-12 * (abs(lin.m11) + abs(lin.m12)):
        raise NoTransductionError(
            f"forward gain vanishes at phi_h = {meas.phi_h:.17g}; the homodyne quadrature does not see the signal",
            phi_h=meas.phi_h,
        )
