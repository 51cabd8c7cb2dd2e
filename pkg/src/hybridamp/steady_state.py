"""Classical steady state of the driven Kerr + OPA cavity (theta = 0).

The coherent amplitude satisfies

    alpha = 2 eps (4G + 2i delta + kappa + 4i Lambda n) / (kappa^2 - 16 G^2 + 4 (delta + 2 n Lambda)^2)

with n = |alpha|^2, and taking the modulus squared gives a real polynomial of
degree five in n. All real roots are located, the non-negative ones are
classified by the stability of the corresponding classical fixed point.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    MultistableError,
    NoSteadyStateError,
    SingularOperatingPointError,
    StaleRootError,
    UnstableSystemError,
    UnsupportedConfigurationError,
)
from .linearization import REAL_ALPHA_TOL, drift_matrix, fixed_point_is_stable, real_alpha_mismatch
from .model import validate

REAL_ROOT_TOL = 1e-8
RESIDUAL_TOL = 1e-8
ALPHA_CONSISTENCY_TOL = 1e-8
THRESHOLD_TOL = 1e-9


@dataclass(frozen=True)
class RootInfo:
    n_bar: float
    residual: float
    stable: bool
    physical: bool
    alpha: Optional[complex] = None
    real_alpha: bool = False


@dataclass(frozen=True)
class SteadyState:
    alpha: Optional[complex]
    n_s: Optional[float]
    roots: tuple
    single_valued: bool

    @property
    def n_stable(self):
        return sum(1 for r in self.roots if r.physical and r.stable)


def _require_theta_zero(params):
    if params.theta != 0:
        raise UnsupportedConfigurationError(
            "steady-state polynomial is only available for theta = 0"
        )


def quintic_coefficients(params):
    """Coefficients (A0, ..., A5) of sum_i A_i n^i = 0, lowest order first."""
    _require_theta_zero(params)
    d, g, lam, eps, k = params.delta, params.g_opa, params.lambda_kerr, params.epsilon, params.kappa
    a5 = 256 * lam**4
    a4 = 512 * d * lam**3
    a3 = (384 * d**2 + 32 * k**2 - 512 * g**2) * lam**2
    a2 = (128 * d**3 + 32 * d * k**2 - 64 * eps**2 * lam - 512 * g**2 * d) * lam
    a1 = (4 * d**2 + k**2 - 16 * g**2) ** 2 - 64 * eps**2 * d * lam
    a0 = -4 * eps**2 * (4 * d**2 + (4 * g + k) ** 2)
    return (a0, a1, a2, a3, a4, a5)


def polyval(coeffs, n):
    """Evaluate an ascending-order polynomial (works on scalars and arrays)."""
    acc = np.zeros_like(n, dtype=float) if isinstance(n, np.ndarray) else 0.0
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


def _polyval_with_derivative(coeffs, n):
    p = 0.0 * n
    dp = 0.0 * n
    for c in reversed(coeffs):
        dp = dp * n + p
        p = p * n + c
    return p, dp


def residual_bound(coeffs, n):
    scale = max(abs(c) for c in coeffs)
    return RESIDUAL_TOL * scale * max(1.0, abs(n) ** 5)


def _newton(coeffs, z, iterations=50):
    for _ in range(iterations):
        p, dp = _polyval_with_derivative(coeffs, z)
        if dp == 0:
            break
        step = p / dp
        z = z - step
        if abs(step) <= 1e-16 * max(abs(z), 1e-300):
            break
    return z


def _strip(coeffs):
    # Only exact zeros are dropped: with Lambda ~ 1e-5 and eps ~ 1e4 a genuine A5
    # is ~1e-31 max|A_i| yet still moves the roots at the 1e-3 level.
    coeffs = [float(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _drop_remote(coeffs, log_limit=30 * math.log(10)):
    # A leading term so small that the roots it adds sit beyond |n| ~ 1e30 is
    # dropped; at any representable physical n its contribution is nil.
    while len(coeffs) > 1:
        d = len(coeffs) - 1
        lead = math.log(abs(coeffs[-1]))
        scale = max((math.log(abs(c)) - lead) / (d - k) for k, c in enumerate(coeffs[:-1]) if c != 0) if any(coeffs[:-1]) else -math.inf
        if scale <= log_limit:
            break
        coeffs = _strip(coeffs[:-1])
    return coeffs


def real_roots(coeffs):
    """All real roots of an ascending-order real polynomial, Newton-polished and sorted.

    Candidates come from the companion-matrix eigenvalues of a rescaled
    polynomial; a candidate is real when, after polishing in complex arithmetic,
    |Im| <= 1e-8 max(1, |root|). Near-coincident real roots are merged.
    """
    coeffs = _drop_remote(_strip(coeffs))
    if not coeffs:
        raise SingularOperatingPointError("steady-state polynomial vanishes identically")
    degree = len(coeffs) - 1
    if degree == 0:
        return []
    # rescale n = s*y so the leading and lowest nonzero coefficients are comparable
    low = next(i for i, c in enumerate(coeffs) if c != 0)
    log_s = 0.0
    if low < degree:
        log_s = (math.log(abs(coeffs[low])) - math.log(abs(coeffs[-1]))) / (degree - low)
    # scaled coefficients in log form: s**i alone may overflow
    scaled = [math.copysign(math.exp(math.log(abs(c)) + i * log_s), c) if c else 0.0 for i, c in enumerate(coeffs)]
    top = max(abs(c) for c in scaled)
    candidates = np.roots([c / top for c in scaled[::-1]]) * math.exp(log_s)

    found = []
    for z in candidates:
        z = _newton(coeffs, complex(z), iterations=8)
        if abs(z.imag) > REAL_ROOT_TOL * max(1.0, abs(z)):
            continue
        r = _newton(coeffs, float(z.real))
        if abs(r) < 1e-300:
            r = 0.0
        if any(abs(r - q) <= REAL_ROOT_TOL * max(1.0, abs(q)) for q in found):
            continue
        found.append(r)
    return sorted(found)


def _amplitude_residual(params, n):
    """|alpha(n)|^2 - n and its derivative, straight from the amplitude formula."""
    g, lam, eps, k = params.g_opa, params.lambda_kerr, params.epsilon, params.kappa
    shifted = params.delta + 2 * lam * n
    num = (4 * g + k) ** 2 + 4 * shifted**2
    den = k**2 - 16 * g**2 + 4 * shifted**2
    f = 4 * eps**2 * num / den**2 - n
    df = 4 * eps**2 * 8 * shifted * (den - 2 * num) / den**3 * 2 * lam - 1
    return f, df


def _polish_physical(params, n):
    # The expanded polynomial loses digits when kappa is small against the
    # Kerr shift; a few guarded Newton steps on the unexpanded equation fix that.
    for _ in range(4):
        try:
            f, df = _amplitude_residual(params, n)
            step = f / df
        except ZeroDivisionError:
            break
        if not math.isfinite(step) or abs(step) > 1e-6 * max(abs(n), 1.0):
            break
        trial = n - step
        if abs(_amplitude_residual(params, trial)[0]) >= abs(f):
            break
        n = trial
    return n


def steady_alpha(params, n_bar):
    """Coherent amplitude belonging to photon number ``n_bar``."""
    d, g, lam, eps, k = params.delta, params.g_opa, params.lambda_kerr, params.epsilon, params.kappa
    shifted = d + 2 * n_bar * lam
    den = k**2 - 16 * g**2 + 4 * shifted**2
    if abs(den) <= 1e-12 * (k**2 + 16 * g**2 + 4 * shifted**2):
        raise SingularOperatingPointError(
            "kappa^2 - 16 G^2 + 4 (delta + 2 n Lambda)^2 vanishes at this operating point"
        )
    alpha = 2 * eps * complex(4 * g + k, 2 * d + 4 * lam * n_bar) / den
    a2 = abs(alpha) ** 2
    if abs(a2 - n_bar) > ALPHA_CONSISTENCY_TOL * max(abs(n_bar), a2, 1e-300):
        raise StaleRootError(f"|alpha|^2 = {a2:.17g} does not match n = {n_bar:.17g}")
    return alpha


def _classify_roots(params, coeffs):
    out = []
    for n in real_roots(coeffs):
        residual = abs(polyval(coeffs, n))
        physical = n >= 0
        alpha, stable, is_real = None, False, False
        if physical:
            n = _polish_physical(params, n)
            residual = abs(polyval(coeffs, n))
            alpha = steady_alpha(params, n)
            stable = bool(fixed_point_is_stable(params, alpha))
            is_real = abs(real_alpha_mismatch(params, n)) <= REAL_ALPHA_TOL * max(abs(params.delta), 1.0)
        out.append(RootInfo(n, residual, stable, physical, alpha, is_real))
    return tuple(out)


def solve_photon_number(params):
    """Find every real root of the photon-number polynomial and pick the operating point.

    ``n_s`` and ``alpha`` are set only when exactly one non-negative root is
    stable; otherwise the root table is returned with ``single_valued`` false.
    """
    validate(params)
    _require_theta_zero(params)
    coeffs = quintic_coefficients(params)
    roots = _classify_roots(params, coeffs)
    if not any(r.physical for r in roots):
        if abs(params.kappa - 4 * params.g_opa) < THRESHOLD_TOL * params.kappa:
            raise SingularOperatingPointError("parametric threshold kappa = 4G: the cavity field diverges")
        raise NoSteadyStateError("no non-negative root of the photon-number polynomial")
    stable = [r for r in roots if r.physical and r.stable]
    if len(stable) == 1:
        return SteadyState(stable[0].alpha, stable[0].n_bar, roots, True)
    return SteadyState(None, None, roots, False)


def require_operating_point(params):
    """Steady state with exactly one stable branch, or the reason there is none."""
    steady = solve_photon_number(params)
    if steady.n_stable == 0:
        root = next(r for r in steady.roots if r.physical)
        eig = tuple(complex(z) for z in np.linalg.eigvals(drift_matrix(params, root.alpha)))
        raise UnstableSystemError(
            f"no stable steady state (fixed point n = {root.n_bar:.10g} is unstable)",
            eigenvalues=eig,
        )
    if not steady.single_valued:
        raise MultistableError(f"operating point is not single-valued ({steady.n_stable} stable roots)")
    return steady


def classify_multistability(params):
    """Number of stable non-negative roots (0 when no steady state exists)."""
    try:
        return solve_photon_number(params).n_stable
    except (NoSteadyStateError, SingularOperatingPointError):
        return 0


def real_alpha_fixed_point(delta, g_opa, kappa, epsilon):
    """Closed-form operating point when lambda_kerr equals the real-alpha value.

    Returns (n, alpha) with n = 4 eps^2 / (4G - kappa)^2 and alpha = 2 eps / (kappa - 4G).
    """
    if abs(kappa - 4 * g_opa) < THRESHOLD_TOL * kappa:
        raise SingularOperatingPointError("parametric threshold kappa = 4G: alpha diverges")
    alpha = 2 * epsilon / (kappa - 4 * g_opa)
    return alpha * alpha, alpha
