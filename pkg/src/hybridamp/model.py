"""Parameters of the driven Kerr + degenerate-OPA cavity.

All rates and frequencies are dimensionless multiples of a reference frequency
``omega_0``; hbar = 1 and the homodyne constant B = 1 throughout.

The rotating-frame Hamiltonian is

    H = -delta a^dag a + i g_opa (e^{i theta} a^dag^2 - h.c.)
        - lambda_kerr a^dag^2 a^2 + i epsilon (a^dag - a)

and the cavity field decays at rate ``kappa``.
"""

import math
from dataclasses import dataclass, fields, replace

from .errors import ValidationError


@dataclass(frozen=True)
class SystemParams:
    delta: float  # drive minus cavity frequency
    g_opa: float
    theta: float
    lambda_kerr: float
    epsilon: float
    kappa: float

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class MeasurementParams:
    coupling_a: float = 1.0  # signal-detector coupling A in H_int = A a^dag a z
    phi_h: float = math.pi / 2  # homodyne reference phase

    def replace(self, **changes):
        return replace(self, **changes)


def validate(params):
    """Return ``params`` unchanged, or raise ValidationError naming the first broken invariant."""
    for f in fields(params):
        value = getattr(params, f.name)
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValidationError(f"{f.name} must be a real number")
        if not math.isfinite(value):
            raise ValidationError(f"{f.name} must be finite")
    if params.kappa <= 0:
        raise ValidationError("kappa must be positive")
    if params.epsilon < 0:
        raise ValidationError("epsilon must be non-negative")
    if params.g_opa < 0:
        raise ValidationError("g_opa must be non-negative")
    return params


def validate_measurement(meas):
    for f in fields(meas):
        value = getattr(meas, f.name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ValidationError(f"{f.name} must be finite")
    if meas.coupling_a <= 0:
        raise ValidationError("coupling_a must be positive")
    if not 0 <= meas.phi_h < 2 * math.pi:
        raise ValidationError("phi_h must lie in [0, 2*pi)")
    return meas


def lambda_for_real_alpha(delta, g_opa, kappa, epsilon):
    """Kerr coefficient that makes the steady coherent amplitude real (theta = 0).

    Lambda_0 = -delta (4 G - kappa)^2 / (8 epsilon^2). It depends on G and kappa
    only through 4G - kappa and is odd in delta.
    """
    if epsilon == 0:
        raise ZeroDivisionError("epsilon must be nonzero to choose a real-alpha Kerr coefficient")
    return -delta * (4 * g_opa - kappa) ** 2 / (8 * epsilon**2)


def with_real_alpha_kerr(params):
    """Copy of ``params`` with lambda_kerr set to the real-alpha value."""
    lam = lambda_for_real_alpha(params.delta, params.g_opa, params.kappa, params.epsilon)
    return params.replace(lambda_kerr=lam)


def reference_params(g_opa=120.0, kappa=500.0):
    """Reference amplifier point: delta=-10, eps=1e3, real-alpha Kerr.

    With G=120 and kappa=500 this gives n_s = 1e4, alpha = 100 and a
    zero-frequency gain of 2401.
    """
    base = SystemParams(delta=-10.0, g_opa=g_opa, theta=0.0, lambda_kerr=0.0, epsilon=1000.0, kappa=kappa)
    return with_real_alpha_kerr(base)


def empty_cavity_params(kappa=2.0, epsilon=10.0):
    """Resonantly driven linear cavity: no detuning, no OPA, no Kerr term."""
    return SystemParams(delta=0.0, g_opa=0.0, theta=0.0, lambda_kerr=0.0, epsilon=epsilon, kappa=kappa)
