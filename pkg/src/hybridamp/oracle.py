"""Time-domain cross-checks for the frequency-domain results.

Nothing here reuses the transfer-function code: gains come from integrating
the linearized equations with a classical drive and fitting the steady
sinusoid, noise spectra from simulated white-noise trajectories and averaged
periodograms, and polynomial roots from a sign-change scan.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from .errors import OracleError, PreconditionError, UnstableSystemError
from .steady_state import polyval, quintic_coefficients

RNG_NAME = "PCG64"


@dataclass(frozen=True)
class TrajectoryConfig:
    dt: float
    duration: float
    seed: int = 0
    drive_omega: float = 0.0
    drive_amp: float = 1.0
    segments: int = 64

    def check(self, lin, kappa):
        fastest = max(abs(lin.m11), abs(lin.m12), abs(lin.m21), abs(lin.m22), kappa)
        if not 0 < self.dt < 0.1 / fastest:
            raise PreconditionError(
                f"dt = {self.dt:g} does not resolve the fastest rate; need dt < {0.1 / fastest:.6g}"
            )
        slow = slowest_rate(lin)
        if self.duration < 20 / slow:
            raise PreconditionError(
                f"duration = {self.duration:g} is shorter than 20 relaxation times ({20 / slow:.6g})"
            )
        return self

    @classmethod
    def for_system(cls, lin, kappa, **kwargs):
        """A config that satisfies the resolution and settling requirements with margin."""
        fastest = max(abs(lin.m11), abs(lin.m12), abs(lin.m21), abs(lin.m22), kappa)
        kwargs.setdefault("dt", 0.05 / fastest)
        kwargs.setdefault("duration", 40 / slowest_rate(lin))
        return cls(**kwargs)


def slowest_rate(lin):
    """|Re| of the eigenvalue closest to the imaginary axis."""
    rate = -max(lin.eig1.real, lin.eig2.real)
    if rate <= 0:
        raise UnstableSystemError("drift matrix is not stable", eigenvalues=(lin.eig1, lin.eig2))
    return rate


def _require_stable(lin):
    if not lin.stable:
        raise UnstableSystemError(
            f"drift matrix is unstable (eigenvalues {lin.eig1:.6g}, {lin.eig2:.6g})",
            eigenvalues=(lin.eig1, lin.eig2),
        )


def drive_response(lin, kappa, cfg):
    """RK4 trajectory of x_out(t) under x_in = A cos(w t), p_in = 0, from rest.

    Returns (t, x_out) sampled at every step.
    """
    m11, m12, m21, m22 = lin.m11, lin.m12, lin.m21, lin.m22
    rk = math.sqrt(kappa)
    w, amp, dt = cfg.drive_omega, cfg.drive_amp, cfg.dt
    steps = int(round(cfg.duration / dt))
    cos = math.cos
    out = np.empty(steps + 1)
    x = p = 0.0
    out[0] = amp
    for i in range(steps):
        t = i * dt
        u0 = amp * cos(w * t)
        uh = amp * cos(w * (t + 0.5 * dt))
        u1 = amp * cos(w * (t + dt))
        k1x = m11 * x + m12 * p - rk * u0
        k1p = m21 * x + m22 * p
        xa, pa = x + 0.5 * dt * k1x, p + 0.5 * dt * k1p
        k2x = m11 * xa + m12 * pa - rk * uh
        k2p = m21 * xa + m22 * pa
        xa, pa = x + 0.5 * dt * k2x, p + 0.5 * dt * k2p
        k3x = m11 * xa + m12 * pa - rk * uh
        k3p = m21 * xa + m22 * pa
        xa, pa = x + dt * k3x, p + dt * k3p
        k4x = m11 * xa + m12 * pa - rk * u1
        k4p = m21 * xa + m22 * pa
        x += dt / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        p += dt / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
        out[i + 1] = rk * x + u1
    return np.arange(steps + 1) * dt, out


def time_domain_gain(lin, kappa, cfg):
    """Squared amplitude ratio of the settled output sinusoid to the drive."""
    _require_stable(lin)
    cfg.check(lin, kappa)
    t, y = drive_response(lin, kappa, cfg)
    keep = t >= t[-1] / 2
    t, y = t[keep], y[keep]
    w = cfg.drive_omega
    if w == 0:
        basis = np.ones((t.size, 1))
    else:
        basis = np.column_stack([np.cos(w * t), np.sin(w * t)])
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    amplitude = float(np.hypot.reduce(coef)) if coef.size > 1 else abs(float(coef[0]))
    rms = float(np.sqrt(np.mean((y - basis @ coef) ** 2)))
    if rms > 1e-3 * max(amplitude, 1e-300):
        raise OracleError(f"sinusoid fit did not converge (rms residual {rms:.3g}, amplitude {amplitude:.3g})")
    return (amplitude / cfg.drive_amp) ** 2


class _EulerMaruyamaFilter:
    """Euler-Maruyama recursion of the noisy linear system, run as an IIR filter.

    s_{k+1} = (1 + dt M) s_k - sqrt(kappa) dW_k, outputs read at step k with
    the white input w_k = dW_k / dt. The zero-frequency gain of the recursion
    equals that of the continuous system for any stable dt.
    """

    def __init__(self, lin, kappa, phi_h, dt):
        c, s = math.cos(phi_h), math.sin(phi_h)
        rk = math.sqrt(kappa)
        A = np.eye(2) + dt * lin.matrix
        B = -rk * dt * np.eye(2)
        C = np.array([[1.0, 0.0], [0.0, 1.0], [rk * rk * c, rk * rk * s]])
        D = np.array([[0.0, 0.0], [0.0, 0.0], [rk * c, rk * s]])
        self.tf = []
        for j in range(2):
            num, den = signal.ss2tf(A, B, C, D, input=j)
            self.tf.append((num, den))
        order = len(self.tf[0][1]) - 1
        self.state = np.zeros((2, 3, order))

    def __call__(self, wx, wp):
        out = np.zeros((3, wx.size))
        for j, u in enumerate((wx, wp)):
            num, den = self.tf[j]
            for row in range(3):
                y, self.state[j, row] = signal.lfilter(num[row], den, u, zi=self.state[j, row])
                out[row] += y
        return out  # rows: x, p, I


def _rng(seed, index=0):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(index,))))


def _smooth_at_most(n):
    """Largest 2-3-5-smooth integer <= n (fast FFT length)."""
    while n > 1:
        m = n
        for f in (2, 3, 5):
            while m % f == 0:
                m //= f
        if m == 1:
            return n
        n -= 1
    return 1


def _segment_plan(lin, cfg):
    n_total = int(round(cfg.duration / cfg.dt))
    if cfg.segments < 1:
        raise OracleError("at least one segment is required")
    nperseg = 2 * _smooth_at_most(n_total // (cfg.segments + 1))
    if nperseg < 4:
        raise OracleError("duration too short for the requested number of segments")
    # the lowest decade of bins must sit well inside the flat low-frequency band
    needed = 200 * math.pi / slowest_rate(lin)
    if nperseg * cfg.dt < needed:
        raise OracleError(
            f"duration too short for {cfg.segments} segments: each segment spans "
            f"{nperseg * cfg.dt:.4g} but {needed:.4g} is needed to resolve the low-frequency plateau"
        )
    return nperseg


def min_psd_duration(lin, segments, dt):
    """Shortest duration accepted by :func:`stochastic_current_psd` for ``segments`` and ``dt``."""
    half_block = math.ceil(100 * math.pi / slowest_rate(lin) / dt)
    # leave room for rounding the half-segment down to a fast FFT length
    return (segments + 1) * math.ceil(half_block * 1.1) * dt


def current_psd(lin, kappa, phi_h, cfg, noise_scale=1.0, index=0):
    """Segment-averaged periodogram of the simulated homodyne current.

    Hann-tapered segments with 50% overlap. The estimate is the symmetrized
    spectral density (two-sided, angular-frequency convention), i.e. the
    one-sided density divided by two. Returns (omegas, psd, n_segments).
    """
    _require_stable(lin)
    cfg.check(lin, kappa)
    nperseg = _segment_plan(lin, cfg)
    half = nperseg // 2
    dt = cfg.dt
    rng = _rng(cfg.seed, index)
    filt = _EulerMaruyamaFilter(lin, kappa, phi_h, dt)
    sigma = noise_scale * math.sqrt(0.5 / dt)

    burn = int(math.ceil(20 / slowest_rate(lin) / dt))
    while burn > 0:
        n = min(burn, half)
        filt(rng.normal(0.0, sigma, n), rng.normal(0.0, sigma, n))
        burn -= n

    window = signal.get_window("hann", nperseg)
    norm = dt / np.sum(window**2)
    acc = np.zeros(nperseg // 2 + 1)
    prev = filt(rng.normal(0.0, sigma, half), rng.normal(0.0, sigma, half))[2]
    for _ in range(cfg.segments):
        cur = filt(rng.normal(0.0, sigma, half), rng.normal(0.0, sigma, half))[2]
        spec = np.fft.rfft(window * np.concatenate((prev, cur)))
        acc += spec.real**2 + spec.imag**2
        prev = cur
    psd = norm * acc / cfg.segments
    omegas = 2 * math.pi * np.fft.rfftfreq(nperseg, dt)
    return omegas, psd, cfg.segments


def stochastic_current_psd(lin, kappa, phi_h, cfg, noise_scale=1.0, index=0):
    """Simulated current noise averaged over the lowest decade of resolved frequencies."""
    omegas, psd, _ = current_psd(lin, kappa, phi_h, cfg, noise_scale=noise_scale, index=index)
    return float(np.mean(psd[1:11]))


def dump_trajectory(lin, kappa, phi_h, cfg, path, n_rows=10_000):
    """Write the first ``n_rows`` samples (t, x, p, I) of a noisy trajectory to CSV."""
    _require_stable(lin)
    cfg.check(lin, kappa)
    rng = _rng(cfg.seed)
    filt = _EulerMaruyamaFilter(lin, kappa, phi_h, cfg.dt)
    sigma = math.sqrt(0.5 / cfg.dt)
    n = min(n_rows, int(round(cfg.duration / cfg.dt)))
    x, p, cur = filt(rng.normal(0.0, sigma, n), rng.normal(0.0, sigma, n))
    with open(path, "w", newline="") as fh:
        fh.write(f"# seed={cfg.seed} dt={cfg.dt!r} duration={cfg.duration!r} rng={RNG_NAME}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "x", "p", "I"])
        for k in range(n):
            writer.writerow([f"{v:.17g}" for v in (k * cfg.dt, x[k], p[k], cur[k])])


def brute_force_roots(params, n_max=1e12, points=100_000, n_min=1e-6):
    """Real roots of the photon-number polynomial on [n_min, n_max] by sign-change scan.

    Brackets come from a geometric grid; each is refined by bisection to
    1e-12 relative width. Tangential (even-multiplicity) roots are not seen.
    """
    coeffs = quintic_coefficients(params)
    grid = np.geomspace(n_min, n_max, points)
    vals = polyval(coeffs, grid)
    roots = [float(g) for g, v in zip(grid, vals) if v == 0]
    idx = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    lo, hi = grid[idx].copy(), grid[idx + 1].copy()
    flo = polyval(coeffs, lo)
    while lo.size and np.any(hi - lo > 1e-12 * hi):
        mid = 0.5 * (lo + hi)
        fm = polyval(coeffs, mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
        exact = fm == 0
        lo = np.where(exact, mid, lo)
        hi = np.where(exact, mid, hi)
    roots.extend(0.5 * (lo + hi))
    return sorted(roots)


def relax_mean_field(params, t_final, alpha0=0.0, dt=None):
    """Integrate the full nonlinear mean-field equation (RK4) and return the final amplitude.

    dt defaults to 0.05 / (kappa + 4G + |delta| + 4|Lambda| |alpha0|^2).
    """
    rate_scale = params.kappa + 4 * params.g_opa + abs(params.delta) + 4 * abs(params.lambda_kerr) * abs(alpha0) ** 2
    dt = dt or 0.05 / rate_scale
    steps = int(math.ceil(t_final / dt))
    dt = t_final / steps
    pump = 2 * params.g_opa * complex(math.cos(params.theta), math.sin(params.theta))
    d, lam, eps, half_k = params.delta, params.lambda_kerr, params.epsilon, 0.5 * params.kappa

    def f(z):
        return (1j * (d + 2 * lam * (z.real * z.real + z.imag * z.imag)) - half_k) * z + pump * z.conjugate() + eps

    a = complex(alpha0)
    for _ in range(steps):
        k1 = f(a)
        k2 = f(a + 0.5 * dt * k1)
        k3 = f(a + 0.5 * dt * k2)
        k4 = f(a + dt * k3)
        a += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return a
