"""Parameter sweeps and the randomized quantum-limit check."""

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import HybridAmpError, LinearizationWarning, PreconditionError
from .linearization import build_m_matrix
from .model import MeasurementParams, SystemParams, lambda_for_real_alpha
from .noise import noise_report
from .response import quadrature_gains
from .steady_state import solve_photon_number

QL_TOL = 1e-9


def _point(args):
    system, meas, variable, value, lambda_mode = args
    if variable == "phi_h":
        meas = meas.replace(phi_h=value)
    else:
        system = system.replace(**{variable: value})
    if lambda_mode == "auto_real_alpha" and variable != "lambda_kerr":
        system = system.replace(
            lambda_kerr=lambda_for_real_alpha(system.delta, system.g_opa, system.kappa, system.epsilon)
        )
    return evaluate_point(system, meas, {variable: value}, real_alpha_only=lambda_mode == "auto_real_alpha")


def evaluate_point(system, meas, row=None, real_alpha_only=False):
    """One sweep row; failures become a status string instead of an exception.

    With ``real_alpha_only`` the operating point is the real-amplitude root: the
    row is unstable when that root is, whatever other branches exist.
    """
    row = dict(row or {})
    row.update(
        lambda_kerr=system.lambda_kerr,
        n_s=None,
        alpha_re=None,
        alpha_im=None,
        n_roots=None,
        n_stable=None,
        single_valued=False,
        m11=None,
        m12=None,
        m21=None,
        m22=None,
        eig1_re=None,
        eig1_im=None,
        eig2_re=None,
        eig2_im=None,
        stable=False,
        g0=None,
        ql_product=None,
        status="ok",
    )
    try:
        steady = solve_photon_number(system)
    except HybridAmpError as exc:
        row["status"] = type(exc).__name__
        return row
    row.update(n_roots=len(steady.roots), n_stable=steady.n_stable, single_valued=steady.single_valued)
    if real_alpha_only and not any(r.real_alpha and r.stable for r in steady.roots):
        row["status"] = "unstable"
        return row
    if steady.n_stable == 0:
        row["status"] = "unstable"
        return row
    if not steady.single_valued:
        row["status"] = "multistable"
        return row
    row.update(n_s=steady.n_s, alpha_re=steady.alpha.real, alpha_im=steady.alpha.imag)
    try:
        lin = build_m_matrix(system, steady.n_s)
    except HybridAmpError:
        row["status"] = "complex_alpha"
        return row
    row.update(
        m11=lin.m11,
        m12=lin.m12,
        m21=lin.m21,
        m22=lin.m22,
        eig1_re=lin.eig1.real,
        eig1_im=lin.eig1.imag,
        eig2_re=lin.eig2.real,
        eig2_im=lin.eig2.imag,
        stable=lin.stable,
    )
    if not lin.stable:
        row["status"] = "unstable"
        return row
    gx, _ = quadrature_gains(lin, system.kappa, 0.0)
    row["g0"] = abs(gx) ** 2
    try:
        row["ql_product"] = noise_report(system, meas, n_s=steady.n_s).ql_product
    except HybridAmpError:
        pass
    return row


def run_sweep(system, meas, spec, jobs=1):
    """Rows of a one-dimensional sweep, in grid order."""
    tasks = [(system, meas, spec.variable, v, spec.lambda_mode) for v in spec.values()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [_point(t) for t in tasks]


SWEEP_COLUMNS = (
    "lambda_kerr",
    "n_s",
    "alpha_re",
    "alpha_im",
    "n_roots",
    "n_stable",
    "single_valued",
    "m11",
    "m12",
    "m21",
    "m22",
    "eig1_re",
    "eig1_im",
    "eig2_re",
    "eig2_im",
    "stable",
    "g0",
    "ql_product",
    "status",
)


@dataclass
class QLSummary:
    n_samples: int
    n_evaluated: int = 0
    skipped: dict = field(default_factory=dict)
    max_deviation: float = 0.0
    max_added_noise_deviation: float = 0.0
    seed: int = 0
    rng: str = "PCG64"

    @property
    def n_skipped(self):
        return sum(self.skipped.values())

    @property
    def passed(self):
        return self.n_evaluated > 0 and self.max_deviation < QL_TOL

    def to_dict(self):
        return {
            "n_samples": self.n_samples,
            "n_evaluated": self.n_evaluated,
            "n_skipped": self.n_skipped,
            "skipped": dict(sorted(self.skipped.items())),
            "max_deviation": self.max_deviation,
            "max_added_noise_deviation": self.max_added_noise_deviation,
            "passed": self.passed,
            "seed": self.seed,
            "rng": self.rng,
        }


def random_configuration(rng):
    """Draw a real-alpha operating point: delta in [-50, 50], G in [0, 200],
    eps in [1e2, 1e4], kappa in (4G, 4G + 1e3], phi_h in [0, 2 pi), A in [0.1, 10]."""
    delta = rng.uniform(-50, 50)
    g = rng.uniform(0, 200)
    eps = rng.uniform(1e2, 1e4)
    kappa = 4 * g + 1e3 * (1 - rng.random())
    lam = lambda_for_real_alpha(delta, g, kappa, eps)
    system = SystemParams(delta=delta, g_opa=g, theta=0.0, lambda_kerr=lam, epsilon=eps, kappa=kappa)
    meas = MeasurementParams(coupling_a=rng.uniform(0.1, 10), phi_h=rng.uniform(0, 2 * math.pi))
    return system, meas


def _ql_sample(args):
    system, meas = args
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LinearizationWarning)
            rep = noise_report(system, meas)
    except HybridAmpError as exc:
        return type(exc).__name__, None, None
    return None, abs(rep.ql_product - 0.25) / 0.25, abs(rep.added_noise_quanta - 0.5)


def run_ql_check(n_samples, seed=42, base=None, jobs=1):
    """Sample configurations and measure the worst deviation of the quantum-limit product from 1/4.

    When ``base`` = (system, measurement) is given it is used as the first sample.
    """
    if n_samples < 1:
        raise PreconditionError("n_samples must be at least 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = []
    if base is not None:
        draws.append(base)
    while len(draws) < n_samples:
        draws.append(random_configuration(rng))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_ql_sample, draws, chunksize=64))
    else:
        results = [_ql_sample(d) for d in draws]
    summary = QLSummary(n_samples=n_samples, seed=seed)
    for reason, dev, added in results:
        if reason is not None:
            summary.skipped[reason] = summary.skipped.get(reason, 0) + 1
            continue
        summary.n_evaluated += 1
        summary.max_deviation = max(summary.max_deviation, dev)
        summary.max_added_noise_deviation = max(summary.max_added_noise_deviation, added)
    return summary
