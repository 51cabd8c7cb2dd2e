"""Photon number and zero-frequency gain along a decay-rate sweep.

The Kerr coefficient follows the real-amplitude choice at each kappa. Below
kappa = 4G the amplifier's operating point is unstable, and those rows carry
no gain.
"""

from hybridamp import MeasurementParams, reference_params
from hybridamp.config import SweepSpec
from hybridamp.sweep import run_sweep

spec = SweepSpec("kappa", 470, 600, 27, lambda_mode="auto_real_alpha")
rows = run_sweep(reference_params(), MeasurementParams(), spec)
print(f"{'kappa':>7} {'Lambda':>11} {'n_s':>11} {'g0':>11}  status")
for r in rows:
    n = f"{r['n_s']:11.5g}" if r["n_s"] is not None else f"{'-':>11}"
    g = f"{r['g0']:11.5g}" if r["g0"] is not None else f"{'-':>11}"
    print(f"{r['kappa']:7.1f} {r['lambda_kerr']:11.4g} {n} {g}  {r['status']}")
