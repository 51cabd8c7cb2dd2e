"""Check the frequency-domain formulas against simulated trajectories.

A driven trajectory gives the gain from the settled sinusoid; a noisy one gives
the homodyne-current spectrum. With 256 averaged segments the noise estimate
still scatters by about 2.5%.
"""

import math

from hybridamp import build_m_matrix, empty_cavity_params, quadrature_gains, reference_params
from hybridamp.noise import current_noise_zero, homodyne_coefficients
from hybridamp.oracle import TrajectoryConfig, min_psd_duration, stochastic_current_psd, time_domain_gain

ref = reference_params()
lin = build_m_matrix(ref, 1e4)
print("gain, reference point")
for w in (0.01, 5, 10, 20, 50):
    cfg = TrajectoryConfig(dt=1e-4, duration=4.0, drive_omega=w)
    measured = time_domain_gain(lin, ref.kappa, cfg)
    analytic = abs(quadrature_gains(lin, ref.kappa, w)[0]) ** 2
    print(f"  omega={w:5g}  analytic={analytic:10.6g}  simulated={measured:10.6g}")

print("\nlow-frequency current noise")
for name, params, n_s, dt in (("empty cavity", empty_cavity_params(), 100.0, 0.01), ("reference", ref, 1e4, 1.9e-4)):
    lin = build_m_matrix(params, n_s)
    cfg = TrajectoryConfig(dt=dt, duration=min_psd_duration(lin, 256, dt), seed=1, segments=256)
    measured = stochastic_current_psd(lin, params.kappa, math.pi / 2, cfg)
    analytic = current_noise_zero(*homodyne_coefficients(lin, params.kappa, math.pi / 2)[:2])
    print(f"  {name:12s}  analytic={analytic:9.5g}  simulated={measured:9.5g}  ({100 * (measured / analytic - 1):+.1f}%)")
