"""Noise budget of the amplifier used as a detector.

Imprecision, back-action and their correlation all change with the homodyne
phase, but the combination S_zz S_FF - S_zF^2 does not: it stays at 1/4 and
the added noise at half a quantum.
"""

import math

from hybridamp import MeasurementParams, noise_report, reference_params

ref = reference_params()
rep = noise_report(ref, MeasurementParams())
for key in ("chi_if", "s_ii", "s_zz", "s_ff", "s_zf", "ql_product", "added_noise_quanta"):
    print(f"{key:>20} = {getattr(rep, key):.10g}")

print(f"\n{'phi_h':>8} {'S_zz':>12} {'S_FF':>10} {'S_zF':>12} {'product':>10}")
for phi in (0.2, 0.6, 1.0, math.pi / 2, 2.2, 3.0):
    r = noise_report(ref, MeasurementParams(phi_h=phi))
    print(f"{phi:8.4f} {r.s_zz:12.6g} {r.s_ff:10.6g} {r.s_zf:12.6g} {r.ql_product:10.6g}")

print(f"\n{'A':>6} {'S_zz':>12} {'S_FF':>12}")
for a in (0.1, 1.0, 10.0):
    r = noise_report(ref, MeasurementParams(coupling_a=a))
    print(f"{a:6g} {r.s_zz:12.6g} {r.s_ff:12.6g}")
