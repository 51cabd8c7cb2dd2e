"""Gain against signal frequency for three cavity decay rates.

Larger kappa lowers the peak gain and widens the band: the product stays
roughly fixed.
"""

import sys

import numpy as np

from hybridamp import bandwidth_3db, build_m_matrix, gain_spectrum, omega_grid, reference_params, solve_photon_number

grid = omega_grid(0, 100, 20001)
columns = [grid]
print(f"{'kappa':>6} {'g[0]':>10} {'3 dB bw':>10} {'sqrt(g0) * bw':>14}")
for kappa in (490, 500, 520):
    params = reference_params(kappa=kappa)
    lin = build_m_matrix(params, solve_photon_number(params).n_s)
    spec = gain_spectrum(params, lin, grid)
    bw = bandwidth_3db(spec)
    print(f"{kappa:6d} {spec.gain[0]:10.6g} {bw:10.5g} {np.sqrt(spec.gain[0]) * bw:14.6g}")
    columns.append(spec.gain)

# optional: write plot-ready data
if len(sys.argv) > 1:
    np.savetxt(sys.argv[1], np.column_stack(columns), delimiter=",", header="omega,g490,g500,g520", comments="")
    print(f"wrote {sys.argv[1]}")

# a few points of the kappa=500 curve
params = reference_params()
lin = build_m_matrix(params, 1e4)
for w in (0, 5, 10, 20, 50):
    print(f"  omega={w:3d}  g={gain_spectrum(params, lin, [w]).gain[0]:.6g}")
