"""Classical operating points of the driven cavity.

Three cases: the amplifier reference point (real amplitude by choice of the
Kerr coefficient), a Kerr-only cavity with two stable branches, and a linear
cavity pumped past the parametric threshold.
"""

from hybridamp import SystemParams, reference_params, real_alpha_fixed_point, solve_photon_number
from hybridamp.oracle import relax_mean_field


def show(title, params):
    steady = solve_photon_number(params)
    print(title)
    for r in steady.roots:
        tag = "stable" if r.stable else "unstable"
        print(f"  n = {r.n_bar:12.6g}  {tag:8s}  real alpha: {r.real_alpha}")
    print(f"  single valued: {steady.single_valued}\n")
    return steady


ref = reference_params()
steady = show("reference point (delta=-10, G=120, eps=1000, kappa=500)", ref)
n, alpha = real_alpha_fixed_point(ref.delta, ref.g_opa, ref.kappa, ref.epsilon)
print(f"closed form: n = {n:g}, alpha = {alpha:g}; solver alpha = {steady.alpha:.12g}\n")

# Starting from an empty cavity the mean field settles on the same point.
print(f"mean-field relaxation from alpha=0: {relax_mean_field(ref, 3.0):.10g}\n")

bistable = SystemParams(delta=5.0, g_opa=0.0, theta=0.0, lambda_kerr=-0.01, epsilon=25.0, kappa=2.0)
steady = show("Kerr-only cavity (hysteresis region)", bistable)
low = relax_mean_field(bistable, 40.0)
high = relax_mean_field(bistable, 40.0, alpha0=1.05 * steady.roots[-1].alpha)
print(f"relaxed from the empty cavity: n = {abs(low) ** 2:.6g}; from above: n = {abs(high) ** 2:.6g}\n")

show("linear cavity above threshold (kappa < 4G)", SystemParams(0.0, 1.0, 0.0, 0.0, 10.0, 2.0))
