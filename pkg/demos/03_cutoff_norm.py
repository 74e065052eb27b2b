"""Two inequivalent readings of the same quadratic form.

The bare Hardy functional (principal value) and the cutoff limit
(functional minus surface term) agree on profiles vanishing at the origin
but differ by exactly the surface energy on profiles with a finite origin
value -- and for oscillating or log-growing regular parts the bare
functional has no limit at all while the cutoff limit still converges.
Consequence: the minimizer of the cutoff-norm quotient exists (the ground
mode), while cutting it off near the origin always costs a fixed amount of
energy, so the bare quotient over vanishing profiles never reaches its
infimum.
"""

import math

from hardylab import Dimension, hardy, spectrum
from hardylab.profiles import named_profile

dim = Dimension(3)

print(f"{'profile':<20} {'bare functional':>22} {'cutoff limit':>16}")
for name in ("annular_bump", "e1", "oscillating(0.3)", "log_power(0.3)",
             "log_power(0.5)"):
    p = named_profile(dim, name)
    bare = hardy.principal_value(p)
    reg = hardy.cutoff_norm(p)
    bare_txt = f"{bare.limit:12.6f}" if bare.classification == "converged" \
        else f"[{bare.classification}]"
    reg_txt = f"{reg.limit:12.6f}" if reg.classification == "converged" \
        else f"[{reg.classification}]"
    print(f"{name:<20} {bare_txt:>22} {reg_txt:>16}")

e1 = named_profile(dim, "e1")
gap = hardy.principal_value(e1).limit - hardy.cutoff_norm(e1).limit
print()
print(f"ground mode: bare - cutoff = {gap:.10f}  (= 2 pi = {2*math.pi:.10f})")
print(f"Rayleigh quotient of the cutoff norm: {spectrum.rayleigh(e1):.12f}")
print(f"ground eigenvalue                   : {spectrum.eigenmode(dim, 1).eigenvalue:.12f}")
print()

print("cutting the ground mode off near the origin (log ramp at scale eps):")
from hardylab.profiles import RadialProfile

mu1 = spectrum.eigenmode(dim, 1).eigenvalue
for eps in (1e-2, 1e-4, 1e-6):
    c = 1.0 / math.log(1.0 / eps)
    e2 = eps * eps
    ramp = lambda r, c=c, e2=e2, eps=eps: \
        0.0 if r <= e2 else (1.0 if r >= eps else c * math.log(r / e2))
    dramp = lambda r, c=c, e2=e2, eps=eps: c / r if e2 < r < eps else 0.0
    p = RadialProfile(
        dim=dim,
        v=lambda r, ramp=ramp: ramp(r) * e1.v(r),
        dv=lambda r, ramp=ramp, dramp=dramp: dramp(r) * e1.v(r) + ramp(r) * e1.dv(r),
        support=(0.0, 1.0), origin_class="vanishing", boundary_zero=True,
        quad_levels=120)
    q = hardy.annulus_functional(p, 1e-13, 1.0) / hardy.weighted_l2_sq(p)
    print(f"  eps = {eps:5.0e}: bare quotient = {q:.6f}  (> mu_1 = {mu1:.6f})")
print("  the quotient decreases toward mu_1 but the excess ~ 1/log(1/eps)")
print("  never vanishes at any admissible profile: no minimizer down there.")
