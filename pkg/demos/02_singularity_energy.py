"""The surface energy at the origin and the decomposition of the annulus
functional.

For u = r^{-(N-2)/2} v(r) the Hardy quadratic form over the annulus
eps < r < 1 splits exactly into the weighted Dirichlet energy of v plus a
surface term proportional to v(eps)^2.  The table below evaluates all three
quantities independently (the residual column is the defect of the identity).
Depending on how v behaves at the origin the surface term converges,
oscillates, or diverges as eps -> 0 -- and the classifier sees exactly that.
"""

from hardylab import Dimension, hardy
from hardylab.profiles import named_profile
from hardylab.quadrature import DEEP_EPS_SEQUENCE, DEFAULT_EPS_SEQUENCE, integrate_to_limit

dim = Dimension(3)

print("decomposition for the ground mode (v has limit 1 at the origin)")
print(f"{'eps':>8} {'annulus':>16} {'surface':>16} {'dirichlet':>16} {'residual':>12}")
e1 = named_profile(dim, "e1")
for eps in DEFAULT_EPS_SEQUENCE:
    b = hardy.breakdown(e1, eps)
    print(f"{eps:>8.0e} {b.annulus:>16.10f} {b.singularity:>16.10f} "
          f"{b.dirichlet:>16.10f} {b.residual:>12.2e}")
print(f"surface term -> N(N-2)/2 * omega_N = {dim.hs_constant:.10f}")
print()

print("origin classes and the fate of the surface energy as eps -> 0")
for name in ("e1", "subcritical(0.1)", "oscillating(0.3)", "log_power(0.3)"):
    p = named_profile(dim, name)
    res = integrate_to_limit(lambda e: hardy.singularity_energy(p, e),
                             DEEP_EPS_SEQUENCE)
    tail = f"limit {res.limit:.6f}" if res.classification == "converged" else ""
    print(f"  {name:<18} class={p.origin_class:<14} surface energy: "
          f"{res.classification} {tail}")
