"""Radial spectrum of the critical operator on the unit ball.

The regular-part eigenfunctions are J_0(z_k r) with z_k the zeros of J_0,
and the eigenvalues are z_k^2 in every dimension N >= 3.  This script prints
the mode table and shows where the commonly quoted two-digit value 5.76 for
the ground eigenvalue comes from: it is the square of the zero rounded to
2.40, while the full-precision eigenvalue is 5.7832.
"""

from hardylab import Dimension, bessel_j, bessel_zero, spectrum

dim = Dimension(3)

print("first zeros of J_0 and the radial eigenvalues")
print(f"{'k':>3} {'z_k':>18} {'mu_k = z_k^2':>18} {'norm2':>18}")
for k in range(1, 7):
    m = spectrum.eigenmode(dim, k)
    print(f"{k:>3} {m.zero:>18.12f} {m.eigenvalue:>18.12f} {m.norm2:>18.12f}")

z1 = bessel_zero(0.0, 1)
print()
print(f"ground eigenvalue to full precision : {z1**2:.15f}")
print(f"zero rounded to two digits, squared : {round(z1, 2)**2:.6f}")
print()

print("the zeros interlace and grow with the order:")
for nu in (0.0, 0.5, 1.0, 1.5):
    zs = [bessel_zero(nu, k) for k in (1, 2, 3)]
    print(f"  order {nu:3.1f}: " + "  ".join(f"{z:10.6f}" for z in zs))

print()
print("subcritical family: first eigenvalue z_{m,1}^2 with m = sqrt(c* - c)")
c_star = dim.critical_coefficient
cs = [0.0, 0.1, 0.2, 0.24, c_star - 1e-4, c_star - 1e-8]
for c, val in spectrum.subcritical_limit(dim, cs):
    print(f"  c = {c:<12.8g} eigenvalue = {val:.9f}")
print(f"  -> decreasing to the critical ground eigenvalue {z1**2:.9f}")
