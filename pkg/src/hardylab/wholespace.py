"""Bessel-weighted transformation on the whole space and its energies.

Here a profile carries u(r) = r^{-(N-2)/2} J_0(r) v(r).  The weight J_0^2
removes the obstruction at infinity (the transformed mass term is exactly
the L^2 norm of u) at the price of interior singular circles at the zeros
z_m of J_0: membership requires u to vanish there fast enough, and each
circle carries a pair of one-sided surface energies of opposite sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from . import hardy
from .profiles import Dimension, RadialProfile
from .quadrature import QuadConfig, integrate
from .specfun import bessel_j, bessel_zero

__all__ = ["JProfile", "JEnergy", "HardyPoincareResult", "j_functional",
           "hardy_poincare_check", "infimum_sequence", "r2_poincare_check",
           "zero_singularity_energies", "norm_decomposition",
           "bessel_zeros_upto"]

#: default truncation window: all integrals stop at the 8th zero unless the
#: support demands more
DEFAULT_ZERO_WINDOW = 8


def bessel_zeros_upto(x: float) -> list[float]:
    """All positive zeros of J_0 below x."""
    zeros = []
    k = 1
    while True:
        z = bessel_zero(0.0, k)
        if z >= x:
            return zeros
        zeros.append(z)
        k += 1


@dataclass
class JProfile:
    """Profile in the Bessel-weighted representation u = r^-lam J_0(r) v(r).

    Built either from the factor v (smooth v gives u vanishing at every z_m
    automatically) or from u itself, in which case v = r^lam u / J_0 inherits
    poles at any z_m where u does not vanish.
    """

    dim: Dimension
    v: Callable[[float], float]
    dv: Callable[[float], float]
    support: tuple[float, float]
    zero_traces: dict = field(default_factory=dict)
    name: str = ""
    _u: Callable[[float], float] | None = None
    _du: Callable[[float], float] | None = None

    def u(self, r: float) -> float:
        if self._u is not None:
            return self._u(r)
        lam = self.dim.singular_exponent
        return r ** (-lam) * bessel_j(0.0, r) * self.v(r)

    def du(self, r: float) -> float:
        if self._du is not None:
            return self._du(r)
        lam = self.dim.singular_exponent
        j0 = bessel_j(0.0, r)
        j0p = -bessel_j(1.0, r)
        return r ** (-lam) * (j0p * self.v(r) + j0 * self.dv(r) - lam * j0 * self.v(r) / r)

    @classmethod
    def from_v(cls, dim: Dimension, v, dv, support, name: str = "") -> "JProfile":
        return cls(dim=dim, v=v, dv=dv, support=tuple(support), name=name)

    @classmethod
    def from_u(cls, dim: Dimension, u, du, support, zero_traces=None,
               name: str = "") -> "JProfile":
        lam = dim.singular_exponent

        def v(r: float) -> float:
            return r**lam * u(r) / bessel_j(0.0, r)

        def dv(r: float) -> float:
            j0 = bessel_j(0.0, r)
            j0p = -bessel_j(1.0, r)
            return r**lam * ((lam / r) * u(r) / j0 + du(r) / j0 - u(r) * j0p / (j0 * j0))

        return cls(dim=dim, v=v, dv=dv, support=tuple(support),
                   zero_traces=dict(zero_traces or {}), name=name,
                   _u=u, _du=du)

    def critical_profile(self) -> RadialProfile:
        """The same u seen through the plain critical transformation, with
        regular part J_0(r) v(r)."""
        def v_eff(r: float) -> float:
            return bessel_j(0.0, r) * self.v(r)

        def dv_eff(r: float) -> float:
            return -bessel_j(1.0, r) * self.v(r) + bessel_j(0.0, r) * self.dv(r)

        origin = "finite_limit" if abs(self.v(1e-12)) > 1e-12 else "vanishing"
        return RadialProfile(dim=self.dim, v=v_eff, dv=dv_eff,
                             support=self.support, origin_class=origin,
                             boundary_zero=True,
                             name=f"critical[{self.name}]" if self.name else "critical")


@dataclass
class JEnergy:
    gradient: float
    mass: float
    converged: bool

    def total(self) -> float:
        return self.gradient + self.mass


def _split_points(lo: float, hi: float) -> list[float]:
    pts = [lo] + [z for z in bessel_zeros_upto(hi) if lo < z < hi] + [hi]
    return pts


def _integrate_split(f, lo: float, hi: float, cfg: QuadConfig):
    """Integrate with panels split exactly at the Bessel zeros; each
    subinterval is graded toward both zero endpoints (the weight may have
    poles there)."""
    value, err, ok = 0.0, 0.0, True
    pts = _split_points(lo, hi)
    for a, b in zip(pts[:-1], pts[1:]):
        mid = 0.5 * (a + b)
        for seg_lo, seg_hi, end in ((a, mid, "left"), (mid, b, "right")):
            res = integrate(f, seg_lo, seg_hi, cfg, singular_end=end)
            value += res.value
            err += res.err_est
            ok = ok and res.converged
    return value, err, ok


def j_functional(p: JProfile, cfg: QuadConfig | None = None) -> JEnergy:
    r"""Both Bessel-weighted energies, split at the zeros in the support:

        gradient = s_N \int J_0^2 v'^2 r dr
        mass     = s_N \int J_0^2 v^2  r dr   (= ||u||^2_{L^2} exactly)

    ``converged`` is False when the gradient term grows under panel
    refinement at a zero instead of settling, i.e. when the profile is
    inadmissible there.  (A double pole of the weight saturates at machine
    resolution and can fool a single adaptive pass, so the flag compares a
    shallow and a deep refinement.)
    """
    if cfg is None:
        cfg = QuadConfig(endpoint_grading=8, max_depth=44)
    lo, hi = p.support
    sfac = p.dim.surface_factor

    def g(r: float) -> float:
        return (bessel_j(0.0, r) * p.dv(r)) ** 2 * r

    def m(r: float) -> float:
        return (bessel_j(0.0, r) * p.v(r)) ** 2 * r

    shallow_cfg = QuadConfig(endpoint_grading=cfg.endpoint_grading,
                             max_depth=max(10, cfg.max_depth - 26),
                             abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol)
    g_shallow, _, _ = _integrate_split(g, lo, hi, shallow_cfg)
    gval, _, gok = _integrate_split(g, lo, hi, cfg)
    stable = abs(gval - g_shallow) <= 1e-6 * (1.0 + abs(gval))
    mval, _, mok = _integrate_split(m, lo, hi, cfg)
    return JEnergy(sfac * gval, sfac * mval, gok and mok and stable)


@dataclass
class HardyPoincareResult:
    i_principal: float   # principal value of the Hardy functional
    i_value: float       # cutoff-limit value (= i_principal - hs_energy)
    l2_value: float      # ||u||^2_{L^2} via the weighted mass term
    gradient: float      # weighted gradient term
    hs_energy: float     # singularity energy at the origin
    margin: float        # i_value - l2_value  (> 0 is the inequality)
    defect: float        # |i_principal - (gradient + l2_value + hs_energy)|


def hardy_poincare_check(p: JProfile) -> HardyPoincareResult:
    """Both sides of the decomposition I = gradient + mass + L, each by its
    own quadrature, together with the strict-improvement margin."""
    crit = p.critical_profile()
    pv = hardy.principal_value(crit, crit.support[1])
    if pv.classification != "converged":
        raise ValueError(f"principal value did not converge: {pv.classification}")
    hs = crit.dim.hs_constant * crit.v_origin() ** 2
    je = j_functional(p)
    i_val = pv.limit - hs
    return HardyPoincareResult(
        i_principal=pv.limit,
        i_value=i_val,
        l2_value=je.mass,
        gradient=je.gradient,
        hs_energy=hs,
        margin=i_val - je.mass,
        defect=abs(pv.limit - (je.gradient + je.mass + hs)),
    )


def infimum_sequence(n: int) -> float:
    """Rayleigh quotient of the plateau profile: v = 1 on (0, n pi/4), linear
    decay to 0 over the next pi/4 window.

    The weighted gradient term is bounded in n while the mass term grows
    linearly, so the quotient is strictly positive yet tends to zero: the
    infimum 0 is not attained.
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    r1 = n * math.pi / 4.0
    r2 = (n + 1) * math.pi / 4.0
    slope = 4.0 / math.pi
    # smooth integrands: keep the zero splits, skip heavy endpoint grading
    cfg = QuadConfig(endpoint_grading=4, max_depth=40)

    def grad(r: float) -> float:
        return (bessel_j(0.0, r) * slope) ** 2 * r

    def mass_plateau(r: float) -> float:
        return bessel_j(0.0, r) ** 2 * r

    def mass_ramp(r: float) -> float:
        return (bessel_j(0.0, r) * (r2 - r) * slope) ** 2 * r

    gval, _, _ = _integrate_split(grad, r1, r2, cfg)
    m1, _, _ = _integrate_split(mass_plateau, 0.0, r1, cfg)
    m2, _, _ = _integrate_split(mass_ramp, r1, r2, cfg)
    return gval / (m1 + m2)


def r2_poincare_check(v, dv, support) -> float:
    r"""Planar margin 2 pi \int J_0^2 v'^2 r dr for u = J_0 v on the plane;
    positive for every nonzero smooth compactly supported v."""
    cfg = QuadConfig(endpoint_grading=4, max_depth=40)

    def g(r: float) -> float:
        return (bessel_j(0.0, r) * dv(r)) ** 2 * r

    val, _, _ = _integrate_split(g, support[0], support[1], cfg)
    return 2.0 * math.pi * val


def zero_singularity_energies(p: JProfile, m: int, eps: float) -> tuple[float, float]:
    """One-sided surface energies at the m-th zero:

        L(+/-) = s_N s^{N-1} (J_0'/J_0)(s) u(s)^2   at  s = z_m +/- eps.

    J_0 and J_0' have opposite signs just past a zero and equal signs just
    before it, so L(+) >= 0 and -L(-) >= 0 whenever they are finite.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    z = bessel_zero(0.0, m)
    z_prev = bessel_zero(0.0, m - 1) if m > 1 else 0.0
    z_next = bessel_zero(0.0, m + 1)
    if z - eps <= z_prev or z + eps >= z_next:
        raise ValueError(f"eps={eps} too large: J_0 vanishes inside the bracket")
    sfac = p.dim.surface_factor
    n = p.dim.n
    out = []
    for s in (z + eps, z - eps):
        ratio = -bessel_j(1.0, s) / bessel_j(0.0, s)  # J_0'/J_0
        out.append(sfac * s ** (n - 1) * ratio * p.u(s) ** 2)
    return out[0], out[1]


def norm_decomposition(p: JProfile, eps: float) -> tuple[float, float, float]:
    """(weighted norm, reassembled norm, defect) at cut width eps.

    The reassembled side removes eps-balls around the origin and every zero,
    evaluates the Hardy functional there in the u-form, subtracts the origin
    surface energy and adds the zero-circle pairs.
    """
    crit = p.critical_profile()
    dim = p.dim
    n = dim.n
    c_star = dim.critical_coefficient
    lo, hi = p.support
    zeros = [z for z in bessel_zeros_upto(hi) if lo + eps < z < hi - eps]

    def f(r: float) -> float:
        grad = (crit.du(r) * r ** (0.5 * (n - 1))) ** 2
        pot = c_star * (crit.u(r) * r ** (0.5 * (n - 3))) ** 2
        return grad - pot

    cfg = QuadConfig(endpoint_grading=40, max_depth=40)
    bounds = [max(lo, eps)]
    for z in zeros:
        bounds.extend((z - eps, z + eps))
    bounds.append(hi)
    i_total = 0.0
    for a, b in zip(bounds[::2], bounds[1::2]):
        i_total += integrate(f, a, b, cfg, singular_end="left").value
    i_total *= dim.surface_factor

    rhs = i_total - dim.hs_constant * crit.v(max(lo, eps)) ** 2
    for m in range(1, len(zeros) + 1):
        lp, lm = zero_singularity_energies(p, m, eps)
        rhs += lp - lm

    je = j_functional(p)
    lhs = je.total()
    return lhs, rhs, abs(lhs - rhs)
