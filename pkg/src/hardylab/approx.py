r"""Density and non-density experiments in the weighted Dirichlet norm, the
ground-mode approximation obstruction, and the dimension-reduction isometry.

Cutting a profile off near the origin with a plain rescaled smoothstep leaves
a defect that does NOT vanish: it converges to  N omega_N v(0)^2 \int_1^2
t rho'(t)^2 dt.  A logarithmic ramp between eps^2 and eps does the job, with
defect O(1/log(1/eps)).  The same obstruction makes the ground mode
unapproachable by profiles vanishing at the origin: the squared distance in
the principal-value functional never drops below N(N-2)/2 omega_N v(0)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import hardy
from .profiles import RadialProfile
from .quadrature import QuadConfig, integrate

__all__ = ["Smoothstep", "cubic_smoothstep", "smoothstep_energy",
           "naive_cutoff_defect", "naive_cutoff_limit", "log_cutoff_defect",
           "e1_obstruction", "dim_reduction", "DimReduction",
           "level_truncation_defect"]


@dataclass(frozen=True)
class Smoothstep:
    """C^1 ramp on [1, 2] with rho(1) = 0, rho(2) = 1, rho'(1) = rho'(2) = 0;
    the vanishing end slopes are what the defect calculation integrates by
    parts against."""

    rho: Callable[[float], float]
    drho: Callable[[float], float]

    def __post_init__(self) -> None:
        for t, want in ((1.0, 0.0), (2.0, 1.0)):
            if abs(self.rho(t) - want) > 1e-12 or abs(self.drho(t)) > 1e-12:
                raise ValueError("smoothstep must satisfy rho(1)=0, rho(2)=1, rho'(1)=rho'(2)=0")


def cubic_smoothstep() -> Smoothstep:
    """rho(t) = 3(t-1)^2 - 2(t-1)^3 on [1, 2], clamped outside."""

    def rho(t: float) -> float:
        if t <= 1.0:
            return 0.0
        if t >= 2.0:
            return 1.0
        s = t - 1.0
        return s * s * (3.0 - 2.0 * s)

    def drho(t: float) -> float:
        if t <= 1.0 or t >= 2.0:
            return 0.0
        s = t - 1.0
        return 6.0 * s * (1.0 - s)

    return Smoothstep(rho, drho)


def smoothstep_energy(step: Smoothstep) -> float:
    r"""\int_1^2 t rho'(t)^2 dt (equals 9/5 for the cubic ramp)."""
    return integrate(lambda t: t * step.drho(t) ** 2, 1.0, 2.0).value


def naive_cutoff_defect(p: RadialProfile, eps: float,
                        step: Smoothstep | None = None) -> float:
    """Weighted-Dirichlet distance^2 between v and rho(r/eps) v.

    The difference is supported on (0, 2 eps); its derivative is
    rho'(r/eps) v / eps + (rho - 1) v'.
    """
    if p.origin_class not in ("finite_limit", "vanishing"):
        raise ValueError("the cutoff obstruction experiment needs a bounded origin limit")
    if not 0.0 < 2.0 * eps < p.support[1]:
        raise ValueError(f"eps={eps} too large for support {p.support}")
    if step is None:
        step = cubic_smoothstep()

    def f(r: float) -> float:
        t = r / eps
        d = step.drho(t) * p.v(r) / eps + (step.rho(t) - 1.0) * p.dv(r)
        return d * d * r

    cfg = QuadConfig(endpoint_grading=min(p.quad_levels, 64), max_depth=60)
    inner = integrate(f, 0.0, eps, cfg, singular_end="left").value
    outer = integrate(f, eps, 2.0 * eps, cfg).value
    return p.dim.surface_factor * (inner + outer)


def naive_cutoff_limit(p: RadialProfile, step: Smoothstep | None = None) -> float:
    r"""The eps -> 0 value of the naive defect: N omega_N v(0)^2 \int t rho'^2."""
    if step is None:
        step = cubic_smoothstep()
    return p.dim.surface_factor * p.v_origin() ** 2 * smoothstep_energy(step)


def log_cutoff_defect(p: RadialProfile, eps: float) -> float:
    """Defect of the logarithmic cutoff: 0 below eps^2, ramp
    log(r/eps^2)/log(1/eps) up to eps, 1 beyond.  Bounded by C/log(1/eps)."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"need 0 < eps < 1, got {eps}")
    c = 1.0 / math.log(1.0 / eps)
    e2 = eps * eps

    def ramp(r: float) -> float:
        d = c * p.v(r) / math.sqrt(r) + (c * math.log(r / e2) - 1.0) * p.dv(r) * math.sqrt(r)
        return d * d

    def head(r: float) -> float:
        return (p.dv(r) * math.sqrt(r)) ** 2

    cfg = QuadConfig(endpoint_grading=min(p.quad_levels + 16, 1040), max_depth=60)
    mid = integrate(ramp, e2, eps, cfg, singular_end="left").value
    low = integrate(head, 0.0, e2, cfg, singular_end="left").value
    return p.dim.surface_factor * (mid + low)


def e1_obstruction(phi: RadialProfile) -> float:
    """Principal-value distance^2 between the ground mode and a profile whose
    regular part vanishes at the origin; bounded below by N(N-2)/2 omega_N."""
    if phi.origin_class != "vanishing":
        raise ValueError("the obstruction bound applies to vanishing-class competitors")
    if phi.support[1] > 1.0 + 1e-12:
        raise ValueError("competitor must live on the unit ball")
    from .profiles import make_e1  # local import avoids a cycle at module load

    e1 = make_e1(phi.dim)
    diff = RadialProfile(
        dim=phi.dim,
        v=lambda r: e1.v(r) - phi.v(r),
        dv=lambda r: e1.dv(r) - phi.dv(r),
        support=(0.0, 1.0),
        origin_class="finite_limit",
        boundary_zero=True,
        name=f"e1-{phi.name}" if phi.name else "e1-phi",
        quad_levels=max(e1.quad_levels, phi.quad_levels),
    )
    # competitors may differ from the ground mode only at arbitrarily small
    # radii, so the cut radius must go all the way down the deep sequence
    from .quadrature import DEEP_EPS_SEQUENCE

    res = hardy.principal_value(diff, eps_sequence=DEEP_EPS_SEQUENCE)
    if res.classification != "converged":
        raise ValueError(f"principal value did not converge: {res.classification}")
    return res.limit


@dataclass
class DimReduction:
    weighted_norm_sq: float   # s_N \int_0^R v'^2 r dr
    flat_norm_sq: float       # s_N \int_0^inf w'(t)^2 t^{N-1} dt
    ratio: float              # weighted / flat; equals 1/(N-2)


def dim_reduction(p: RadialProfile, R: float | None = None) -> DimReduction:
    """Map v on the ball of radius R to w(t) = v(r(t)) with
    r(t) = R exp(-t^{-(N-2)}) and compare the two Dirichlet energies,
    each by its own quadrature.  The squared-norm ratio is 1/(N-2),
    independent of R."""
    R = p.support[1] if R is None else R
    dim = p.dim
    n = dim.n
    nm2 = float(n - 2)

    lhs = hardy.weighted_dirichlet(p, 0.0, R)

    def w_integrand(t: float) -> float:
        r = R * math.exp(-t ** (-nm2))
        if r == 0.0:
            return 0.0
        drdt = r * nm2 * t ** (-(n - 1.0))
        return (p.dv(r) * drdt) ** 2 * t ** (n - 1.0)

    cfg = QuadConfig(endpoint_grading=60, max_depth=60)
    near = integrate(w_integrand, 0.0, 1.0, cfg, singular_end="left").value
    # map t in [1, inf) to tau = 1/t in (0, 1]; the transformed integrand is
    # bounded (~ tau^{N-3}) at tau = 0
    far = integrate(lambda tau: w_integrand(1.0 / tau) / (tau * tau),
                    0.0, 1.0, cfg, singular_end="left").value
    rhs = dim.surface_factor * (near + far)
    return DimReduction(lhs, rhs, lhs / rhs)


def level_truncation_defect(p: RadialProfile, level: float) -> float:
    r"""Energy of v above the cut level n: s_N \int_{|v| > n} v'^2 r dr.

    Nonincreasing in the level and vanishing as it grows, for any profile of
    finite weighted Dirichlet energy.
    """
    if level <= 0.0:
        raise ValueError("level must be positive")

    def f(r: float) -> float:
        if abs(p.v(r)) <= level:
            return 0.0
        return (p.dv(r) * math.sqrt(r)) ** 2

    cfg = QuadConfig(endpoint_grading=min(p.quad_levels + 16, 1040), max_depth=60)
    res = integrate(f, 0.0, p.support[1], cfg, singular_end="left")
    return p.dim.surface_factor * res.value
