r"""The critical Hardy functional on the ball and its regularizations.

All integrals are radial: with u = r^-lam v, lam = (N-2)/2, and the surface
factor s_N = N omega_N,

    annulus functional   I(eps, R)  = s_N \int_eps^R (u'^2 - c* u^2/r^2) r^{N-1} dr
    weighted Dirichlet   D(eps, R)  = s_N \int_eps^R v'^2 r dr
    singularity energy   L(eps)     = N(N-2)/2 omega_N v(eps)^2

and the three are tied together by I = D + L(eps) for profiles vanishing at
the outer radius.  The cutoff norm is the limit of I - L along eps -> 0; it
exists (and equals D(0, R)) even when I alone oscillates or diverges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .profiles import MOLLIFY_RADIUS, RadialProfile
from .quadrature import (
    DEEP_EPS_SEQUENCE,
    DEFAULT_EPS_SEQUENCE,
    LimitResult,
    QuadConfig,
    integrate,
    integrate_to_limit,
)

__all__ = [
    "HardyBreakdown",
    "annulus_functional",
    "weighted_dirichlet",
    "weighted_l2_sq",
    "singularity_energy",
    "cutoff_norm",
    "principal_value",
    "inner_product",
    "breakdown",
]


@dataclass
class HardyBreakdown:
    """Per-eps decomposition of the annulus functional."""

    eps: float
    annulus: float
    singularity: float
    dirichlet: float
    residual: float


def _left_cfg(p: RadialProfile, lo: float, hi: float) -> QuadConfig:
    """Grading deep enough to resolve scales between lo and hi."""
    floor = max(lo, 0.5 * MOLLIFY_RADIUS)
    needed = int(math.log2(max(hi / floor, 4.0))) + 10
    return QuadConfig(endpoint_grading=min(max(52, needed), p.quad_levels + 16),
                      max_depth=60)


def _outer(p: RadialProfile, R: float | None) -> float:
    return p.support[1] if R is None else R


def weighted_l2_sq(p: RadialProfile, R: float | None = None) -> float:
    r"""||u||^2_{L^2} computed in the regular part: s_N \int v^2 r dr.

    The identity is exact (the transformation is an isometry onto the
    weighted space), and the v-form never evaluates the singular u near 0.
    """
    R = _outer(p, R)
    f = lambda r: (p.v(r) * math.sqrt(r)) ** 2
    res = integrate(f, 0.0, R, _left_cfg(p, 0.0, R), singular_end="left")
    return p.dim.surface_factor * res.value


def weighted_dirichlet(p: RadialProfile, eps: float, R: float | None = None) -> float:
    r"""Weighted Dirichlet energy s_N \int_eps^R v'^2 r dr."""
    R = _outer(p, R)
    if eps < 0.0 or eps >= R:
        raise ValueError(f"need 0 <= eps < R, got eps={eps}, R={R}")
    f = lambda r: (p.dv(r) * math.sqrt(r)) ** 2
    res = integrate(f, eps, R, _left_cfg(p, eps, R), singular_end="left")
    return p.dim.surface_factor * res.value


def singularity_energy(p: RadialProfile, eps: float) -> float:
    r"""Surface term N(N-2)/2 * omega_N * v(eps)^2 (radial reduction of the
    sphere integral with \int_{S_eps} f dS = N omega_N eps^{N-1} f(eps))."""
    return p.dim.hs_constant * p.v(eps) ** 2


def annulus_functional(p: RadialProfile, eps: float, R: float | None = None,
                       method: str = "direct") -> float:
    r"""\int |grad u|^2 - c* \int u^2/|x|^2 over the annulus eps < r < R.

    method="direct" integrates the u-form integrand built from u and du; the
    two terms cancel strongly near the origin, which is exactly what the
    decomposition identity probes.  method="reduced" expands the square
    pointwise (no integration by parts) into  v'^2 r - 2 lam v v'  and stays
    representable down to eps ~ 1e-250; used for deep classification runs.
    """
    R = _outer(p, R)
    if not 0.0 < eps < R:
        raise ValueError(f"need 0 < eps < R, got eps={eps}, R={R}")
    dim = p.dim
    lam = dim.singular_exponent
    c_star = dim.critical_coefficient
    n = dim.n

    if method == "direct":
        def f(r: float) -> float:
            grad = (p.du(r) * r ** (0.5 * (n - 1))) ** 2
            pot = c_star * (p.u(r) * r ** (0.5 * (n - 3))) ** 2
            return grad - pot
    elif method == "reduced":
        def f(r: float) -> float:
            dv = p.dv(r)
            return (dv * math.sqrt(r)) ** 2 - 2.0 * lam * p.v(r) * dv
    else:
        raise ValueError(f"unknown method {method!r}")

    res = integrate(f, eps, R, _left_cfg(p, eps, R), singular_end="left")
    return dim.surface_factor * res.value


def breakdown(p: RadialProfile, eps: float, R: float | None = None) -> HardyBreakdown:
    """All three energies at one eps, each by its own route, plus the residual
    of the decomposition identity."""
    R = _outer(p, R)
    annulus = annulus_functional(p, eps, R)
    sing = singularity_energy(p, eps)
    diri = weighted_dirichlet(p, eps, R)
    return HardyBreakdown(eps, annulus, sing, diri, annulus - diri - sing)


def _dirichlet_diverges(p: RadialProfile, R: float) -> bool:
    """Deep-grid test of whether the weighted Dirichlet energy is a limit."""
    seq = [e for e in DEEP_EPS_SEQUENCE if e < R]
    res = integrate_to_limit(lambda d: weighted_dirichlet(p, d, R), seq)
    return res.classification == "diverging"


def _eps_grid(p: RadialProfile, eps_sequence):
    """Default eps grid per origin class: fast classes contract at least
    geometrically on 10^-1..10^-6; powers of log need log(1/eps) itself
    sampled geometrically to reveal their behavior."""
    if eps_sequence is not None:
        return eps_sequence
    if p.origin_class in ("oscillating", "log_divergent") or not p.member:
        return DEEP_EPS_SEQUENCE
    return DEFAULT_EPS_SEQUENCE


def cutoff_norm(p: RadialProfile, R: float | None = None,
                eps_sequence=None) -> LimitResult:
    """The cutoff limit lim_{eps->0} (annulus functional - singularity energy).

    This is the correct squared norm for every origin class; it coincides
    with the weighted Dirichlet energy of the regular part.  Profiles whose
    Dirichlet energy itself diverges under refinement are classified
    ``diverging`` without attempting the limit.
    """
    R = _outer(p, R)
    eps_sequence = _eps_grid(p, eps_sequence)
    if (p.origin_class in ("oscillating", "log_divergent") or not p.member) \
            and _dirichlet_diverges(p, R):
        return LimitResult(float("nan"), "diverging")
    method = "direct" if min(eps_sequence) >= 1e-7 else "reduced"

    def regularized(eps: float) -> float:
        return annulus_functional(p, eps, R, method=method) - singularity_energy(p, eps)

    return integrate_to_limit(regularized, eps_sequence)


def principal_value(p: RadialProfile, R: float | None = None,
                    eps_sequence=None) -> LimitResult:
    """Principal value of the Hardy functional: limit of the bare annulus
    functional.  Converges for vanishing and finite_limit classes; oscillates
    or diverges exactly when the singularity energy does."""
    R = _outer(p, R)
    eps_sequence = _eps_grid(p, eps_sequence)
    method = "direct" if min(eps_sequence) >= 1e-7 else "reduced"
    return integrate_to_limit(
        lambda eps: annulus_functional(p, eps, R, method=method), eps_sequence)


def inner_product(p1: RadialProfile, p2: RadialProfile,
                  R: float | None = None) -> float:
    r"""Bilinear form of the cutoff norm: Hardy bilinear form minus the cross
    singularity term N(N-2)/2 omega_N v1(eps) v2(eps), in the limit.

    Restricted to finite_limit and vanishing classes, where the polarization
    identity is meaningful; equals s_N \int v1' v2' r dr.
    """
    for p in (p1, p2):
        if p.origin_class not in ("finite_limit", "vanishing"):
            raise ValueError(
                f"inner product needs finite_limit/vanishing classes, got {p.origin_class}")
    if p1.dim != p2.dim:
        raise ValueError("profiles live in different dimensions")
    R1 = _outer(p1, R)
    dim = p1.dim
    n = dim.n
    c_star = dim.critical_coefficient

    def bilinear(eps: float) -> float:
        def f(r: float) -> float:
            w = r ** (0.5 * (n - 1))
            wp = r ** (0.5 * (n - 3))
            return (p1.du(r) * w) * (p2.du(r) * w) - c_star * (p1.u(r) * wp) * (p2.u(r) * wp)
        res = integrate(f, eps, R1, _left_cfg(p1, eps, R1), singular_end="left")
        return dim.surface_factor * res.value - dim.hs_constant * p1.v(eps) * p2.v(eps)

    out = integrate_to_limit(bilinear, DEFAULT_EPS_SEQUENCE)
    return out.limit
