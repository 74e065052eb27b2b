"""Radial test profiles stored through their regular part.

A profile represents u(r) = r^{-(N-2)/2} v(r) on a radial support interval,
with v the regular part.  Everything downstream (energies, spectra, maps)
works with v and dv; u is reconstructed on demand.

Origin behavior is tagged with one of four classes:

* ``vanishing``      v -> 0 at the origin (u lies in the classical H^1_0 range)
* ``finite_limit``   v has a finite nonzero limit at the origin
* ``oscillating``    v stays bounded but has no limit
* ``log_divergent``  v grows (like a power of log 1/r) toward the origin

Profiles whose regular part involves powers of log(1/r) are frozen to a
constant below MOLLIFY_RADIUS so that every evaluation stays finite.  The
freeze radius is far below anything probed numerically: classification
experiments sample down to r ~ 1e-250.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from typing import Callable

from .quadrature import classify_sequence
from .specfun import bessel_j, bessel_zero

__all__ = [
    "Dimension",
    "RadialProfile",
    "ORIGIN_CLASSES",
    "MOLLIFY_RADIUS",
    "make_e1",
    "make_mode",
    "make_subcritical",
    "make_named",
    "named_profile",
    "classify_origin",
]

ORIGIN_CLASSES = ("vanishing", "finite_limit", "oscillating", "log_divergent")

#: radius below which log-type regular parts are frozen to a constant
MOLLIFY_RADIUS = 1e-290

#: radii 10^-g used by the origin-class oracle; geometric in the exponent so
#: that slow (powers of log) growth and oscillation are actually visible
CLASSIFY_EXPONENTS = (2, 4, 8, 16, 32, 64, 128, 250)


@dataclass(frozen=True)
class Dimension:
    """Ambient dimension N >= 3 with the constants attached to it."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"dimension must be >= 3, got {self.n}")

    @property
    def critical_coefficient(self) -> float:
        """(N-2)^2/4, the borderline coupling of the inverse-square potential."""
        return 0.25 * (self.n - 2) ** 2

    @property
    def singular_exponent(self) -> float:
        """(N-2)/2: u = r^(-singular_exponent) v."""
        return 0.5 * (self.n - 2)

    @property
    def ball_volume(self) -> float:
        """Lebesgue measure of the unit ball."""
        return math.pi ** (self.n / 2.0) / math.gamma(self.n / 2.0 + 1.0)

    @property
    def surface_factor(self) -> float:
        """N * omega_N: |S^{N-1}| so that dx = surface_factor * r^{N-1} dr."""
        return self.n * self.ball_volume

    @property
    def hs_constant(self) -> float:
        """N(N-2)/2 * omega_N, the prefactor of the singularity energy."""
        return 0.5 * self.n * (self.n - 2) * self.ball_volume


@dataclass
class RadialProfile:
    """Radial function stored via its regular part v, with u = r^-lam * v."""

    dim: Dimension
    v: Callable[[float], float]
    dv: Callable[[float], float]
    support: tuple[float, float]
    origin_class: str
    boundary_zero: bool
    name: str = ""
    member: bool = True
    quad_levels: int = 52

    def __post_init__(self) -> None:
        if self.origin_class not in ORIGIN_CLASSES:
            raise ValueError(f"unknown origin class {self.origin_class!r}")
        lo, hi = self.support
        if not (0.0 <= lo < hi):
            raise ValueError(f"bad support interval {self.support}")

    def u(self, r: float) -> float:
        return r ** (-self.dim.singular_exponent) * self.v(r)

    def du(self, r: float) -> float:
        lam = self.dim.singular_exponent
        return r ** (-lam) * (self.dv(r) - lam * self.v(r) / r)

    def v_origin(self, probe: float = 1e-12) -> float:
        """Limit of v at the origin (meaningful for the finite_limit class)."""
        return self.v(probe)

    def scaled(self, alpha: float) -> "RadialProfile":
        v, dv = self.v, self.dv
        return replace(
            self,
            v=lambda r, _v=v, _a=alpha: _a * _v(r),
            dv=lambda r, _dv=dv, _a=alpha: _a * _dv(r),
            name=f"{alpha:g}*{self.name}" if self.name else "",
        )


def make_e1(dim: Dimension) -> RadialProfile:
    """Ground radial mode on the unit ball: v(r) = J_0(z1 r), v(1) = 0."""
    return make_mode(dim, 1)


def make_mode(dim: Dimension, k: int) -> RadialProfile:
    """k-th radial mode: v(r) = J_0(z_k r) with z_k the k-th zero of J_0."""
    z = bessel_zero(0.0, k)
    return RadialProfile(
        dim=dim,
        v=lambda r: bessel_j(0.0, z * r),
        dv=lambda r: -z * bessel_j(1.0, z * r),
        support=(0.0, 1.0),
        origin_class="finite_limit",
        boundary_zero=True,
        name=f"mode{k}",
    )


def make_subcritical(dim: Dimension, c: float) -> RadialProfile:
    """First eigenprofile of the subcritical coupling c in [0, c*):
    u(r) = r^{-(N-2)/2} J_m(z r) with m = sqrt(c* - c) and z the first zero
    of J_m, eigenvalue z^2.

    Regular part relative to the critical transformation: v(r) = J_m(z r),
    which behaves like r^m near the origin, so v(0) = 0 for m > 0.
    """
    c_star = dim.critical_coefficient
    if not 0.0 <= c < c_star:
        raise ValueError(f"need 0 <= c < {c_star}, got c={c}")
    m = math.sqrt(c_star - c)
    z = bessel_zero(m, 1)

    def v(r: float) -> float:
        return bessel_j(m, z * r)

    def dv(r: float) -> float:
        # J_m'(x) = (m/x) J_m(x) - J_{m+1}(x)
        return (m / r) * bessel_j(m, z * r) - z * bessel_j(m + 1.0, z * r)

    return RadialProfile(
        dim=dim,
        v=v,
        dv=dv,
        support=(0.0, 1.0),
        origin_class="vanishing",
        boundary_zero=True,
        name=f"subcritical(c={c:g})",
    )


def _smooth_step(t: float) -> float:
    """C-infinity monotone step: 0 for t <= 0, 1 for t >= 1."""
    if t <= 0.0:
        return 0.0
    if t >= 1.0:
        return 1.0
    a = math.exp(-1.0 / t)
    b = math.exp(-1.0 / (1.0 - t))
    return a / (a + b)


def _smooth_step_deriv(t: float) -> float:
    if t <= 0.0 or t >= 1.0:
        return 0.0
    a = math.exp(-1.0 / t)
    b = math.exp(-1.0 / (1.0 - t))
    da = a / (t * t)
    db = -b / ((1.0 - t) * (1.0 - t))
    return (da * (a + b) - a * (da + db)) / (a + b) ** 2


def _hermite(x0: float, x1: float, p0: float, m0: float, p1: float, m1: float):
    """Cubic Hermite interpolant and its derivative on [x0, x1]."""
    w = x1 - x0

    def h(x: float) -> float:
        t = (x - x0) / w
        h00 = (1.0 + 2.0 * t) * (1.0 - t) ** 2
        h10 = t * (1.0 - t) ** 2
        h01 = t * t * (3.0 - 2.0 * t)
        h11 = t * t * (t - 1.0)
        return h00 * p0 + h10 * w * m0 + h01 * p1 + h11 * w * m1

    def dh(x: float) -> float:
        t = (x - x0) / w
        d00 = 6.0 * t * (t - 1.0)
        d10 = (1.0 - t) * (1.0 - 3.0 * t)
        d01 = 6.0 * t * (1.0 - t)
        d11 = t * (3.0 * t - 2.0)
        return (d00 * p0 + d01 * p1) / w + d10 * m0 + d11 * m1

    return h, dh


def _log_family(dim: Dimension, a: float, oscillate: bool) -> RadialProfile:
    """Profiles driven by s = log(1/r): v = s^a or v = sin(s^a) near the origin.

    The pure law holds on (MOLLIFY_RADIUS, r_c] with r_c = 1/e; a cubic Hermite
    bridge takes v to 0 at r = 1 with zero slope there.  Membership in the
    weighted Dirichlet space requires 0 < a < 1/2; other values are allowed for
    stress tests and flagged as non-members.
    """
    r_c = math.exp(-1.0)
    if oscillate:
        p_c = math.sin(1.0)
        m_c = -a * math.cos(1.0) / r_c
    else:
        p_c = 1.0
        m_c = -a / r_c
    bridge, dbridge = _hermite(r_c, 1.0, p_c, m_c, 0.0, 0.0)
    s_freeze = math.log(1.0 / MOLLIFY_RADIUS)
    frozen = math.sin(s_freeze**a) if oscillate else s_freeze**a

    def v(r: float) -> float:
        if r >= 1.0:
            return 0.0
        if r > r_c:
            return bridge(r)
        if r <= MOLLIFY_RADIUS:
            return frozen
        s = math.log(1.0 / r)
        return math.sin(s**a) if oscillate else s**a

    def dv(r: float) -> float:
        if r >= 1.0 or r <= MOLLIFY_RADIUS:
            return 0.0
        if r > r_c:
            return dbridge(r)
        s = math.log(1.0 / r)
        if oscillate:
            return -a * math.cos(s**a) * s ** (a - 1.0) / r
        return -a * s ** (a - 1.0) / r

    kind = "oscillating" if oscillate else "log_power"
    return RadialProfile(
        dim=dim,
        v=v,
        dv=dv,
        support=(0.0, 1.0),
        origin_class="oscillating" if oscillate else "log_divergent",
        boundary_zero=True,
        name=f"{kind}({a:g})",
        member=0.0 < a < 0.5,
        quad_levels=1024,
    )


def _bump(dim: Dimension, fall: tuple[float, float],
          rise: tuple[float, float] | None, height: float) -> RadialProfile:
    """Smooth compactly supported profile; flat at ``height`` between the
    optional rise window and the fall window."""
    b0, b1 = fall
    if rise is not None:
        a0, a1 = rise
        if not 0.0 <= a0 < a1 <= b0:
            raise ValueError("rise window must precede the fall window")
    if not 0.0 <= b0 < b1:
        raise ValueError("bad fall window")

    def v(r: float) -> float:
        out = height * _smooth_step((b1 - r) / (b1 - b0))
        if rise is not None:
            out *= _smooth_step((r - rise[0]) / (rise[1] - rise[0]))
        return out

    def dv(r: float) -> float:
        down = _smooth_step((b1 - r) / (b1 - b0))
        ddown = -_smooth_step_deriv((b1 - r) / (b1 - b0)) / (b1 - b0)
        if rise is None:
            return height * ddown
        up = _smooth_step((r - rise[0]) / (rise[1] - rise[0]))
        dup = _smooth_step_deriv((r - rise[0]) / (rise[1] - rise[0])) / (rise[1] - rise[0])
        return height * (dup * down + up * ddown)

    return RadialProfile(
        dim=dim,
        v=v,
        dv=dv,
        support=(rise[0] if rise is not None else 0.0, b1),
        origin_class="finite_limit" if rise is None else "vanishing",
        boundary_zero=True,
        name="bump" if rise is None else "annular_bump",
    )


def _constant_plateau(dim: Dimension, plateau_end: float, support_end: float,
                      height: float) -> RadialProfile:
    """v = height on [0, plateau_end], cubic smoothstep down to 0 at support_end."""
    if not 0.0 < plateau_end < support_end:
        raise ValueError("need 0 < plateau_end < support_end")
    w = support_end - plateau_end

    def v(r: float) -> float:
        if r <= plateau_end:
            return height
        if r >= support_end:
            return 0.0
        t = (r - plateau_end) / w
        return height * (1.0 - t * t * (3.0 - 2.0 * t))

    def dv(r: float) -> float:
        if r <= plateau_end or r >= support_end:
            return 0.0
        t = (r - plateau_end) / w
        return -height * 6.0 * t * (1.0 - t) / w

    return RadialProfile(
        dim=dim,
        v=v,
        dv=dv,
        support=(0.0, support_end),
        origin_class="finite_limit",
        boundary_zero=True,
        name="constant_plateau",
    )


def make_named(dim: Dimension, kind: str, **params) -> RadialProfile:
    """Construct a profile of a named kind.

    kinds: ``log_power`` (param a), ``oscillating`` (param a), ``bump``
    (params fall=(b0, b1), rise=None, height=1), ``constant_plateau``
    (params plateau_end, support_end, height=1).
    """
    if kind == "log_power":
        return _log_family(dim, float(params.get("a", 0.3)), oscillate=False)
    if kind == "oscillating":
        return _log_family(dim, float(params.get("a", 0.3)), oscillate=True)
    if kind == "bump":
        return _bump(dim,
                     fall=tuple(params.get("fall", (0.4, 0.8))),
                     rise=params.get("rise"),
                     height=float(params.get("height", 1.0)))
    if kind == "constant_plateau":
        return _constant_plateau(dim,
                                 plateau_end=float(params.get("plateau_end", 0.4)),
                                 support_end=float(params.get("support_end", 0.9)),
                                 height=float(params.get("height", 1.0)))
    raise ValueError(f"unknown profile kind {kind!r}")


_NAME_RE = re.compile(r"^(?P<head>[a-z_0-9]+?)(?:\((?P<arg>[-+0-9.e]+)\))?$")


def named_profile(dim: Dimension, text: str) -> RadialProfile:
    """Profile addressed by a string name, e.g. from a command line.

    Accepted: ``e1``, ``mode(K)``, ``bump``, ``annular_bump``,
    ``constant_plateau``, ``log_power(A)``, ``oscillating(A)``,
    ``subcritical(C)``.
    """
    m = _NAME_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse profile name {text!r}")
    head, arg = m.group("head"), m.group("arg")
    if head == "e1":
        return make_e1(dim)
    if head == "mode":
        return make_mode(dim, int(float(arg or 2)))
    if head == "bump":
        return make_named(dim, "bump")
    if head == "annular_bump":
        return make_named(dim, "bump", rise=(0.2, 0.35), fall=(0.65, 0.8))
    if head == "constant_plateau":
        return make_named(dim, "constant_plateau")
    if head == "log_power":
        return make_named(dim, "log_power", a=float(arg or 0.3))
    if head == "oscillating":
        return make_named(dim, "oscillating", a=float(arg or 0.3))
    if head == "subcritical":
        return make_subcritical(dim, float(arg or 0.0))
    raise ValueError(f"unknown profile name {text!r}")


def classify_origin(p: RadialProfile) -> str:
    """Empirical origin class from samples of v on r = 10^-g, g geometric.

    Maps the sequence classifier onto the four origin classes: a convergent
    sample sequence is ``vanishing`` or ``finite_limit`` depending on the
    limit, monotone non-contracting growth is ``log_divergent``, and bounded
    non-convergent behavior is ``oscillating``.
    """
    radii = [10.0**-g for g in CLASSIFY_EXPONENTS]
    vals = [p.v(r) for r in radii]
    cls, limit = classify_sequence(vals, abs_tol=1e-12, rel_tol=1e-9)
    if cls == "converged":
        scale = max(max(abs(x) for x in vals), 1e-300)
        return "vanishing" if abs(limit) <= 1e-6 * max(scale, 1.0) else "finite_limit"
    if cls == "diverging":
        return "log_divergent"
    return "oscillating"
