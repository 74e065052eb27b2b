import math

import pytest

from hardylab import hardy
from hardylab.profiles import (
    Dimension,
    classify_origin,
    make_e1,
    make_mode,
    make_named,
    make_subcritical,
    named_profile,
)
from hardylab.specfun import bessel_j, bessel_zero

from oracles import Z01, central_diff


def test_dimension_constants(dim3, dim4):
    assert dim3.critical_coefficient == 0.25
    assert dim4.critical_coefficient == 1.0
    assert abs(dim3.ball_volume - 4.0 * math.pi / 3.0) < 1e-15
    assert abs(dim4.ball_volume - math.pi**2 / 2.0) < 1e-15
    assert abs(dim3.hs_constant - 2.0 * math.pi) < 1e-14
    assert abs(dim4.hs_constant - 2.0 * math.pi**2) < 1e-13


def test_dimension_validation():
    with pytest.raises(ValueError):
        Dimension(2)


def test_e1_regular_part(dim3):
    p = make_e1(dim3)
    assert abs(p.v_origin() - 1.0) < 1e-12
    assert abs(p.v(1.0)) < 1e-11  # boundary zero located by the zero finder
    # defining relation u * r^lam = v
    r = 0.5
    assert abs(p.u(r) * r**dim3.singular_exponent - bessel_j(0.0, Z01 * r)) < 1e-14
    assert p.boundary_zero and p.origin_class == "finite_limit"


def test_subcritical_near_critical(dim3):
    c_star = dim3.critical_coefficient
    p = make_subcritical(dim3, c_star - 1e-12)
    z = bessel_zero(math.sqrt(1e-12), 1)
    assert abs(z * z - Z01 * Z01) < 1e-4  # zeros continuous in the order
    assert p.origin_class == "vanishing"


def test_subcritical_c_zero_bounded_at_origin(dim4):
    # u = r^{-m} J_m(z r) with m = (N-2)/2: the r^m vanishing of J_m exactly
    # cancels the singular prefactor
    p = make_subcritical(dim4, 0.0)
    m = dim4.singular_exponent
    z = bessel_zero(m, 1)
    cap = (z / 2.0) ** m / math.gamma(m + 1.0)  # the finite limit of u at 0
    for r in (1e-3, 1e-6, 1e-9):
        assert abs(p.u(r)) < 1.1 * cap


def test_subcritical_singularity_energy_vanishes(dim3):
    # the H^1_0 membership signature: surface energy -> 0 at the origin,
    # at the rate eps^{2m} of the J_m vanishing
    p = make_subcritical(dim3, 0.1)
    vals = [hardy.singularity_energy(p, 10.0**-j) for j in range(1, 13)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-8


def test_subcritical_domain(dim3):
    with pytest.raises(ValueError):
        make_subcritical(dim3, -0.1)
    with pytest.raises(ValueError):
        make_subcritical(dim3, dim3.critical_coefficient)


@pytest.mark.parametrize("name,expected", [
    ("e1", "finite_limit"),
    ("bump", "finite_limit"),
    ("constant_plateau", "finite_limit"),
    ("annular_bump", "vanishing"),
    ("subcritical(0.2)", "vanishing"),
    ("log_power(0.3)", "log_divergent"),
    ("oscillating(0.3)", "oscillating"),
])
def test_declared_class_matches_sampled_class(dim3, name, expected):
    p = named_profile(dim3, name)
    assert p.origin_class == expected
    assert classify_origin(p) == expected


def test_membership_flag(dim3):
    assert make_named(dim3, "log_power", a=0.3).member
    assert not make_named(dim3, "log_power", a=0.5).member
    assert not make_named(dim3, "oscillating", a=0.7).member


def test_log_power_inside_regime_has_finite_energy(dim3):
    p = make_named(dim3, "log_power", a=0.3)
    full = hardy.weighted_dirichlet(p, 0.0)
    assert math.isfinite(full) and full > 0


def test_log_power_outside_regime_diverges_under_refinement(dim3):
    from hardylab.quadrature import DEEP_EPS_SEQUENCE, integrate_to_limit

    p = make_named(dim3, "log_power", a=0.5)
    res = integrate_to_limit(lambda d: hardy.weighted_dirichlet(p, d), DEEP_EPS_SEQUENCE)
    assert res.classification == "diverging"


def test_bump_singularity_energy_value(dim3):
    # plateau of height 1 near the origin: limit is N(N-2)/2 omega_N
    p = make_named(dim3, "bump")
    val = hardy.singularity_energy(p, 1e-6)
    assert abs(val - dim3.hs_constant) < 1e-12


@pytest.mark.parametrize("name", ["e1", "bump", "constant_plateau",
                                  "log_power(0.3)", "oscillating(0.3)",
                                  "subcritical(0.1)"])
def test_derivative_consistency(dim3, name):
    p = named_profile(dim3, name)
    for r in (0.02, 0.11, 0.37, 0.52, 0.78):
        h = 1e-6 * r
        fd = central_diff(p.v, r, h)
        dv = p.dv(r)
        if abs(dv) > 1e-10:
            assert abs(fd - dv) / abs(dv) < 1e-6
        else:
            assert abs(fd - dv) < 1e-8


def test_scaled(dim3):
    p = make_e1(dim3).scaled(2.5)
    assert abs(p.v(0.3) - 2.5 * bessel_j(0.0, Z01 * 0.3)) < 1e-14


def test_mode_profiles(dim3):
    p = make_mode(dim3, 3)
    assert abs(p.v(1.0)) < 1e-11
    assert abs(p.v_origin() - 1.0) < 1e-12


def test_named_profile_parser(dim3):
    assert named_profile(dim3, "mode(2)").name == "mode2"
    assert named_profile(dim3, "log_power(0.45)").name == "log_power(0.45)"
    with pytest.raises(ValueError):
        named_profile(dim3, "nonsense")


def test_annular_bump_support(dim3):
    p = named_profile(dim3, "annular_bump")
    assert p.support == (0.2, 0.8)
    assert p.v(0.1) == 0.0 and p.v(0.9) == 0.0
    assert p.v(0.5) > 0.5
