import math

import numpy as np
import pytest

from hardylab import evolution, kelvin, spectrum
from hardylab.evolution import FDGrid, FDRun, SpectralRun, energy_trace, evolve_fd, evolve_spectral
from hardylab.profiles import make_e1, make_named
from hardylab.specfun import bessel_j

from oracles import Z01

MU1 = Z01 * Z01


def field3(dim3):
    modes = [spectrum.eigenmode(dim3, k) for k in (1, 2, 3)]
    return spectrum.SpectralField(modes, np.array([1.0, 0.4, -0.2]))


def test_time_zero_is_identity(dim3):
    f = field3(dim3)
    g = evolve_spectral(f, 0.0)
    assert np.array_equal(f.coeffs, g.coeffs)


def test_single_mode_decay_factor(dim3):
    modes = [spectrum.eigenmode(dim3, 1)]
    f = spectrum.SpectralField(modes, np.array([1.0]))
    g = evolve_spectral(f, 1.0)
    # exp(-z01^2), frozen from the oracle constant
    assert abs(g.coeffs[0] - 0.0030788905345452314) < 1e-15


def test_semigroup_property(dim3):
    f = field3(dim3)
    ab = evolve_spectral(evolve_spectral(f, 0.35), 0.15)
    c = evolve_spectral(f, 0.5)
    assert np.max(np.abs(ab.coeffs - c.coeffs)) < 1e-16


def test_long_time_slope(dim3):
    run = SpectralRun(field3(dim3))
    slope = (math.log(run.energy(2.5)) - math.log(run.energy(2.0))) / 0.5 / 2.0
    assert abs(-slope - MU1) < 1e-3


def test_fd_grid_validation():
    with pytest.raises(ValueError):
        FDGrid(m=32, dt=1e-4)
    with pytest.raises(ValueError):
        FDGrid(m=128, dt=-1e-4)
    with pytest.raises(ValueError):
        FDGrid(m=128, dt=1e-4, theta=0.7)


def test_fd_time_zero_returns_samples(dim3):
    p = make_e1(dim3)
    g = FDGrid(m=128, dt=1e-4)
    v = evolve_fd(p, 0.0, g)
    r = g.nodes
    want = np.array([p.v(rj) for rj in r])
    want[-1] = 0.0
    assert np.array_equal(v, want)


def test_fd_matches_exact_mode_decay(dim3):
    # spectral decay of the pure ground mode as the oracle
    p = make_e1(dim3)
    g = FDGrid(m=512, dt=1e-4, theta=0.5)
    v = evolve_fd(p, 0.1, g)
    r = g.nodes
    exact = math.exp(-MU1 * 0.1) * np.array([bessel_j(0.0, Z01 * rj) for rj in r])
    exact[-1] = 0.0
    dist2 = dim3.surface_factor * g.h * float(np.sum((v - exact) ** 2 * r))
    assert math.sqrt(dist2) < 1e-4


def test_fd_matches_spectral_for_bump(dim3):
    p = make_named(dim3, "bump")
    g = FDGrid(m=512, dt=1e-4)
    v = evolve_fd(p, 0.1, g)
    f = evolve_spectral(spectrum.expand(p, 40), 0.1)
    r = g.nodes
    vs = np.array([f.v(rj) for rj in r])
    dist2 = dim3.surface_factor * g.h * float(np.sum((v - vs) ** 2 * r))
    assert math.sqrt(dist2) < 1e-4


def test_grid_refinement_second_order(dim3):
    # halving h should cut the error against the exact decay by about 4
    p = make_e1(dim3)
    errs = []
    for m in (128, 257):
        g = FDGrid(m=m, dt=2e-5, theta=0.5)
        v = evolve_fd(p, 0.02, g)
        r = g.nodes
        exact = math.exp(-MU1 * 0.02) * np.array([bessel_j(0.0, Z01 * rj) for rj in r])
        exact[-1] = 0.0
        errs.append(math.sqrt(g.h * float(np.sum((v - exact) ** 2 * r))))
    ratio = errs[0] / errs[1]
    assert 3.0 < ratio < 5.2


def test_energy_law_single_mode_exact(dim3):
    modes = [spectrum.eigenmode(dim3, 2)]
    run = SpectralRun(spectrum.SpectralField(modes, np.array([0.7])))
    for t in (0.0, 0.05, 0.2):
        e = run.energy(t)
        assert abs(run.dirichlet(t) - modes[0].eigenvalue * e) < 1e-12 * max(e, 1.0)


def test_energy_trace_identity_mixed(dim3):
    run = SpectralRun(field3(dim3))
    rows = energy_trace(run, [0.01, 0.05, 0.1, 0.2])
    for row in rows:
        rel = abs(row.dEdt_est - row.minus_twice_dirichlet) / abs(row.minus_twice_dirichlet)
        assert rel < 1e-3


def test_energy_trace_fd(dim3):
    p = make_e1(dim3)
    run = FDRun(p, FDGrid(m=256, dt=2e-4), 0.04)
    rows = energy_trace(run, [0.01, 0.02, 0.03])
    energies = [row.energy for row in rows]
    assert all(a > b for a, b in zip(energies, energies[1:]))  # dissipation
    for row in rows:
        rel = abs(row.dEdt_est - row.minus_twice_dirichlet) / abs(row.minus_twice_dirichlet)
        assert rel < 1e-3
        assert abs(row.flux_diag) < 1e-2  # the monitored boundary leak is tiny


def test_weak_formulation_balance(dim3):
    # (1/2) dE/dt + ||v||^2_{weighted Dirichlet} = 0 along the flow
    run = SpectralRun(field3(dim3))
    for t in (0.02, 0.1, 0.3):
        balance = 0.5 * run.energy_rate(t) + run.dirichlet(t)
        assert abs(balance) < 1e-3 * run.dirichlet(t)


def test_exterior_eigenmode_decay(dim3):
    e1 = make_e1(dim3)
    q = kelvin.kelvin_map(e1)
    w1 = evolution.evolve_exterior(q, 0.1, modes=5)
    for s in (1.5, 2.5, 7.0):
        assert abs(w1.w(s) - math.exp(-MU1 * 0.1) * q.w(s)) < 1e-10


def test_exterior_roundtrip_identity(dim3):
    q = kelvin.kelvin_map(make_e1(dim3))
    back = kelvin.kelvin_map(kelvin.kelvin_unmap(q))
    for s in (1.1, 2.0, 5.0, 40.0):
        assert abs(back.w(s) - q.w(s)) < 1e-12


def test_exterior_fd_route_agrees_with_spectral(dim3):
    # mixed initial data, evolved through the ball by both solvers
    modes = [spectrum.eigenmode(dim3, k) for k in (1, 2)]
    f0 = spectrum.SpectralField(modes, np.array([0.8, 0.5]))
    q0 = kelvin.kelvin_map(f0.profile())
    t = 0.05
    w_spec = evolution.evolve_exterior(q0, t, modes=4, method="spectral")
    w_fd = evolution.evolve_exterior(q0, t, method="fd",
                                     grid=FDGrid(m=512, dt=1e-4))
    for s in (1.2, 2.0, 4.0, 10.0):
        assert abs(w_fd.w(s) - w_spec.w(s)) < 1e-4
