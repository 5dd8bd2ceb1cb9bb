import math

import numpy as np
import pytest
from scipy.special import ellipj, ellipk

from plateflutter.duffing import (DuffingOrbit, amplitude, elliptic_modulus,
                                  energy_of, lambda_pm, orbit_csv, period,
                                  period_by_zero_crossings, solve_orbit)


def test_energy_zero_state():
    assert energy_of(0.0, 0.0, 1.3, 0.7) == 0.0


def test_energy_at_amplitude_launch():
    rho, b, A = 0.11, 1.14, 2.5
    assert energy_of(A, 0.0, rho, b) == pytest.approx(rho * A ** 2 / 2 + b * A ** 4 / 4,
                                                      rel=1e-15)


def test_amplitude_energy_round_trip():
    rho, b = 0.108, 1.14
    for E in (1e-6, 1e-2, 1.0, 50.0):
        A = amplitude(E, rho, b)
        assert energy_of(A, 0.0, rho, b) == pytest.approx(E, rel=1e-12)


def test_lambda_pm_are_roots():
    rho, b, E = 0.5, 2.0, 3.0
    for lam, sign in zip(lambda_pm(E, rho, b), (-1.0, 1.0)):
        z = sign * lam
        assert 0.25 * b * z ** 2 + 0.5 * rho * z == pytest.approx(E, rel=1e-12)


def test_period_harmonic_limit():
    rho, b = 0.7, 1.1
    assert period(0.0, rho, b) == pytest.approx(2 * math.pi / math.sqrt(rho), rel=1e-15)
    assert period(1e-14, rho, b) == pytest.approx(2 * math.pi / math.sqrt(rho), rel=1e-10)


def test_period_slope_at_zero_energy():
    # dT/dE at E -> 0 equals -3 pi b / (2 rho^{5/2})
    rho, b = 0.9, 1.3
    h = 1e-7
    slope = (period(h, rho, b) - period(0.0, rho, b)) / h
    want = -3 * math.pi * b / (2 * rho ** 2.5)
    assert slope == pytest.approx(want, rel=1e-3)


def test_period_monotone_decreasing():
    rho, b = 0.108, 1.14
    Es = np.logspace(-4, 2, 30)
    Ts = [period(E, rho, b) for E in Es]
    assert all(t1 > t2 for t1, t2 in zip(Ts, Ts[1:]))


def test_period_domain():
    with pytest.raises(ValueError):
        period(-1.0, 1.0, 1.0)


def test_modulus_below_half():
    for E in np.logspace(-6, 6, 20):
        assert 0.0 < elliptic_modulus(E, 0.3, 1.4) < 0.5


def test_period_matches_zero_crossing_oracle():
    rho, b = 0.10005, 1.14
    for E in (1e-3, 0.1, 3.0, 40.0):
        direct = period_by_zero_crossings(E, rho, b)
        assert period(E, rho, b) == pytest.approx(direct, rel=1e-8)


def test_orbit_energy_conservation():
    rho, b = 0.7375, 1.153
    E = 2.0
    # default tolerances meet the 1e-8 drift guarantee over 100 time units
    t, phi, dphi = solve_orbit(amplitude(E, rho, b), 0.0, rho, b, 100.0)
    energies = np.array([energy_of(p, dp, rho, b) for p, dp in zip(phi, dphi)])
    assert energies.max() - energies.min() < 1e-8 * E
    # one notch tighter reaches the 1e-9 level
    t, phi, dphi = solve_orbit(amplitude(E, rho, b), 0.0, rho, b, 100.0,
                               rtol=1e-11, atol=1e-13)
    energies = np.array([energy_of(p, dp, rho, b) for p, dp in zip(phi, dphi)])
    assert energies.max() - energies.min() < 1e-9 * E


def test_orbit_matches_jacobi_cn():
    # closed-form cn orbit as an independent oracle
    rho, b = 0.5, 1.2
    A = 1.7
    E = energy_of(A, 0.0, rho, b)
    t, phi, _ = solve_orbit(A, 0.0, rho, b, 20.0)
    om = (rho + b * A * A) ** 0.5
    m = b * A * A / (2 * (rho + b * A * A))
    _, cn, _, _ = ellipj(om * t, m)
    assert np.max(np.abs(phi - A * cn)) < 1e-7


def test_orbit_half_period_antisymmetry():
    rho, b, E = 0.11, 1.14, 1.37
    T = period(E, rho, b)
    t, phi, _ = solve_orbit(0.0, math.sqrt(2 * E), rho, b, 1.5 * T, n_samples=6001)
    # phi(T/2 + s) = -phi(s), checked on the sampled grid
    half = T / 2.0
    dt = t[1] - t[0]
    n_half = int(round(half / dt))
    shift_err = abs(n_half * dt - half)
    assert shift_err < dt / 2
    a = phi[: len(t) - n_half]
    c = phi[n_half:]
    assert np.max(np.abs(a + c)) < 5e-3 * np.max(np.abs(phi))


def test_orbit_pointwise_bound():
    # 0 <= phi <= min(sqrt(2E/rho) sin(sqrt(rho) t), amplitude) on [0, T/4]
    rho, b, E = 0.3, 1.5, 2.4
    T = period(E, rho, b)
    t, phi, _ = solve_orbit(0.0, math.sqrt(2 * E), rho, b, T / 4.0, n_samples=2001)
    bound = np.minimum(np.sqrt(2 * E / rho) * np.sin(np.sqrt(rho) * t),
                       amplitude(E, rho, b))
    assert np.all(phi >= -1e-10)
    assert np.all(phi <= bound + 1e-8)


def test_linear_limit_is_harmonic():
    rho = 2.1
    phi1 = 0.37
    t, phi, _ = solve_orbit(0.0, phi1, rho, 0.0, 30.0)
    exact = phi1 / math.sqrt(rho) * np.sin(math.sqrt(rho) * t)
    assert np.max(np.abs(phi - exact)) < 1e-8


def test_scaling_relation():
    # rho -> c^2 rho, b -> c^2 b, E -> c^2 E rescales time by 1/c
    rho, b, E = 0.4, 1.9, 3.3
    for c in (0.5, 2.0, 7.0):
        T1 = period(E, rho, b)
        T2 = period(c * c * E, c * c * rho, c * c * b)
        assert T2 == pytest.approx(T1 / c, rel=1e-12)


def test_orbit_object():
    orb = DuffingOrbit.from_amplitude(3, 0.5, 1.1, 2.0)
    assert orb.amplitude == pytest.approx(2.0, rel=1e-12)
    assert orb.period == pytest.approx(period(orb.E, 0.5, 1.1), rel=1e-15)


def test_orbit_csv_format():
    t, phi, dphi = solve_orbit(1.0, 0.0, 1.0, 1.0, 1.0, n_samples=5)
    text = orbit_csv(t, phi, dphi, 1.0, 1.0)
    lines = text.strip().splitlines()
    assert lines[0] == "t,phi,dphi,energy"
    assert len(lines) == 6


def test_agm_period_against_scipy_ellipk():
    rho, b, E = 0.11, 1.15, 7.0
    m = elliptic_modulus(E, rho, b)
    want = 4.0 * ellipk(m) / (rho * rho + 4 * b * E) ** 0.25
    assert period(E, rho, b) == pytest.approx(want, rel=1e-14)
