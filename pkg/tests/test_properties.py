"""Property suites that stand on their own: no reference tables, only
mathematical identities and independently computable oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from plateflutter.coefficients import sine_quartic_integral
from plateflutter.duffing import amplitude, energy_of, period
from plateflutter.hill import HillProblem, monodromy
from plateflutter.modes import l2_inner_product, rayleigh_quotient


@given(st.integers(1, 10), st.integers(1, 10), st.integers(1, 10), st.integers(1, 10))
@settings(max_examples=40, deadline=None)
def test_sine_quartic_matches_quadrature(m1, m2, m3, m4):
    exact = sine_quartic_integral(m1, m2, m3, m4)
    num, _ = quad(lambda x: math.sin(m1 * x) * math.sin(m2 * x)
                  * math.sin(m3 * x) * math.sin(m4 * x), 0.0, math.pi, limit=200)
    assert abs(exact - num) < 1e-9


@given(st.floats(0.05, 50.0), st.floats(0.05, 10.0), st.floats(1e-6, 1e3))
@settings(max_examples=60, deadline=None)
def test_amplitude_energy_round_trip(rho, b, E):
    A = amplitude(E, rho, b)
    assert energy_of(A, 0.0, rho, b) == pytest.approx(E, rel=1e-11)


@given(st.floats(0.05, 20.0), st.floats(0.05, 5.0),
       st.floats(1e-5, 100.0), st.floats(1.01, 8.0))
@settings(max_examples=60, deadline=None)
def test_period_strictly_decreasing(rho, b, E, factor):
    assert period(E * factor, rho, b) < period(E, rho, b)


@given(st.floats(0.05, 20.0), st.floats(0.05, 5.0))
@settings(max_examples=30, deadline=None)
def test_period_zero_energy_limit(rho, b):
    assert period(1e-13, rho, b) == pytest.approx(2 * math.pi / math.sqrt(rho), rel=1e-9)


def test_orthogonality_no_tables(basis):
    for i in range(1, 17):
        for j in range(1, 17):
            want = 1.0 if i == j else 0.0
            assert abs(l2_inner_product(basis, i, j) - want) < 1e-8


def test_rayleigh_no_tables(basis):
    for idx in range(1, 17):
        lam = basis.eigenvalue(idx)
        assert abs(rayleigh_quotient(basis.profile(idx)) - lam) <= 1e-8 * lam


def test_gradient_vs_potential_no_tables(tensor, rng):
    for _ in range(6):
        phi = rng.normal(size=16)
        f = tensor.force(phi)
        h = 1e-6
        k = int(rng.integers(0, 16))
        e = np.zeros(16)
        e[k] = h
        fd = (tensor.quartic_potential(phi + e) - tensor.quartic_potential(phi - e)) / (2 * h)
        assert math.isclose(fd, f[k], rel_tol=1e-6, abs_tol=1e-8)


def test_monodromy_determinant_random(coeffs, rng):
    for _ in range(6):
        k = int(rng.integers(1, 15))
        l = int(rng.integers(1, 3))
        A = float(rng.uniform(0.01, 4.0))
        M, _ = monodromy(HillProblem.build(k, l, coeffs, A))
        assert abs(np.linalg.det(M) - 1.0) < 1e-8


@given(st.floats(0.2, 5.0), st.floats(0.2, 3.0), st.floats(0.01, 10.0))
@settings(max_examples=10, deadline=None)
def test_period_against_orbit_clock(rho, b, E):
    from plateflutter.duffing import period_by_zero_crossings
    assert period(E, rho, b) == pytest.approx(period_by_zero_crossings(E, rho, b),
                                              rel=1e-8)
