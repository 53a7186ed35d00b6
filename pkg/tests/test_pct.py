from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qes_tcs.algebra import AlgebraClass
from qes_tcs.closed_forms import QesParams, wavefunction
from qes_tcs.errors import ConstraintViolation, DomainError, SingularityError
from qes_tcs.jets import eval_jet2, fd_derivatives
from qes_tcs.pct import (
    Mapping,
    algebra_side_potential,
    f_prefactor,
    g_of_rho,
    g_prime,
    generic_wavefunction,
    k_prime_abs,
    rho_of_g,
    schwarzian,
    schwarzian_from_derivative,
)


def test_mapping_trivial_values():
    assert g_of_rho(1.0) == pytest.approx(math.log(2.0), rel=1e-15)
    assert rho_of_g(math.log(2.0)) == pytest.approx(1.0, rel=1e-14)


@given(st.floats(1e-3, 1e3))
def test_mapping_round_trip(rho):
    assert rho_of_g(g_of_rho(rho)) == pytest.approx(rho, rel=1e-13)


def test_mapping_domain_errors():
    with pytest.raises(DomainError):
        g_of_rho(0.0)
    with pytest.raises(DomainError):
        g_of_rho(-1.0)
    with pytest.raises(SingularityError):
        rho_of_g(0.0)
    with pytest.raises(DomainError):
        rho_of_g(-0.3)


def test_g_prime_matches_jet_of_g():
    for rho in (0.1, 1.0, 7.5):
        j = eval_jet2(g_of_rho, rho)
        assert j.d1 == pytest.approx(g_prime(rho), rel=1e-12)
        # second derivative of g equals the jet d1 of the closed-form g'
        jp = eval_jet2(g_prime, rho)
        assert j.d2 == pytest.approx(jp.d1, rel=1e-10)


def test_k_prime_abs_closed_form():
    for rho in (0.2, 1.0, 11.0):
        assert k_prime_abs(rho) == pytest.approx(rho * (rho + 1.0), rel=1e-15)
        assert abs(1.0 / g_prime(rho)) == pytest.approx(k_prime_abs(rho), rel=1e-15)
    assert Mapping.K_prime_abs(2.0) == 6.0
    assert Mapping.K(Mapping.g_inv(2.5)) == pytest.approx(2.5, rel=1e-13)


def test_schwarzian_closed_form():
    # independent closed form 1/(2 (rho(rho+1))^2)
    for rho in (0.2, 0.5, 1.0, 3.0, 9.0):
        w = rho * (rho + 1.0)
        assert schwarzian(rho) == pytest.approx(1.0 / (2.0 * w * w), rel=1e-11)


def test_schwarzian_matches_finite_differences():
    rho = 1.0
    d2, d3 = fd_derivatives(g_prime, rho, 1e-4)  # derivatives of g', i.e. g'', g'''
    gp = g_prime(rho)
    expected = d3 / gp - 1.5 * (d2 / gp) ** 2
    assert schwarzian(rho) == pytest.approx(expected, abs=1e-6)


def test_schwarzian_affine_and_scaling():
    # affine maps are annihilated
    assert schwarzian_from_derivative(lambda j: 3.0, 0.7) == 0.0
    # u = a*g + c has the same Schwarzian as g
    for rho in (0.3, 2.0):
        scaled = schwarzian_from_derivative(lambda j: 4.0 * g_prime(j), rho)
        assert scaled == pytest.approx(schwarzian(rho), rel=1e-11)
    with pytest.raises(DomainError):
        schwarzian_from_derivative(lambda j: j * 0.0, 1.0)


def test_prefactor_values_and_identity():
    assert f_prefactor(1.0, 0.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert f_prefactor(1.0, 4.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    for rho in (0.05, 0.7, 13.0):
        for tau in (0.0, 3.0, 5.5):
            f = f_prefactor(rho, tau)
            assert f * f * g_prime(rho) * rho**tau == pytest.approx(-1.0, rel=1e-12)


FROZEN_POTENTIALS = [
    (AlgebraClass.I, 3.0, 1.0, 4.0, -1.23),
    (AlgebraClass.II_PLUS, 3.0, 1.0, 4.0, -0.59375),
    (AlgebraClass.III, 3.0, 2.0, 5.0, -1.625),
]


@pytest.mark.parametrize("cls, k, b, tau, expected", FROZEN_POTENTIALS)
def test_algebra_side_matches_frozen_closed_values(cls, k, b, tau, expected):
    p = QesParams(cls, k=k, b=b, tau=tau)
    assert algebra_side_potential(p, 1.0) == pytest.approx(expected, rel=1e-11)


def test_algebra_side_decays_class_ii():
    p = QesParams(AlgebraClass.II_PLUS, k=3.0, b=1.0, tau=4.0)
    assert abs(algebra_side_potential(p, 1e6)) < 1e-10


def test_generic_equals_closed_form():
    params = [
        QesParams(AlgebraClass.I, 3.0, 1.0, 4.0),
        QesParams(AlgebraClass.II_PLUS, 3.0, 1.0, 4.0),
        QesParams(AlgebraClass.III, 2.0, 2.0, 5.0),
    ]
    grid = [10.0 ** (-2 + 4 * i / 19) for i in range(20)]
    for p in params:
        ratios = [generic_wavefunction(p, r) / wavefunction(p, r) for r in grid]
        mean = sum(ratios) / len(ratios)
        assert mean == pytest.approx(1.0, rel=1e-12)
        variance = sum((r - mean) ** 2 for r in ratios) / len(ratios)
        assert variance < 1e-20


def test_generic_b_zero_limit():
    p = QesParams(AlgebraClass.I, k=2.0, b=0.0, tau=3.0)
    rho = 0.8
    g = g_of_rho(rho)
    expected = f_prefactor(rho, 3.0) * (1.0 / math.cosh(g)) ** 1.5
    assert generic_wavefunction(p, rho) == pytest.approx(expected, rel=1e-14)


def test_generic_requires_zero_mode_pairing():
    p = QesParams(AlgebraClass.I, k=2.0, b=1.0, tau=3.0, m=1.0)
    with pytest.raises(ConstraintViolation):
        generic_wavefunction(p, 1.0)
