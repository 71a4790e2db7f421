import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvedwave.hypergeometric import (
    ConvergenceError,
    DomainError,
    HypergeometricParams,
    gauss_2f1,
    gauss_2f1_conditioned,
    gauss_2f1_derivative,
    pochhammer,
    series_coefficients,
    termination_degree,
)
from curvedwave.spectrum import hypergeometric_params_type1


def exact_terminating_sum(a: int, b, c, t) -> Fraction:
    """Finite 2F1 sum in rational arithmetic; ``a`` must be a non-positive integer."""
    b, c, t = Fraction(b), Fraction(c), Fraction(t)
    total = Fraction(0)
    term = Fraction(1)
    for n in range(-a + 1):
        total += term
        term = term * (a + n) * (b + n) * t / ((c + n) * (n + 1))
    return total


def test_pochhammer():
    assert pochhammer(3, 0) == 1
    assert pochhammer(2, 3) == 24
    assert pochhammer(-2, 4) == 0
    assert pochhammer(0.5 + 1j, 2) == pytest.approx((0.5 + 1j) * (1.5 + 1j))


def test_value_at_origin():
    assert gauss_2f1(HypergeometricParams(0.3, 1.7, 2.5), 0.0) == 1.0
    assert gauss_2f1(HypergeometricParams.conjugate(1.0, 3.0, 2.5), 0.0) == 1.0


def test_linear_termination():
    b, c, t = 4.25, 1.5, 3.0
    assert gauss_2f1(HypergeometricParams(-1, b, c), t) == pytest.approx(1 - b / c * t, rel=1e-15)


def test_three_term_example_against_rationals():
    value = gauss_2f1(HypergeometricParams(-2, 3, 1.5), 0.5)
    assert value == pytest.approx(float(exact_terminating_sum(-2, 3, Fraction(3, 2), Fraction(1, 2))), rel=1e-15)


@pytest.mark.parametrize("a", [-1, -3, -6, -10])
def test_contiguous_sums_at_half(a):
    for b, c in ((Fraction(5, 2), Fraction(3, 2)), (Fraction(7), Fraction(9, 2)), (Fraction(-1, 3), Fraction(11, 2))):
        exact = exact_terminating_sum(a, b, c, Fraction(1, 2))
        assert gauss_2f1(HypergeometricParams(a, float(b), float(c)), 0.5) == pytest.approx(float(exact), rel=1e-13)


def test_termination_degree():
    assert termination_degree(HypergeometricParams(-3, 5.5, 2.5)) == 3
    assert termination_degree(HypergeometricParams.conjugate(0.7, 0.2, 1.5)) is None
    assert termination_degree(HypergeometricParams(0.5, 1.5, 2.5)) is None
    assert termination_degree(HypergeometricParams(-2 + 1e-12, 1.0, 2.5)) == 2


@pytest.mark.parametrize("n_r,L", [(0, 1), (1, 0), (3, 2), (5, 7)])
def test_termination_round_trip_from_sphere_levels(n_r, L):
    kt = 1.0 / ((2 * n_r + L) * (2 * n_r + L + 2))
    assert termination_degree(hypergeometric_params_type1(L, kt)) == n_r


def test_terminating_series_allows_large_t():
    assert gauss_2f1(HypergeometricParams(-2, 1.0, 1.5), 5.0) == pytest.approx(
        float(exact_terminating_sum(-2, 1, Fraction(3, 2), 5)), rel=1e-14)


def test_domain_and_convergence_errors():
    with pytest.raises(DomainError):
        gauss_2f1(HypergeometricParams(0.5, 1.5, 2.5), -1.0)
    with pytest.raises(ConvergenceError):
        gauss_2f1(HypergeometricParams(0.5, 1.5, 2.5), 0.999999, max_terms=100)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        HypergeometricParams(1.0, 2.0, -3.0)
    with pytest.raises(ValueError):
        HypergeometricParams(1 + 1j, 2.0, 1.5)
    with pytest.raises(ValueError):
        HypergeometricParams(1 + 1j, 1 + 1j, 1.5, conjugate_pair=True)


def test_conjugate_pair_is_exactly_real():
    params = HypergeometricParams.conjugate(1.0, 2.5, 2.5)
    coeffs = series_coefficients(params, 50)
    assert all(type(c) is float for c in coeffs)
    value = gauss_2f1(params, -0.7)
    assert type(value) is float
    # the same numbers in complex arithmetic carry a rounding-level imaginary part only
    a = complex(params.a)
    term, total = 1 + 0j, 1 + 0j
    for n in range(400):
        term *= (a + n) * (a.conjugate() + n) * -0.7 / ((2.5 + n) * (n + 1))
        total += term
    assert value == pytest.approx(total.real, rel=1e-12)
    assert abs(total.imag) < 1e-15


def test_conditioning_report():
    value, cond = gauss_2f1_conditioned(HypergeometricParams(0.5, 1.5, 2.5), 0.0)
    assert (value, cond) == (1.0, 1.0)
    # large conjugate parameters at t near -1: strong cancellation
    _, cond = gauss_2f1_conditioned(HypergeometricParams.conjugate(1.0, 15.0, 1.5), -0.8)
    assert cond > 1e6


def test_derivative_by_difference():
    params = HypergeometricParams.conjugate(1.5, 0.8, 2.5)
    t, h = -0.4, 1e-5
    fd = (gauss_2f1(params, t + h) - gauss_2f1(params, t - h)) / (2 * h)
    assert gauss_2f1_derivative(params, t) == pytest.approx(fd, rel=1e-9)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.6, 5), st.floats(-0.9, 0.9))
def test_symmetry_in_a_and_b(a, b, c, t):
    first = gauss_2f1(HypergeometricParams(a, b, c), t)
    second = gauss_2f1(HypergeometricParams(b, a, c), t)
    assert first == pytest.approx(second, rel=1e-13, abs=1e-13)


@given(st.floats(0, 4), st.floats(0.01, 4), st.floats(0.6, 5), st.integers(0, 60))
def test_conjugate_coefficients_have_no_imaginary_part(re, im, c, n):
    params = HypergeometricParams.conjugate(re, im, c)
    exact = 1 + 0j
    a = complex(re, im)
    for j in range(n):
        exact *= (a + j) * (a.conjugate() + j) / ((c + j) * (j + 1))
    coeff = series_coefficients(params, n + 1)[n]
    assert type(coeff) is float
    assert abs(exact.imag) <= 1e-15 * max(1.0, abs(exact))
    assert cmath.isclose(coeff, exact.real, rel_tol=1e-12, abs_tol=1e-300)
