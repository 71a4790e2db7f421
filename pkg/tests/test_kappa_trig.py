import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvedwave.kappa_trig import Curvature, PoleError, antipode, cos_k, sin_k, tan_k

kappas = st.floats(-10, 10, allow_nan=False)
lengths = st.floats(-3, 3, allow_nan=False)


def cosh_series(x, terms=40):
    return sum(x ** (2 * j) / math.factorial(2 * j) for j in range(terms))


def test_flat_values():
    assert cos_k(0.0, 5.0) == 1.0
    assert sin_k(0.0, 3.25) == 3.25
    assert tan_k(0.0, 2.0) == 2.0


def test_unit_sphere_values():
    assert cos_k(1.0, math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert sin_k(1.0, math.pi / 2) == 1.0
    assert tan_k(1.0, math.pi / 4) == pytest.approx(1.0, rel=1e-15)


def test_hyperbolic_cosine_against_series():
    assert cos_k(-1.0, 1.0) == pytest.approx(cosh_series(1.0), rel=1e-15)
    assert cos_k(-1.0, 1.0) == pytest.approx(1.5430806348152437, rel=1e-15)


def test_cubic_term_of_sin_k():
    # sin_k(4, h) = h - 4 h^3 / 6 + O(h^5)
    for h in (1e-2, 5e-3, 2e-3):
        cubic = (sin_k(4.0, h) - h) / h**3
        assert cubic == pytest.approx(-4.0 / 6.0, rel=5 * h * h)


def test_pole():
    with pytest.raises(PoleError):
        tan_k(1.0, math.pi / 2)


def test_curvature_classification():
    assert Curvature(2.0).classification == "spherical"
    assert Curvature(0.0).classification == "flat"
    assert Curvature(-0.1).classification == "hyperbolic"
    with pytest.raises(ValueError):
        Curvature(float("nan"))


def test_arrays_keep_shape():
    x = np.linspace(-1, 1, 7).reshape(7, 1)
    assert cos_k(-2.0, x).shape == (7, 1)
    assert sin_k(0.0, x).shape == (7, 1)


@given(kappas, lengths)
def test_pythagorean_identity(kappa, x):
    c, s = cos_k(kappa, x), sin_k(kappa, x)
    scale = c * c + abs(kappa) * s * s
    assert abs(c * c + kappa * s * s - 1.0) <= 1e-12 * scale


@given(kappas, lengths)
def test_parity(kappa, x):
    assert sin_k(kappa, -x) == -sin_k(kappa, x)
    assert cos_k(kappa, -x) == cos_k(kappa, x)


@given(st.floats(-1e-3, 1e-3), st.floats(-2, 2))
def test_continuity_at_flat(kappa, x):
    u = kappa * x * x
    assert abs(cos_k(kappa, x) - 1.0 + u / 2) <= 0.05 * u * u + 4e-16
    assert abs(sin_k(kappa, x) - x * (1.0 - u / 6)) <= 0.01 * abs(x) * u * u + 4e-16 * abs(x)


@given(st.floats(0.05, 10), st.floats(0, 1))
def test_sphere_reflection_and_period(kappa, frac):
    end = antipode(kappa)
    x = frac * end
    assert sin_k(kappa, end - x) == pytest.approx(sin_k(kappa, x), abs=1e-12)
    period = 2 * end
    assert sin_k(kappa, x + period) == pytest.approx(sin_k(kappa, x), abs=1e-12)


def test_series_branch_is_seamless():
    # just below and above the switch to the Taylor branch
    for kappa in (1.0, -1.0):
        x_lo, x_hi = math.sqrt(0.99e-8), math.sqrt(1.01e-8)
        for x in (x_lo, x_hi):
            ref = math.sin(x) if kappa > 0 else math.sinh(x)
            assert sin_k(kappa, x) == pytest.approx(ref, rel=1e-15)
