import math

import numpy as np
import pytest

from curvedwave.euclid_limit import spherical_bessel_j
from curvedwave.ode_oracle import (
    NoEigenvalueError,
    RadialFunction,
    default_grid,
    radial_operator_residual,
    shoot_eigenvalues,
)
from curvedwave.radial_polynomials import radial_profile


def test_constant_profile_has_zero_residual():
    fn = radial_profile(0, 0, 1.0)
    assert radial_operator_residual(fn, 0.0, default_grid(fn)) < 1e-9


def test_sphere_profile_residual_and_order():
    fn = radial_profile(3, 2, 1.0)
    grid = default_grid(fn)
    coarse = radial_operator_residual(fn, 35.0, grid)
    fine = radial_operator_residual(fn, 35.0, grid, h=5e-6)
    assert coarse < 1e-6
    assert coarse / fine == pytest.approx(4.0, rel=0.05)


def test_wrong_energy_is_detected():
    fn = radial_profile(3, 2, 1.0)
    assert radial_operator_residual(fn, 36.0, default_grid(fn)) > 1e-3


def test_flat_bessel_residual():
    k = 3.0
    fn = RadialFunction(lambda r: spherical_bessel_j(1, k * r), (0.0, math.inf), 1, 0.0)
    grid = np.linspace(0.05, 6.0, 101)
    assert radial_operator_residual(fn, k * k, grid) < 1e-6


def test_shooting_finds_the_spectrum():
    assert shoot_eigenvalues(0, 1.0, (0.5, 40.0)) == pytest.approx([3, 8, 15, 24, 35], rel=1e-8)
    assert shoot_eigenvalues(2, 1.0, (0.5, 40.0)) == pytest.approx([8, 15, 24, 35], rel=1e-8)


def test_shooting_scales_with_curvature():
    base = shoot_eigenvalues(1, 1.0, (0.5, 30.0))
    for kappa in (2.5, 4.0):
        scaled = shoot_eigenvalues(1, kappa, (0.5 * kappa, 30.0 * kappa))
        assert [s / b for s, b in zip(scaled, base)] == pytest.approx([kappa] * len(base), rel=1e-6)


def test_empty_window():
    with pytest.raises(NoEigenvalueError):
        shoot_eigenvalues(0, 1.0, (3.5, 7.5))
    with pytest.raises(ValueError):
        shoot_eigenvalues(0, -1.0, (0.5, 10.0))
