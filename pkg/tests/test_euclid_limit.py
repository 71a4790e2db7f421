import math

import mpmath
import numpy as np
import pytest

from curvedwave.euclid_limit import (
    InvalidSpecError,
    LimitSequenceSpec,
    contracted_profile,
    convergence_report,
    double_factorial_odd,
    hemisphere,
    leading_coefficient,
    limit_curvature,
    spherical_bessel_j,
)

N_VALUES = (20, 24, 32, 40)


def test_bessel_examples():
    assert spherical_bessel_j(0, 0.0) == 1.0
    assert spherical_bessel_j(0, math.pi) == pytest.approx(0.0, abs=1e-16)
    x = 0.1
    # x^3/105 with the next two series terms
    assert spherical_bessel_j(3, x) == pytest.approx(x**3 / 105 * (1 - x**2 / 18 + x**4 / 792), rel=1e-12)


@pytest.mark.parametrize("L", [0, 1, 3, 7, 20, 40])
def test_bessel_against_mpmath(L):
    x = np.concatenate([np.linspace(1e-4, 2e-3, 5), np.linspace(0.01, 60.0, 97)])
    ours = spherical_bessel_j(L, x)
    ref = np.array([float(mpmath.sqrt(mpmath.pi / (2 * v)) * mpmath.besselj(L + 0.5, v)) for v in x])
    tiny = np.abs(ref) < 1e-280
    assert np.all(np.abs(ours[~tiny] - ref[~tiny]) <= 1e-12 * np.maximum(np.abs(ref[~tiny]), 1e-3 * np.abs(ref[~tiny]).max()))


def test_double_factorial():
    assert [double_factorial_odd(L) for L in range(5)] == [1, 3, 15, 105, 945]


def test_limit_curvature_fixes_energy():
    for n in N_VALUES:
        for L in (0, 3):
            kappa = limit_curvature(n, L, 10.0)
            assert kappa * (n + L) * (n + L + 2) == pytest.approx(100.0, rel=1e-15)


def test_degenerate_member():
    fn = contracted_profile(0, 0, 10.0)
    assert np.all(fn(np.linspace(0, 3, 5)) == 1.0)


@pytest.mark.parametrize("L", [0, 3])
def test_leading_coefficient(L):
    k = 10.0
    target = k**L / double_factorial_odd(L)
    for n in N_VALUES:
        fn = contracted_profile(n, L, k)
        assert leading_coefficient(fn) == pytest.approx(target, rel=1e-8)
        # the raw ratio at r = 1e-4 still carries the -(k r)^2 / (2 (2L + 3)) correction
        raw = fn(1e-4) / 1e-4**L
        assert raw / target - 1 == pytest.approx(-(k * 1e-4) ** 2 / (2 * (2 * L + 3)), rel=0.05)


@pytest.mark.parametrize("L", [0, 3])
def test_profiles_track_bessel_near_origin(L):
    fn = contracted_profile(40, L, 10.0)
    r = np.array([1e-4, 1e-3, 1e-2])
    assert np.allclose(fn(r) / spherical_bessel_j(L, 10.0 * r), 1.0, rtol=1e-5)


@pytest.mark.parametrize("L", [0, 3])
def test_distances_decrease(L):
    r_max = 0.9 * hemisphere(limit_curvature(20, L, 10.0))
    report = convergence_report(LimitSequenceSpec(L, 10.0, N_VALUES, r_max))
    assert report.decreasing
    report = convergence_report(LimitSequenceSpec(L, 10.0, N_VALUES, 1.4))
    assert report.decreasing


def test_report_csv():
    report = convergence_report(LimitSequenceSpec(0, 10.0, (20, 24), 1.0), points=200)
    lines = report.to_csv().splitlines()
    assert lines[0] == "L,k,n,kappa_n,sup_distance"
    assert len(lines) == 3
    assert float(lines[1].split(",")[4]) == report.distances[20]


def test_invalid_specs():
    with pytest.raises(InvalidSpecError):
        LimitSequenceSpec(0, 10.0, (20,), 1e3)
    with pytest.raises(InvalidSpecError):
        LimitSequenceSpec(0, 10.0, (80,), 1.0)
    with pytest.raises(InvalidSpecError):
        LimitSequenceSpec(0, -1.0, (20,), 1.0)
    with pytest.raises(InvalidSpecError):
        LimitSequenceSpec(0, 10.0, (0,), 1.0)
    assert LimitSequenceSpec(0, 10.0, (80,), 1.0, allow_large_n=True).n_values == (80,)
