"""Invariant suites shared by ``curvedwave verify`` and the acceptance tests.

Each suite returns a list of :class:`Check` records carrying the achieved
value next to the required bound, so a report can be read without rerunning
anything.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .hyperbolic import HyperbolicRadialSpec, hyperbolic_profile, overlap_agreement
from .hypergeometric import gauss_2f1, series_coefficients, termination_degree
from .ode_oracle import radial_operator_residual, shoot_eigenvalues
from .quadrature import normalized_defects, orthogonality_matrix
from .radial_polynomials import radial_profile
from .spectrum import enumerate_levels

SUITES = ("orthogonality", "residuals", "shooting", "hyperbolic")

ORTHOGONALITY_TOL = 1e-10
RESIDUAL_TOL = 1e-6
SHOOTING_TOL = 1e-6
OVERLAP_TOL = 1e-9

ORTHOGONALITY_L = (0, 1, 3, 8)
ORTHOGONALITY_N = tuple(range(14))
SHOOTING_L = (0, 1, 2, 3)
SPHERE_N_MAX = 6
HYPERBOLIC_SAMPLES = 200
HYPERBOLIC_SEED = 20240611


@dataclass
class Check:
    suite: str
    name: str
    achieved: float
    required: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _below(suite, name, achieved, required) -> Check:
    achieved = float(achieved)
    return Check(suite, name, achieved, float(required), bool(achieved < required))


def orthogonality_suite(tol: float = ORTHOGONALITY_TOL, Ls=ORTHOGONALITY_L, ns=ORTHOGONALITY_N,
                        kappa: float = 1.0) -> list[Check]:
    checks = []
    for L in Ls:
        gram = orthogonality_matrix(L, ns, kappa)
        defects = normalized_defects(gram)
        off = defects[~np.eye(len(ns), dtype=bool)]
        checks.append(_below("orthogonality", f"L={L} max off-diagonal", off.max(), tol))
    return checks


def residuals_suite(tol: float = RESIDUAL_TOL, N_max: int = SPHERE_N_MAX, kappa: float = 1.0,
                    points: int = 41, h: float = 1e-5) -> list[Check]:
    """Radial-operator residual of every sphere level up to N_max, plus its h^2 decay."""
    checks = []
    for level in enumerate_levels(N_max, kappa):
        fn = radial_profile(level.n, level.L, kappa)
        grid = np.linspace(1e-3, fn.domain[1] - 1e-3, points)
        coarse = radial_operator_residual(fn, level.energy_sq, grid, h=h)
        name = f"n={level.n} L={level.L}"
        checks.append(_below("residuals", name + " residual", coarse, tol))
        if coarse > 1e-25:
            # halving h must cut a truncation-dominated residual by about 4
            fine = radial_operator_residual(fn, level.energy_sq, grid, h=0.5 * h)
            ratio = coarse / fine
            checks.append(Check("residuals", name + " h^2 ratio", ratio, 4.0, bool(3.0 < ratio < 5.0)))
    return checks


def shooting_suite(tol: float = SHOOTING_TOL, Ls=SHOOTING_L, N_max: int = SPHERE_N_MAX,
                   kappa: float = 1.0) -> list[Check]:
    """Eigenvalues found by shooting against E^2 = kappa N (N + 2), N = n + L <= N_max."""
    checks = []
    top = kappa * N_max * (N_max + 2)
    # the operator is non-negative, so starting below zero catches the E^2 = 0 ground
    # state; stopping halfway to the next level admits nothing above N_max
    window = (-1.5 * kappa, top + 0.5 * kappa * (2 * N_max + 3))
    for L in Ls:
        found = shoot_eigenvalues(L, kappa, window)
        expected = [kappa * N * (N + 2) for N in range(L, N_max + 1)]
        checks.append(Check("shooting", f"L={L} eigenvalue count", float(len(found)), float(len(expected)),
                            len(found) == len(expected)))
        for e in expected:
            # relative error, absolute for the zero ground state
            err = min(abs(f - e) for f in found) / (e or 1.0) if found else math.inf
            checks.append(_below("shooting", f"L={L} E^2={e!r}", err, tol))
    return checks


def hyperbolic_samples(count: int = HYPERBOLIC_SAMPLES, seed: int = HYPERBOLIC_SEED) -> list[tuple]:
    """(L, |kappa_tilde|) pairs, L uniform in 0..8 and |kappa_tilde| log-uniform in [1e-3, 1e3]."""
    rng = np.random.default_rng(seed)
    Ls = rng.integers(0, 9, size=count)
    kts = 10.0 ** rng.uniform(-3.0, 3.0, size=count)
    return [(int(L), float(kt)) for L, kt in zip(Ls, kts)]


def hyperbolic_residual(spec: HyperbolicRadialSpec, points: int = 21) -> float:
    """Residual on an r-grid whose image runs over 0.05 <= |t| <= 3.2, straddling the handoff at 0.8."""
    rk = math.sqrt(-spec.kappa)
    e = math.sqrt(spec.energy_sq)
    lo, hi = (math.asinh(spec.rho_at(t) / e * rk) / rk for t in (0.05, 3.2))
    grid = np.linspace(lo, hi, points)
    fn = hyperbolic_profile(spec, hi + 1.0)
    return radial_operator_residual(fn, spec.energy_sq, grid)


def hyperbolic_suite(tol: float = RESIDUAL_TOL, overlap_tol: float = OVERLAP_TOL,
                     count: int = HYPERBOLIC_SAMPLES) -> list[Check]:
    """Samples are taken in units of the curvature radius (kappa = -1, E^2 = 1/|kt|)."""
    terminated = 0
    complex_values = 0
    worst_overlap = 0.0
    worst_residual = 0.0
    for L, kt in hyperbolic_samples(count):
        spec = HyperbolicRadialSpec(L, -1.0, 1.0 / kt)
        params = spec.params
        if termination_degree(params) is not None:
            terminated += 1
        if params.conjugate_pair:
            coeffs = series_coefficients(params, 30)
            values = coeffs + [gauss_2f1(params, -0.5)]
            complex_values += sum(1 for v in values if type(v) is not float)
        worst_overlap = max(worst_overlap, overlap_agreement(spec))
        worst_residual = max(worst_residual, hyperbolic_residual(spec))
    return [
        Check("hyperbolic", "terminating samples", float(terminated), 0.0, terminated == 0),
        Check("hyperbolic", "non-real conjugate-pair values", float(complex_values), 0.0, complex_values == 0),
        _below("hyperbolic", "max overlap disagreement", worst_overlap, overlap_tol),
        _below("hyperbolic", "max ODE residual", worst_residual, tol),
    ]


def run_suite(name: str, tol: float | None = None) -> list[Check]:
    """Run one suite, or every suite for ``all``; ``tol`` overrides the main tolerance."""
    runners = {
        "orthogonality": orthogonality_suite,
        "residuals": residuals_suite,
        "shooting": shooting_suite,
        "hyperbolic": hyperbolic_suite,
    }
    if name == "all":
        return [c for suite in SUITES for c in run_suite(suite, tol)]
    if name not in runners:
        raise KeyError(name)
    return runners[name]() if tol is None else runners[name](tol=tol)
