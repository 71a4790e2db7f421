"""Discrete spectrum on the sphere and its quantum-number bookkeeping."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .hypergeometric import HypergeometricParams
from .kappa_trig import as_kappa

TYPE_I = "I"
TYPE_II = "II"

LEVEL_CSV_COLUMNS = ("N", "n", "n_r", "L", "type", "energy_over_kappa", "degeneracy_of_N")


@dataclass(frozen=True)
class SphereLevel:
    n_r: int
    L: int
    solution_type: str
    kappa: float = 1.0

    def __post_init__(self):
        if self.n_r < 0 or self.L < 0:
            raise ValueError("quantum numbers must be non-negative")
        if self.solution_type not in (TYPE_I, TYPE_II):
            raise ValueError(f"solution_type must be 'I' or 'II', got {self.solution_type!r}")
        if as_kappa(self.kappa) <= 0:
            raise ValueError("sphere levels need kappa > 0")

    @classmethod
    def from_degree(cls, n: int, L: int, kappa: float = 1.0) -> "SphereLevel":
        n_r, odd = divmod(n, 2)
        return cls(n_r, L, TYPE_II if odd else TYPE_I, kappa)

    @property
    def n(self) -> int:
        return 2 * self.n_r + (self.solution_type == TYPE_II)

    @property
    def N(self) -> int:
        return self.n + self.L

    @property
    def energy_coeff(self) -> int:
        """E^2 / kappa = N (N + 2), an exact integer."""
        return self.N * (self.N + 2)

    @property
    def energy_sq(self) -> float:
        return float(self.kappa) * self.energy_coeff

    @property
    def kappa_tilde(self) -> float:
        """kappa / E^2; infinite for the N = 0 ground state."""
        return math.inf if self.energy_coeff == 0 else 1.0 / self.energy_coeff


@dataclass(frozen=True)
class AdimensionalState:
    rho: float
    kappa_tilde: float

    @property
    def t(self) -> float:
        return self.kappa_tilde * self.rho**2

    @classmethod
    def from_radius(cls, s: float, kappa: float, energy_sq: float) -> "AdimensionalState":
        scale = math.sqrt(energy_sq)
        return cls(scale * s, kappa / energy_sq)


def energy(level: SphereLevel, hbar_sq_over_2m: float = 1.0) -> float:
    return hbar_sq_over_2m * float(level.kappa) * level.energy_coeff


def degeneracy(N: int) -> int:
    """(N + 1)^2 states share the total quantum number N."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return (N + 1) ** 2


def _canonical(a: float, b: float, c: float) -> HypergeometricParams:
    lo, hi = sorted((a, b))
    return HypergeometricParams(lo, hi, c)


def _b_kappa(kappa_tilde: float) -> float:
    if math.isinf(kappa_tilde):
        return 1.0  # N = 0 ground state, E^2 = 0
    return math.sqrt(kappa_tilde * (kappa_tilde + 1.0)) / kappa_tilde


def hypergeometric_params_type1(L: int, kappa_tilde: float) -> HypergeometricParams:
    if kappa_tilde <= 0:
        raise ValueError("kappa_tilde must be positive on the sphere")
    big_b = _b_kappa(kappa_tilde)
    return _canonical(0.5 * ((L + 1) + big_b), 0.5 * ((L + 1) - big_b), L + 1.5)


def hypergeometric_params_type2(L: int, kappa_tilde: float) -> HypergeometricParams:
    if kappa_tilde <= 0:
        raise ValueError("kappa_tilde must be positive on the sphere")
    big_b = _b_kappa(kappa_tilde)
    return _canonical(0.5 * ((L + 2) + big_b), 0.5 * ((L + 2) - big_b), L + 1.5)


def level_params(level: SphereLevel) -> HypergeometricParams:
    build = hypergeometric_params_type1 if level.solution_type == TYPE_I else hypergeometric_params_type2
    return build(level.L, level.kappa_tilde)


def enumerate_levels(N_max: int, kappa: float = 1.0) -> list[SphereLevel]:
    """Every (n, L) with n + L <= N_max, ordered by N then L."""
    if N_max < 0:
        raise ValueError("N_max must be non-negative")
    return [SphereLevel.from_degree(N - L, L, kappa) for N in range(N_max + 1) for L in range(N + 1)]


def level_rows(levels, hbar_sq_over_2m: float = 1.0) -> list[dict]:
    rows = []
    for lv in levels:
        rows.append({
            "N": lv.N,
            "n": lv.n,
            "n_r": lv.n_r,
            "L": lv.L,
            "type": lv.solution_type,
            "energy_over_kappa": lv.energy_coeff,
            "degeneracy_of_N": degeneracy(lv.N),
            "energy": energy(lv, hbar_sq_over_2m),
        })
    return rows


def levels_to_csv(levels, hbar_sq_over_2m: float = 1.0) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(LEVEL_CSV_COLUMNS) + ["energy"], lineterminator="\n")
    writer.writeheader()
    for row in level_rows(levels, hbar_sq_over_2m):
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()
