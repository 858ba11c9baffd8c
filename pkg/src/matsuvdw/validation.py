"""Seeded random-instance checks shared by the CLI and the test suite.

Instances come from ``numpy.random.default_rng(seed)``, so a seed fixes
the instance set on every platform numpy supports.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .models import PRNG_NAME, random_pair, random_spectrum
from .pair_free_energy import closed_form, free_energy_second_order_matsubara
from .perturbation import diagonalization_oracle, shift_table, thermal_free_energy

__all__ = ["CheckResult", "PRNG_NAME", "relative_deviation", "equivalence_suite",
           "oracle_suite", "nondegenerate_pair"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    instances: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def relative_deviation(x, y) -> float:
    scale = max(abs(x), abs(y))
    return 0.0 if scale == 0.0 else abs(x - y) / scale


def equivalence_suite(instances: int, seed: int, statistics: str = "boltzmann",
                      tolerance: float = 1e-8) -> list[CheckResult]:
    """Closed form vs Matsubara second order vs thermal perturbation theory."""
    rng = np.random.default_rng(seed)
    worst = {"closed-matsubara": 0.0, "closed-perturbation": 0.0, "matsubara-perturbation": 0.0}
    for _ in range(instances):
        p = random_pair(rng, statistics)
        closed = closed_form(p).value
        matsu = free_energy_second_order_matsubara(p)
        pert = thermal_free_energy(p.system_a, p.system_b, p.psi, p.thermal, p.thermal_b)
        worst["closed-matsubara"] = max(worst["closed-matsubara"], relative_deviation(closed, matsu))
        worst["closed-perturbation"] = max(worst["closed-perturbation"],
                                           relative_deviation(closed, pert))
        worst["matsubara-perturbation"] = max(worst["matsubara-perturbation"],
                                              relative_deviation(matsu, pert))
    return [CheckResult(f"{statistics}:{k}", instances, v, tolerance) for k, v in worst.items()]


def nondegenerate_pair(rng, max_product: int = 100, min_gap: float = 0.1):
    """Random spectra whose product spectrum has all gaps above `min_gap`."""
    while True:
        na = int(rng.integers(2, 6))
        nb = int(rng.integers(2, max(2, min(5, max_product // na)) + 1))
        a = random_spectrum(rng, na)
        b = random_spectrum(rng, nb)
        e0 = np.sort(np.add.outer(a.energies, b.energies).ravel())
        if na * nb <= max_product and np.min(np.diff(e0)) >= min_gap:
            return a, b


def oracle_suite(instances: int, seed: int, tolerance: float = 1e-6) -> list[CheckResult]:
    """Second-order shifts vs diagonalization, per product state."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    richardson = 0.0
    for _ in range(instances):
        a, b = nondegenerate_pair(rng)
        oracle = diagonalization_oracle(a, b)
        table = shift_table(a, b, 1.0)
        dev = np.abs(oracle.coefficients - table) / np.maximum(np.abs(table), 1e-300)
        worst = max(worst, float(np.max(dev)))
        richardson = max(richardson, oracle.richardson_change)
    return [CheckResult("oracle:shift-vs-diagonalization", instances, worst, tolerance),
            CheckResult("oracle:richardson-consistency", instances, richardson, tolerance)]
