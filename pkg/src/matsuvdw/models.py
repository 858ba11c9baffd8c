"""Model spectra, seeded random instances and the normal-mode oracle.

Random instances draw a real symmetric dipole matrix ``X`` first and set
``M = X * X``, so the diagonalization oracle and the ``M``-only formulas
see the same system.  The generator is numpy's PCG64 seeded through
``numpy.random.default_rng(seed)``.
"""
from __future__ import annotations

import numpy as np

from .errors import InputError
from .pair_free_energy import PairCoupling
from .polarizability import polarizability_function
from .spectrum import Boltzmann, Fermi, SpectrumModel, ThermalState

PRNG_NAME = "numpy.random.PCG64 via default_rng(seed)"


def two_level(omega: float, weight: float) -> SpectrumModel:
    """Levels ``0, omega`` with a single transition weight."""
    x = np.sqrt(weight)
    return SpectrumModel.from_dipole([0.0, omega], [[0.0, x], [x, 0.0]])


def harmonic_oscillator(n_levels: int, omega: float, ground_weight: float) -> SpectrumModel:
    """Truncated oscillator: ``E_n = n omega``, ``M_{n,n+1} = (n+1) M_01``.

    With ``M_01 = ground_weight`` the untruncated static polarizability is
    ``2 M_01 / omega``.
    """
    if n_levels < 2:
        raise InputError("need at least two oscillator levels")
    x = np.zeros((n_levels, n_levels))
    n = np.arange(n_levels - 1)
    x[n, n + 1] = x[n + 1, n] = np.sqrt((n + 1) * ground_weight)
    return SpectrumModel.from_dipole(omega * np.arange(n_levels), x)


def oscillator_free_energy(omega, beta) -> float:
    """``(1/beta) ln(2 sinh(beta omega / 2))`` for one quantum oscillator."""
    x = 0.5 * beta * omega
    # ln(2 sinh x) = x + ln(1 - e^{-2x})
    return float((x + np.log(-np.expm1(-2.0 * x))) / beta)


def normal_mode_free_energy(omega0, alpha0_psi, beta) -> float:
    """Exact coupling free energy of two identical bilinearly coupled oscillators.

    The normal modes are ``omega_pm = omega0 sqrt(1 +- alpha(0) psi)``;
    the result is ``F(omega_+) + F(omega_-) - 2 F(omega0)``.
    """
    if abs(alpha0_psi) >= 1.0:
        raise InputError("|alpha(0) psi| must be below 1 for a stable coupled oscillator")
    w_plus = omega0 * np.sqrt(1.0 + alpha0_psi)
    w_minus = omega0 * np.sqrt(1.0 - alpha0_psi)
    return (oscillator_free_energy(w_plus, beta) + oscillator_free_energy(w_minus, beta)
            - 2.0 * oscillator_free_energy(omega0, beta))


def random_spectrum(rng, n_levels: int, gap_range=(0.2, 2.0)) -> SpectrumModel:
    """Random nondegenerate spectrum with a zero-diagonal Gaussian dipole matrix."""
    gaps = rng.uniform(*gap_range, size=n_levels - 1)
    energies = np.concatenate([[0.0], np.cumsum(gaps)])
    x = rng.normal(size=(n_levels, n_levels))
    x = np.triu(x, 1)
    x = x + x.T
    return SpectrumModel.from_dipole(energies, x)


def random_pair(rng, statistics: str = "boltzmann", max_levels: int = 5,
                beta_range=(0.1, 10.0), max_static_coupling: float = 0.1) -> PairCoupling:
    """Random coupled pair with ``|alpha(0) psi| <= max_static_coupling``.

    ``beta`` is log-uniform in `beta_range`; Fermi fugacities are
    log-uniform in ``[0.1, 10]``.
    """
    na = int(rng.integers(2, max_levels + 1))
    nb = int(rng.integers(2, max_levels + 1))
    a = random_spectrum(rng, na)
    b = random_spectrum(rng, nb)
    beta = float(np.exp(rng.uniform(*np.log(beta_range))))
    if statistics == "boltzmann":
        ta = tb = ThermalState(beta, Boltzmann())
    elif statistics == "fermi":
        ta = ThermalState(beta, Fermi(float(np.exp(rng.uniform(np.log(0.1), np.log(10.0))))))
        tb = ThermalState(beta, Fermi(float(np.exp(rng.uniform(np.log(0.1), np.log(10.0))))))
    else:
        raise InputError(f"unknown statistics {statistics!r}")
    alpha_max = max(float(polarizability_function(a, ta)(0.0)),
                    float(polarizability_function(b, tb)(0.0)))
    psi = max_static_coupling * rng.uniform(0.1, 1.0) / alpha_max
    psi *= 1.0 if rng.random() < 0.5 else -1.0
    return PairCoupling(psi, a, b, ta, tb)
