"""Order-of-magnitude van der Waals estimates for a pair of atoms at contact.

Two routes: the zero-temperature oscillator-pair result with a
susceptibility-based static polarizability, and the attractive part of a
Lennard-Jones potential scaled from the critical temperature.  Defaults
describe a noble-gas-like fluid (argon for the Lennard-Jones route).
"""
from __future__ import annotations

import math

from .constants import DEFAULT_CONSTANTS, PhysicalConstants, joule_to_ev
from .errors import InputError

__all__ = [
    "DEFAULT_ALPHA_RATIO", "DEFAULT_HBAR_OMEGA0_EV", "DEFAULT_EPS_MINUS_1",
    "DEFAULT_RHO_SIGMA3", "DEFAULT_TC_K", "DEFAULT_LJ_RATIO",
    "vdw_contact_energy", "alpha_from_susceptibility", "lj_contact_energy",
]

DEFAULT_ALPHA_RATIO = 0.20       # alpha(0) / sigma^3
DEFAULT_HBAR_OMEGA0_EV = 1.5
DEFAULT_EPS_MINUS_1 = 1.0
DEFAULT_RHO_SIGMA3 = 0.4
DEFAULT_TC_K = 151.0             # argon
DEFAULT_LJ_RATIO = 0.8           # eps_LJ / (k_B T_c)


def _nonneg(name, value):
    if not (math.isfinite(value) and value >= 0):
        raise InputError(f"{name} must be finite and non-negative, got {value!r}")


def vdw_contact_energy(alpha0_over_sigma3: float = DEFAULT_ALPHA_RATIO,
                       hbar_omega0: float = DEFAULT_HBAR_OMEGA0_EV,
                       r_over_sigma: float = 1.0) -> float:
    """``V = -(3/4) hbar w0 (alpha(0)/sigma^3)^2 / (R/sigma)^6``, in the unit of `hbar_omega0`."""
    _nonneg("alpha0_over_sigma3", alpha0_over_sigma3)
    _nonneg("hbar_omega0", hbar_omega0)
    if not r_over_sigma > 0:
        raise InputError("R/sigma must be positive")
    return -0.75 * hbar_omega0 * alpha0_over_sigma3 ** 2 / r_over_sigma ** 6


def alpha_from_susceptibility(eps_minus_1: float = DEFAULT_EPS_MINUS_1,
                              rho_sigma3: float = DEFAULT_RHO_SIGMA3) -> float:
    """``alpha(0)/sigma^3 = (eps - 1) / (4 pi rho sigma^3)`` (Gaussian units, dilute fluid)."""
    _nonneg("eps_minus_1", eps_minus_1)
    if not rho_sigma3 > 0:
        raise InputError("rho sigma^3 must be positive")
    return eps_minus_1 / (4.0 * math.pi * rho_sigma3)


def lj_contact_energy(tc: float = DEFAULT_TC_K, ratio: float = DEFAULT_LJ_RATIO,
                      constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Attractive Lennard-Jones term at contact, ``-4 eps_LJ`` in eV.

    ``eps_LJ = ratio * k_B * T_c``.
    """
    if not tc > 0:
        raise InputError("critical temperature must be positive")
    _nonneg("ratio", ratio)
    return -4.0 * float(joule_to_ev(ratio * constants.boltzmann * tc, constants))
