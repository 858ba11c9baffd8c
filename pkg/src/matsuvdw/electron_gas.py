"""Uniform electron gas at T = 0: exchange energy and a plasma-cutoff
correlation estimate.

Reduced variables: ``u = k / k_f``.  The mode free energy

    f~(u) = (D/2) [sqrt(1 + a^2) - 1 - a^2/2],   D = c1 mu u,  a = alpha/u

comes from integrating ``ln(1 + A) - A`` over imaginary frequency with
``A(K) = D^2/(K^2 + D^2) a^2``.  Summing modes up to the cutoff ``u0``
(where each particle carries ``hbar w_p / 2`` of zero-point energy)
gives the correlation correction ``f_c`` in closed form.

Energies are in eV and densities in m^-3 unless stated otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .constants import DEFAULT_CONSTANTS, PhysicalConstants, joule_to_ev
from .errors import ConvergenceError, InputError

__all__ = [
    "C1_DEFAULT", "ElectronGasParams", "ElectronGasReport", "derive_basics",
    "density_from_rs", "rs_from_density", "equal_time_structure_factor",
    "sphere_overlap_fraction", "exchange_energy_closed", "exchange_energy_quadrature",
    "mode_free_energy", "mode_free_energy_quadrature", "cutoff_u0", "c2_from_c1",
    "correlation_closed", "correlation_quadrature", "correlation_energy",
    "consistency_derivative_check", "spectral_distribution", "sweep_rs",
]

C1_DEFAULT = math.sqrt(4.0 / 5.0)
_QUAD_EPSREL = 1e-12


def c2_from_c1(c1: float) -> float:
    """``c2 = sqrt(3 / (4 c1))``."""
    return math.sqrt(3.0 / (4.0 * c1))


@dataclass(frozen=True)
class ElectronGasParams:
    """Density (or Wigner-Seitz radius), spin degeneracy and constants.

    Exactly one of `density` and `r_s` must be given.  `c1` sets the
    averaged excitation energy ``D = c1 mu u``; the default is
    ``sqrt(4/5)``.
    """

    density: float | None = None
    r_s: float | None = None
    g: int = 2
    constants: PhysicalConstants = field(default=DEFAULT_CONSTANTS)
    c1: float = C1_DEFAULT

    def __post_init__(self):
        if (self.density is None) == (self.r_s is None):
            raise InputError("give exactly one of density and r_s")
        value = self.density if self.density is not None else self.r_s
        if not (np.isfinite(value) and value > 0):
            raise InputError(f"density / r_s must be positive and finite, got {value!r}")
        if int(self.g) != self.g or self.g < 1:
            raise InputError(f"spin degeneracy must be a positive integer, got {self.g!r}")
        if not self.c1 > 0:
            raise InputError("c1 must be positive")

    @property
    def rho(self) -> float:
        if self.density is not None:
            return float(self.density)
        return density_from_rs(self.r_s, self.constants)


@dataclass(frozen=True)
class ElectronGasReport:
    """Derived quantities for one density (energies in eV, ``k_f`` in 1/m)."""

    density: float
    r_s: float
    g: int
    k_f: float
    hbar_omega_p: float
    mu: float
    alpha: float
    u0: float
    x0: float
    f_ex: float
    f_ex_quadrature: float
    f_c: float
    f_c_quadrature: float
    kinetic_ref: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def density_from_rs(r_s, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """``rho = 3 / (4 pi (r_s a0)^3)``."""
    if not np.all(np.asarray(r_s) > 0):
        raise InputError("r_s must be positive")
    return 3.0 / (4.0 * np.pi * (r_s * constants.bohr_radius) ** 3)


def rs_from_density(rho, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    if not np.all(np.asarray(rho) > 0):
        raise InputError("density must be positive")
    return (3.0 / (4.0 * np.pi * rho)) ** (1.0 / 3.0) / constants.bohr_radius


def derive_basics(p: ElectronGasParams):
    """Fermi wavevector (1/m), plasmon quantum and Fermi energy (eV).

    ``k_f = (6 pi^2 rho / g)^(1/3)``, ``w_p^2 = q^2 rho / (m eps0)``,
    ``mu = (hbar k_f)^2 / 2m``.
    """
    c = p.constants
    rho = p.rho
    k_f = (6.0 * np.pi ** 2 * rho / p.g) ** (1.0 / 3.0)
    omega_p = math.sqrt(c.elementary_charge ** 2 * rho / (c.electron_mass * c.vacuum_permittivity))
    hwp = joule_to_ev(c.hbar * omega_p, c)
    mu = joule_to_ev((c.hbar * k_f) ** 2 / (2.0 * c.electron_mass), c)
    return k_f, hwp, mu


# --- exchange ------------------------------------------------------------

def sphere_overlap_fraction(u):
    """Overlap volume of two unit spheres at center distance `u`, over one sphere's volume."""
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise InputError("u must be non-negative")
    out = np.where(u < 2.0, 1.0 - 0.75 * u + u ** 3 / 16.0, 0.0)
    return out[()] if out.ndim == 0 else out


def equal_time_structure_factor(u):
    """Static structure factor of the ideal Fermi gas, ``g S~(0,k) / rho``.

    ``3u/4 - u^3/16`` below ``u = 2`` and 1 above; the self term has been
    removed so ``S - 1`` is minus the sphere-overlap fraction.
    """
    return 1.0 - sphere_overlap_fraction(u)


def exchange_energy_closed(hbar_omega_p, mu, g: int = 2):
    """Exchange energy per particle, ``-9 (hbar w_p)^2 / (16 g mu)``.

    For ``g = 2`` this is the familiar ``-9 (hbar w_p)^2 / (32 mu)``.
    """
    if mu <= 0:
        raise InputError("mu must be positive")
    return -9.0 * hbar_omega_p ** 2 / (16.0 * g * mu)


def exchange_energy_quadrature(p: ElectronGasParams) -> float:
    """Exchange energy from ``(1/2) int d^3k/(2 pi)^3 v(k) [S(k) - 1]``.

    With ``v(k) = q^2/(eps0 k^2)`` and ``k = u k_f`` the angular and
    radial factors leave a 1-D integral over ``u in [0, 2]``.
    """
    c = p.constants
    k_f, _, _ = derive_basics(p)
    val, err = integrate.quad(lambda u: float(equal_time_structure_factor(u)) - 1.0, 0.0, 2.0,
                              epsabs=0.0, epsrel=_QUAD_EPSREL)
    if not np.isfinite(val) or abs(err) > 1e-9 * abs(val):
        raise ConvergenceError("exchange quadrature did not converge")
    energy = 0.5 * 4.0 * np.pi / (2.0 * np.pi) ** 3 * c.elementary_charge ** 2 \
        * k_f / c.vacuum_permittivity * val
    return float(joule_to_ev(energy, c))


# --- mode free energy and correlation -----------------------------------

def _bracket(a):
    # sqrt(1+a^2) - 1 - a^2/2 without cancellation
    a = np.asarray(a, dtype=float)
    a2 = a * a
    return -a2 * a2 / (2.0 * (1.0 + np.sqrt(1.0 + a2)) ** 2)


def mode_free_energy(u, alpha, mu, c1: float = C1_DEFAULT):
    """``f~ = (c1 mu u / 2) [sqrt(1 + (alpha/u)^2) - 1 - (alpha/u)^2 / 2]``.

    Always non-positive.  Units follow `mu`.
    """
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0):
        raise InputError("u must be positive")
    out = 0.5 * c1 * mu * u * _bracket(alpha / u)
    return out[()] if out.ndim == 0 else out


def mode_free_energy_quadrature(u, alpha, mu, c1: float = C1_DEFAULT) -> float:
    """Direct frequency integral ``(1/2)(1/2 pi) int [ln(1 + A) - A] dK``.

    ``A(K) = D^2/(K^2 + D^2) (alpha/u)^2`` with ``D = c1 mu u``.  The
    integrand is even, so only ``K >= 0`` is integrated; substituting
    ``K = D tan(t)`` maps it to a finite interval.
    """
    d = c1 * mu * u
    a2 = (alpha / u) ** 2

    def integrand(t):
        c2t = math.cos(t) ** 2
        amp = a2 * c2t
        return (math.log1p(amp) - amp) / c2t

    val, err = integrate.quad(integrand, 0.0, 0.5 * math.pi, epsabs=0.0, epsrel=_QUAD_EPSREL,
                              limit=200)
    return float(0.5 * d * val / math.pi)


def cutoff_u0(g: int = 2, c1: float = C1_DEFAULT) -> float:
    """Mode cutoff ``u0 = (g / (c1 c2))^(1/3)``."""
    if g < 1:
        raise InputError("g must be at least 1")
    return (g / (c1 * c2_from_c1(c1))) ** (1.0 / 3.0)


def correlation_closed(hbar_omega_p, x0):
    """Closed-form ``f_c`` for cutoff ``x0 = u0 / alpha``.

    ``(3/16) hbar w_p [(2 + 1/x0^2) sqrt(1 + x0^2) - asinh(x0)/x0^3 - 2 x0 - 2/x0]``.
    Accepts arrays of `x0`.
    """
    x = np.asarray(x0, dtype=float)
    if np.any(x <= 0):
        raise InputError("x0 must be positive")
    root = np.sqrt(1.0 + x * x)
    bracket = (2.0 + 1.0 / x ** 2) * root - np.arcsinh(x) / x ** 3 - 2.0 * x - 2.0 / x
    out = 0.1875 * hbar_omega_p * bracket
    return out[()] if out.ndim == 0 else out


def correlation_quadrature(alpha, mu, u0, g: int = 2, c1: float = C1_DEFAULT) -> float:
    """``f_c = (3/g) int_0^u0 f~(u) u^2 du`` by adaptive quadrature."""
    val, err = integrate.quad(lambda u: float(mode_free_energy(u, alpha, mu, c1)) * u * u,
                              0.0, u0, epsabs=0.0, epsrel=_QUAD_EPSREL, limit=200)
    if not np.isfinite(val):
        raise ConvergenceError("correlation quadrature did not converge")
    return 3.0 / g * val


def correlation_energy(p: ElectronGasParams) -> ElectronGasReport:
    """All derived numbers for one density, including both quadrature checks."""
    k_f, hwp, mu = derive_basics(p)
    c2 = c2_from_c1(p.c1)
    alpha = c2 * hwp / mu
    u0 = cutoff_u0(p.g, p.c1)
    x0 = u0 / alpha
    return ElectronGasReport(
        density=p.rho,
        r_s=float(rs_from_density(p.rho, p.constants)),
        g=int(p.g),
        k_f=k_f,
        hbar_omega_p=hwp,
        mu=mu,
        alpha=alpha,
        u0=u0,
        x0=x0,
        f_ex=exchange_energy_closed(hwp, mu, p.g),
        f_ex_quadrature=exchange_energy_quadrature(p),
        f_c=float(correlation_closed(hwp, x0)),
        f_c_quadrature=correlation_quadrature(alpha, mu, u0, p.g, p.c1),
        kinetic_ref=0.6 * mu,
    )


def consistency_derivative_check(alpha, mu, g: int = 2, c1: float = C1_DEFAULT,
                                 n_points: int = 41, step: float = 1e-5) -> float:
    """Differentiate the closed form against the integrand it came from.

    With ``x0`` replaced by a running ``x``, ``G(x) = x^3 f_c(x) / x0^3``
    must satisfy ``G'(x) = (3/g) alpha^3 x^2 f~(alpha x)``.  Central
    differences are taken at interior grid points of ``[x0/10, 2 x0]``
    (the ends are dropped, where the stencil would leave the grid).

    Returns the maximum relative deviation.
    """
    c2 = c2_from_c1(c1)
    hwp = alpha * mu / c2
    x0 = cutoff_u0(g, c1) / alpha
    xs = np.linspace(0.1 * x0, 2.0 * x0, n_points)[1:-1]

    def big_g(x):
        return x ** 3 * correlation_closed(hwp, x) / x0 ** 3

    deriv = (big_g(xs + step) - big_g(xs - step)) / (2.0 * step)
    target = 3.0 / g * alpha ** 3 * xs ** 2 * mode_free_energy(alpha * xs, alpha, mu, c1)
    return float(np.max(np.abs(deriv - target) / np.abs(target)))


def spectral_distribution(p: ElectronGasParams, u_grid):
    """Energy distribution ``eps_c(u) = 3 f~(u) u^2`` (eV) against ``u/2``.

    Returns ``(u/2, eps_c)`` arrays.  For ``g = 2`` the integral of
    ``eps_c`` over ``u/2`` from 0 to ``u0/2`` is ``f_c``.
    """
    u = np.asarray(u_grid, dtype=float)
    _, hwp, mu = derive_basics(p)
    alpha = c2_from_c1(p.c1) * hwp / mu
    u0 = cutoff_u0(p.g, p.c1)
    if np.any(u <= 0) or np.any(u > u0 * (1 + 1e-12)):
        raise InputError(f"u values must lie in (0, u0={u0:.6g}]")
    return 0.5 * u, 3.0 * mode_free_energy(u, alpha, mu, p.c1) * u * u


def sweep_rs(start: float, stop: float, points: int, g: int = 2,
             constants: PhysicalConstants = DEFAULT_CONSTANTS, c1: float = C1_DEFAULT,
             log: bool = True) -> list[ElectronGasReport]:
    """Reports over ``points`` values of ``r_s`` (log-spaced by default)."""
    if points < 1:
        raise InputError("points must be at least 1")
    grid = np.geomspace(start, stop, points) if log else np.linspace(start, stop, points)
    return [correlation_energy(ElectronGasParams(r_s=float(r), g=g, constants=constants, c1=c1))
            for r in grid]
