"""Bound-state spectra and their thermal occupations.

A :class:`SpectrumModel` is just energies ``E_m`` plus the transition-weight
matrix ``M_mn = q^2 <m|x|n><n|x|m>``; wavefunctions never appear.
Optionally it also carries a signed dipole matrix ``X`` with
``M = X * X`` elementwise, which only the diagonalization oracle needs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np
from scipy.special import expit

from .errors import InputError

_SYMMETRY_TOL = 1e-12


class _ZeroTemperature:
    """Singleton marker for T = 0 (kept distinct from ``beta = inf``)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_TEMPERATURE"

    def __reduce__(self):
        return (_ZeroTemperature, ())


ZERO_TEMPERATURE = _ZeroTemperature()


def is_zero_temperature(beta) -> bool:
    return beta is ZERO_TEMPERATURE


@dataclass(frozen=True)
class Boltzmann:
    """Canonical occupation of a single particle."""


@dataclass(frozen=True)
class Fermi:
    """Grand-canonical fermion occupation with fugacity ``zeta = exp(beta*mu)``."""

    zeta: float

    def __post_init__(self):
        zeta = float(self.zeta)
        if not (np.isfinite(zeta) and zeta > 0):
            raise InputError(f"fugacity must be positive and finite, got {self.zeta!r}")
        object.__setattr__(self, "zeta", zeta)


Statistics = Union[Boltzmann, Fermi]


@dataclass(frozen=True)
class ThermalState:
    """Inverse temperature and occupation statistics."""

    beta: object
    statistics: Statistics = field(default_factory=Boltzmann)

    def __post_init__(self):
        if not is_zero_temperature(self.beta):
            beta = float(self.beta)
            if not (np.isfinite(beta) and beta > 0):
                raise InputError(f"beta must be positive and finite or ZERO_TEMPERATURE, "
                                 f"got {self.beta!r}")
            object.__setattr__(self, "beta", beta)
        if not isinstance(self.statistics, (Boltzmann, Fermi)):
            raise InputError(f"unknown statistics {self.statistics!r}")
        if self.is_fermi and self.zero_temperature:
            raise InputError("Fermi statistics need a finite beta (the fugacity is exp(beta*mu))")

    @property
    def zero_temperature(self) -> bool:
        return is_zero_temperature(self.beta)

    @property
    def is_fermi(self) -> bool:
        return isinstance(self.statistics, Fermi)


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SpectrumModel:
    """Energies and dipole transition weights of one binding potential.

    Parameters
    ----------
    energies : array_like, shape (N,)
        Nondecreasing level energies, ``N >= 2``.
    transition_weights : array_like, shape (N, N)
        Symmetric, nonnegative ``M_mn``.
    dipole : array_like, shape (N, N), optional
        Real symmetric ``X`` with ``X**2 == M``.  Signs are lost in ``M``
        so they must be supplied separately when needed.
    """

    energies: np.ndarray
    transition_weights: np.ndarray
    dipole: np.ndarray | None = None

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        m = np.asarray(self.transition_weights, dtype=float)
        if e.ndim != 1 or e.size < 2:
            raise InputError("energies must be a 1-D sequence with at least two levels")
        if not np.all(np.isfinite(e)):
            raise InputError("energies must be finite")
        if np.any(np.diff(e) < 0):
            raise InputError("energies must be sorted in nondecreasing order")
        n = e.size
        if m.shape != (n, n):
            raise InputError(f"transition_weights must have shape {(n, n)}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InputError("transition_weights must be finite")
        if np.any(m < 0):
            raise InputError("transition_weights must be nonnegative")
        scale = max(float(np.max(np.abs(m))), 1.0)
        if np.max(np.abs(m - m.T)) > _SYMMETRY_TOL * scale:
            raise InputError("transition_weights must be symmetric")
        object.__setattr__(self, "energies", _readonly(e))
        object.__setattr__(self, "transition_weights", _readonly(0.5 * (m + m.T)))
        if self.dipole is not None:
            x = np.asarray(self.dipole, dtype=float)
            if x.shape != (n, n) or np.max(np.abs(x - x.T)) > _SYMMETRY_TOL * scale:
                raise InputError("dipole must be a symmetric matrix matching the spectrum")
            if np.max(np.abs(x * x - m)) > 1e-10 * scale:
                raise InputError("dipole does not square to transition_weights")
            object.__setattr__(self, "dipole", _readonly(0.5 * (x + x.T)))

    @property
    def size(self) -> int:
        return self.energies.size

    @property
    def gaps(self) -> np.ndarray:
        """Matrix ``Omega[m, n] = E_m - E_n``."""
        return self.energies[:, None] - self.energies[None, :]

    @classmethod
    def from_dipole(cls, energies, dipole) -> "SpectrumModel":
        x = np.asarray(dipole, dtype=float)
        return cls(energies, x * x, x)

    def dipole_or_root(self) -> np.ndarray:
        """Signed dipole matrix if known, else the nonnegative root of M.

        Either choice gives the same second-order energies, which depend on
        ``M`` alone.
        """
        if self.dipole is not None:
            return self.dipole
        return np.sqrt(self.transition_weights)


def level_gap(s: SpectrumModel, m: int, n: int) -> float:
    """``Omega_mn = E_m - E_n``."""
    size = s.size
    for i in (m, n):
        if not (-size <= int(i) < size) or int(i) != i:
            raise IndexError(f"level index {i} out of range for {size} levels")
    return float(s.energies[m] - s.energies[n])


def occupation_boltzmann(s: SpectrumModel, beta):
    """Canonical probabilities ``p_m = exp(-beta E_m) / Z``.

    Energies are shifted by ``E_0`` before exponentiation; ``Z`` is
    reported unshifted (it may under/overflow for extreme ``beta``, ``p``
    does not).  At ``ZERO_TEMPERATURE`` the ground level(s) share unit
    probability and ``Z`` is returned as ``nan``.

    Returns
    -------
    p : ndarray
    Z : float
    """
    e = s.energies
    if is_zero_temperature(beta):
        ground = e == e[0]
        return ground / ground.sum(), float("nan")
    beta = float(beta)
    w = np.exp(-beta * (e - e[0]))
    z_shifted = w.sum()
    with np.errstate(over="ignore", under="ignore"):
        z = float(z_shifted * np.exp(-beta * e[0]))
    return w / z_shifted, z


def occupation_fermi(s: SpectrumModel, beta, zeta):
    """Level occupations ``p_n`` and vacancies ``f_n`` of a Fermi system.

    ``p_n = zeta e^{-beta E_n} / (1 + zeta e^{-beta E_n})`` and
    ``f_n = 1 / (1 + zeta e^{-beta E_n})``, both from logistic functions so
    no intermediate overflows.
    """
    beta = float(beta)
    x = np.log(float(zeta)) - beta * s.energies
    return expit(x), expit(-x)


def occupations(s: SpectrumModel, t: ThermalState):
    """Occupation ``p`` and vacancy ``f`` for either statistics.

    For Boltzmann statistics ``f`` is identically one, which makes the
    Fermi formulas reduce to the canonical ones.
    """
    if t.is_fermi:
        return occupation_fermi(s, t.beta, t.statistics.zeta)
    p, _ = occupation_boltzmann(s, t.beta)
    return p, np.ones_like(p)


# --- spectrum files -------------------------------------------------------

def _parse_statistics(obj):
    if obj is None:
        return Boltzmann()
    if isinstance(obj, str):
        obj = {"type": obj}
    kind = str(obj.get("type", "boltzmann")).lower()
    if kind == "boltzmann":
        return Boltzmann()
    if kind == "fermi":
        if "zeta" not in obj:
            raise InputError("fermi statistics need a 'zeta' entry")
        return Fermi(obj["zeta"])
    raise InputError(f"unknown statistics type {kind!r}")


def spectrum_from_dict(data: dict):
    """Build ``(SpectrumModel, ThermalState | None)`` from a parsed file."""
    try:
        energies = data["energies"]
        weights = data["transition_weights"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"spectrum file lacks required key: {exc}") from exc
    model = SpectrumModel(energies, weights, data.get("dipole"))
    thermal = None
    if "beta" in data:
        beta = data["beta"]
        if isinstance(beta, str):
            if beta.lower() != "zero_temperature":
                raise InputError(f"beta must be a number or 'zero_temperature', got {beta!r}")
            beta = ZERO_TEMPERATURE
        thermal = ThermalState(beta, _parse_statistics(data.get("statistics")))
    return model, thermal


def load_spectrum(path):
    """Read a JSON spectrum file.

    Format::

        {"energies": [...], "transition_weights": [[...]],
         "statistics": {"type": "boltzmann" | "fermi", "zeta": number},
         "beta": number | "zero_temperature",
         "dipole": [[...]]}           # optional

    Returns
    -------
    model : SpectrumModel
    thermal : ThermalState or None
        ``None`` if the file carries no ``beta``.
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read spectrum file {path}: {exc}") from exc
    return spectrum_from_dict(data)


def spectrum_to_dict(model: SpectrumModel, thermal: ThermalState | None = None) -> dict:
    out = {
        "energies": model.energies.tolist(),
        "transition_weights": model.transition_weights.tolist(),
    }
    if model.dipole is not None:
        out["dipole"] = model.dipole.tolist()
    if thermal is not None:
        out["beta"] = "zero_temperature" if thermal.zero_temperature else thermal.beta
        if thermal.is_fermi:
            out["statistics"] = {"type": "fermi", "zeta": thermal.statistics.zeta}
        else:
            out["statistics"] = {"type": "boltzmann"}
    return out


def save_spectrum(path, model: SpectrumModel, thermal: ThermalState | None = None):
    Path(path).write_text(json.dumps(spectrum_to_dict(model, thermal), indent=2) + "\n")
