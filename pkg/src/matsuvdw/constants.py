"""Physical constants and the few unit conversions the package needs.

Defaults are the 3-4 significant figure values used throughout the
electron-gas and atom estimates, so printed reference numbers come out
digit for digit.  Override them with a JSON file whose keys are the
field names of :class:`PhysicalConstants`, either explicitly through
:func:`load_constants` or via the ``MATSUVDW_CONSTANTS`` environment
variable (see :func:`constants_from_env`).

The pair-interaction modules (spectrum, polarizability, matsubara,
pair_free_energy, perturbation) do not use this module at all: they work
in reduced units where energies are in an arbitrary unit and transition
weights in an arbitrary squared-dipole unit, with the coupling chosen so
that ``alpha * psi`` is dimensionless.
"""
from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError

ENV_VAR = "MATSUVDW_CONSTANTS"


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants.  All fields must be strictly positive."""

    electron_mass: float = 9.11e-31           # kg
    elementary_charge: float = 1.602e-19      # A s
    vacuum_permittivity: float = 8.854e-12    # A s / (V m)
    hbar: float = 1.054e-34                   # J s
    boltzmann: float = 1.38e-23               # J / K
    bohr_radius: float = 5.29e-11             # m
    ev_per_joule_inverse: float = 1.602e-19   # J per eV

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InputError(f"constant {f.name!r} must be a number, got {value!r}")
            if not value > 0:
                raise InputError(f"constant {f.name!r} must be positive, got {value!r}")
            object.__setattr__(self, f.name, float(value))

    def replace(self, **changes) -> "PhysicalConstants":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT_CONSTANTS = PhysicalConstants()


def joule_to_ev(e, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Convert an energy (scalar or array) from J to eV."""
    return e / constants.ev_per_joule_inverse


def ev_to_joule(e, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Convert an energy (scalar or array) from eV to J."""
    return e * constants.ev_per_joule_inverse


def load_constants(path, base: PhysicalConstants = DEFAULT_CONSTANTS) -> PhysicalConstants:
    """Read a JSON object of overrides and apply it on top of `base`.

    Unknown keys are rejected so that a typo does not silently leave a
    default in place.
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read constants file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"constants file {path} must hold a JSON object")
    known = {f.name for f in dataclasses.fields(PhysicalConstants)}
    unknown = set(data) - known
    if unknown:
        raise InputError(f"unknown constant(s) in {path}: {sorted(unknown)}")
    return base.replace(**data)


def constants_from_env(environ=None) -> PhysicalConstants:
    """Constants from the file named by ``MATSUVDW_CONSTANTS``, else defaults."""
    environ = os.environ if environ is None else environ
    path = environ.get(ENV_VAR)
    if not path:
        return DEFAULT_CONSTANTS
    return load_constants(path)
