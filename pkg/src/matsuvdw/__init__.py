"""Induced van der Waals free energies from Matsubara sums.

The core is a two-system coupling ``psi q^2 x_a x_b`` between spectra
given by level energies and transition weights.  Its free energy is
computed as a Matsubara sum over the polarizabilities, in closed
quadruple-sum form, and from thermally averaged second-order
perturbation theory.  A diagonalization oracle certifies the last.
Companion modules give a T = 0 electron-gas correlation estimate and
contact-energy estimates for atoms.
"""
from .errors import (ConvergenceError, CouplingTooStrongError, InputError, MatsuvdwError,
                     NumericalError, ResonanceError, TrackingError)
from .constants import DEFAULT_CONSTANTS, PhysicalConstants, load_constants
from .spectrum import (ZERO_TEMPERATURE, Boltzmann, Fermi, SpectrumModel, ThermalState,
                       level_gap, load_spectrum, occupation_boltzmann, occupation_fermi,
                       save_spectrum)
from .matsubara import (MatsubaraControl, frequencies, lorentzian_sum_closed,
                        lorentzian_sum_truncated, product_sum_closed, product_sum_truncated)
from .polarizability import (dynamic_polarizability, dynamic_polarizability_rearranged,
                             imaginary_time_correlation, polarizability_function)
from .pair_free_energy import (PairCoupling, compare_free_energies, free_energy_closed,
                               free_energy_closed_fermi, free_energy_log,
                               free_energy_second_order_matsubara)
from .perturbation import (diagonalization_oracle, second_order_shift, second_order_shift_fermi,
                           thermal_free_energy)
from .electron_gas import ElectronGasParams, ElectronGasReport, correlation_energy
from .atoms import alpha_from_susceptibility, lj_contact_energy, vdw_contact_energy

__version__ = "0.1.0"

__all__ = [
    "MatsuvdwError", "InputError", "NumericalError", "ConvergenceError",
    "CouplingTooStrongError", "ResonanceError", "TrackingError",
    "PhysicalConstants", "DEFAULT_CONSTANTS", "load_constants",
    "ZERO_TEMPERATURE", "Boltzmann", "Fermi", "ThermalState", "SpectrumModel", "level_gap",
    "occupation_boltzmann", "occupation_fermi", "load_spectrum", "save_spectrum",
    "MatsubaraControl", "frequencies", "lorentzian_sum_closed", "lorentzian_sum_truncated",
    "product_sum_closed", "product_sum_truncated",
    "imaginary_time_correlation", "dynamic_polarizability", "dynamic_polarizability_rearranged",
    "polarizability_function",
    "PairCoupling", "free_energy_log", "free_energy_second_order_matsubara",
    "free_energy_closed", "free_energy_closed_fermi", "compare_free_energies",
    "second_order_shift", "second_order_shift_fermi", "thermal_free_energy",
    "diagonalization_oracle",
    "ElectronGasParams", "ElectronGasReport", "correlation_energy",
    "vdw_contact_energy", "alpha_from_susceptibility", "lj_contact_energy",
]
