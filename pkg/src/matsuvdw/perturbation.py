"""Second-order Rayleigh-Schroedinger shifts and a diagonalization oracle.

The shift of product state ``|n l>`` is

    dE_nl = -psi^2 sum_{(m,k) != (n,l)} v_m v_k Ma_mn Mb_kl / (Wa_mn + Wb_kl)

with ``v = 1`` for single particles and ``v = f`` (vacancies) when only
empty levels may be reached.  The first-order term ``(m,k) = (n,l)`` is
taken to vanish.  Thermal averages of these shifts give the free energy
to order ``psi^2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from . import _kernels
from .errors import InputError, ResonanceError, TrackingError
from .spectrum import SpectrumModel, ThermalState, occupations

__all__ = [
    "shift_table", "second_order_shift", "second_order_shift_fermi",
    "thermal_free_energy", "OracleResult", "oracle_coupling", "diagonalization_oracle",
]

RESONANCE_RTOL = 1e-12


def shift_table(a: SpectrumModel, b: SpectrumModel, psi, vacancies=None) -> np.ndarray:
    """All second-order shifts ``dE[n, l]`` at once.

    Parameters
    ----------
    vacancies : tuple of arrays, optional
        ``(f_a, f_b)``; omitted means all ones.

    Raises
    ------
    ResonanceError
        If any denominator vanishes with nonzero weight.
    """
    if vacancies is None:
        va, vb = np.ones(a.size), np.ones(b.size)
    else:
        va, vb = (np.ascontiguousarray(v, dtype=float) for v in vacancies)
        if va.shape != (a.size,) or vb.shape != (b.size,):
            raise InputError("vacancy arrays must match the spectra")
    table, res = _kernels.shift_table(
        va, np.ascontiguousarray(a.gaps), np.ascontiguousarray(a.transition_weights),
        vb, np.ascontiguousarray(b.gaps), np.ascontiguousarray(b.transition_weights),
        RESONANCE_RTOL)
    if res[0] >= 0:
        raise ResonanceError(res)
    return -float(psi) ** 2 * table


def _check_index(s, i):
    if not (0 <= int(i) < s.size) or int(i) != i:
        raise IndexError(f"level index {i} out of range for {s.size} levels")


def second_order_shift(a: SpectrumModel, b: SpectrumModel, psi, n: int, l: int) -> float:
    """Shift of product state ``|n l>`` to order ``psi^2``."""
    _check_index(a, n)
    _check_index(b, l)
    # restrict to column n / l: one row of the full table
    return float(_single_shift(a, b, psi, n, l, np.ones(a.size), np.ones(b.size)))


def second_order_shift_fermi(a: SpectrumModel, b: SpectrumModel, psi, n: int, l: int,
                             vacancies) -> float:
    """Shift of ``|n l>`` when only vacant levels (weights ``f_m f_k``) are reachable."""
    _check_index(a, n)
    _check_index(b, l)
    fa, fb = (np.asarray(v, dtype=float) for v in vacancies)
    return float(_single_shift(a, b, psi, n, l, fa, fb))


def _single_shift(a, b, psi, n, l, fa, fb):
    w = (fa * a.transition_weights[:, n])[:, None] * (fb * b.transition_weights[:, l])[None, :]
    w[n, l] = 0.0
    d = a.gaps[:, n][:, None] + b.gaps[:, l][None, :]
    scale = max(np.max(np.abs(a.gaps)) + np.max(np.abs(b.gaps)), 1e-300)
    bad = (w != 0.0) & (np.abs(d) <= RESONANCE_RTOL * scale)
    if np.any(bad):
        m, k = np.argwhere(bad)[0]
        raise ResonanceError((m, n, k, l))
    safe = np.where(w != 0.0, d, 1.0)
    return -float(psi) ** 2 * np.sum(w / safe)


def thermal_free_energy(a: SpectrumModel, b: SpectrumModel, psi, thermal,
                        thermal_b: ThermalState | None = None) -> float:
    """Thermal average of second-order shifts.

    Boltzmann: ``sum_nl p_n p_l dE_nl`` with canonical ``p``.  Fermi:
    same sum with level occupations and vacancy-restricted shifts.  A bare
    number for `thermal` is read as a Boltzmann ``beta``.
    """
    if not isinstance(thermal, ThermalState):
        thermal = ThermalState(thermal)
    tb = thermal if thermal_b is None else thermal_b
    if thermal.is_fermi != tb.is_fermi:
        raise InputError("both systems must use the same statistics")
    pa, fa = occupations(a, thermal)
    pb, fb = occupations(b, tb)
    vac = (fa, fb) if thermal.is_fermi else None
    table = shift_table(a, b, psi, vac)
    return float(pa @ table @ pb)


@dataclass(frozen=True)
class OracleResult:
    """Quadratic coefficients ``c_nl`` with ``E_nl(psi) = E_n + E_l + c_nl psi^2 + O(psi^4)``."""

    coefficients: np.ndarray
    coefficients_half: np.ndarray
    psi: float

    @property
    def richardson_change(self) -> float:
        """Max relative change of the coefficients when ``psi`` is halved again."""
        c, h = self.coefficients, self.coefficients_half
        return float(np.max(np.abs(c - h) / np.maximum(np.abs(c), 1e-300)))


def _level_shifts(e0, coupling, h, order, gap):
    """Shifts ``E_i(h) - E_i(0)`` of the tracked eigenstates.

    Each shift is the Rayleigh quotient of ``H - E_i`` in its eigenvector,
    ``sum_j (E_j - E_i) v_j^2 + h v.C.v``.  The ``j = i`` term vanishes
    exactly, so rounding is relative to the shift rather than to ``|H|``.
    """
    evals, vecs = linalg.eigh(np.diag(e0) + h * coupling)
    if np.max(np.abs(evals - e0[order])) >= 0.5 * gap:
        raise TrackingError(
            f"coupling {h:g} moves levels by more than half the minimum gap {gap:g}")
    v = vecs[:, np.argsort(order)]          # column i belongs to product state i
    if np.any(np.argmax(np.abs(v), axis=0) != np.arange(e0.size)):
        raise TrackingError(f"eigenvectors at coupling {h:g} cannot be matched to product states")
    de = e0[:, None] - e0[None, :]
    num = np.sum(de * v * v, axis=0) + h * np.einsum("ji,jk,ki->i", v, coupling, v)
    return num / np.sum(v * v, axis=0)


def _quadratic_coefficients(e0, coupling, psi, levels, order, gap):
    table = []
    for j in range(levels):
        h = psi / 2 ** j
        # (E(h) + E(-h))/2 has no odd orders; those survive when the
        # dipole matrices are not parity-restricted
        even = 0.5 * (_level_shifts(e0, coupling, h, order, gap)
                      + _level_shifts(e0, coupling, -h, order, gap))
        table.append(even / (h * h))
    # S(h)/h^2 = c2 + c4 h^2 + c6 h^4 + ...; eliminate one power per sweep
    for k in range(1, levels):
        table = [(4 ** k * table[i + 1] - table[i]) / (4 ** k - 1)
                 for i in range(len(table) - 1)]
    return table[0]


def oracle_coupling(a: SpectrumModel, b: SpectrumModel, strength: float = 0.05) -> float:
    """Coupling whose matrix elements are `strength` times the smallest product gap."""
    e0 = np.sort(np.add.outer(a.energies, b.energies).ravel())
    gap = float(np.min(np.diff(e0)))
    norm = np.linalg.norm(a.dipole_or_root(), 2) * np.linalg.norm(b.dipole_or_root(), 2)
    if norm == 0.0:
        raise InputError("both systems need a nonzero dipole matrix")
    return strength * gap / norm


def diagonalization_oracle(a: SpectrumModel, b: SpectrumModel,
                           psi_small: float | None = None, levels: int = 3) -> OracleResult:
    """Second-order coefficients from exact diagonalization.

    Builds ``H = diag(E_n + E_l) + psi X_a (x) X_b`` in the product basis
    and takes ``(E(h) + E(-h))/2`` at ``h = psi, psi/2, ...`` (`levels`
    couplings).  Richardson extrapolation then removes the ``psi^4`` term
    (and ``psi^6`` for three levels).  A second extraction starting from
    ``psi/2`` is kept for the consistency check.  Without `psi_small` the
    coupling comes from :func:`oracle_coupling`.

    Returns
    -------
    OracleResult
        ``coefficients[n, l]`` pairs with ``second_order_shift(..., n, l) / psi^2``.

    Raises
    ------
    TrackingError
        Degenerate product spectrum, or a coupling large enough to reorder
        levels.
    """
    if a.size * b.size > 400:
        raise InputError("product basis larger than 400 states")
    if levels < 2:
        raise InputError("Richardson extraction needs at least two couplings")
    e0 = np.add.outer(a.energies, b.energies).ravel()
    order = np.argsort(e0, kind="stable")
    e0_sorted = e0[order]
    scale = max(float(np.max(np.abs(e0))), 1.0)
    if e0_sorted.size > 1 and np.min(np.diff(e0_sorted)) <= 1e-9 * scale:
        raise TrackingError("degenerate product spectrum: eigenvalues cannot be tracked")
    psi = oracle_coupling(a, b) if psi_small is None else float(psi_small)
    if psi == 0.0:
        raise InputError("psi_small must be nonzero")
    gap = np.min(np.diff(e0_sorted)) if e0_sorted.size > 1 else np.inf
    coupling = np.kron(a.dipole_or_root(), b.dipole_or_root())
    full = _quadratic_coefficients(e0, coupling, psi, levels, order, gap)
    half = _quadratic_coefficients(e0, coupling, 0.5 * psi, levels, order, gap)
    shape = (a.size, b.size)
    return OracleResult(full.reshape(shape), half.reshape(shape), psi)
