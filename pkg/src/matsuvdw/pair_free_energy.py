"""Induced free energy of two systems coupled by ``psi q^2 x_a x_b``.

Three routes that must agree at second order in ``psi``:

* :func:`free_energy_log` - ``(1/2 beta) sum_K ln(1 - psi^2 alpha_a alpha_b)``,
  all orders in the static coupling;
* :func:`free_energy_second_order_matsubara` - the ``psi^2`` term of the
  above, summed over the Matsubara grid with an analytic tail;
* :func:`free_energy_closed` / :func:`free_energy_closed_fermi` - the
  frequency sum done analytically, leaving a quadruple sum over levels.

For unequal systems ``(alpha psi)^2`` generalizes to ``alpha_a alpha_b psi^2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import _kernels
from .errors import CouplingTooStrongError, InputError, ResonanceError
from .matsubara import (DEFAULT_CONTROL, DEGENERACY_SWITCH, MatsubaraControl,
                        adaptive_sum, product_sum_closed, series_log1m, series_mul)
from .polarizability import Polarizability, polarizability_function
from .spectrum import SpectrumModel, ThermalState, occupations

__all__ = [
    "PairCoupling", "ClosedForm", "free_energy_log", "free_energy_second_order_matsubara",
    "free_energy_closed", "free_energy_closed_fermi", "closed_form", "compare_free_energies",
]


@dataclass(frozen=True, eq=False)
class PairCoupling:
    """Two spectra, a static coupling and a common temperature.

    ``thermal_b`` overrides the statistics of system b (e.g. a different
    fugacity); its ``beta`` must equal ``thermal.beta``.
    """

    psi: float
    system_a: SpectrumModel
    system_b: SpectrumModel
    thermal: ThermalState
    thermal_b: ThermalState | None = None

    def __post_init__(self):
        psi = float(self.psi)
        if not np.isfinite(psi):
            raise InputError("psi must be finite")
        object.__setattr__(self, "psi", psi)
        if self.thermal_b is not None:
            tb = self.thermal_b
            same = (tb.zero_temperature and self.thermal.zero_temperature) or (
                not tb.zero_temperature and not self.thermal.zero_temperature
                and tb.beta == self.thermal.beta)
            if not same:
                raise InputError("both systems must share the same beta")

    @property
    def beta(self):
        return self.thermal.beta

    @property
    def state_b(self) -> ThermalState:
        return self.thermal if self.thermal_b is None else self.thermal_b

    def polarizabilities(self) -> tuple[Polarizability, Polarizability]:
        return (polarizability_function(self.system_a, self.thermal),
                polarizability_function(self.system_b, self.state_b))

    def static_couplings(self) -> tuple[float, float]:
        """``|alpha_a(0) psi|`` and ``|alpha_b(0) psi|``."""
        aa, ab = self.polarizabilities()
        return abs(float(aa(0.0)) * self.psi), abs(float(ab(0.0)) * self.psi)


def _kernel_args(pol: Polarizability):
    return pol.weights, pol.omegas, pol.static_extra


def free_energy_second_order_matsubara(p: PairCoupling,
                                       control: MatsubaraControl = DEFAULT_CONTROL) -> float:
    """``-(psi^2 / 2 beta) sum_K alpha_a(K) alpha_b(K)``.

    Finite ``beta``: explicit sum with analytic tail.  ``ZERO_TEMPERATURE``:
    the sum becomes an integral, done pair by pair with the T = 0 product
    identity.
    """
    pa, pb = p.polarizabilities()
    psi2 = p.psi * p.psi
    if p.thermal.zero_temperature:
        if pa.weights.size == 0 or pb.weights.size == 0:
            return 0.0
        ps = product_sum_closed(pa.omegas[:, None], pb.omegas[None, :], p.beta)
        return float(-0.5 * psi2 * np.sum(pa.weights[:, None] * pb.weights[None, :] * ps))
    beta = p.beta
    order = control.tail_orders
    coeffs = series_mul(pa.coefficients(order), pb.coefficients(order), order)
    args = (*_kernel_args(pa), *_kernel_args(pb), beta, psi2)

    def partial(n):
        total, _ = _kernels.pair_partial_sum(*args, n, 0)
        return total

    res = adaptive_sum(partial, coeffs, beta, max(pa.omega_max, pb.omega_max), control)
    return -0.5 * psi2 * res.value / beta


def free_energy_log(p: PairCoupling, control: MatsubaraControl = DEFAULT_CONTROL) -> float:
    """``(1/2 beta) sum_K ln(1 - psi^2 alpha_a(K) alpha_b(K))``.

    Raises
    ------
    CouplingTooStrongError
        If the log argument is non-positive anywhere on the grid.
    """
    pa, pb = p.polarizabilities()
    psi2 = p.psi * p.psi
    if psi2 == 0.0:
        return 0.0
    if p.thermal.zero_temperature:
        return _free_energy_log_zero_t(pa, pb, psi2)
    beta = p.beta
    order = control.tail_orders
    x = psi2 * series_mul(pa.coefficients(order), pb.coefficients(order), order)
    coeffs = series_log1m(x, order)
    args = (*_kernel_args(pa), *_kernel_args(pb), beta, psi2)

    def partial(n):
        total, bad = _kernels.pair_partial_sum(*args, n, 1)
        if bad >= 0:
            raise CouplingTooStrongError(
                f"1 - psi^2 alpha_a alpha_b <= 0 at Matsubara index n = {bad}")
        return total

    res = adaptive_sum(partial, coeffs, beta, max(pa.omega_max, pb.omega_max), control)
    return 0.5 * res.value / beta


def _free_energy_log_zero_t(pa, pb, psi2):
    # sum_K -> (beta / 2 pi) int dK, even integrand
    if psi2 * float(pa(0.0)) * float(pb(0.0)) >= 1.0:
        raise CouplingTooStrongError("1 - psi^2 alpha_a(0) alpha_b(0) <= 0")

    def integrand(k):
        return np.log1p(-psi2 * float(pa(k)) * float(pb(k)))

    val, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=0.0, epsrel=1e-12, limit=400)
    return val / (2.0 * np.pi)


@dataclass(frozen=True)
class ClosedForm:
    """Closed quadruple-sum result with its limit-branch count."""

    value: float
    n_limit: int


def _pair_table(s: SpectrumModel, t: ThermalState):
    p, f = occupations(s, t)
    return np.ascontiguousarray(f[:, None] * p[None, :])


def closed_form(p: PairCoupling) -> ClosedForm:
    """Quadruple-sum free energy for any statistics, with diagnostics.

    Evaluates the symmetric form

        -psi^2/4 sum Ma_mn Mb_kl [ (A_mn B_kl - A_nm B_lk)/(Wa_mn + Wb_kl)
                                  + (A_mn B_lk - A_nm B_kl)/(Wa_mn - Wb_kl) ]

    with ``A_mn = f_m p_n``.  Resonant denominators take their analytic
    limit and are counted in ``n_limit``.  At ``ZERO_TEMPERATURE`` the
    equivalent single-bracket form ``-psi^2 sum p_n p_l M M/(W + W)`` is
    used, where a resonance is an error.
    """
    a, b = p.system_a, p.system_b
    psi2 = p.psi * p.psi
    if p.thermal.zero_temperature:
        return ClosedForm(_closed_zero_t(a, b, p.thermal, psi2), 0)
    aa = _pair_table(a, p.thermal)
    ab = _pair_table(b, p.state_b)
    total, n_limit = _kernels.quad_bracket_sum(
        aa, np.ascontiguousarray(a.gaps), np.ascontiguousarray(a.transition_weights),
        ab, np.ascontiguousarray(b.gaps), np.ascontiguousarray(b.transition_weights),
        float(p.beta), DEGENERACY_SWITCH)
    return ClosedForm(-0.25 * psi2 * total, int(n_limit))


def _closed_zero_t(a, b, t, psi2):
    pa, _ = occupations(a, t)
    pb, _ = occupations(b, t)
    # axes (m, n, k, l)
    w = (a.transition_weights * pa[None, :])[:, :, None, None] * \
        (b.transition_weights * pb[None, :])[None, None, :, :]
    d = a.gaps[:, :, None, None] + b.gaps[None, None, :, :]
    bad = (w != 0.0) & (d == 0.0)
    if np.any(bad):
        raise ResonanceError(np.argwhere(bad)[0])
    return float(-psi2 * np.sum(np.where(w != 0.0, w / np.where(d == 0.0, 1.0, d), 0.0)))


def free_energy_closed(p: PairCoupling) -> float:
    """Closed quadruple-sum free energy for Boltzmann statistics."""
    if p.thermal.is_fermi or p.state_b.is_fermi:
        raise InputError("free_energy_closed needs Boltzmann statistics; "
                         "use free_energy_closed_fermi")
    return closed_form(p).value


def free_energy_closed_fermi(p: PairCoupling) -> float:
    """Closed quadruple-sum free energy with vacancy factors ``f_m p_n f_k p_l``."""
    if not (p.thermal.is_fermi and p.state_b.is_fermi):
        raise InputError("free_energy_closed_fermi needs Fermi statistics for both systems")
    return closed_form(p).value


def compare_free_energies(p: PairCoupling, control: MatsubaraControl = DEFAULT_CONTROL,
                          include_log: bool = True) -> dict:
    """All free-energy routes plus pairwise relative deviations."""
    closed = closed_form(p)
    second = free_energy_second_order_matsubara(p, control)
    values = {"closed": closed.value, "matsubara_second_order": second}
    if include_log:
        values["matsubara_log"] = free_energy_log(p, control)

    def rel(x, y):
        scale = max(abs(x), abs(y))
        return 0.0 if scale == 0.0 else abs(x - y) / scale

    keys = list(values)
    deviations = {f"{keys[i]}-{keys[j]}": rel(values[keys[i]], values[keys[j]])
                  for i in range(len(keys)) for j in range(i + 1, len(keys))}
    return {"values": values, "relative_deviations": deviations,
            "limit_branch_count": closed.n_limit}
