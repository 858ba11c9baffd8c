"""Imaginary-time dipole correlation and the Matsubara-frequency polarizability.

``alpha(K) = sum_mn (p_n - p_m) M_mn W_mn / (W_mn^2 + K^2)`` with
``W_mn = E_m - E_n``.  The same expression holds for Boltzmann and Fermi
occupations once ``p`` is taken from the right statistics.

Pairs with ``W_mn = 0`` (including the diagonal) vanish for ``K != 0``.
At ``K = 0`` they enter through the limit ``(p_n - p_m)/W_mn -> beta p_n f_n``
(``f_n = 1`` for Boltzmann), the classical Curie-like term.  Those pairs
are counted in :attr:`Polarizability.n_degenerate`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InputError
from .matsubara import lorentzian_coefficients
from .spectrum import SpectrumModel, ThermalState, occupations

__all__ = [
    "Polarizability", "pair_weights", "polarizability_function",
    "dynamic_polarizability", "dynamic_polarizability_rearranged",
    "imaginary_time_correlation", "static_polarizability_ground",
]


def pair_weights(s: SpectrumModel, t: ThermalState):
    """Occupation differences ``D[m, n] = p_n - p_m`` and degenerate limits.

    Near-degenerate pairs use ``2 sqrt(w_n w_m) sinh(beta W_mn / 2)`` with
    ``w = f p``, which avoids cancellation in ``p_n - p_m``.

    Returns
    -------
    diff : ndarray (N, N)
    limit : ndarray (N, N)
        ``lim (p_n - p_m)/W_mn`` for pairs with ``W_mn = 0``; zero elsewhere.
    """
    p, f = occupations(s, t)
    omega = s.gaps
    degenerate = omega == 0.0
    if t.zero_temperature:
        diff = p[None, :] - p[:, None]
        curie = degenerate & (p[None, :] > 0) & (s.transition_weights > 0)
        if np.any(curie):
            m, n = np.argwhere(curie)[0]
            raise InputError(
                f"static polarizability diverges at T=0: degenerate occupied pair ({m}, {n}) "
                "with nonzero transition weight")
        return diff, np.zeros_like(diff)
    beta = t.beta
    w = f * p
    root = np.sqrt(w[None, :] * w[:, None])
    x = beta * omega
    close = np.abs(x) < 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        diff = np.where(close, 2.0 * root * np.sinh(0.5 * x), p[None, :] - p[:, None])
    limit = np.where(degenerate, beta * w[None, :] * np.ones_like(omega), 0.0)
    return diff, limit


@dataclass(frozen=True, eq=False)
class Polarizability:
    """``alpha(K)`` as a reusable closure over precomputed pair tables.

    ``alpha(K) = sum_j weights_j omegas_j / (omegas_j^2 + K^2)
    + [K == 0] static_extra``.
    """

    weights: np.ndarray
    omegas: np.ndarray
    static_extra: float
    n_degenerate: int
    beta: object

    def __call__(self, k):
        k = np.asarray(k, dtype=float)
        out = _kernels.alpha_on_grid(self.weights, self.omegas, self.static_extra, k)
        return out[()] if np.ndim(out) == 0 else out

    @property
    def omega_max(self) -> float:
        return float(np.max(np.abs(self.omegas))) if self.omegas.size else 0.0

    @property
    def high_frequency_moment(self) -> float:
        """``lim K^2 alpha(K) = sum_j weights_j omegas_j``."""
        return float(np.sum(self.weights * self.omegas))

    def coefficients(self, order: int) -> np.ndarray:
        """Expansion of ``alpha`` in powers of ``1/K^2`` (for tail sums)."""
        return lorentzian_coefficients(self.weights, self.omegas, order)


def polarizability_function(s: SpectrumModel, t: ThermalState,
                            rearranged: bool = False) -> Polarizability:
    """Precompute ``alpha(K)`` for a spectrum at a thermal state.

    With ``rearranged=True`` the nondegenerate weights are
    ``2 p_n M_mn`` instead of ``(p_n - p_m) M_mn``; the two agree after
    summing over ``(m, n)`` because ``M`` is symmetric and ``W`` is
    antisymmetric.
    """
    diff, limit = pair_weights(s, t)
    omega = s.gaps
    m = s.transition_weights
    nondeg = (omega != 0.0) & (m != 0.0)
    if rearranged:
        p, _ = occupations(s, t)
        pair_w = 2.0 * p[None, :] * m
    else:
        pair_w = diff * m
    degenerate = (omega == 0.0) & (m != 0.0)
    static_extra = float(np.sum(limit * m))
    return Polarizability(
        weights=np.ascontiguousarray(pair_w[nondeg]),
        omegas=np.ascontiguousarray(omega[nondeg]),
        static_extra=static_extra,
        n_degenerate=int(np.count_nonzero(degenerate & (limit != 0.0))),
        beta=t.beta,
    )


def dynamic_polarizability(s: SpectrumModel, t: ThermalState, k):
    """``alpha(K)`` from occupation differences; scalar or array ``K``."""
    return polarizability_function(s, t)(k)


def dynamic_polarizability_rearranged(s: SpectrumModel, t: ThermalState, k):
    """``alpha(K) = 2 sum_mn p_n M_mn W_mn / (W_mn^2 + K^2)``."""
    return polarizability_function(s, t, rearranged=True)(k)


def static_polarizability_ground(s: SpectrumModel) -> float:
    """``2 sum_m M_m0 / (E_m - E_0)`` over excited levels (T = 0, K = 0)."""
    om = s.energies - s.energies[0]
    mask = om > 0
    return float(2.0 * np.sum(s.transition_weights[mask, 0] / om[mask]))


def imaginary_time_correlation(s: SpectrumModel, beta, lam):
    """``g(lambda) = sum_mn p_m M_mn exp(lambda W_mn)``, Boltzmann statistics.

    Evaluated as ``sum M_mn exp(-(beta-lambda)(E_m-E_0) - lambda (E_n-E_0)) / Z'``
    so every exponent is non-positive.
    """
    beta = float(beta)
    if not (np.isfinite(beta) and beta > 0):
        raise InputError("imaginary_time_correlation needs a finite positive beta")
    lam_arr = np.asarray(lam, dtype=float)
    if np.any(lam_arr < 0) or np.any(lam_arr > beta):
        raise InputError(f"lambda must lie in [0, beta={beta}]")
    e = s.energies - s.energies[0]
    z_shift = np.sum(np.exp(-beta * e))
    lam_flat = lam_arr.reshape(-1, 1, 1)
    expo = -(beta - lam_flat) * e[None, :, None] - lam_flat * e[None, None, :]
    g = np.sum(s.transition_weights[None] * np.exp(expo), axis=(1, 2)) / z_shift
    g = g.reshape(lam_arr.shape)
    return g[()] if g.ndim == 0 else g
