"""Bosonic Matsubara grids, closed-form Lorentzian sums and truncated sums.

Truncated sums are completed with an analytic tail: any summand that is a
combination of Lorentzians ``w / (w^2 + K^2)`` has an expansion in
``t = 1/K^2`` and the remainder of each power over ``|n| > n_max`` is a
Hurwitz zeta value,

    sum_{|n| > N} K_n^{-2s} = 2 (beta / 2 pi)^{2s} zeta(2s, N + 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import zeta as hurwitz_zeta

from . import _kernels
from .errors import ConvergenceError, InputError
from .spectrum import is_zero_temperature

# |beta (w1 - w2)| below this switches sinh(x)/x to its Taylor series
DEGENERACY_SWITCH = 1e-4


@dataclass(frozen=True)
class MatsubaraControl:
    """Truncation settings for sums over Matsubara frequencies.

    Parameters
    ----------
    n_max : int
        Starting truncation order; the grid is ``|n| <= n_max``.
    tail_tolerance : float
        Target relative size of the last retained tail term.
    tail_orders : int
        Number of powers of ``1/K^2`` in the tail expansion.
    max_refinements : int
        How many times adaptive sums may double ``n_max``.
    """

    n_max: int = 1024
    tail_tolerance: float = 1e-9
    tail_orders: int = 6
    max_refinements: int = 12

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise InputError(f"n_max must be a positive integer, got {self.n_max!r}")
        if not self.tail_tolerance > 0:
            raise InputError("tail_tolerance must be positive")
        if self.tail_orders < 1:
            raise InputError("tail_orders must be at least 1")
        object.__setattr__(self, "n_max", int(self.n_max))


DEFAULT_CONTROL = MatsubaraControl()


@dataclass(frozen=True)
class MatsubaraSum:
    """Result of a tail-corrected sum (without any 1/beta prefactor)."""

    value: float
    n_max: int
    partial: float
    tail: float
    tail_error: float


def frequencies(beta, n_max: int) -> np.ndarray:
    """``K_n = 2 pi n / beta`` for ``n = -n_max .. n_max``."""
    beta = float(beta)
    if not beta > 0:
        raise InputError("beta must be positive")
    return 2.0 * np.pi * np.arange(-int(n_max), int(n_max) + 1) / beta


# --- closed forms ---------------------------------------------------------

def lorentzian_sum_closed(omega, beta):
    """``(1/beta) sum_K w/(w^2+K^2) = coth(beta w / 2) / 2``.

    Accepts arrays.  At ``ZERO_TEMPERATURE`` the result is ``sign(w)/2``.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega == 0):
        raise InputError("omega = 0 is a pole of the Lorentzian sum")
    if is_zero_temperature(beta):
        out = 0.5 * np.sign(omega)
    else:
        out = 0.5 / np.tanh(0.5 * float(beta) * omega)
    return out[()] if out.ndim == 0 else out


def _shc(x):
    # sinh(x)/x near zero; x is tiny here
    x2 = x * x
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0


def product_sum_closed(omega1, omega2, beta):
    """``(1/beta) sum_K [w1/(w1^2+K^2)] [w2/(w2^2+K^2)]`` in closed form.

    Evaluates

        [sinh(b(w1+w2)/2)/(w1+w2) + sinh(b(w1-w2)/2)/(w1-w2)]
        / (4 sinh(b w1/2) sinh(b w2/2))

    after factoring out ``exp(b(|w1|+|w2|)/2)`` so large ``beta`` cannot
    overflow.  The removable singularity at ``|w1| = |w2|`` uses a
    three-term series of ``sinh(x)/x`` when ``|beta (|w1|-|w2|)| < 1e-4``.
    The value is odd in each argument.  At ``ZERO_TEMPERATURE`` it is
    ``sign(w1 w2) / (2 (|w1| + |w2|))``.
    """
    w1 = np.asarray(omega1, dtype=float)
    w2 = np.asarray(omega2, dtype=float)
    if np.any(w1 == 0) or np.any(w2 == 0):
        raise InputError("omega = 0 is a pole of the product sum")
    sign = np.sign(w1) * np.sign(w2)
    a1 = np.abs(w1)
    a2 = np.abs(w2)
    if is_zero_temperature(beta):
        out = sign / (2.0 * (a1 + a2))
        return out[()] if out.ndim == 0 else out
    beta = float(beta)
    x1 = 0.5 * beta * a1
    x2 = 0.5 * beta * a2
    # 1 - exp(-2x) for each factor
    den = (-np.expm1(-2.0 * x1)) * (-np.expm1(-2.0 * x2))
    plus = (-np.expm1(-2.0 * (x1 + x2))) / (2.0 * (a1 + a2))
    diff = a1 - a2
    d = x1 - x2
    near = np.abs(beta * diff) < DEGENERACY_SWITCH
    safe_diff = np.where(near, 1.0, diff)
    minus_far = 0.5 * (np.exp(-2.0 * x2) - np.exp(-2.0 * x1)) / safe_diff
    minus_near = 0.5 * beta * _shc(d) * np.exp(-(x1 + x2))
    minus = np.where(near, minus_near, minus_far)
    out = sign * (plus + minus) / den
    return out[()] if out.ndim == 0 else out


# --- power series in t = 1/K^2 -------------------------------------------

def lorentzian_coefficients(weights, omegas, order: int) -> np.ndarray:
    """Expansion of ``sum_j w_j W_j/(W_j^2 + K^2)`` in ``t = 1/K^2``.

    Returns ``c`` with ``c[s]`` the coefficient of ``t^s`` (``c[0] = 0``).
    """
    w = np.asarray(weights, dtype=float)
    o = np.asarray(omegas, dtype=float)
    c = np.zeros(order + 1)
    for s in range(1, order + 1):
        c[s] = (-1.0) ** (s - 1) * np.sum(w * o ** (2 * s - 1))
    return c


def series_mul(a, b, order: int) -> np.ndarray:
    return np.convolve(a, b)[: order + 1]


def series_log1m(x, order: int) -> np.ndarray:
    """Series of ``ln(1 - x)`` for ``x`` with zero constant term."""
    out = np.zeros(order + 1)
    power = np.zeros(order + 1)
    power[0] = 1.0
    for r in range(1, order + 1):
        power = series_mul(power, x, order)
        if not np.any(power):
            break
        out -= power / r
    return out


def series_tail(coeffs, beta, n_max: int):
    """Sum of ``sum_s c_s K^{-2s}`` over ``|n| > n_max``.

    Returns
    -------
    tail : float
    last : float
        Magnitude of the highest-order contribution, used as error estimate.
    """
    beta = float(beta)
    scale = beta / (2.0 * np.pi)
    tail = 0.0
    last = 0.0
    for s in range(1, len(coeffs)):
        if coeffs[s] == 0.0:
            continue
        term = 2.0 * coeffs[s] * scale ** (2 * s) * float(hurwitz_zeta(2 * s, n_max + 1))
        tail += term
        last = abs(term)
    return tail, last


def safe_n_max(n_max: int, beta, omega_max) -> int:
    """Raise ``n_max`` until ``K_n`` exceeds ``4 |omega|_max``.

    Below that the 1/K^2 expansion of the tail does not converge usefully.
    """
    need = math.ceil(4.0 * float(omega_max) * float(beta) / (2.0 * np.pi))
    return max(int(n_max), need, 1)


def adaptive_sum(partial: Callable[[int], float], coeffs, beta, omega_max,
                 control: MatsubaraControl = DEFAULT_CONTROL) -> MatsubaraSum:
    """Tail-corrected sum, doubling ``n_max`` until the tail error is small.

    `partial(n)` must return the sum over ``|n'| <= n``; `coeffs` is the
    ``1/K^2`` expansion of the summand.
    """
    n = safe_n_max(control.n_max, beta, omega_max)
    for _ in range(control.max_refinements + 1):
        head = partial(n)
        tail, err = series_tail(coeffs, beta, n)
        total = head + tail
        if err <= control.tail_tolerance * abs(total) or err == 0.0:
            return MatsubaraSum(total, n, head, tail, err)
        n *= 2
    raise ConvergenceError(
        f"Matsubara sum not converged: tail error {err:.3e} vs |sum| {abs(total):.3e} "
        f"at n_max={n // 2}")


# --- truncated single sums -----------------------------------------------

def lorentzian_sum_truncated(omega, beta, control: MatsubaraControl = DEFAULT_CONTROL,
                             include_tail: bool = True) -> float:
    """``(1/beta) sum_{|n|<=n_max} w/(w^2+K_n^2)`` plus the analytic tail.

    The tail is expanded to ``control.tail_orders`` powers of ``1/K^2``;
    the leading power alone is the familiar ``w beta / (2 pi^2 n_max)``
    estimate.  Requires ``K_{n_max+1} > |w|``.
    """
    omega = float(omega)
    beta = float(beta)
    if omega == 0.0:
        raise InputError("omega = 0 is a pole of the Lorentzian sum")
    n = control.n_max
    head = _kernels.lorentzian_partial_sum(omega, beta, n)
    if not include_tail:
        return head / beta
    if 2.0 * np.pi * (n + 1) / beta <= abs(omega):
        raise InputError("n_max too small for the tail expansion: need K_{n_max+1} > |omega|")
    coeffs = lorentzian_coefficients([1.0], [omega], control.tail_orders)
    tail, _ = series_tail(coeffs, beta, n)
    return (head + tail) / beta


def product_sum_truncated(omega1, omega2, beta, control: MatsubaraControl = DEFAULT_CONTROL,
                          include_tail: bool = True) -> float:
    """Explicit-sum counterpart of :func:`product_sum_closed`."""
    w1 = float(omega1)
    w2 = float(omega2)
    beta = float(beta)
    if w1 == 0.0 or w2 == 0.0:
        raise InputError("omega = 0 is a pole of the product sum")
    n = control.n_max
    head = _kernels.product_partial_sum(w1, w2, beta, n)
    if not include_tail:
        return head / beta
    if 2.0 * np.pi * (n + 1) / beta <= max(abs(w1), abs(w2)):
        raise InputError("n_max too small for the tail expansion")
    order = control.tail_orders
    c1 = lorentzian_coefficients([1.0], [w1], order)
    c2 = lorentzian_coefficients([1.0], [w2], order)
    tail, _ = series_tail(series_mul(c1, c2, order), beta, n)
    return (head + tail) / beta
