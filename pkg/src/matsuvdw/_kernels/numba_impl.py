"""Loop kernels compiled with numba; same contracts as ``numpy_impl``.

Reductions run in a fixed sequential order so results are reproducible
run to run (they differ from the numpy path only at rounding level).
"""
import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def _shc_series(y):
    y2 = y * y
    return 1.0 + y2 / 6.0 + y2 * y2 / 120.0


@njit(cache=True)
def lorentzian_partial_sum(omega, beta, n_max):
    acc = 0.0
    w2 = omega * omega
    for n in range(n_max, 0, -1):
        k = TWO_PI * n / beta
        acc += omega / (w2 + k * k)
    return 1.0 / omega + 2.0 * acc


@njit(cache=True)
def product_partial_sum(omega1, omega2, beta, n_max):
    acc = 0.0
    a2 = omega1 * omega1
    b2 = omega2 * omega2
    for n in range(n_max, 0, -1):
        k = TWO_PI * n / beta
        k2 = k * k
        acc += (omega1 / (a2 + k2)) * (omega2 / (b2 + k2))
    return 1.0 / (omega1 * omega2) + 2.0 * acc


@njit(cache=True)
def _alpha_point(w, omega, static_extra, k):
    k2 = k * k
    acc = 0.0
    for j in range(w.shape[0]):
        acc += w[j] * omega[j] / (omega[j] * omega[j] + k2)
    if k == 0.0:
        acc += static_extra
    return acc


@njit(cache=True)
def _alpha_flat(w, omega, static_extra, k):
    out = np.empty(k.shape[0])
    for i in range(k.shape[0]):
        out[i] = _alpha_point(w, omega, static_extra, k[i])
    return out


def alpha_on_grid(w, omega, static_extra, k):
    k = np.asarray(k, dtype=float)
    out = _alpha_flat(np.ascontiguousarray(w, dtype=np.float64),
                      np.ascontiguousarray(omega, dtype=np.float64),
                      float(static_extra), np.ascontiguousarray(k.reshape(-1)))
    return out.reshape(k.shape)


@njit(cache=True)
def pair_partial_sum(wa, oa, sa, wb, ob, sb, beta, psi2, n_max, log_mode):
    acc = 0.0
    for n in range(n_max, -1, -1):
        k = TWO_PI * n / beta
        x = _alpha_point(wa, oa, sa, k) * _alpha_point(wb, ob, sb, k)
        if log_mode:
            if 1.0 - psi2 * x <= 0.0:
                return np.nan, n
            v = math.log1p(-psi2 * x)
        else:
            v = x
        if n == 0:
            acc += v
        else:
            acc += 2.0 * v
    return acc, -1


@njit(cache=True)
def quad_bracket_sum(aa, oa, ma, ab, ob, mb, beta, thresh):
    n_a = aa.shape[0]
    n_b = ab.shape[0]
    total = 0.0
    n_limit = 0
    for m in range(n_a):
        for n in range(n_a):
            wa = ma[m, n]
            if wa == 0.0:
                continue
            a_mn = aa[m, n]
            a_nm = aa[n, m]
            ra = math.sqrt(a_mn * a_nm)
            o1 = oa[m, n]
            inner = 0.0
            for k in range(n_b):
                for l in range(n_b):
                    wb = mb[k, l]
                    if wb == 0.0:
                        continue
                    b_kl = ab[k, l]
                    b_lk = ab[l, k]
                    o2 = ob[k, l]
                    # (Oa + Ob) bracket
                    d = o1 + o2
                    x = beta * d
                    if abs(x) < thresh:
                        v1 = beta * ra * math.sqrt(b_kl * b_lk) * _shc_series(0.5 * x)
                        n_limit += 1
                    else:
                        v1 = (a_mn * b_kl - a_nm * b_lk) / d
                    # (Oa - Ob) bracket
                    d = o1 - o2
                    x = beta * d
                    if abs(x) < thresh:
                        v2 = beta * ra * math.sqrt(b_kl * b_lk) * _shc_series(0.5 * x)
                        n_limit += 1
                    else:
                        v2 = (a_mn * b_lk - a_nm * b_kl) / d
                    inner += wb * (v1 + v2)
            total += wa * inner
    return total, n_limit


@njit(cache=True)
def shift_table(va, oa, ma, vb, ob, mb, rtol):
    n_a = oa.shape[0]
    n_b = ob.shape[0]
    max_a = 0.0
    for i in range(n_a):
        for j in range(n_a):
            max_a = max(max_a, abs(oa[i, j]))
    max_b = 0.0
    for i in range(n_b):
        for j in range(n_b):
            max_b = max(max_b, abs(ob[i, j]))
    scale = max(max_a + max_b, 1e-300)
    table = np.zeros((n_a, n_b))
    resonance = np.full(4, -1, dtype=np.int64)
    for n in range(n_a):
        for l in range(n_b):
            acc = 0.0
            for m in range(n_a):
                wa = va[m] * ma[m, n]
                if wa == 0.0:
                    continue
                for k in range(n_b):
                    if m == n and k == l:
                        continue
                    w = wa * vb[k] * mb[k, l]
                    if w == 0.0:
                        continue
                    d = oa[m, n] + ob[k, l]
                    if abs(d) <= rtol * scale:
                        resonance[0] = m
                        resonance[1] = n
                        resonance[2] = k
                        resonance[3] = l
                        return np.zeros((n_a, n_b)), resonance
                    acc += w / d
            table[n, l] = acc
    return table, resonance
