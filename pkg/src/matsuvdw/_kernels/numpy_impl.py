"""Vectorized numpy kernels (the fallback path, and the reference for numba).

Every function here has a loop-based twin in ``numba_impl`` with the same
signature and return convention.  Sums over Matsubara frequencies use
the symmetry K -> -K and add terms from the largest |n| down to n = 0.
"""
import numpy as np

TWO_PI = 2.0 * np.pi


def _shc_series(y):
    # sinh(y)/y, valid for |y| < 1e-4 to ~1e-29
    y2 = y * y
    return 1.0 + y2 / 6.0 + y2 * y2 / 120.0


def _symmetric_sum(values_pos, value_zero):
    # values_pos[i] is the summand at n = i + 1; accumulate from high n down
    return value_zero + 2.0 * np.sum(values_pos[::-1])


def lorentzian_partial_sum(omega, beta, n_max):
    """sum_{|n|<=n_max} omega / (omega^2 + K_n^2), without the 1/beta."""
    k = TWO_PI * np.arange(1, n_max + 1) / beta
    vals = omega / (omega * omega + k * k)
    return _symmetric_sum(vals, 1.0 / omega)


def product_partial_sum(omega1, omega2, beta, n_max):
    """sum_{|n|<=n_max} [w1/(w1^2+K^2)] [w2/(w2^2+K^2)], without the 1/beta."""
    k2 = (TWO_PI * np.arange(1, n_max + 1) / beta) ** 2
    vals = (omega1 / (omega1 * omega1 + k2)) * (omega2 / (omega2 * omega2 + k2))
    return _symmetric_sum(vals, 1.0 / (omega1 * omega2))


def alpha_on_grid(w, omega, static_extra, k):
    """alpha(K) = sum_j w_j omega_j / (omega_j^2 + K^2) + [K == 0] static_extra."""
    k = np.asarray(k, dtype=float)
    kk = k.reshape(-1, 1)
    out = np.sum(w * omega / (omega * omega + kk * kk), axis=1)
    out = out + np.where(k.reshape(-1) == 0.0, static_extra, 0.0)
    return out.reshape(k.shape)


def pair_partial_sum(wa, oa, sa, wb, ob, sb, beta, psi2, n_max, log_mode):
    """Truncated sum over K of alpha_a alpha_b (log_mode 0) or ln(1 - psi2 alpha_a alpha_b).

    Returns
    -------
    total : float
        Sum over |n| <= n_max (no 1/beta prefactor).
    bad : int
        Largest index n with a non-positive log argument, or -1.
    """
    k = TWO_PI * np.arange(0, n_max + 1) / beta
    a = alpha_on_grid(wa, oa, sa, k)
    b = alpha_on_grid(wb, ob, sb, k)
    x = a * b
    if log_mode:
        arg = 1.0 - psi2 * x
        bad = np.nonzero(arg <= 0.0)[0]
        if bad.size:
            return np.nan, int(bad[-1])
        vals = np.log1p(-psi2 * x)
    else:
        vals = x
    return _symmetric_sum(vals[1:], vals[0]), -1


def quad_bracket_sum(aa, oa, ma, ab, ob, mb, beta, thresh):
    """Symmetric two-bracket quadruple sum of the closed free-energy form.

    S = sum_{mnkl} Ma_mn Mb_kl [ (Aa_mn Ab_kl - Aa_nm Ab_lk) / (Oa_mn + Ob_kl)
                                + (Aa_mn Ab_lk - Aa_nm Ab_kl) / (Oa_mn - Ob_kl) ]

    with ``A_mn = f_m p_n`` (``p_n`` for Boltzmann).  Where ``|beta D| <
    thresh`` the quotient is replaced by its analytic form
    ``beta sqrt(Aa_mn Aa_nm Ab_kl Ab_lk) sinh(beta D/2)/(beta D/2)``.

    Returns
    -------
    total : float
    n_limit : int
        Number of limit-branch evaluations with nonzero weight.
    """
    ra = np.sqrt(aa * aa.T)
    rb = np.sqrt(ab * ab.T)
    # axes: (m, n, k, l)
    A_mn = aa[:, :, None, None]
    A_nm = aa.T[:, :, None, None]
    B_kl = ab[None, None, :, :]
    B_lk = ab.T[None, None, :, :]
    O1 = oa[:, :, None, None]
    O2 = ob[None, None, :, :]
    R = ra[:, :, None, None] * rb[None, None, :, :]
    W = ma[:, :, None, None] * mb[None, None, :, :]

    total = 0.0
    n_limit = 0
    for sign, num in ((1.0, A_mn * B_kl - A_nm * B_lk), (-1.0, A_mn * B_lk - A_nm * B_kl)):
        d = O1 + sign * O2
        x = beta * d
        near = np.abs(x) < thresh
        safe_d = np.where(near, 1.0, d)
        val = np.where(near, beta * R * _shc_series(0.5 * x), num / safe_d)
        total += np.sum(W * val)
        n_limit += int(np.count_nonzero(near & (W != 0.0)))
    return float(total), n_limit


def shift_table(va, oa, ma, vb, ob, mb, rtol):
    """T[n, l] = sum_{(m,k) != (n,l)} va_m vb_k Ma_mn Mb_kl / (Oa_mn + Ob_kl).

    Second-order shifts are ``-psi^2 T``.  A denominator with
    ``|D| <= rtol * scale`` and nonzero weight is a resonance.

    Returns
    -------
    table : ndarray (Na, Nb)
    resonance : ndarray of 4 ints
        (m, n, k, l) of the first resonance found, or all -1.
    """
    n_a = oa.shape[0]
    n_b = ob.shape[0]
    scale = max(np.max(np.abs(oa)) + np.max(np.abs(ob)), 1e-300)
    # axes: (m, n, k, l)
    d = oa[:, :, None, None] + ob[None, None, :, :]
    wgt = (va[:, None] * ma)[:, :, None, None] * (vb[:, None] * mb)[None, None, :, :]
    self_term = np.zeros((n_a, n_a, n_b, n_b), dtype=bool)
    ia = np.arange(n_a)
    ib = np.arange(n_b)
    self_term[ia, ia, :, :] |= (ib[:, None] == ib[None, :])[None, :, :]
    wgt = np.where(self_term, 0.0, wgt)
    res = (np.abs(d) <= rtol * scale) & (wgt != 0.0)
    resonance = np.full(4, -1, dtype=np.int64)
    if np.any(res):
        # report in (n, l, m, k) loop order to match the numba kernel
        idx = np.argwhere(np.transpose(res, (1, 3, 0, 2)))[0]
        n, l, m, k = idx
        resonance[:] = (m, n, k, l)
        return np.zeros((n_a, n_b)), resonance
    safe = np.where(wgt != 0.0, d, 1.0)
    table = np.einsum("mnkl->nl", wgt / safe)
    return table, resonance
