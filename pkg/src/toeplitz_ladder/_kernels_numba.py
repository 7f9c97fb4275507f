"""Scalar-loop kernels compiled with numba.

Every function here has a twin with the same signature in
``_kernels_numpy``. Inputs are plain numpy arrays and scalars.
"""

from __future__ import annotations

import math

import numpy as np

from ._constants import (
    BARNES_ASYMPT,
    BARNES_SHIFT_TO,
    BESSEL_SERIES_MAX_T,
    LANCZOS_C0,
    LANCZOS_COEF,
    LANCZOS_G,
    LOG_2PI,
    SQRT_2PI,
    ZETA_PRIME_M1,
)
from ._jit import njit

_COEF = LANCZOS_COEF.copy()
_BARNES = BARNES_ASYMPT.copy()


@njit
def _lanczos(z):
    y = z
    tmp = z + LANCZOS_G
    tmp = (z + 0.5) * np.log(tmp) - tmp
    ser = LANCZOS_C0 + 0j
    for c in _COEF:
        y = y + 1.0
        ser = ser + c / y
    return tmp + np.log(SQRT_2PI * ser) - np.log(z)


@njit
def lgamma_scalar(z):
    z = complex(z)
    if z.real >= 0.5:
        return _lanczos(z)
    k = int(math.ceil(0.5 - z.real))
    acc = _lanczos(z + k)
    for j in range(k):
        acc -= np.log(z + j)
    return acc


@njit
def lgamma_array(z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = lgamma_scalar(z[i])
    return out


@njit
def _barnes_asymptotic(w):
    # log G(w) with Re w large, through x = w - 1
    x = w - 1.0
    lx = np.log(x)
    acc = (0.5 * x * x - 1.0 / 12.0) * lx - 0.75 * x * x + 0.5 * x * LOG_2PI
    acc += ZETA_PRIME_M1
    inv2 = 1.0 / (x * x)
    p = inv2
    for c in _BARNES:
        acc += c * p
        p *= inv2
    return acc


@njit
def log_barnes_g_scalar(z, shift_to=BARNES_SHIFT_TO):
    z = complex(z)
    k = 0
    if z.real < shift_to:
        k = int(math.ceil(shift_to - z.real))
    acc = _barnes_asymptotic(z + k)
    for j in range(k):
        acc -= lgamma_scalar(z + j)
    return acc


@njit
def log_barnes_g_array(z, shift_to=BARNES_SHIFT_TO):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = log_barnes_g_scalar(z[i], shift_to)
    return out


@njit
def _bessel_series(order, t):
    if t == 0.0:
        return 1.0 if order == 0 else 0.0
    half = 0.5 * t
    term = math.exp(order * math.log(half) - math.lgamma(order + 1.0))
    total = term
    q = half * half
    m = 0
    while term > 1e-17 * total:
        term *= q / ((m + 1.0) * (m + 1.0 + order))
        total += term
        m += 1
    return total


@njit
def bessel_i_all(max_order, t):
    """I_0(t) ... I_{max_order}(t)."""
    out = np.zeros(max_order + 1)
    if t <= BESSEL_SERIES_MAX_T:
        for k in range(max_order + 1):
            out[k] = _bessel_series(k, t)
        return out
    top = int(1.5 * max(max_order, t)) + 50
    nxt = 0.0
    cur = 1.0
    for k in range(top, 0, -1):
        # I_{k-1} = (2k/t) I_k + I_{k+1}
        prev = (2.0 * k / t) * cur + nxt
        nxt = cur
        cur = prev
        if k - 1 <= max_order:
            out[k - 1] = cur
        if abs(cur) > 1e250:
            cur *= 1e-250
            nxt *= 1e-250
            out *= 1e-250
    scale = _bessel_series(0, t) / out[0]
    return out * scale


@njit
def horner(coeffs, x):
    """Evaluate sum_k coeffs[k] x^k at every entry of ``x``."""
    n = coeffs.shape[0]
    out = np.empty(x.shape[0], dtype=np.complex128)
    for i in range(x.shape[0]):
        acc = 0j
        for k in range(n - 1, -1, -1):
            acc = acc * x[i] + coeffs[k]
        out[i] = acc
    return out


@njit
def fourier_sums(theta, values, m_lo, m_hi):
    """sum_j values[j] exp(-i m theta[j]) for m_lo <= m <= m_hi."""
    nm = m_hi - m_lo + 1
    out = np.zeros(nm, dtype=np.complex128)
    for j in range(theta.shape[0]):
        step = np.exp(-1j * theta[j])
        cur = values[j] * np.exp(-1j * m_lo * theta[j])
        for k in range(nm):
            out[k] += cur
            cur *= step
    return out


@njit
def levinson(w_pos, w_neg, n_max):
    """Monic left/right families from moments by the two-sided recursion.

    ``w_pos[m] = w_m`` and ``w_neg[m] = w_{-m}``. Returns the coefficient
    tables (row n holds degree n, ascending) and the norms h_n.
    """
    two_pi = 2.0 * math.pi
    left = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    right = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    h = np.zeros(n_max + 1, dtype=np.complex128)
    left[0, 0] = 1.0
    right[0, 0] = 1.0
    h[0] = two_pi * w_pos[0]
    for n in range(n_max):
        acc_r = 0j
        acc_q = 0j
        for k in range(n + 1):
            acc_r += left[n, k] * w_neg[k + 1]
            acc_q += right[n, k] * w_pos[k + 1]
        r = -two_pi * acc_r / h[n]
        q = -two_pi * acc_q / h[n]
        for j in range(n + 2):
            a = left[n, j - 1] if j >= 1 else 0j
            b = right[n, j - 1] if j >= 1 else 0j
            if j <= n:
                a += r * right[n, n - j]
                b += q * left[n, n - j]
            left[n + 1, j] = a
            right[n + 1, j] = b
        h[n + 1] = h[n] * (1.0 - r * q)
    return left, right, h


@njit
def hyp2f1_coeffs(n, b, c):
    """Power-series coefficients of 2F1(-n, b; c; z)."""
    out = np.empty(n + 1, dtype=np.complex128)
    out[0] = 1.0
    for k in range(n):
        out[k + 1] = out[k] * ((k - n) * (b + k)) / ((c + k) * (k + 1.0))
    return out


@njit
def dp2_orbit(t, r1, n_max):
    """r_0..r_{n_max} of the dP2 recursion in double precision."""
    r = np.empty(n_max + 1)
    r[0] = 1.0
    if n_max >= 1:
        r[1] = r1
    for n in range(1, n_max):
        den = 1.0 - r[n] * r[n]
        if den == 0.0:
            r[n + 1 :] = np.nan
            break
        r[n + 1] = -(2.0 * n / t) * r[n] / den - r[n - 1]
    return r
