"""Pure-numpy twins of the compiled kernels.

Same names and signatures as ``_kernels_numba``; vectorised where the
algorithm allows, plain loops where it is inherently sequential.
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


def _lanczos(z):
    y = z + np.arange(1, LANCZOS_COEF.size + 1)[:, None]
    ser = LANCZOS_C0 + (LANCZOS_COEF[:, None] / y).sum(axis=0)
    tmp = z + LANCZOS_G
    tmp = (z + 0.5) * np.log(tmp) - tmp
    return tmp + np.log(SQRT_2PI * ser) - np.log(z)


def lgamma_array(z):
    z = np.asarray(z, dtype=np.complex128)
    shift = np.where(z.real < 0.5, np.ceil(0.5 - z.real), 0.0).astype(np.int64)
    out = _lanczos(z + shift)
    for j in range(int(shift.max(initial=0))):
        mask = shift > j
        out[mask] -= np.log(z[mask] + j)
    return out


def lgamma_scalar(z):
    return complex(lgamma_array(np.array([z], dtype=np.complex128))[0])


def _barnes_asymptotic(w):
    x = w - 1.0
    acc = (0.5 * x * x - 1.0 / 12.0) * np.log(x) - 0.75 * x * x + 0.5 * x * LOG_2PI
    acc = acc + ZETA_PRIME_M1
    inv2 = 1.0 / (x * x)
    powers = inv2 ** np.arange(1, BARNES_ASYMPT.size + 1)[:, None]
    return acc + (BARNES_ASYMPT[:, None] * powers).sum(axis=0)


def log_barnes_g_array(z, shift_to=BARNES_SHIFT_TO):
    z = np.asarray(z, dtype=np.complex128)
    shift = np.where(z.real < shift_to, np.ceil(shift_to - z.real), 0.0).astype(np.int64)
    out = _barnes_asymptotic(z + shift)
    for j in range(int(shift.max(initial=0))):
        mask = shift > j
        out[mask] -= lgamma_array(z[mask] + j)
    return out


def log_barnes_g_scalar(z, shift_to=BARNES_SHIFT_TO):
    return complex(log_barnes_g_array(np.array([z], dtype=np.complex128), shift_to)[0])


def _bessel_series_orders(orders, t):
    orders = np.asarray(orders, dtype=np.float64)
    if t == 0.0:
        return np.where(orders == 0, 1.0, 0.0)
    half = 0.5 * t
    lg = np.array([math.lgamma(o + 1.0) for o in orders])
    term = np.exp(orders * math.log(half) - lg)
    total = term.copy()
    q = half * half
    m = 0
    while np.any(term > 1e-17 * total):
        term = term * q / ((m + 1.0) * (m + 1.0 + orders))
        total += term
        m += 1
    return total


def bessel_i_all(max_order, t):
    if t <= BESSEL_SERIES_MAX_T:
        return _bessel_series_orders(np.arange(max_order + 1), t)
    out = np.zeros(max_order + 1)
    top = int(1.5 * max(max_order, t)) + 50
    nxt, cur = 0.0, 1.0
    for k in range(top, 0, -1):
        nxt, cur = cur, (2.0 * k / t) * cur + nxt
        if k - 1 <= max_order:
            out[k - 1] = cur
        if abs(cur) > 1e250:
            cur *= 1e-250
            nxt *= 1e-250
            out *= 1e-250
    return out * (_bessel_series_orders([0], t)[0] / out[0])


def horner(coeffs, x):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    acc = np.zeros_like(x)
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def fourier_sums(theta, values, m_lo, m_hi):
    m = np.arange(m_lo, m_hi + 1)
    return np.exp(-1j * np.outer(m, theta)) @ values


def levinson(w_pos, w_neg, n_max):
    two_pi = 2.0 * np.pi
    left = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    right = np.zeros_like(left)
    h = np.zeros(n_max + 1, dtype=np.complex128)
    left[0, 0] = right[0, 0] = 1.0
    h[0] = two_pi * w_pos[0]
    for n in range(n_max):
        r = -two_pi * np.dot(left[n, : n + 1], w_neg[1 : n + 2]) / h[n]
        q = -two_pi * np.dot(right[n, : n + 1], w_pos[1 : n + 2]) / h[n]
        left[n + 1, 1 : n + 2] = left[n, : n + 1]
        right[n + 1, 1 : n + 2] = right[n, : n + 1]
        left[n + 1, : n + 1] += r * right[n, n::-1]
        right[n + 1, : n + 1] += q * left[n, n::-1]
        h[n + 1] = h[n] * (1.0 - r * q)
    return left, right, h


def hyp2f1_coeffs(n, b, c):
    k = np.arange(n, dtype=np.float64)
    ratios = ((k - n) * (b + k)) / ((c + k) * (k + 1.0))
    return np.concatenate([[1.0 + 0j], np.cumprod(ratios.astype(np.complex128))])


def dp2_orbit(t, r1, n_max):
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
