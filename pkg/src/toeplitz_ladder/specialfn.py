"""Complex special functions used by the closed forms.

All routines work in double precision. Quantities that overflow easily
(gamma, Barnes G) are returned as logarithms.
"""

from __future__ import annotations

import math
from numbers import Complex, Real

import numpy as np

from . import kernels
from .errors import DomainError

__all__ = [
    "barnes_g_log",
    "bessel_i",
    "bessel_i_orders",
    "hyp2f1_terminating",
    "hyp2f1_terminating_coeffs",
    "is_nonpositive_integer",
    "log_gamma",
]


def is_nonpositive_integer(z: complex) -> bool:
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def log_gamma(z: Complex) -> complex:
    """Principal branch of log Gamma(z).

    Parameters
    ----------
    z : complex
        Any complex number except 0, -1, -2, ...

    Returns
    -------
    complex
        ``log Gamma(z)``, analytic on the plane cut along the negative axis.

    Raises
    ------
    DomainError
        If ``z`` is a pole of the gamma function.

    Notes
    -----
    A 14-term Lanczos sum is used for ``Re z >= 1/2``. Smaller real parts are
    shifted up with ``log Gamma(z) = log Gamma(z + k) - sum_j log(z + j)``,
    which keeps the principal branch (no reflection formula is needed).

    Examples
    --------
    >>> abs(log_gamma(1))
    0.0
    >>> round(log_gamma(0.5).real, 7)
    0.5723649
    """
    if is_nonpositive_integer(z):
        raise DomainError(f"log_gamma: pole at z = {z}")
    return complex(kernels.lgamma_scalar(complex(z)))


def log_gamma_array(z) -> np.ndarray:
    """Vectorised :func:`log_gamma` (no pole check on individual entries)."""
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128)).ravel()
    return kernels.lgamma_array(z)


def barnes_g_log(z: Complex) -> complex:
    """Logarithm of the Barnes G function.

    Uses ``G(z + 1) = Gamma(z) G(z)`` to move ``z`` to ``Re z >= 20`` and
    then the asymptotic expansion of ``log G``. The branch is the one obtained
    by summing principal log-gamma values, continuous off the negative axis.

    Raises
    ------
    DomainError
        If ``z`` is a nonpositive integer (zero of G).

    Examples
    --------
    >>> import math
    >>> abs(barnes_g_log(4) - math.log(2)) < 1e-13
    True
    """
    if is_nonpositive_integer(z):
        raise DomainError(f"barnes_g_log: G has a zero at z = {z}")
    return complex(kernels.log_barnes_g_scalar(complex(z)))


def barnes_g_log_shifted(z: Complex, shift_to: float) -> complex:
    """:func:`barnes_g_log` with an explicit shift target (for cross-checks)."""
    if is_nonpositive_integer(z):
        raise DomainError(f"barnes_g_log: G has a zero at z = {z}")
    return complex(kernels.log_barnes_g_scalar(complex(z), float(shift_to)))


def bessel_i_orders(max_order: int, t: Real) -> np.ndarray:
    """Modified Bessel functions ``I_0(t), ..., I_max_order(t)``.

    Ascending series for ``t <= 15``; above that, downward (Miller)
    recurrence normalised by the series value of ``I_0``.
    """
    t = float(t)
    if t < 0:
        raise DomainError("bessel_i requires t >= 0")
    if max_order < 0:
        raise DomainError("bessel_i requires a nonnegative order")
    return np.asarray(kernels.bessel_i_all(int(max_order), t))


def bessel_i(order: int, t: Real) -> float:
    """Modified Bessel function of the first kind of integer order.

    Examples
    --------
    >>> bessel_i(0, 0.0), bessel_i(1, 0.0)
    (1.0, 0.0)
    >>> round(bessel_i(0, 2.0), 7)
    2.2795853
    """
    if int(order) != order or order < 0:
        raise DomainError("bessel_i requires a nonnegative integer order")
    return float(bessel_i_orders(int(order), t)[int(order)])


def _check_hyp_params(n: int, c: complex) -> None:
    if int(n) != n or n < 0:
        raise DomainError("hyp2f1_terminating requires a nonnegative integer n")
    c = complex(c)
    if is_nonpositive_integer(c) and c.real > -n:
        raise DomainError(f"hyp2f1_terminating: c = {c} makes (c)_k vanish for k <= n")


def hyp2f1_terminating_coeffs(n: int, b: Complex, c: Complex) -> np.ndarray:
    """Power-series coefficients of ``2F1(-n, b; c; z)``, ascending, length n+1."""
    _check_hyp_params(n, c)
    return np.asarray(kernels.hyp2f1_coeffs(int(n), complex(b), complex(c)))


def hyp2f1_terminating(n: int, b: Complex, c: Complex, z: Complex) -> complex:
    """Terminating Gauss series ``sum_k (-n)_k (b)_k / ((c)_k k!) z^k``.

    Raises
    ------
    DomainError
        If ``c`` is one of 0, -1, ..., -(n-1).

    Examples
    --------
    >>> abs(hyp2f1_terminating(2, 1, 2, 1) - 1 / 3) < 1e-15
    True
    """
    coeffs = hyp2f1_terminating_coeffs(n, b, c)
    return complex(kernels.horner(coeffs, np.array([complex(z)]))[0])
