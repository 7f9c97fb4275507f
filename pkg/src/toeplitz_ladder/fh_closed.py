"""Closed forms for the pure Fisher-Hartwig symbol.

Notation: ``A = alpha + i beta``, ``B = alpha - i beta``. All gamma and
Barnes G expressions are summed as logarithms and exponentiated once.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass
from typing import Iterable

import numpy as np
import scipy.linalg

from .errors import DomainError
from .ladder import fh_ode_closed
from .opuc import OpucSequence, build_toeplitz, delta_product, det_lu, opuc_solve
from .specialfn import barnes_g_log, hyp2f1_terminating_coeffs, is_nonpositive_integer, log_gamma
from .symbols import FisherHartwig, moments

FhParams = FisherHartwig
TWO_PI = 2.0 * math.pi

__all__ = [
    "FhAsymptotics",
    "FhParams",
    "discriminant_resultant",
    "fh_asymptotics",
    "fh_delta",
    "fh_discriminant",
    "fh_golden_table",
    "fh_identity_37",
    "fh_kn2",
    "fh_ln",
    "fh_log_delta",
    "fh_mn2",
    "fh_ode_closed",
    "fh_phi0_sq",
    "fh_phi_hypergeometric",
    "fh_hypergeometric_prefactor",
    "fh_prod_b_over_a",
    "fh_r",
    "fh_step4_residual",
    "fh_step5_residual",
]


def _lg(z) -> complex:
    return log_gamma(z)


def _check_n(n: int) -> int:
    if int(n) != n or n < 0:
        raise DomainError("n must be a nonnegative integer")
    return int(n)


def fh_mn2(p: FhParams, n: int) -> float:
    """``m_n^2 = (n+1)(2 alpha + n + 1) / ((A + n + 1)(B + n + 1))``.

    Examples
    --------
    >>> fh_mn2(FisherHartwig(1, 0), 0)
    0.75
    """
    n = _check_n(n)
    num = (n + 1) * (2 * p.alpha + n + 1)
    den = (p.a_plus + n + 1) * (p.a_minus + n + 1)
    return float(num / den.real)


def fh_step5_residual(p: FhParams, n: int) -> float:
    """Relative residual of
    ``2 alpha + 2n + 1 = m_n^2 (A+n+1)(B+n+1) - m_{n-1}^2 (A+n)(B+n)`` (``m_{-1} = 0``)."""
    n = _check_n(n)
    A, B = p.a_plus, p.a_minus
    t1 = fh_mn2(p, n) * (A + n + 1) * (B + n + 1)
    t2 = fh_mn2(p, n - 1) * (A + n) * (B + n) if n >= 1 else 0.0
    lhs = 2 * p.alpha + 2 * n + 1
    return abs(lhs - (t1 - t2)) / max(abs(lhs), abs(t1), abs(t2))


def fh_kn2(p: FhParams, n: int) -> float:
    """Closed ``k_n^2``; ``k_n`` itself is the positive root.

    Examples
    --------
    >>> round(fh_kn2(FisherHartwig(1, 0), 1), 12)
    1.333333333333
    """
    n = _check_n(n)
    A, B, a = p.a_plus, p.a_minus, p.alpha
    lg = (
        _lg(2 * a + 1)
        - _lg(B + 1)
        - _lg(A + 1)
        + _lg(A + n + 1)
        - _lg(n + 1)
        + _lg(B + n + 1)
        - _lg(n + 2 * a + 1)
    )
    return float(math.exp(lg.real))


def fh_phi0_sq(p: FhParams, n: int) -> float:
    """Closed ``|phi_n(0)|^2``."""
    n = _check_n(n)
    A, a = p.a_plus, p.alpha
    if A == 0:
        return 1.0 if n == 0 else 0.0
    lg = _lg(2 * a + 1) - _lg(n + 1) - _lg(n + 2 * a + 1) + 2 * (_lg(A + n) - _lg(A)).real
    return float(math.exp(lg.real))


def fh_ln(p: FhParams, n: int) -> complex:
    """``l_n = (B n / (n + A)) k_n``, the coefficient of ``z^{n-1}`` in ``phi_n``."""
    n = _check_n(n)
    if n == 0:
        return 0j
    return complex(p.a_minus * n / (n + p.a_plus) * math.sqrt(fh_kn2(p, n)))


def fh_r(p: FhParams, n: int) -> complex:
    """``r_n = phi_n(0)/k_n = prod_{j<n} (B + j)/(A + j + 1)``."""
    n = _check_n(n)
    A, B = p.a_plus, p.a_minus
    acc = 1.0 + 0j
    for j in range(n):
        acc *= (B + j) / (A + j + 1)
    return acc


def fh_step4_residual(seq: OpucSequence, p: FhParams, n: int) -> float:
    """Relative residual of ``-A - n - 1 = (r_n/r_{n+1})(-B - n)`` on Gram data,
    written without division as ``r_{n+1}(-A - n - 1) - r_n(-B - n)``."""
    A, B = p.a_plus, p.a_minus
    r = seq.as_complex().r
    t1 = r[n + 1] * (-A - n - 1)
    t2 = r[n] * (-B - n)
    return float(abs(t1 - t2) / max(abs(t1), abs(t2)))


def fh_log_delta(p: FhParams, n: int) -> complex:
    """``log Delta_n`` from the Barnes G representation."""
    n = _check_n(n)
    A, B, a = p.a_plus, p.a_minus, p.alpha
    if n == 0:
        return 0j
    g = barnes_g_log
    val = (
        n * math.log(p.normalizer)
        + g(n + 1)
        + g(n + 2 * a + 1)
        + g(A + 1)
        + g(B + 1)
        - g(2 * a + 1)
        - g(n + A + 1)
        - g(n + B + 1)
    )
    return complex(val)


def fh_delta(p: FhParams, n: int) -> float:
    """Toeplitz determinant ``Delta_n`` from the Barnes G closed form.

    Examples
    --------
    >>> abs(fh_delta(FisherHartwig(1, 0), 2) * 16 * math.pi**2 / 3 - 1) < 1e-12
    True
    """
    return float(np.exp(fh_log_delta(p, n)).real)


# ---------------------------------------------------------------------------
# hypergeometric representation


def fh_hypergeometric_prefactor(p: FhParams, n: int) -> dict:
    """Prefactor of ``2F1(-n, A + 1; 1 - n - B; z)``.

    Returns a dict with ``matched`` (chosen so the leading coefficient is
    exactly ``k_n > 0``), ``printed`` (the displayed formula with its
    ambiguous ``Gamma(B + a)`` read as ``a = 1``), their relative
    ``discrepancy`` and the hypergeometric leading coefficient ``lead``.
    """
    n = _check_n(n)
    A, B, a = p.a_plus, p.a_minus, p.alpha
    c = 1 - n - B
    coeffs = hyp2f1_terminating_coeffs(n, A + 1, c)
    lead = coeffs[-1]
    kn = math.sqrt(fh_kn2(p, n))
    matched = kn / lead
    if is_nonpositive_integer(B) or is_nonpositive_integer(n + B):
        printed = complex("nan")
    else:
        under = (
            _lg(2 * a + 1) + _lg(A + n + 1) + _lg(B + n + 1) - _lg(B + 1) - _lg(A + 1) - _lg(n + 1) - _lg(n + 2 * a + 1)
        )
        printed = np.exp(0.5 * under + _lg(n + B) + _lg(A + 1) - _lg(n + A + 1) - _lg(B))
    disc = abs(printed - matched) / abs(matched)
    return {"matched": complex(matched), "printed": complex(printed), "discrepancy": float(disc), "lead": complex(lead)}


def fh_phi_hypergeometric(p: FhParams, n: int) -> np.ndarray:
    """Coefficients (ascending) of ``phi_n = A_pref * 2F1(-n, A + 1; 1 - n - B; z)``.

    The prefactor is fixed by matching the leading coefficient to ``k_n``
    (see :func:`fh_hypergeometric_prefactor`).

    Raises
    ------
    DomainError
        If ``1 - n - B`` is a nonpositive integer hit by the series
        (``alpha = beta = 0``, where ``phi_n = z^n``).
    """
    n = _check_n(n)
    A, B = p.a_plus, p.a_minus
    coeffs = hyp2f1_terminating_coeffs(n, A + 1, 1 - n - B)
    pref = fh_hypergeometric_prefactor(p, n)["matched"]
    return pref * coeffs


# ---------------------------------------------------------------------------
# discriminants


def sylvester_matrix(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Sylvester matrix of two polynomials given by descending coefficients."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    S = np.zeros((size, size), dtype=np.complex128)
    for i in range(n):
        S[i, i : i + m + 1] = f
    for i in range(m):
        S[n + i, i : i + n + 1] = g
    return S


def discriminant_resultant(poly) -> complex:
    """Discriminant ``gamma^(2n-2) prod_{j<k} (z_j - z_k)^2`` without root finding.

    ``D = (-1)^(n(n-1)/2) Res(pi, pi') / gamma`` with the resultant taken as
    a Sylvester determinant.

    Parameters
    ----------
    poly : array_like
        Ascending coefficients; the last one is the leading coefficient.

    Examples
    --------
    >>> discriminant_resultant([-1, 0, 1])
    (4+0j)
    """
    c = np.asarray(poly, dtype=np.complex128)
    n = len(c) - 1
    if n < 1:
        raise DomainError("discriminant needs degree >= 1")
    if c[-1] == 0:
        raise DomainError("leading coefficient is zero")
    desc = c[::-1]
    deriv = (c[1:] * np.arange(1, n + 1))[::-1]
    S = sylvester_matrix(desc, deriv)
    res = scipy.linalg.det(S)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return complex(sign * res / c[-1])


def fh_prod_b_over_a(p: FhParams, n: int) -> complex:
    """``prod_{j=1}^n b_j/a_j`` with ``a_j = m_{j-1}(i beta - alpha - j)``, ``b_j = -j``.

    Equal to ``sqrt(prod (A + j)/(B + j) * j/(j + 2 alpha))`` taken factor by
    factor on the principal branch (the continuous choice in ``beta``).
    """
    A, B, a = p.a_plus, p.a_minus, p.alpha
    acc = 0j
    for j in range(1, n + 1):
        acc += np.log(A + j) - np.log(B + j) + math.log(j) - math.log(j + 2 * a)
    return complex(np.exp(0.5 * acc))


def fh_discriminant(p: FhParams, n: int, form: str = "final") -> complex:
    """Closed-form discriminant of ``phi_n``.

    ``form="final"``::

        D = (-1)^(n(n+3)/2) ((n + B)/(2 pi))^n r_n^(n-1) / k_n / Delta_n * prod b_j/a_j

    ``form="intermediate"``::

        D = (-1)^(n(n+1)/2) (i beta - alpha - n)^n r_n^(n-1) / k_n * prod_{j<n} k_j^2 * prod b_j/a_j
    """
    n = _check_n(n)
    if n < 1:
        raise DomainError("discriminant needs n >= 1")
    A, B, a = p.a_plus, p.a_minus, p.alpha
    r_n = fh_r(p, n)
    kn = math.sqrt(fh_kn2(p, n))
    prod = fh_prod_b_over_a(p, n)
    log_r = (n - 1) * np.log(r_n) if n > 1 else 0j
    if form == "final":
        sign = -1 if (n * (n + 3) // 2) % 2 else 1
        logv = n * np.log((n + B) / TWO_PI) + log_r - math.log(kn) - fh_log_delta(p, n)
    elif form == "intermediate":
        sign = -1 if (n * (n + 1) // 2) % 2 else 1
        logk = sum(math.log(fh_kn2(p, j)) for j in range(1, n))
        logv = n * np.log(complex(-a, p.beta) - n) + log_r - math.log(kn) + logk
    else:
        raise ValueError(f"unknown form {form!r}")
    return complex(sign * np.exp(logv) * prod)


def fh_identity_37(p: FhParams, n: int, seq: OpucSequence | None = None) -> dict:
    """Both sides of ``Delta_n k_n |D[phi_n]| = (|n + B|/2pi)^n |r_n|^(n-1) |prod b_j/a_j|``.

    The left side uses independent data: ``Delta_n`` by LU, ``k_n`` and
    ``phi_n`` from the Gram solve, ``D`` from the resultant.
    """
    if seq is None or seq.n_max < n:
        seq = opuc_solve(moments(p, n), n)
    cs = seq.as_complex()
    delta = det_lu(build_toeplitz(moments(p, n), n)).value
    lhs = abs(delta) * abs(cs.k[n]) * abs(discriminant_resultant(cs.left[n]))
    rhs = (abs(n + p.a_minus) / TWO_PI) ** n * abs(fh_r(p, n)) ** (n - 1) * abs(fh_prod_b_over_a(p, n))
    return {"lhs": float(lhs), "rhs": float(rhs), "relative": float(abs(lhs - rhs) / abs(rhs))}


# ---------------------------------------------------------------------------
# asymptotics


@dataclass(frozen=True)
class FhAsymptotics:
    """Exact closed-form values next to their large-n approximations.

    ``disc_approx`` is the ``|D[phi_n]|`` asymptote implied by the identity
    for ``Delta_n k_n |D|`` together with the limits of its factors; its base is
    ``|A|/(2 pi C)``. ``disc_approx_printed`` evaluates the displayed
    formula literally, whose base carries an extra ``1/C``.
    """

    alpha: float
    beta: float
    n: int
    kappa: float
    kn: float
    phi0_exact: complex
    phi0_approx: complex
    r_pow_exact: float
    r_pow_approx: float
    prod_exact: float
    prod_approx: float
    delta_exact: float
    delta_approx: float
    disc_exact: float
    disc_approx: float
    disc_approx_printed: float

    @property
    def delta_ratio(self) -> float:
        return self.delta_exact / self.delta_approx

    @property
    def disc_ratio(self) -> float:
        return self.disc_exact / self.disc_approx

    @property
    def disc_ratio_printed(self) -> float:
        return self.disc_exact / self.disc_approx_printed

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("phi0_exact", "phi0_approx"):
            d[key] = [d[key].real, d[key].imag]
        d.update(delta_ratio=self.delta_ratio, disc_ratio=self.disc_ratio, disc_ratio_printed=self.disc_ratio_printed)
        return d


def _log_abs_disc(p: FhParams, n: int) -> float:
    # log |D| from the final closed form, kept in logs for large n
    A, B = p.a_plus, p.a_minus
    r_abs = abs(fh_r(p, n))
    val = (
        n * math.log(abs(n + B) / TWO_PI)
        + (n - 1) * math.log(r_abs)
        - 0.5 * math.log(fh_kn2(p, n))
        - fh_log_delta(p, n).real
        + math.log(abs(fh_prod_b_over_a(p, n)))
    )
    return val


def fh_asymptotics(p: FhParams, n: int) -> FhAsymptotics:
    """Large-n approximations and the exact values they approximate.

    Raises
    ------
    DomainError
        For ``n < 2`` or ``alpha = beta = 0`` (the discriminant asymptote
        involves ``log |A|``).
    """
    n = _check_n(n)
    if n < 2:
        raise DomainError("asymptotics need n >= 2")
    A, B, a, b = p.a_plus, p.a_minus, p.alpha, p.beta
    if A == 0:
        raise DomainError("asymptotics need alpha + i beta != 0")
    C = p.normalizer
    kappa = math.exp(0.5 * _lg(2 * a + 1).real - _lg(A + 1).real)
    kn = math.sqrt(fh_kn2(p, n))
    phi0_exact = kn * fh_r(p, n)
    phi0_approx = kappa * np.exp(_lg(A + 1) - _lg(B)) * np.exp((-1 - 2j * b) * math.log(n))
    r_pow_exact = abs(fh_r(p, n)) ** (n - 1)
    r_pow_approx = (abs(A) / n) ** (n - 1)
    prod_exact = abs(fh_prod_b_over_a(p, n))
    prod_approx = math.exp(0.5 * _lg(2 * a + 1).real) / n**a
    log_delta_exact = fh_log_delta(p, n).real
    log_delta_approx = (
        2 * barnes_g_log(A + 1).real - barnes_g_log(2 * a + 1).real + n * math.log(C) + (a * a + b * b) * math.log(n)
    )
    log_pref = (
        _lg(A + 1).real - math.log(abs(A)) + barnes_g_log(2 * a + 1).real - 2 * barnes_g_log(A + 1).real
    )
    power = (1 - a - a * a - b * b) * math.log(n)
    log_base = math.log(abs(A) / (TWO_PI * C))
    log_base_printed = _lg(2 * a + 1).real - math.log(C * abs(A)) - 2 * _lg(A).real
    log_disc = _log_abs_disc(p, n)
    return FhAsymptotics(
        alpha=a,
        beta=b,
        n=n,
        kappa=kappa,
        kn=kn,
        phi0_exact=complex(phi0_exact),
        phi0_approx=complex(phi0_approx),
        r_pow_exact=float(r_pow_exact),
        r_pow_approx=float(r_pow_approx),
        prod_exact=float(prod_exact),
        prod_approx=float(prod_approx),
        delta_exact=math.exp(log_delta_exact),
        delta_approx=math.exp(log_delta_approx),
        disc_exact=math.exp(log_disc),
        disc_approx=math.exp(log_pref + n * log_base + power),
        disc_approx_printed=math.exp(log_pref + n * log_base_printed + power),
    )


# ---------------------------------------------------------------------------
# golden table


def fh_golden_table(grid: Iterable[tuple[float, float]], n_max: int) -> str:
    """CSV of closed-form data against LU determinants.

    Columns: ``alpha, beta, n, kn2, phi0_sq, delta_closed, delta_lu, rel_err``.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "beta", "n", "kn2", "phi0_sq", "delta_closed", "delta_lu", "rel_err"])
    for alpha, beta in grid:
        p = FisherHartwig(alpha, beta)
        M = moments(p, n_max)
        for n in range(1, n_max + 1):
            closed = fh_delta(p, n)
            lu = det_lu(build_toeplitz(M, n)).value
            rel = abs(closed - lu) / abs(lu)
            w.writerow(
                [
                    f"{alpha:.17g}",
                    f"{beta:.17g}",
                    n,
                    f"{fh_kn2(p, n):.17g}",
                    f"{fh_phi0_sq(p, n):.17g}",
                    f"{closed:.17g}",
                    f"{lu.real:.17g}",
                    f"{rel:.3e}",
                ]
            )
    return buf.getvalue()
