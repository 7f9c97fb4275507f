"""Toeplitz matrices, determinants and orthonormal polynomials on the circle.

Conventions
-----------
``T[j, k] = w_{j-k}``. The left monic polynomial ``Phi_n`` satisfies
``int Phi_n(xi) xi^{-j} w d theta = 0`` for ``j < n``. The right (dual) monic
polynomial ``Psi_n`` satisfies ``int xi^{j} Psi_n(1/xi) w d theta = 0``. Both
share the norm ``h_n = 2 pi Delta_{n+1} / Delta_n``, and the orthonormal
versions are ``phi_n = k_n Phi_n``, ``psi_n = k_n Psi_n`` with ``k_n^2 = 1/h_n``.
For Hermitian moment sequences ``psi_n`` has the conjugate coefficients of
``phi_n``, so ``psi_n(1/xi) = conj(phi_n(xi))`` on the circle and
everything reduces to the usual inner product.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import mpmath as mp
import numpy as np
import scipy.linalg

from . import kernels
from .errors import DegenerateWeightError, RangeError
from .quadrature import Rule, integrate
from .report import ResidualReport
from .symbols import MomentSequence, SymbolSpec, weight_at

TWO_PI = 2.0 * math.pi

__all__ = [
    "DetResult",
    "OpucSequence",
    "ToeplitzMatrix",
    "build_toeplitz",
    "check_recurrences",
    "delta_product",
    "det_lu",
    "dual_star",
    "orthonormality_matrix",
    "opuc_solve",
    "star",
]


@dataclass(frozen=True, eq=False)
class ToeplitzMatrix:
    """``n x n`` Toeplitz matrix with ``entries[j, k] = w_{j-k}``."""

    n: int
    entries: np.ndarray
    dps: int | None = None


class DetResult(NamedTuple):
    value: complex
    singular: bool


def build_toeplitz(moments: MomentSequence, n: int) -> ToeplitzMatrix:
    """Toeplitz matrix of order ``n`` from a moment table.

    Raises
    ------
    RangeError
        If the table does not reach ``|m| = n - 1``.
    """
    if n < 0:
        raise RangeError("matrix order must be nonnegative")
    if n - 1 > moments.max_order:
        raise RangeError(f"order {n} needs moments up to |m| = {n - 1}, have {moments.max_order}")
    j = np.arange(n)
    idx = j[:, None] - j[None, :] + moments.max_order
    return ToeplitzMatrix(n, moments.values[idx], moments.dps)


def det_lu(matrix: ToeplitzMatrix) -> DetResult:
    """Determinant by LU factorisation with partial pivoting.

    An exactly singular matrix gives ``DetResult(0, True)``.
    """
    if matrix.n == 0:
        return DetResult(1.0 + 0j if matrix.dps is None else mp.mpc(1), False)
    if matrix.dps is not None:
        with mp.workdps(matrix.dps):
            try:
                val = mp.det(mp.matrix(matrix.entries.tolist()))
            except ZeroDivisionError:
                return DetResult(mp.mpc(0), True)
            return DetResult(mp.mpc(val), val == 0)
    a = np.asarray(matrix.entries, dtype=np.complex128)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    diag = np.diag(lu)
    if np.any(diag == 0):
        return DetResult(0j, True)
    swaps = np.count_nonzero(piv != np.arange(matrix.n))
    # product in log form to avoid underflow for large n
    logdet = np.sum(np.log(diag))
    return DetResult(complex((-1) ** swaps * np.exp(logdet)), False)


def star(poly) -> np.ndarray:
    """Reversal with conjugation: ``a_j -> conj(a_{n-j})``.

    Examples
    --------
    >>> star(np.array([2 + 1j, 1]))
    array([1.-0.j, 2.-1.j])
    """
    p = np.asarray(poly)
    if p.dtype == object:
        return np.array([mp.conj(c) for c in p[::-1]], dtype=object)
    return np.conj(p[::-1])


def dual_star(seq: "OpucSequence", n: int) -> np.ndarray:
    """``z^n psi_n(1/z)``: the reversed right polynomial without conjugation.

    Equals ``star(phi_n)`` for Hermitian weights and replaces it in the
    biorthogonal (non-Hermitian) setting.
    """
    return seq.right[n][::-1].copy()


def _eval_poly(coeffs, z):
    coeffs = np.asarray(coeffs)
    if coeffs.dtype == object:
        acc = mp.mpc(0)
        for c in coeffs[::-1]:
            acc = acc * z + c
        return acc
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128)).ravel()
    out = kernels.horner(coeffs.astype(np.complex128), zz)
    return complex(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


@dataclass(frozen=True, eq=False)
class OpucSequence:
    """Orthonormal polynomial data for ``0 <= n <= n_max``.

    Attributes
    ----------
    left, right : tuple of ndarray
        Ascending coefficients of ``phi_n`` and ``psi_n``.
    k : ndarray
        Leading coefficients ``k_n``.
    h : ndarray
        Monic norms ``h_n = 1/k_n^2``.
    """

    symbol: SymbolSpec
    n_max: int
    left: tuple
    right: tuple
    k: np.ndarray
    h: np.ndarray
    hermitian: bool
    dps: int | None = None
    method: str = "gram"

    # --- derived parameters -------------------------------------------------
    # computed at the sequence's own precision, not the ambient mpmath one
    def _prec(self):
        return mp.workdps(self.dps) if self.dps is not None else _nullctx()

    @cached_property
    def phi0(self) -> np.ndarray:
        return _arr([self.left[n][0] for n in range(self.n_max + 1)], self.dps)

    @cached_property
    def l(self) -> np.ndarray:  # noqa: E743
        return _arr(
            [self.left[n][n - 1] if n >= 1 else 0 for n in range(self.n_max + 1)], self.dps
        )

    @cached_property
    def r(self) -> np.ndarray:
        with self._prec():
            return _arr([self.left[n][0] / self.k[n] for n in range(self.n_max + 1)], self.dps)

    @cached_property
    def q(self) -> np.ndarray:
        """Right analogue of ``r``: ``psi_n(0)/k_n``; equals ``conj(r_n)`` when Hermitian."""
        with self._prec():
            return _arr([self.right[n][0] / self.k[n] for n in range(self.n_max + 1)], self.dps)

    @cached_property
    def m(self) -> np.ndarray:
        with self._prec():
            return _arr([self.k[n] / self.k[n + 1] for n in range(self.n_max)], self.dps)

    @cached_property
    def s(self) -> np.ndarray:
        r = self.r
        vals = []
        with self._prec():
            for n in range(self.n_max):
                vals.append(r[n + 1] / r[n] if r[n] != 0 else (mp.nan if self.dps else np.nan))
            return _arr(vals, self.dps)

    def m_at(self, n: int):
        """``m_n`` with the convention ``m_{-1} = 0`` (``k_{-1} = 0``)."""
        if n == -1:
            return 0
        if not 0 <= n < self.n_max:
            raise RangeError(f"m_{n} needs k_{n + 1}; sequence stops at {self.n_max}")
        return self.m[n]

    def s_at(self, n: int):
        if not 0 <= n < self.n_max:
            raise RangeError(f"s_{n} needs r_{n + 1}; sequence stops at {self.n_max}")
        return self.s[n]

    def require(self, lo: int, hi: int) -> None:
        if lo < 0 or hi > self.n_max:
            raise RangeError(f"indices {lo}..{hi} needed, sequence covers 0..{self.n_max}")

    # --- polynomials ----------------------------------------------------------
    def poly(self, n: int, family: str = "left") -> np.ndarray:
        self.require(n, n)
        return (self.left if family == "left" else self.right)[n]

    def evaluate(self, n: int, z, family: str = "left"):
        return _eval_poly(self.poly(n, family), z)

    def as_complex(self) -> "OpucSequence":
        if self.dps is None:
            return self
        cast = lambda a: np.array([complex(c) for c in a], dtype=np.complex128)  # noqa: E731
        return OpucSequence(
            self.symbol,
            self.n_max,
            tuple(cast(p) for p in self.left),
            tuple(cast(p) for p in self.right),
            cast(self.k),
            cast(self.h),
            self.hermitian,
            None,
            self.method,
        )

    # --- export ---------------------------------------------------------------
    def records(self) -> list[dict]:
        def c(x):
            if x is None:
                return None
            z = complex(x)
            return [z.real, z.imag]

        out = []
        for n in range(self.n_max + 1):
            out.append(
                {
                    "n": n,
                    "k_n": c(self.k[n]),
                    "phi0": c(self.phi0[n]),
                    "l_n": c(self.l[n]),
                    "r_n": c(self.r[n]),
                    "m_n": c(self.m[n]) if n < self.n_max else None,
                    "s_n": c(self.s[n]) if n < self.n_max else None,
                    "coeffs": [c(a) for a in self.left[n]],
                }
            )
        return out

    def to_json(self) -> str:
        return json.dumps(self.records())


def _arr(vals, dps):
    if dps is None:
        return np.array(vals, dtype=np.complex128)
    return np.array([mp.mpc(v) for v in vals], dtype=object)


def _branch_sqrt(x, prev, dps):
    root = mp.sqrt(x) if dps is not None else np.sqrt(complex(x))
    return root if abs(root - prev) <= abs(-root - prev) else -root


def opuc_solve(moments: MomentSequence, n_max: int, method: str = "gram") -> OpucSequence:
    """Orthonormal left and right polynomials up to degree ``n_max``.

    Parameters
    ----------
    moments : MomentSequence
        Must cover ``|m| <= n_max``.
    n_max : int
        Highest degree.
    method : {"gram", "levinson"}
        ``gram`` solves the linear orthogonality conditions for every degree
        (the reference route). ``levinson`` runs the O(n^2) two-sided
        recursion; it is double precision only.

    Raises
    ------
    DegenerateWeightError
        If a leading principal minor vanishes; ``err.n`` names its order.

    Notes
    -----
    ``k_n = h_n^{-1/2}`` with ``h_n`` the monic norm. For Hermitian data
    ``k_n`` is the positive root; otherwise the root closest to ``k_{n-1}``
    is taken (``k_0 = 1``), which keeps ``k_n`` continuous in ``n``.
    """
    if n_max > moments.max_order:
        raise RangeError(f"n_max = {n_max} needs moments up to |m| = {n_max}")
    hermitian = moments.symbol.hermitian
    if method == "levinson":
        if moments.dps is not None:
            raise ValueError("levinson path is double precision only")
        left_m, right_m, h = kernels.levinson(
            np.ascontiguousarray(moments.nonnegative(), dtype=np.complex128),
            np.ascontiguousarray(moments.nonpositive(), dtype=np.complex128),
            int(n_max),
        )
        lefts = [left_m[n, : n + 1].copy() for n in range(n_max + 1)]
        rights = [right_m[n, : n + 1].copy() for n in range(n_max + 1)]
        for n in range(n_max + 1):
            if h[n] == 0 or not np.isfinite(h[n]):
                raise DegenerateWeightError(n + 1)
    elif method == "gram":
        lefts, rights, h = _gram(moments, n_max)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _normalise(moments, n_max, lefts, rights, h, hermitian, method)


def _gram(moments: MomentSequence, n_max: int):
    dps = moments.dps
    T = build_toeplitz(moments, n_max + 1).entries
    lefts, rights, hs = [], [], []
    if dps is None:
        T = np.asarray(T, dtype=np.complex128)
        for n in range(n_max + 1):
            if n == 0:
                c = np.array([1.0 + 0j])
                d = np.array([1.0 + 0j])
            else:
                try:
                    c = np.append(np.linalg.solve(T[:n, :n], -T[:n, n]), 1.0)
                    d = np.append(np.linalg.solve(T[:n, :n].T, -T[n, :n]), 1.0)
                except np.linalg.LinAlgError as exc:
                    raise DegenerateWeightError(n) from exc
            h = TWO_PI * np.dot(T[n, : n + 1], c)
            if h == 0 or not np.isfinite(h):
                raise DegenerateWeightError(n + 1)
            lefts.append(c)
            rights.append(d)
            hs.append(h)
        return lefts, rights, np.array(hs)
    with mp.workdps(dps):
        two_pi = 2 * mp.pi
        for n in range(n_max + 1):
            if n == 0:
                c = [mp.mpc(1)]
                d = [mp.mpc(1)]
            else:
                A = mp.matrix(T[:n, :n].tolist())
                try:
                    c = list(mp.lu_solve(A, mp.matrix([-x for x in T[:n, n]]))) + [mp.mpc(1)]
                    d = list(mp.lu_solve(A.T, mp.matrix([-x for x in T[n, :n]]))) + [mp.mpc(1)]
                except ZeroDivisionError as exc:
                    raise DegenerateWeightError(n) from exc
            h = two_pi * mp.fsum(T[n, j] * c[j] for j in range(n + 1))
            if h == 0:
                raise DegenerateWeightError(n + 1)
            lefts.append(np.array(c, dtype=object))
            rights.append(np.array(d, dtype=object))
            hs.append(mp.mpc(h))
        return lefts, rights, np.array(hs, dtype=object)


def _normalise(moments, n_max, lefts, rights, h, hermitian, method) -> OpucSequence:
    dps = moments.dps
    ctx = mp.workdps(dps) if dps is not None else _nullctx()
    with ctx:
        ks = []
        prev = mp.mpc(1) if dps is not None else 1.0 + 0j
        for n in range(n_max + 1):
            inv = 1 / h[n]
            if hermitian:
                inv = mp.re(inv) if dps is not None else complex(inv).real
            kn = _branch_sqrt(inv, prev, dps)
            ks.append(kn)
            prev = kn
        k = _arr(ks, dps)
        left = tuple(_arr([k[n] * c for c in lefts[n]], dps) for n in range(n_max + 1))
        right = tuple(_arr([k[n] * c for c in rights[n]], dps) for n in range(n_max + 1))
    return OpucSequence(
        moments.symbol, n_max, left, right, k, _arr(list(h), dps), hermitian, dps, method
    )


class _nullctx:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def delta_product(seq: OpucSequence, n: int):
    """``Delta_n = prod_{j<n} 1/(2 pi k_j^2)``."""
    if n == 0:
        return 1.0 + 0j
    seq.require(0, n - 1)
    if seq.dps is not None:
        with mp.workdps(seq.dps):
            acc = mp.mpc(1)
            for j in range(n):
                acc /= 2 * mp.pi * seq.k[j] ** 2
            return acc
    logs = np.log(TWO_PI * np.asarray(seq.k[:n], dtype=np.complex128) ** 2)
    return complex(np.exp(-np.sum(logs)))


def orthonormality_matrix(seq: OpucSequence, n_max: int | None = None, rtol: float = 1e-13) -> np.ndarray:
    """``G[a, b] = int phi_a(xi) psi_b(1/xi) w d theta`` by quadrature.

    For Hermitian weights this is ``int phi_a conj(phi_b) w d theta``; it
    should be the identity matrix.
    """
    cs = seq.as_complex()
    n_max = cs.n_max if n_max is None else n_max
    spec = cs.symbol

    def gram(rule: Rule):
        w = weight_at(spec, rule) * rule.weights
        inv = 1.0 / rule.xi
        P = np.array([cs.evaluate(a, rule.xi) for a in range(n_max + 1)])
        Q = np.array([cs.evaluate(b, inv, "right") for b in range(n_max + 1)])
        return (P * w) @ Q.T

    return integrate(gram, spec.rule_kind, start=128, rtol=rtol, atol=1e-15)


def check_recurrences(seq: OpucSequence, n: int, tol: float = 1e-9) -> ResidualReport:
    """Residuals of the Szego recurrences and the ``l_n`` recursion at index ``n``.

    Evaluated coefficient-wise and at 8 points on the unit circle:

    * ``k_n z phi_n = k_{n+1} phi_{n+1} - phi_{n+1}(0) phi*_{n+1}``
    * ``k_n phi_{n+1} = k_{n+1} z phi_n + phi_{n+1}(0) phi*_n``
    * ``phi_n(0) k_n phi_{n+1} = phi_n(0) k_{n+1} z phi_n + phi_{n+1}(0) (k_n phi_n - k_{n-1} z phi_{n-1})``
      (three-term form, multiplied through by ``phi_n(0)``; needs ``n >= 1``)
    * ``l_{n+1}/k_{n+1} = l_n/k_n + conj(r_n) r_{n+1}``

    For non-Hermitian data ``phi*`` is the dual star and ``conj(r_n)`` is
    ``q_n``.
    """
    seq.require(max(n - 1, 0), n + 1)
    rep = ResidualReport()
    cs = seq
    k = cs.k

    def shift(p):  # multiply by z
        return np.concatenate([[0 * p[0]], p])

    def pad(p, size):
        return np.concatenate([p, [0 * p[0]] * (size - len(p))])

    size = n + 2
    phi_n, phi_n1 = cs.left[n], cs.left[n + 1]
    f0_1 = phi_n1[0]
    identities = []
    lhs = pad(k[n] * shift(phi_n), size)
    rhs = k[n + 1] * phi_n1 - f0_1 * pad(dual_star(cs, n + 1), size)
    identities.append(("szego_backward", lhs, rhs, [lhs, k[n + 1] * phi_n1]))
    lhs = k[n] * phi_n1
    rhs = pad(k[n + 1] * shift(phi_n), size) + f0_1 * pad(dual_star(cs, n), size)
    identities.append(("szego_forward", lhs, rhs, [lhs, pad(k[n + 1] * shift(phi_n), size)]))
    if n >= 1:
        f0 = phi_n[0]
        lhs = f0 * k[n] * phi_n1
        inner = pad(k[n] * phi_n, size) - pad(k[n - 1] * shift(cs.left[n - 1]), size)
        rhs = pad(f0 * k[n + 1] * shift(phi_n), size) + f0_1 * inner
        scale_terms = [lhs, pad(f0 * k[n + 1] * shift(phi_n), size), f0_1 * pad(k[n] * phi_n, size)]
        identities.append(("three_term", lhs, rhs, scale_terms))

    angles = 2 * np.pi * (np.arange(8) + 0.25) / 8
    pts = np.exp(1j * angles)
    for name, lhs, rhs, terms in identities:
        diff = np.asarray([complex(x) for x in (lhs - rhs)])
        scale = max(max(abs(complex(x)) for x in t) for t in terms)
        rep.add(name, n, "coeffs", np.max(np.abs(diff)), scale, tol)
        for z in pts:
            val = _eval_poly(diff, z)
            sc = max(abs(_eval_poly(np.asarray([complex(x) for x in t]), z)) for t in terms)
            rep.add(name, n, z, val, max(sc, scale * 1e-300), tol)
    # l_n recursion
    lhs = cs.l[n + 1] / k[n + 1]
    rhs = cs.l[n] / k[n] + cs.q[n] * cs.r[n + 1]
    rep.add("l_recursion", n, None, lhs - rhs, max(abs(lhs), abs(cs.l[n] / k[n]), abs(cs.q[n] * cs.r[n + 1])), tol)
    return rep
