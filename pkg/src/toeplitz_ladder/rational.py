"""Rational functions kept in partial-fraction form.

``f(z) = constant + sum_p sum_k c_{p,k} / (z - p)^k``. Only functions that
vanish-or-tend-to-a-constant at infinity are representable, which is all
the ladder machinery needs.
"""

from __future__ import annotations

from math import comb
from typing import Mapping

import numpy as np

__all__ = ["RationalFunction"]

_MERGE = 1e-12


def _key(p: complex, poles) -> complex:
    for q in poles:
        if abs(p - q) <= _MERGE * max(1.0, abs(q)):
            return q
    return p


class RationalFunction:
    """Constant plus principal parts at finitely many poles.

    Parameters
    ----------
    constant : complex
        Value at infinity.
    terms : mapping or iterable
        Either ``{pole: [c_1, c_2, ...]}`` (``c_k`` multiplies ``(z - pole)^-k``)
        or an iterable of ``(pole, order, coefficient)`` triples.

    Examples
    --------
    >>> f = RationalFunction(0, [(1.0, 1, -2.0)])
    >>> f(3.0)
    (-1+0j)
    """

    __slots__ = ("constant", "terms")

    def __init__(self, constant=0.0, terms=()):
        self.constant = complex(constant)
        parts: dict[complex, np.ndarray] = {}
        items = terms.items() if isinstance(terms, Mapping) else None
        if items is not None:
            for p, coeffs in items:
                p = _key(complex(p), parts)
                c = np.asarray(coeffs, dtype=np.complex128)
                parts[p] = _add_arrays(parts.get(p), c)
        else:
            for p, order, coef in terms:
                p = _key(complex(p), parts)
                c = np.zeros(int(order), dtype=np.complex128)
                c[int(order) - 1] = coef
                parts[p] = _add_arrays(parts.get(p), c)
        self.terms = {p: _trim(c) for p, c in parts.items() if np.any(_trim(c) != 0)}

    # --- construction helpers -----------------------------------------------
    @classmethod
    def const(cls, value) -> "RationalFunction":
        return cls(value)

    @classmethod
    def simple(cls, pole, coefficient, order: int = 1) -> "RationalFunction":
        return cls(0.0, [(pole, order, coefficient)])

    # --- evaluation -------------------------------------------------------------
    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.full(z.shape, self.constant, dtype=np.complex128)
        for p, c in self.terms.items():
            inv = 1.0 / (z - p)
            acc = np.zeros_like(out)
            for coef in c[::-1]:
                acc = (acc + coef) * inv
            out = out + acc
        return complex(out) if out.ndim == 0 else out

    def poles(self) -> list[complex]:
        return list(self.terms)

    def order(self, pole) -> int:
        p = _key(complex(pole), self.terms)
        return len(self.terms.get(p, ()))

    def coefficient(self, pole, order: int = 1) -> complex:
        p = _key(complex(pole), self.terms)
        c = self.terms.get(p)
        if c is None or order > len(c):
            return 0j
        return complex(c[order - 1])

    def residue(self, pole) -> complex:
        return self.coefficient(pole, 1)

    def term_magnitude(self, z) -> float:
        """Largest modulus among the separate terms at ``z`` (residual scaling)."""
        vals = [abs(self.constant)]
        for p, c in self.terms.items():
            for k, coef in enumerate(c, start=1):
                vals.append(abs(coef / (complex(z) - p) ** k))
        return float(max(vals))

    # --- arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        terms = {p: c.copy() for p, c in self.terms.items()}
        for p, c in other.terms.items():
            q = _key(p, terms)
            terms[q] = _add_arrays(terms.get(q), c)
        return RationalFunction(self.constant + other.constant, terms)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.constant, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            s = complex(other)
            return RationalFunction(self.constant * s, {p: c * s for p, c in self.terms.items()})
        poles = list(self.terms)
        for p in other.terms:
            if _key(p, poles) == p and p not in poles:
                poles.append(p)
        out: dict[complex, np.ndarray] = {}
        for p in poles:
            fa = self.order(p)
            ga = other.order(p)
            total = fa + ga
            if total == 0:
                continue
            f_pp = _principal(self, p)
            g_pp = _principal(other, p)
            f_reg = self._taylor_regular(p, ga)
            g_reg = other._taylor_regular(p, fa)
            # coefficient of u^-k, u = z - p, for k = 1..total
            res = np.zeros(total, dtype=np.complex128)
            for i, a in enumerate(f_pp, start=1):  # a u^-i
                for j, b in enumerate(g_pp, start=1):
                    res[i + j - 1] += a * b
                for m, b in enumerate(g_reg):  # b u^m
                    k = i - m
                    if k >= 1:
                        res[k - 1] += a * b
            for j, b in enumerate(g_pp, start=1):
                for m, a in enumerate(f_reg):
                    k = j - m
                    if k >= 1:
                        res[k - 1] += a * b
            out[p] = res
        return RationalFunction(self.constant * other.constant, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RationalFunction):
            return self * other.reciprocal()
        return self * (1.0 / complex(other))

    def _taylor_regular(self, p, count: int) -> np.ndarray:
        """First ``count`` Taylor coefficients at ``p`` of f minus its principal part there."""
        out = np.zeros(count, dtype=np.complex128)
        if count == 0:
            return out
        out[0] += self.constant
        for q, c in self.terms.items():
            if q == p:
                continue
            d = p - q
            for j, coef in enumerate(c, start=1):
                # (u + d)^-j = sum_m binom(-j, m) d^(-j-m) u^m
                for m in range(count):
                    out[m] += coef * _binom_neg(j, m) * d ** (-j - m)
        return out

    def derivative(self) -> "RationalFunction":
        terms = {}
        for p, c in self.terms.items():
            d = np.zeros(len(c) + 1, dtype=np.complex128)
            for k, coef in enumerate(c, start=1):
                d[k] = -k * coef
            terms[p] = d
        return RationalFunction(0.0, terms)

    # --- numerator / denominator ----------------------------------------------
    def denominator(self) -> np.ndarray:
        """Monic ``prod_p (z - p)^order``, ascending coefficients."""
        poly = np.array([1.0 + 0j])
        for p, c in self.terms.items():
            for _ in range(len(c)):
                poly = np.convolve(poly, [-p, 1.0])
        return poly

    def times_polynomial_denominator(self, poles: Mapping[complex, int]) -> np.ndarray:
        """Coefficients (ascending) of ``D(z) f(z)`` with ``D = prod (z - p)^k``.

        ``poles`` must dominate the pole orders of ``f``; the result is then a
        polynomial.
        """
        keys = list(poles)

        def dpoly(skip_pole=None, skip=0):
            poly = np.array([1.0 + 0j])
            for p in keys:
                k = poles[p] - (skip if p == skip_pole else 0)
                for _ in range(k):
                    poly = np.convolve(poly, [-p, 1.0])
            return poly

        full = dpoly()
        out = self.constant * full
        for p, c in self.terms.items():
            q = _key(p, keys)
            if q not in poles or poles[q] < len(c):
                raise ValueError("denominator does not dominate the poles")
            for k, coef in enumerate(c, start=1):
                part = coef * dpoly(q, k)
                out = _add_arrays(out, part)
        return out

    def numerator(self) -> np.ndarray:
        return self.times_polynomial_denominator({p: len(c) for p, c in self.terms.items()})

    def zeros(self) -> np.ndarray:
        num = _trim_poly(self.numerator())
        if len(num) <= 1:
            return np.array([], dtype=np.complex128)
        return np.roots(num[::-1])

    def reciprocal(self) -> "RationalFunction":
        """``1/f`` when ``f`` has a nonzero value at infinity (simple zeros assumed)."""
        num = _trim_poly(self.numerator())
        den = self.denominator()
        if len(num) != len(den):
            raise ValueError("reciprocal needs a nonzero constant term")
        zs = np.roots(num[::-1]) if len(num) > 1 else np.array([])
        lead = num[-1]
        terms = []
        dpoly = np.polynomial.polynomial
        for i, zeta in enumerate(zs):
            others = np.delete(zs, i)
            denom = lead * np.prod(zeta - others) if others.size else lead
            terms.append((zeta, 1, dpoly.polyval(zeta, den) / denom))
        return RationalFunction(1.0 / self.constant, terms)

    def log_derivative(self) -> "RationalFunction":
        """``f'/f`` as simple poles at the zeros (+mult) and poles (-order) of ``f``."""
        if not self.terms:
            return RationalFunction(0.0)
        num = _trim_poly(self.numerator())
        terms = []
        if len(num) > 1:
            for zeta in _group_roots(np.roots(num[::-1])):
                terms.append((zeta[0], 1, zeta[1]))
        for p, c in self.terms.items():
            terms.append((p, 1, -float(len(c))))
        return RationalFunction(0.0, terms)

    # --- misc --------------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "constant": [self.constant.real, self.constant.imag],
            "terms": [
                {"pole": [p.real, p.imag], "order": k, "coefficient": [c.real, c.imag]}
                for p, cs in self.terms.items()
                for k, c in enumerate(cs, start=1)
                if c != 0
            ],
        }

    def __repr__(self) -> str:
        parts = [f"{self.constant:.6g}"]
        for p, cs in self.terms.items():
            for k, c in enumerate(cs, start=1):
                if c != 0:
                    parts.append(f"({c:.6g})/(z-{p:.6g})^{k}")
        return "RationalFunction(" + " + ".join(parts) + ")"


def _principal(f: RationalFunction, p) -> np.ndarray:
    return f.terms.get(p, np.zeros(0, dtype=np.complex128))


def _binom_neg(j: int, m: int) -> int:
    # binom(-j, m) = (-1)^m binom(j + m - 1, m)
    return (-1) ** m * comb(j + m - 1, m)


def _add_arrays(a, b):
    if a is None:
        return np.array(b, dtype=np.complex128)
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.complex128)
    out[: len(a)] += a
    out[: len(b)] += b
    return out


def _trim(c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=np.complex128)
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if nz.size else c[:0]


def _trim_poly(c: np.ndarray, rel: float = 1e-14) -> np.ndarray:
    c = np.asarray(c, dtype=np.complex128)
    scale = np.max(np.abs(c)) if c.size else 0.0
    end = len(c)
    while end > 1 and abs(c[end - 1]) <= rel * scale:
        end -= 1
    return c[:end]


def _group_roots(roots, tol: float = 1e-6):
    groups: list[list] = []
    for r in roots:
        for g in groups:
            if abs(g[0] - r) <= tol * max(1.0, abs(r)):
                g[1] += 1
                break
        else:
            groups.append([complex(r), 1.0])
    return groups


def _coerce(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)
