"""Symbol families on the unit circle and their Fourier coefficients.

Three families are supported:

* ``FisherHartwig(alpha, beta)``: ``C (1 - z)^(alpha + i beta) (1 - 1/z)^(alpha - i beta)``,
  real on the circle, ``C (2 sin(theta/2))^(2 alpha) exp(-beta (theta - pi))``.
* ``Bessel(t)``: ``C exp(t (z + 1/z) / 2)``.
* ``ExpPoles(t, poles)``: ``C exp(t z) prod_a ((z - z_a)/z)^(g_a)``.

Every symbol is normalised so that ``w_0 = 1/(2 pi)``. Moments follow
``w_m = (1/2pi) int_0^{2pi} w(e^{i theta}) e^{-i m theta} d theta``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Union

import mpmath as mp
import numpy as np

from . import kernels
from .errors import DivergentMomentError, DomainError, RangeError
from .quadrature import Rule, integrate, make_rule
from .specialfn import bessel_i_orders, is_nonpositive_integer, log_gamma

TWO_PI = 2.0 * math.pi

__all__ = [
    "Bessel",
    "ExpPoles",
    "FisherHartwig",
    "MomentSequence",
    "SymbolSpec",
    "convolution_moment",
    "moment",
    "moments",
    "normalizer",
    "quadrature_moment",
    "symbol_from_dict",
    "weight_at",
]


@dataclass(frozen=True)
class FisherHartwig:
    """Pure Fisher-Hartwig symbol with a single singularity at z = 1."""

    alpha: float
    beta: float = 0.0
    family: str = field(default="fh", init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise DomainError("FisherHartwig parameters must be finite")
        if self.alpha <= -0.5:
            raise DivergentMomentError(
                f"FisherHartwig requires alpha > -1/2 (got {self.alpha}); the weight is not integrable"
            )

    @property
    def hermitian(self) -> bool:
        return True

    @property
    def a_plus(self) -> complex:
        """``alpha + i beta``."""
        return complex(self.alpha, self.beta)

    @property
    def a_minus(self) -> complex:
        """``alpha - i beta``."""
        return complex(self.alpha, -self.beta)

    @property
    def rule_kind(self) -> str:
        return "periodic" if self.alpha == 0.0 and self.beta == 0.0 else "endpoint"

    @cached_property
    def normalizer(self) -> float:
        lg = (
            log_gamma(1 + self.a_plus)
            + log_gamma(1 + self.a_minus)
            - log_gamma(1 + 2 * self.alpha)
        )
        return math.exp(lg.real) / TWO_PI

    def raw_weight(self, rule: Rule) -> np.ndarray:
        a, b = self.alpha, self.beta
        base = 2.0 * np.sin(0.5 * rule.edge)
        return base ** (2.0 * a) * np.exp(-b * (rule.theta - math.pi))

    def params(self) -> dict:
        return {"family": "fh", "alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class Bessel:
    """The weight ``exp(t cos theta)``."""

    t: float
    family: str = field(default="bessel", init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        if not (math.isfinite(self.t) and self.t > 0):
            raise DomainError(f"Bessel symbol requires t > 0 (got {self.t})")

    @property
    def hermitian(self) -> bool:
        return True

    @property
    def rule_kind(self) -> str:
        return "periodic"

    @cached_property
    def normalizer(self) -> float:
        return 1.0 / (TWO_PI * bessel_i_orders(0, self.t)[0])

    def raw_weight(self, rule: Rule) -> np.ndarray:
        return np.exp(self.t * np.cos(rule.theta))

    def params(self) -> dict:
        return {"family": "bessel", "t": self.t}


@dataclass(frozen=True)
class ExpPoles:
    """``exp(t z) prod_a ((z - z_a)/z)^(g_a)`` with real poles in (-1, 0).

    ``poles`` is a tuple of ``(z_a, g_a)`` pairs with ``sum g_a > 0`` and
    ``sum g_a z_a = -1``.
    """

    t: float
    poles: tuple
    family: str = field(default="poles", init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        poles = tuple((float(z), float(g)) for z, g in self.poles)
        object.__setattr__(self, "poles", poles)
        if not math.isfinite(self.t):
            raise DomainError("ExpPoles requires finite t")
        if not poles:
            raise DomainError("ExpPoles requires at least one pole")
        zs = [z for z, _ in poles]
        if len(set(zs)) != len(zs):
            raise DomainError("ExpPoles poles must be distinct")
        for z, _ in poles:
            if not -1.0 < z < 0.0:
                raise DomainError(f"ExpPoles pole {z} outside (-1, 0)")
        if self.g <= 0:
            raise DomainError("ExpPoles requires sum g_a > 0")
        if abs(sum(z * g for z, g in poles) + 1.0) > 1e-12:
            raise DomainError("ExpPoles requires sum g_a z_a = -1")

    @property
    def g(self) -> float:
        return sum(g for _, g in self.poles)

    @property
    def hermitian(self) -> bool:
        return False

    @property
    def rule_kind(self) -> str:
        return "periodic"

    @cached_property
    def normalizer(self) -> float:
        raw0 = integrate(
            lambda rule: np.dot(self.raw_weight(rule), rule.weights),
            "periodic",
            start=64,
            rtol=1e-15,
            atol=1e-300,
        )
        return float(1.0 / complex(raw0).real)

    def raw_weight(self, rule: Rule) -> np.ndarray:
        xi = rule.xi
        out = np.exp(self.t * xi)
        for z, g in self.poles:
            out = out * (1.0 - z / xi) ** g
        return out

    def params(self) -> dict:
        return {"family": "poles", "t": self.t, "poles": [list(p) for p in self.poles]}


SymbolSpec = Union[FisherHartwig, Bessel, ExpPoles]


def symbol_from_dict(d: dict) -> SymbolSpec:
    fam = d["family"]
    if fam == "fh":
        return FisherHartwig(d["alpha"], d.get("beta", 0.0))
    if fam == "bessel":
        return Bessel(d["t"])
    if fam == "poles":
        return ExpPoles(d["t"], tuple(tuple(p) for p in d["poles"]))
    raise DomainError(f"unknown symbol family {fam!r}")


def normalizer(variant: SymbolSpec) -> float:
    """Constant C making ``w_0 = 1/(2 pi)``.

    Examples
    --------
    >>> abs(normalizer(FisherHartwig(1, 0)) * 4 * math.pi - 1) < 1e-14
    True
    """
    return variant.normalizer


def weight_at(spec: SymbolSpec, rule: Rule) -> np.ndarray:
    """Normalised weight at the nodes of ``rule``."""
    return spec.normalizer * spec.raw_weight(rule)


# ---------------------------------------------------------------------------
# closed forms


def _fh_moment(spec: FisherHartwig, m: int) -> complex:
    # w_m = (-1)^m Gamma(1+A) Gamma(1+B) / (2 pi Gamma(1+A-m) Gamma(1+B+m))
    a, b = spec.a_plus, spec.a_minus
    if is_nonpositive_integer(1 + a - m) or is_nonpositive_integer(1 + b + m):
        return 0j
    lg = log_gamma(1 + a) + log_gamma(1 + b) - log_gamma(1 + a - m) - log_gamma(1 + b + m)
    return (-1) ** (m % 2) * np.exp(lg) / TWO_PI


def _fh_moment_mp(spec: FisherHartwig, m: int):
    a = mp.mpc(spec.alpha, spec.beta)
    b = mp.mpc(spec.alpha, -spec.beta)
    val = mp.gamma(1 + a) * mp.gamma(1 + b) * mp.rgamma(1 + a - m) * mp.rgamma(1 + b + m)
    return (-1) ** (m % 2) * val / (2 * mp.pi)


def _expoles_moments(spec: ExpPoles, max_order: int) -> np.ndarray:
    c = spec.normalizer
    start = max(64, 1 << int(math.ceil(math.log2(4 * max_order + 8))))

    def sums(rule: Rule):
        vals = spec.raw_weight(rule) * rule.weights
        return kernels.fourier_sums(rule.theta, vals, -max_order, max_order)

    out = integrate(sums, "periodic", start=start, rtol=1e-15, atol=1e-17)
    return c * np.asarray(out) / TWO_PI


def _expoles_moments_mp(spec: ExpPoles, max_order: int, dps: int) -> np.ndarray:
    rho = max(abs(z) for z, _ in spec.poles)
    need = int(1.3 * dps * math.log(10) / -math.log(rho)) + 4 * max_order + 64
    npts = 1 << int(math.ceil(math.log2(need)))
    with mp.workdps(dps + 10):
        vals = []
        xis = []
        for j in range(npts):
            xi = mp.expjpi(mp.mpf(2 * j) / npts)
            w = mp.exp(spec.t * xi)
            for z, g in spec.poles:
                w *= mp.power(1 - mp.mpf(z) / xi, g)
            vals.append(w)
            xis.append(xi)
        out = []
        for m in range(-max_order, max_order + 1):
            out.append(mp.fsum(v * mp.power(x, -m) for v, x in zip(vals, xis)) / npts)
        zero = out[max_order]
        res = np.empty(2 * max_order + 1, dtype=object)
        for i, v in enumerate(out):
            res[i] = v / (zero * 2 * mp.pi)
    return res


def moment(spec: SymbolSpec, m: int) -> complex:
    """Single Fourier coefficient ``w_m`` of the normalised symbol.

    Examples
    --------
    >>> abs(moment(FisherHartwig(1, 0), 1) + 1 / (4 * math.pi)) < 1e-15
    True
    >>> moment(FisherHartwig(1, 0), 2)
    0j
    """
    m = int(m)
    if isinstance(spec, FisherHartwig):
        return _fh_moment(spec, m)
    if isinstance(spec, Bessel):
        vals = bessel_i_orders(abs(m), spec.t)
        return complex(vals[abs(m)] / (TWO_PI * vals[0]))
    return complex(moments(spec, abs(m))[m])


def quadrature_moment(spec: SymbolSpec, m: int, points: int = 64, max_points: int = 1 << 17) -> complex:
    """Independent quadrature value of ``w_m`` with point doubling.

    Fisher-Hartwig symbols use the endpoint-aware rule; the others use the
    uniform trapezoid rule starting at ``points`` nodes.

    Raises
    ------
    AccuracyError
        If the value is not stable by ``max_points``.
    """
    if points < 16:
        raise DomainError("quadrature_moment needs at least 16 points")
    m = int(m)

    def one(rule: Rule):
        vals = weight_at(spec, rule) * rule.weights
        return np.dot(vals, np.exp(-1j * m * rule.theta)) / TWO_PI

    return complex(
        integrate(one, spec.rule_kind, start=points, max_points=max_points, rtol=1e-14, atol=1e-17)
    )


def convolution_moment(
    spec: FisherHartwig, m: int, terms: int = 20000, tail_correction: bool = True
) -> tuple[complex, float]:
    """Fisher-Hartwig moment from the product of the two binomial series.

    ``(1 - z)^A = sum_k a_k z^k`` and ``(1 - 1/z)^B = sum_j b_j z^-j`` give
    ``w_m = C sum_j a_{m+j} b_j`` (m >= 0). The sum is cut after ``terms``
    terms. Its tail behaves like ``j^-(2 alpha + 2)``, so the leading
    Euler-Maclaurin estimate ``T_K (K/(2 alpha + 1) - 1/2)`` is added when
    ``tail_correction`` is set.

    Returns
    -------
    value : complex
        Oracle value of ``w_m``.
    tail_bound : float
        ``|T_K| K / (2 alpha + 1)``, the magnitude of the neglected tail.
    """
    if spec.alpha <= -0.5:
        raise DivergentMomentError("alpha must exceed -1/2")
    a_par, b_par = spec.a_plus, spec.a_minus
    if m < 0:
        # conjugate roles: w_{-m} uses a_j b_{m+j}
        a_par, b_par = b_par, a_par
    mm = abs(int(m))
    size = terms + mm + 1
    k = np.arange(size - 1, dtype=np.float64)

    def series(p):
        ratios = (k - p) / (k + 1.0)
        return np.concatenate([[1.0 + 0j], np.cumprod(ratios.astype(np.complex128))])

    a = series(a_par)
    b = series(b_par)
    prods = a[mm : mm + terms] * b[:terms]
    total = prods.sum()
    last = prods[-1]
    bound = abs(last) * terms / (2 * spec.alpha + 1)
    if tail_correction:
        total += last * (terms / (2 * spec.alpha + 1) - 0.5)
    return complex(spec.normalizer * total), float(spec.normalizer * bound)


# ---------------------------------------------------------------------------
# moment sequences


@dataclass(frozen=True, eq=False)
class MomentSequence:
    """Immutable table of ``w_m`` for ``-max_order <= m <= max_order``.

    ``values[m + max_order]`` holds ``w_m``; the array is complex128, or an
    object array of ``mpmath.mpc`` when ``dps`` is set.
    """

    symbol: SymbolSpec
    max_order: int
    values: np.ndarray
    dps: int | None = None

    def __post_init__(self):
        if self.values.shape != (2 * self.max_order + 1,):
            raise ValueError("values must have length 2*max_order + 1")
        self.values.setflags(write=False)

    def __getitem__(self, m: int):
        if abs(m) > self.max_order:
            raise RangeError(f"moment w_{m} outside cached range |m| <= {self.max_order}")
        return self.values[m + self.max_order]

    def __len__(self) -> int:
        return self.values.size

    @property
    def orders(self) -> np.ndarray:
        return np.arange(-self.max_order, self.max_order + 1)

    @property
    def extended(self) -> bool:
        return self.dps is not None

    def nonnegative(self) -> np.ndarray:
        """``w_0, w_1, ..., w_M``."""
        return self.values[self.max_order :]

    def nonpositive(self) -> np.ndarray:
        """``w_0, w_{-1}, ..., w_{-M}``."""
        return self.values[self.max_order :: -1]

    def as_complex(self) -> "MomentSequence":
        if self.dps is None:
            return self
        vals = np.array([complex(v) for v in self.values], dtype=np.complex128)
        return MomentSequence(self.symbol, self.max_order, vals, None)

    def extend(self, max_order: int) -> "MomentSequence":
        """Sequence covering ``max_order``; recomputes the full range if needed."""
        if max_order <= self.max_order:
            return self
        return moments(self.symbol, max_order, self.dps)

    def records(self) -> list[dict]:
        return [
            {"m": int(m), "re": float(mp.re(v)), "im": float(mp.im(v))}
            for m, v in zip(self.orders, self.values)
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["m", "re", "im"])
        for rec in self.records():
            writer.writerow([rec["m"], f"{rec['re']:.17g}", f"{rec['im']:.17g}"])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"symbol": self.symbol.params(), "max_order": self.max_order, "moments": self.records()}
        )


@lru_cache(maxsize=128)
def moments(spec: SymbolSpec, max_order: int, dps: int | None = None) -> MomentSequence:
    """All moments with ``|m| <= max_order``.

    Parameters
    ----------
    spec : SymbolSpec
        The symbol.
    max_order : int
        Largest ``|m|``.
    dps : int, optional
        Decimal digits for an extended-precision (mpmath) table.
    """
    max_order = int(max_order)
    if max_order < 0:
        raise RangeError("max_order must be nonnegative")
    ms = range(-max_order, max_order + 1)
    if dps is None:
        if isinstance(spec, FisherHartwig):
            vals = np.array([_fh_moment(spec, m) for m in ms], dtype=np.complex128)
        elif isinstance(spec, Bessel):
            iv = bessel_i_orders(max_order, spec.t)
            vals = np.array([iv[abs(m)] / (TWO_PI * iv[0]) for m in ms], dtype=np.complex128)
        else:
            vals = _expoles_moments(spec, max_order)
        return MomentSequence(spec, max_order, vals, None)
    dps = int(dps)
    with mp.workdps(dps):
        if isinstance(spec, FisherHartwig):
            vals = np.array([mp.mpc(_fh_moment_mp(spec, m)) for m in ms], dtype=object)
        elif isinstance(spec, Bessel):
            t = mp.mpf(spec.t)
            i0 = mp.besseli(0, t)
            vals = np.array([mp.mpc(mp.besseli(abs(m), t) / (2 * mp.pi * i0)) for m in ms], dtype=object)
        else:
            vals = _expoles_moments_mp(spec, max_order, dps)
    return MomentSequence(spec, max_order, vals, dps)
