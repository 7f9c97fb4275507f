"""Ladder functions A_n(z), B_n(z) and the identities built on them.

With ``w = exp(-v)`` and ``dq(z, xi) = (v'(z) - v'(xi)) / (z - xi)``::

    A_n(z) = n k_{n-1}/k_n - (k_{n-1}/phi_n(0)) z int xi dq phi_n(xi) xi^{-n} phi_n(xi) w d theta
    B_n(z) = (k_n/k_{n-1}) A_n(z)/z - n/z + int xi dq phi_n(xi) psi_n(1/xi) w d theta

On the circle ``xi^{-n} phi_n(xi) = conj(phi_n^*(xi))`` and
``psi_n(1/xi) = conj(phi_n(xi))`` for Hermitian weights. For the complex
pole family these are the biorthogonal replacements, which keep the
lowering relation ``phi_n' = A_n phi_{n-1} - B_n phi_n`` exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError
from .opuc import OpucSequence
from .quadrature import Rule, integrate
from .rational import RationalFunction
from .report import ResidualReport
from .symbols import Bessel, ExpPoles, FisherHartwig, SymbolSpec, weight_at

__all__ = [
    "DEFAULT_SAMPLE_POINTS",
    "AuxiliaryIntegrals",
    "aux_integrals",
    "check_T1_T2",
    "check_lowering",
    "closed_ladder",
    "fh_ladder_from_integrals",
    "fh_ode_closed",
    "ladder_by_quadrature",
    "ode_coefficients",
    "ode_residual",
    "v_prime",
]

DEFAULT_SAMPLE_POINTS: tuple[complex, ...] = (2.0, -1.5, 0.4 + 2.0j, 0.5, -0.25j)

_QUAD = dict(start=128, rtol=1e-13, atol=1e-16, max_points=1 << 16)


def v_prime(spec: SymbolSpec) -> RationalFunction:
    """``v' = -w'/w`` as a rational function.

    Examples
    --------
    >>> v_prime(FisherHartwig(1, 0))(2.0)
    (-1.5+0j)
    """
    if isinstance(spec, FisherHartwig):
        return RationalFunction(0.0, [(1.0, 1, -2 * spec.alpha), (0.0, 1, spec.a_minus)])
    if isinstance(spec, Bessel):
        return RationalFunction(-spec.t / 2, [(0.0, 2, spec.t / 2)])
    if isinstance(spec, ExpPoles):
        terms = [(z, 1, -g) for z, g in spec.poles] + [(0.0, 1, spec.g)]
        return RationalFunction(-spec.t, terms)
    raise TypeError(f"unsupported symbol {spec!r}")


# ---------------------------------------------------------------------------
# quadrature helpers


def _xi_minus(rule: Rule, p: complex) -> np.ndarray:
    if p == 1.0:
        return rule.xi_minus_one
    if p == 0.0:
        return rule.xi
    return rule.xi - p


def _dq(vp: RationalFunction, z: np.ndarray, rule: Rule) -> np.ndarray:
    """``(v'(z) - v'(xi)) / (z - xi)`` on a (len(z), nodes) grid, cancellation-free."""
    out = np.zeros((z.size, rule.xi.size), dtype=np.complex128)
    for p, coeffs in vp.terms.items():
        a = (z - p)[:, None]
        b = _xi_minus(rule, p)[None, :]
        for k, c in enumerate(coeffs, start=1):
            if c == 0:
                continue
            # (a^-k - b^-k)/(a - b) = -sum_{i<k} a^(i-k) b^(-1-i)
            acc = 0
            for i in range(k):
                acc = acc + a ** (i - k) * b ** (-1 - i)
            out -= c * acc
    return out


def _poly_nodes(seq: OpucSequence, n: int, rule: Rule):
    """phi_n(xi), xi^{-n} phi_n(xi), psi_n(1/xi) at the nodes."""
    phi = seq.evaluate(n, rule.xi)
    phi_bar_star = phi * rule.xi ** (-n)
    psi_inv = seq.evaluate(n, 1.0 / rule.xi, "right")
    return phi, phi_bar_star, psi_inv


def _check_off_circle(z: np.ndarray) -> None:
    if np.any(np.abs(np.abs(z) - 1.0) < 1e-8):
        raise DomainError("ladder quadrature needs |z| != 1")


def ladder_by_quadrature(spec: SymbolSpec, seq: OpucSequence, n: int, z):
    """``A_n(z), B_n(z)`` from their defining integrals.

    Parameters
    ----------
    z : complex or array_like
        Evaluation point(s) off the unit circle.

    Raises
    ------
    AccuracyError
        If the quadrature does not settle.
    """
    if n < 1:
        raise DomainError("ladder functions need n >= 1")
    cs = seq.as_complex()
    cs.require(n - 1, n)
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128)).ravel()
    _check_off_circle(zz)
    vp = v_prime(spec)
    k_prev, k_n = cs.k[n - 1], cs.k[n]
    phi0 = cs.phi0[n]

    def sums(rule: Rule):
        w = weight_at(spec, rule) * rule.weights
        phi, phib, psi = _poly_nodes(cs, n, rule)
        d = _dq(vp, zz, rule) * (rule.xi * w)[None, :]
        return np.concatenate([-(d @ (phi * phib)), d @ (phi * psi)])

    vals = integrate(sums, spec.rule_kind, **_QUAD)
    ia, ib = vals[: zz.size], vals[zz.size :]
    if vp.terms:
        if phi0 == 0:
            raise DomainError(f"phi_{n}(0) = 0: A_{n} integral form is undefined")
        A = n * k_prev / k_n + (k_prev / phi0) * zz * ia
    else:
        A = np.full(zz.shape, n * k_prev / k_n)
    B = (k_n / k_prev) * A / zz - n / zz + ib
    if np.ndim(z) == 0:
        return complex(A[0]), complex(B[0])
    return A.reshape(np.shape(z)), B.reshape(np.shape(z))


# ---------------------------------------------------------------------------
# auxiliary integrals


@dataclass
class AuxiliaryIntegrals:
    """Family-specific integrals at index ``n``.

    ``values`` holds quadrature values; ``closed`` holds the closed forms
    where the family provides them (``None`` when not applicable).
    """

    family: str
    n: int
    values: dict = field(default_factory=dict)
    closed: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]


def aux_integrals(spec: SymbolSpec, seq: OpucSequence, n: int) -> AuxiliaryIntegrals:
    """Quadrature values (and closed values where known) of the auxiliary integrals.

    FisherHartwig: ``I_n, J_n, L_n``. Bessel: ``a_n, b_n, L_n``.
    ExpPoles: ``a_n`` and, per pole index ``j``, ``b_n[j]`` and ``c_n[j]``.
    """
    cs = seq.as_complex()
    cs.require(n, n)
    r_n = cs.r[n]
    out = AuxiliaryIntegrals(spec.family, n)

    if isinstance(spec, FisherHartwig):
        singular_ok = spec.alpha > 0

        def sums(rule: Rule):
            w = weight_at(spec, rule) * rule.weights
            phi, phib, psi = _poly_nodes(cs, n, rule)
            res = [np.sum(phi * phib * w)]
            if singular_ok:
                inv = -1.0 / rule.xi_minus_one  # 1/(1 - xi)
                res += [np.sum(phi * phib * w * inv), np.sum(phi * psi * w * inv)]
            return np.array(res)

        vals = integrate(sums, spec.rule_kind, **_QUAD)
        out.values["I"] = complex(vals[0])
        out.closed["I"] = complex(r_n)
        a, b = spec.alpha, spec.beta
        if singular_ok:
            out.values["J"] = complex(vals[1])
            out.values["L"] = complex(vals[2])
            out.closed["J"] = complex((complex(a, b) - n) * r_n / (2 * a))
            out.closed["L"] = complex(a, b) / (2 * a)
        else:
            out.closed["J"] = out.closed["L"] = None
            out.notes["J"] = out.notes["L"] = "not applicable for alpha <= 0"
        return out

    if isinstance(spec, Bessel):
        t = spec.t

        def sums(rule: Rule):
            w = weight_at(spec, rule) * rule.weights
            phi, phib, psi = _poly_nodes(cs, n, rule)
            return np.array(
                [np.sum(phi * phib * w), np.sum(phi * phib * w / rule.xi), np.sum(phi * psi * w / rule.xi)]
            )

        vals = integrate(sums, spec.rule_kind, **_QUAD)
        out.values["a"] = complex(t / (2 * r_n) * vals[0])
        out.values["b"] = complex(t / (2 * r_n) * vals[1])
        out.values["L"] = complex(-t / 2 * vals[2])
        out.closed["a"] = t / 2
        if n < cs.n_max:
            s_n = cs.s[n]
            out.closed["b"] = complex(-n - t / 2 * s_n)
            out.closed["L"] = complex(t / 2 * s_n * (1 - cs.m_at(n - 1) ** 2))
        return out

    if isinstance(spec, ExpPoles):
        poles = spec.poles

        def sums(rule: Rule):
            w = weight_at(spec, rule) * rule.weights
            phi, phib, psi = _poly_nodes(cs, n, rule)
            xi = rule.xi
            kern = spec.g / xi - sum(g / (xi - z) for z, g in poles)
            res = [np.sum(kern * phi * phib * w * xi)]
            for z, g in poles:
                res.append(np.sum(phi * phib * w * xi / (xi - z)))
                res.append(np.sum(phi * psi * w / (xi - z)))
            return np.array(res)

        vals = integrate(sums, spec.rule_kind, **_QUAD)
        out.values["a"] = complex(vals[0] / r_n)
        out.values["b"] = [complex(-g * z / r_n * vals[1 + 2 * j]) for j, (z, g) in enumerate(poles)]
        out.values["c"] = [complex(g * z * vals[2 + 2 * j]) for j, (z, g) in enumerate(poles)]
        return out

    raise TypeError(f"unsupported symbol {spec!r}")


# ---------------------------------------------------------------------------
# closed ladder forms


def _inv_z(c) -> RationalFunction:
    return RationalFunction(0.0, [(0.0, 1, c)])


def closed_ladder(spec: SymbolSpec, seq: OpucSequence, n: int, aux: AuxiliaryIntegrals | None = None):
    """``(A_n, B_n)`` as :class:`RationalFunction` from the family closed forms.

    FisherHartwig: ``A_n = m_{n-1}(-alpha + i beta - n)/(z - 1)``, ``B_n = -n/(z - 1)``.
    Bessel: ``A_n = (n + b_n) m_{n-1} + m_{n-1}(t/2)/z``, ``B_n = (L_n + b_n)/z``
    with ``b_n = -n - (t/2) s_n`` and ``L_n = (t/2) s_n (1 - m_{n-1}^2)``.
    ExpPoles: the pole-family forms with quadrature auxiliaries.
    """
    if n < 1:
        raise DomainError("ladder functions need n >= 1")
    m_prev = complex(seq.m_at(n - 1))
    if isinstance(spec, FisherHartwig):
        A = RationalFunction(0.0, [(1.0, 1, m_prev * (-spec.alpha + 1j * spec.beta - n))])
        B = RationalFunction(0.0, [(1.0, 1, -n)])
        return A, B
    if isinstance(spec, Bessel):
        t = spec.t
        s_n = complex(seq.s_at(n))
        b_n = -n - t / 2 * s_n
        L_n = t / 2 * s_n * (1 - m_prev**2)
        A = RationalFunction((n + b_n) * m_prev, [(0.0, 1, m_prev * t / 2)])
        B = RationalFunction(0.0, [(0.0, 1, L_n + b_n)])
        return A, B
    if isinstance(spec, ExpPoles):
        aux = aux or aux_integrals(spec, seq, n)
        a_n = aux.values["a"]
        A = RationalFunction(
            (n + a_n) * m_prev,
            [(z, 1, m_prev * b) for (z, _), b in zip(spec.poles, aux.values["b"])],
        )
        B = A * _inv_z(1.0 / m_prev) + _inv_z(-(n + spec.g))
        B = B + RationalFunction(
            0.0, [(z, 1, g + c) for (z, g), c in zip(spec.poles, aux.values["c"])]
        )
        return A, B
    raise TypeError(f"unsupported symbol {spec!r}")


def fh_ladder_from_integrals(spec: FisherHartwig, seq: OpucSequence, n: int):
    """FisherHartwig ``A_n, B_n`` assembled from quadrature ``I_n, J_n, L_n``.

    Uses the general two-pole forms (before any closed-form simplification)::

        A_n = n k_{n-1}/k_n + (k_{n-1}/phi_n(0)) (2 alpha J_n - (alpha + i beta) I_n)
              + 2 alpha (k_{n-1}/phi_n(0)) (J_n - I_n) / (z - 1)
        B_n = (i beta - alpha - n)/z + 2 alpha (1 - L_n)/(z - 1) + (k_n/k_{n-1}) A_n/z
    """
    if spec.alpha <= 0:
        raise DomainError("integral form of the FisherHartwig ladder needs alpha > 0")
    aux = aux_integrals(spec, seq, n)
    cs = seq.as_complex()
    I, J, L = aux.values["I"], aux.values["J"], aux.values["L"]
    a, b = spec.alpha, spec.beta
    ratio = cs.k[n - 1] / cs.phi0[n]
    A = RationalFunction(
        n * cs.k[n - 1] / cs.k[n] + ratio * (2 * a * J - complex(a, b) * I),
        [(1.0, 1, 2 * a * ratio * (J - I))],
    )
    B = RationalFunction(0.0, [(0.0, 1, complex(-a, b) - n), (1.0, 1, 2 * a * (1 - L))])
    B = B + A * _inv_z(cs.k[n] / cs.k[n - 1])
    return A, B


def _ladder_source(spec, seq, source: str):
    """Callable ``n -> (A_n, B_n)`` returning rational functions or point evaluators."""
    cache: dict[int, tuple] = {}

    def get(n: int):
        if n not in cache:
            if source == "closed":
                cache[n] = closed_ladder(spec, seq, n)
            elif source == "quadrature":
                cache[n] = (
                    lambda z, n=n: ladder_by_quadrature(spec, seq, n, z)[0],
                    lambda z, n=n: ladder_by_quadrature(spec, seq, n, z)[1],
                )
            else:
                raise ValueError(f"unknown ladder source {source!r}")
        return cache[n]

    return get


def check_T1_T2(
    spec: SymbolSpec,
    seq: OpucSequence,
    n: int,
    sample_points: Sequence[complex] = DEFAULT_SAMPLE_POINTS,
    tol: float = 1e-8,
    source: str = "closed",
) -> ResidualReport:
    """Residuals of (T1) (``n >= 1``) and (T2) (``n >= 2``) at the sample points.

    (T1): ``B_{n+1} + B_n = A_n/(m_{n-1} z) + A_n/(m_{n-1} s_n) - n/z - v'``
    (T2): ``(B_{n+1} - B_n)(z + s_n) = m_n A_{n+1} - (s_n/s_{n-1})(m_{n-1}^2/m_{n-2}) A_{n-1} - 1``

    Requires ``r_n != 0`` (so not for the constant weight, where ``s_n`` is undefined).
    """
    if n < 1:
        raise DomainError("(T1) needs n >= 1")
    cs = seq.as_complex()
    rep = ResidualReport()
    get = _ladder_source(spec, cs, source)
    vp = v_prime(spec)
    m = cs.m_at
    s_n = complex(cs.s_at(n))
    An, Bn = get(n)
    An1, Bn1 = get(n + 1)
    Am1 = get(n - 1)[0] if n >= 2 else None
    for z in sample_points:
        z = complex(z)
        a_n, b_n, b_n1 = An(z), Bn(z), Bn1(z)
        terms = [b_n1, b_n, a_n / (m(n - 1) * z), a_n / (m(n - 1) * s_n), n / z, vp(z)]
        res = b_n1 + b_n - (terms[2] + terms[3] - terms[4] - terms[5])
        rep.add("T1", n, z, res, max(abs(x) for x in terms), tol)
        if n >= 2:
            s_prev = complex(cs.s_at(n - 1))
            lhs = (b_n1 - b_n) * (z + s_n)
            t1 = m(n) * An1(z)
            t2 = (s_n / s_prev) * (m(n - 1) ** 2 / m(n - 2)) * Am1(z)
            res = lhs - (t1 - t2 - 1.0)
            rep.add("T2", n, z, res, max(abs(lhs), abs(t1), abs(t2), 1.0), tol)
    return rep


def _poly_deriv(c: np.ndarray) -> np.ndarray:
    if len(c) <= 1:
        return np.zeros(1, dtype=np.complex128)
    return c[1:] * np.arange(1, len(c))


def check_lowering(
    spec: SymbolSpec,
    seq: OpucSequence,
    n: int,
    z=None,
    tol: float = 1e-9,
    source: str = "closed",
) -> ResidualReport:
    """Residual of ``phi_n' - A_n phi_{n-1} + B_n phi_n``.

    With ``source="closed"`` the identity is also checked coefficient-wise
    after clearing the denominators of ``A_n`` and ``B_n``. Points in ``z``
    (scalar or iterable) are checked pointwise.
    """
    if n < 1:
        raise DomainError("lowering relation needs n >= 1")
    cs = seq.as_complex()
    rep = ResidualReport()
    phi_n, phi_m = cs.left[n], cs.left[n - 1]
    dphi = _poly_deriv(phi_n)
    get = _ladder_source(spec, cs, source)
    A, B = get(n)
    if source == "closed":
        poles: dict[complex, int] = {}
        for f in (A, B):
            for p in f.poles():
                poles[p] = max(poles.get(p, 0), f.order(p))
        D = RationalFunction(1.0).times_polynomial_denominator(poles) if poles else np.array([1.0 + 0j])
        DA = A.times_polynomial_denominator(poles) if poles else np.array([A.constant])
        DB = B.times_polynomial_denominator(poles) if poles else np.array([B.constant])
        t1 = np.convolve(D, dphi)
        t2 = np.convolve(DA, phi_m)
        t3 = np.convolve(DB, phi_n)
        size = max(len(t1), len(t2), len(t3))
        pad = lambda c: np.concatenate([c, np.zeros(size - len(c))])  # noqa: E731
        t1, t2, t3 = pad(t1), pad(t2), pad(t3)
        res = t1 - t2 + t3
        scale = max(np.max(np.abs(t1)), np.max(np.abs(t2)), np.max(np.abs(t3)))
        rep.add("lowering", n, "coeffs", np.max(np.abs(res)), scale, tol)
    if z is not None:
        for zz in np.atleast_1d(z):
            zz = complex(zz)
            d = complex(np.polynomial.polynomial.polyval(zz, dphi))
            p_m = complex(np.polynomial.polynomial.polyval(zz, phi_m))
            p_n = complex(np.polynomial.polynomial.polyval(zz, phi_n))
            ta, tb = A(zz) * p_m, B(zz) * p_n
            rep.add("lowering", n, zz, d - ta + tb, max(abs(d), abs(ta), abs(tb)), tol)
    return rep


# ---------------------------------------------------------------------------
# second-order ODE


def fh_ode_closed(alpha: float, beta: float, n: int):
    """``P = (1 - n - alpha + i beta)/z + (2 alpha + 1)/(z - 1)``, ``Q = -n(alpha + i beta + 1)/(z(z - 1))``."""
    P = RationalFunction(0.0, [(0.0, 1, 1 - n - alpha + 1j * beta), (1.0, 1, 2 * alpha + 1)])
    c = -n * complex(alpha + 1, beta)
    # 1/(z(z-1)) = 1/(z-1) - 1/z
    Q = RationalFunction(0.0, [(1.0, 1, c), (0.0, 1, -c)])
    return P, Q


def ode_coefficients(spec: SymbolSpec, seq: OpucSequence, n: int):
    """``P(z, n), Q(z, n)`` of ``phi_n'' + P phi_n' + Q phi_n = 0``.

    For ``n >= 2`` these are assembled from ``A_n, A_{n-1}, B_n, B_{n-1}``::

        P = -(n-1)/z - v' - A_n'/A_n
        Q = B_n' - B_n A_n'/A_n + B_n B_{n-1} - (k_{n-1}/k_{n-2}) A_{n-1} B_n / z
            - (k_n/k_{n-2}) (phi_{n-1}(0)/phi_n(0)) A_{n-1} B_n
            + (k_{n-1}/k_{n-2}) (phi_{n-1}(0)/phi_n(0)) A_{n-1} A_n / z

    The general form references ``k_{n-2}``, so ``n = 1`` is handled
    separately: the FisherHartwig closed coefficients, otherwise the pair
    obtained from the lowering relation alone (``phi_0 = 1``):
    ``P = B_1 - A_1'/A_1``, ``Q = B_1' - B_1 A_1'/A_1``. A constant weight
    gives ``P = -(n-1)/z``, ``Q = 0``.
    """
    if n < 1:
        raise DomainError("ODE coefficients need n >= 1")
    vp = v_prime(spec)
    if not vp.terms and vp.constant == 0:
        return RationalFunction(0.0, [(0.0, 1, -(n - 1))]), RationalFunction(0.0)
    cs = seq.as_complex()
    if n == 1:
        if isinstance(spec, FisherHartwig):
            return fh_ode_closed(spec.alpha, spec.beta, 1)
        A, B = closed_ladder(spec, cs, 1)
        dlogA = A.log_derivative()
        return B - dlogA, B.derivative() - B * dlogA
    A, B = closed_ladder(spec, cs, n)
    Am, Bm = closed_ladder(spec, cs, n - 1)
    k, f0 = cs.k, cs.phi0
    dlogA = A.log_derivative()
    P = _inv_z(-(n - 1)) - vp - dlogA
    c1 = k[n - 1] / k[n - 2]
    c2 = (k[n] / k[n - 2]) * (f0[n - 1] / f0[n])
    c3 = c1 * (f0[n - 1] / f0[n])
    Q = (
        B.derivative()
        - B * dlogA
        + B * Bm
        - (Am * B) * _inv_z(c1)
        - (Am * B) * c2
        + (Am * A) * _inv_z(c3)
    )
    return P, Q


def ode_residual(phi, P: RationalFunction, Q: RationalFunction, z) -> complex:
    """Normalised ``phi'' + P phi' + Q phi`` at ``z``.

    Raises
    ------
    DomainError
        If ``z`` is within 1e-6 of a pole of ``P`` or ``Q``.
    """
    z = complex(z)
    for p in P.poles() + Q.poles():
        if abs(z - p) < 1e-6:
            raise DomainError(f"z = {z} is within 1e-6 of a pole at {p}")
    c = np.asarray(phi, dtype=np.complex128)
    d1 = _poly_deriv(c)
    d2 = _poly_deriv(d1)
    pv = np.polynomial.polynomial.polyval
    f0, f1, f2 = pv(z, c), pv(z, d1), pv(z, d2)
    t1, t2 = P(z) * f1, Q(z) * f0
    scale = max(abs(f2), abs(t1), abs(t2))
    val = f2 + t1 + t2
    return complex(val / scale) if scale > 0 else complex(val)
