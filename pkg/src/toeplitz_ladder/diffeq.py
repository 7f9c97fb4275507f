"""Nonlinear difference equations for the Bessel and one-pole symbols.

The Bessel weight ``e^{t cos theta}`` gives the discrete Painleve II
recursion for ``r_n = phi_n(0)/k_n``. The exponential symbol with one pole
gives a second-order recursion carrying an integration constant ``lambda``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import mpmath as mp
import numpy as np

from . import kernels
from .errors import DomainError, InconsistencyError, SingularStepError
from .ladder import aux_integrals, closed_ladder
from .opuc import OpucSequence, opuc_solve
from .report import ResidualReport
from .specialfn import bessel_i
from .symbols import Bessel, ExpPoles, moments

__all__ = [
    "RecurrenceOrbit",
    "bessel_step_checks",
    "dp2_oracle",
    "dp2_orbit",
    "dp2_seeds",
    "dp2_step",
    "one_pole_lambda",
    "one_pole_lambda_values",
    "one_pole_orbit",
    "one_pole_residue_checks",
    "one_pole_step",
    "one_pole_step_biorthogonal",
]

LAMBDA_TOL = 1e-6


@dataclass
class RecurrenceOrbit:
    """Values ``r_0, r_1, ...`` of a recursion, optionally paired with an oracle.

    Attributes
    ----------
    family : str
        ``"dP2"`` or ``"OnePole"``.
    params : dict
        Family parameters (``t``, and ``z1, g1`` for the pole family).
    values : list
        ``r_n``; floats, or ``mpmath.mpf`` when ``precision_digits`` is set.
    precision_digits : int or None
        Working precision; ``None`` means IEEE double.
    oracle : list, optional
        Reference ``r_n`` (for instance from :func:`dp2_oracle`).
    """

    family: str
    params: dict
    values: list
    precision_digits: int | None = None
    oracle: list | None = field(default=None)

    def __len__(self) -> int:
        return len(self.values)

    def abs_diff(self) -> list[float]:
        if self.oracle is None:
            raise ValueError("orbit has no oracle attached")
        return [float(abs(a - b)) for a, b in zip(self.values, self.oracle)]

    def rel_diff(self) -> list[float]:
        if self.oracle is None:
            raise ValueError("orbit has no oracle attached")
        return [float(abs(a - b) / abs(b)) if b != 0 else float(abs(a)) for a, b in zip(self.values, self.oracle)]

    def _rows(self):
        diffs = self.abs_diff() if self.oracle is not None else [None] * len(self.values)
        for n, v in enumerate(self.values):
            o = self.oracle[n] if self.oracle is not None and n < len(self.oracle) else None
            yield n, v, o, diffs[n] if n < len(diffs) else None

    def to_csv(self) -> str:
        """Columns ``n, r_n, oracle_r_n, abs_diff`` at 17 significant digits."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "r_n", "oracle_r_n", "abs_diff"])
        fmt = lambda x: "" if x is None else f"{float(mp.re(x)):.17g}"  # noqa: E731
        for n, v, o, d in self._rows():
            w.writerow([n, fmt(v), fmt(o), fmt(d)])
        return buf.getvalue()

    def records(self) -> list[dict]:
        f = lambda x: None if x is None else float(mp.re(x))  # noqa: E731
        return [{"n": n, "r_n": f(v), "oracle_r_n": f(o), "abs_diff": d} for n, v, o, d in self._rows()]

    def to_json(self) -> str:
        return json.dumps(
            {
                "family": self.family,
                "params": self.params,
                "precision_digits": self.precision_digits,
                "orbit": self.records(),
            }
        )


# ---------------------------------------------------------------------------
# discrete Painleve II


def dp2_seeds(t: float) -> tuple[float, float]:
    """``(r_0, r_1) = (1, -I_1(t)/I_0(t))``.

    Examples
    --------
    >>> round(dp2_seeds(2.0)[1], 6)
    -0.697775
    """
    if not t > 0:
        raise DomainError("dP2 seeds need t > 0")
    return 1.0, -bessel_i(1, t) / bessel_i(0, t)


def dp2_step(t, n: int, r_prev, r_curr):
    """``r_{n+1} = -(2n/t) r_n/(1 - r_n^2) - r_{n-1}``.

    Raises
    ------
    DomainError
        If ``t = 0``.
    SingularStepError
        If ``r_n = +-1``.

    Examples
    --------
    >>> dp2_step(2.0, 3, 0.25, 0.0)
    -0.25
    """
    if t == 0:
        raise DomainError("dP2 step divides by t; t = 0 is excluded")
    den = 1 - r_curr * r_curr
    if den == 0:
        raise SingularStepError(f"dP2 step at n = {n}: r_n = {r_curr} gives 1 - r_n^2 = 0")
    return -(2 * n / t) * r_curr / den - r_prev


def dp2_orbit(t: float, n_max: int, precision_digits: int | None = None) -> RecurrenceOrbit:
    """Forward dP2 orbit ``r_0..r_{n_max}`` from the Bessel-ratio seeds.

    Forward iteration is unstable: the physical orbit is the recessive
    solution, so rounding in ``r_1`` grows roughly like ``(n!)^2 (2/t)^(2n)``.
    ``precision_digits`` sets the working precision (mpmath) when given; the
    seeds are recomputed at that precision.
    """
    if not t > 0:
        raise DomainError("dP2 orbit needs t > 0")
    params = {"t": float(t)}
    if precision_digits is None:
        vals = kernels.dp2_orbit(float(t), dp2_seeds(t)[1], int(n_max))
        if np.isnan(vals).any():
            bad = int(np.argmax(np.isnan(vals)))
            raise SingularStepError(f"dP2 step at n = {bad - 1} hit r_n = +-1")
        return RecurrenceOrbit("dP2", params, [float(v) for v in vals], None)
    with mp.workdps(int(precision_digits)):
        tm = mp.mpf(t)
        r = [mp.mpf(1), -mp.besseli(1, tm) / mp.besseli(0, tm)]
        for n in range(1, n_max):
            r.append(dp2_step(tm, n, r[n - 1], r[n]))
        r = r[: n_max + 1]
    return RecurrenceOrbit("dP2", params, r, int(precision_digits))


def dp2_oracle(t: float, n_max: int, dps: int = 60) -> list:
    """Reference ``r_n`` from an extended-precision Gram solve on Bessel moments."""
    seq = opuc_solve(moments(Bessel(float(t)), n_max, dps=dps), n_max)
    return [mp.re(v) for v in seq.r]


# ---------------------------------------------------------------------------
# Bessel identities


def _bessel_aux_mp(seq: OpucSequence, t, n: int) -> dict:
    # a_n and L_n by the periodic trapezoid rule in extended precision; the
    # integrands are trigonometric polynomials times an entire weight, so
    # N = 2n + 64 nodes are exact to far below the working precision
    N = 2 * n + 64
    t = mp.mpf(t)
    phi, psi = seq.left[n], seq.right[n]
    norm = 1 / (2 * mp.pi * mp.besseli(0, t))
    sa = sl = mp.mpc(0)
    for j in range(N):
        th = 2 * mp.pi * j / N
        xi = mp.expjpi(2 * mp.mpf(j) / N)
        w = norm * mp.exp(t * mp.cos(th))
        f = mp.polyval(list(reversed(phi)), xi)
        g = mp.polyval(list(reversed(psi)), 1 / xi)
        sa += f * f * xi ** (-n) * w
        sl += f * g * w / xi
    h = 2 * mp.pi / N
    return {"a": t / (2 * seq.r[n]) * sa * h, "L": -t / 2 * sl * h}


def bessel_step_checks(seq: OpucSequence, t: float, n: int, tol: float = 1e-8) -> ResidualReport:
    """Residuals of the Bessel-weight identities at index ``n >= 1``.

    * ``5.6``: ``-2n/t = m_{n-1}^2 (s_n + 1/s_{n-1})``
    * ``5.7``: ``s_n^2 = (1 - m_n^2)/(1 - m_{n-1}^2)``
    * ``5.8``: ``m_{n-1}^2 = 1 - r_n^2``
    * ``L_step4``: ``L_n = (t/2) s_n (1 - m_{n-1}^2)`` against quadrature ``L_n``
    * ``L_step5``: ``L_n = n + (t/2)(s_n + m_{n-1}^2/s_{n-1})`` against quadrature ``L_n``
    * ``a_n``: quadrature ``a_n`` against ``t/2``

    ``seq`` must reach index ``n + 1``. For an extended-precision ``seq``
    the algebra and the quadratures run at its precision: ``L_n`` is of size
    ``r_n r_{n+1}`` and ``a_n`` carries ``1/r_n``, so double precision loses
    them once ``r_n`` drops below about ``1e-8``.
    """
    if n < 1:
        raise DomainError("Bessel step identities need n >= 1")
    seq.require(n - 1, n + 1)
    ctx = mp.workdps(seq.dps) if seq.dps else _nullctx()
    with ctx:
        m2p = seq.m_at(n - 1) ** 2
        m2 = seq.m_at(n) ** 2
        s_n, s_p = seq.s_at(n), seq.s_at(n - 1)
        r_n = seq.r[n]
        if seq.dps:
            aux = _bessel_aux_mp(seq, t, n)
            t = mp.mpf(t)
        else:
            aux = aux_integrals(Bessel(float(t)), seq, n).values
        rep = ResidualReport()

        lhs = -2 * n / t
        rhs = m2p * (s_n + 1 / s_p)
        rep.add("5.6", n, None, lhs - rhs, max(abs(lhs), abs(m2p * s_n), abs(m2p / s_p)), tol)

        lhs, num, den = s_n**2, 1 - m2, 1 - m2p
        rep.add("5.7", n, None, lhs * den - num, max(abs(lhs * den), abs(num)), tol)

        rep.add("5.8", n, None, m2p - (1 - r_n**2), max(abs(m2p), 1), tol)

        Lq = aux["L"]
        L4 = t / 2 * s_n * (1 - m2p)
        L5 = n + t / 2 * (s_n + m2p / s_p)
        rep.add("L_step4", n, None, Lq - L4, max(abs(Lq), abs(L4)), tol)
        rep.add("L_step5", n, None, Lq - L5, max(abs(Lq), abs(L5), n), tol)
        rep.add("a_n", n, None, aux["a"] - t / 2, t / 2, tol)
    return rep


class _nullctx:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


# ---------------------------------------------------------------------------
# one-pole symbol


def _one_pole_spec(t, z1, g1) -> ExpPoles:
    return ExpPoles(float(t), ((float(z1), float(g1)),))


def one_pole_lambda_values(spec: ExpPoles, seq: OpucSequence, indices: Sequence[int] = (0, 1, 2)) -> dict:
    """``lambda`` at each index in two forms.

    ``printed``: ``t r_n r_{n+1} - sum_a c_n(a)``.
    ``biorthogonal``: ``t q_n r_{n+1} - sum_a c_n(a)`` with ``q_n = psi_n(0)/k_n``.
    Both agree at ``n = 0``; only the second is ``n``-independent for
    non-Hermitian symbols.
    """
    cs = seq.as_complex()
    out = {"printed": [], "biorthogonal": []}
    for n in indices:
        cs.require(n, n + 1)
        c = sum(aux_integrals(spec, cs, n).values["c"])
        out["printed"].append(complex(spec.t * cs.r[n] * cs.r[n + 1] - c))
        out["biorthogonal"].append(complex(spec.t * cs.q[n] * cs.r[n + 1] - c))
    return out


def one_pole_lambda(t: float, z1: float, g1: float, seq: OpucSequence | None = None, tol: float = LAMBDA_TOL) -> complex:
    """Integration constant ``lambda = t r_0 r_1 - c_0`` of the one-pole recursion.

    Constancy is cross-checked at ``n = 1, 2`` through the biorthogonal form
    ``t q_n r_{n+1} - c_n`` (identical to the above at ``n = 0``).

    Raises
    ------
    DomainError
        If ``g1 z1 != -1``.
    InconsistencyError
        If the values at ``n = 0, 1, 2`` differ by more than ``tol`` (relative).
    """
    spec = _one_pole_spec(t, z1, g1)
    if seq is None:
        seq = opuc_solve(moments(spec, 4), 4)
    vals = one_pole_lambda_values(spec, seq)
    lam = vals["printed"][0]
    spread = max(abs(v - lam) for v in vals["biorthogonal"])
    if spread > tol * max(1.0, abs(lam)):
        raise InconsistencyError(f"lambda varies with n by {spread:.3e}", vals["biorthogonal"])
    return lam


def one_pole_step(t, z1, lam, n: int, r_n, r_next):
    """The displayed one-pole recursion, evaluated as written::

        r_{n+2} = -[(n r_n - t) z1 - 2 lambda + (n + 1)] / (t (1 - r_{n+1}^2)) - r_n

    Raises
    ------
    SingularStepError
        If ``t (1 - r_{n+1}^2) = 0``.

    Examples
    --------
    >>> one_pole_step(1.0, -0.5, 0.0, 0, 1.0, 0.0)
    -2.5
    """
    den = t * (1 - r_next * r_next)
    if den == 0:
        raise SingularStepError(f"one-pole step at n = {n}: t (1 - r_(n+1)^2) = 0")
    return -((n * r_n - t) * z1 - 2 * lam + (n + 1)) / den - r_n


def one_pole_step_biorthogonal(t, z1, lam, n: int, r_n, r_next, q_n, q_next):
    """One-pole recursion rederived with biorthogonal data (``g1 z1 = -1``)::

        r_{n+2} = [t q_n r_{n+1}^2 - (2 lambda + n + 1 - z1 t) r_{n+1} - (1 - n z1) r_n]
                  / (t (1 - r_{n+1} q_{n+1}))

    ``lambda`` here is the biorthogonal constant ``t q_n r_{n+1} - c_n``.
    """
    den = t * (1 - r_next * q_next)
    if den == 0:
        raise SingularStepError(f"one-pole step at n = {n}: t (1 - r_(n+1) q_(n+1)) = 0")
    num = t * q_n * r_next**2 - (2 * lam + n + 1 - z1 * t) * r_next - (1 - n * z1) * r_n
    return num / den


def one_pole_orbit(t, z1, g1, n_max: int, seq: OpucSequence | None = None) -> dict:
    """Predicted ``r_{n+2}`` from oracle ``r_n, r_{n+1}`` for ``0 <= n <= n_max - 2``.

    Returns ``{"oracle", "printed", "biorthogonal"}`` lists indexed by
    ``n + 2``; each prediction is one step from exact data, so the two
    recursions are compared without error accumulation.
    """
    spec = _one_pole_spec(t, z1, g1)
    if seq is None or seq.n_max < n_max:
        seq = opuc_solve(moments(spec, n_max), n_max)
    cs = seq.as_complex()
    lam = one_pole_lambda_values(spec, cs, (0,))["printed"][0]
    r, q = cs.r, cs.q
    printed, bio = [], []
    for n in range(n_max - 1):
        printed.append(complex(one_pole_step(t, z1, lam, n, r[n], r[n + 1])))
        bio.append(complex(one_pole_step_biorthogonal(t, z1, lam, n, r[n], r[n + 1], q[n], q[n + 1])))
    return {"lambda": lam, "oracle": [complex(v) for v in r[2 : n_max + 1]], "printed": printed, "biorthogonal": bio}


def one_pole_residue_checks(spec: ExpPoles, seq: OpucSequence, n: int, tol: float = 1e-6) -> ResidualReport:
    """Residue identities of the exponential-with-poles symbol at index ``n``.

    * ``6.2``: ``a_n + n = -s_n t``
    * ``6.3``: ``a_n = g + sum_a b_n(a)/z_a``
    * ``6.4``: ``g_a + c_{n+1}(a) + c_n(a) + b_{n+1}(a)/z_a - b_n(a)/s_n = 0`` per pole
    * ``6.6``: residue at ``z = 0`` of (T2) built from the closed ladder (``n >= 2``)
    * ``step4``: ``1 + a_{n+1} - a_n + sum(c_{n+1} - c_n) = m_n^2 (n+1+a_{n+1}) - (s_n/s_{n-1}) m_{n-1}^2 (n-1+a_{n-1})`` (``n >= 1``)
    * ``6.7``: ``(z_a + s_n)(c_{n+1} - c_n + (b_{n+1} - b_n)/z_a) = m_n^2 b_{n+1} - (s_n/s_{n-1}) m_{n-1}^2 b_{n-1}`` per pole (``n >= 1``)
    * ``1-rq``: ``m_{n-1}^2 = 1 - r_n q_n`` (``n >= 1``)

    ``seq`` must reach index ``n + 1``; for ``n >= 2`` the (T2) residue also uses ``n + 1``.
    """
    cs = seq.as_complex()
    cs.require(n, n + 1)
    rep = ResidualReport()
    t, g = spec.t, spec.g
    Z = np.array([z for z, _ in spec.poles])
    G = np.array([ga for _, ga in spec.poles])
    aux = {k: aux_integrals(spec, cs, k) for k in range(max(n - 1, 0), n + 2)}
    a = {k: aux[k].values["a"] for k in aux}
    b = {k: np.array(aux[k].values["b"]) for k in aux}
    c = {k: np.array(aux[k].values["c"]) for k in aux}
    s_n = complex(cs.s_at(n))

    rep.add("6.2", n, None, a[n] + n + s_n * t, max(abs(a[n]), n, abs(s_n * t)), tol)
    tb = np.sum(b[n] / Z)
    rep.add("6.3", n, None, a[n] - g - tb, max(abs(a[n]), g, abs(tb)), tol)
    for j in range(len(Z)):
        terms = [G[j], c[n + 1][j], c[n][j], b[n + 1][j] / Z[j], b[n][j] / s_n]
        res = terms[0] + terms[1] + terms[2] + terms[3] - terms[4]
        rep.add("6.4", n, complex(Z[j]), res, max(abs(x) for x in terms), tol)
    if n >= 1:
        m2 = complex(cs.m_at(n)) ** 2
        m2p = complex(cs.m_at(n - 1)) ** 2
        s_p = complex(cs.s_at(n - 1))
        lhs = 1 + a[n + 1] - a[n] + np.sum(c[n + 1] - c[n])
        t1 = m2 * (n + 1 + a[n + 1])
        t2 = s_n / s_p * m2p * (n - 1 + a[n - 1])
        rep.add("step4", n, None, lhs - (t1 - t2), max(abs(lhs), abs(t1), abs(t2), 1.0), tol)
        for j in range(len(Z)):
            lhs = (Z[j] + s_n) * (c[n + 1][j] - c[n][j] + (b[n + 1][j] - b[n][j]) / Z[j])
            t1 = m2 * b[n + 1][j]
            t2 = s_n / s_p * m2p * b[n - 1][j]
            rep.add("6.7", n, complex(Z[j]), lhs - (t1 - t2), max(abs(lhs), abs(t1), abs(t2)), tol)
        rq = 1 - complex(cs.r[n] * cs.q[n])
        rep.add("1-rq", n, None, m2p - rq, max(abs(m2p), abs(rq)), tol)
    if n >= 2:
        rep.extend(_t2_residue_at_zero(spec, cs, n, tol))
    return rep


def _t2_residue_at_zero(spec, cs, n, tol) -> ResidualReport:
    # Residue at 0 of (B_{n+1} - B_n)(z + s_n) - m_n A_{n+1} + (s_n/s_{n-1})(m_{n-1}^2/m_{n-2}) A_{n-1} + 1
    rep = ResidualReport()
    A0, B0 = closed_ladder(spec, cs, n)
    A1, B1 = closed_ladder(spec, cs, n + 1)
    Am = closed_ladder(spec, cs, n - 1)[0]
    s_n, s_p = complex(cs.s_at(n)), complex(cs.s_at(n - 1))
    m = lambda k: complex(cs.m_at(k))  # noqa: E731
    t1 = A1 * m(n)
    t2 = Am * (s_n / s_p * m(n - 1) ** 2 / m(n - 2))
    # residue at 0 of z f is the order-2 coefficient of f
    diff = B1 - B0
    res_lhs = diff.coefficient(0.0, 2) + s_n * diff.residue(0.0)
    r1, r2 = t1.residue(0.0), t2.residue(0.0)
    # res_0 B_k = A_k(0)/m_{k-1} - (k + g); these terms cancel, so they set the scale
    scale = abs(s_n) * max(abs(A1(0.0) / m(n)), abs(A0(0.0) / m(n - 1)), n + 1 + spec.g)
    rep.add("6.6", n, 0.0, res_lhs - r1 + r2, max(scale, abs(r1), abs(r2)), tol)
    return rep
