"""Verification suites: each returns a :class:`ResidualReport` over an index range."""

from __future__ import annotations

from typing import Sequence

import mpmath as mp
import numpy as np

from .diffeq import (
    bessel_step_checks,
    dp2_oracle,
    dp2_orbit,
    one_pole_lambda_values,
    one_pole_orbit,
    one_pole_residue_checks,
)
from .fh_closed import (
    discriminant_resultant,
    fh_delta,
    fh_discriminant,
    fh_identity_37,
    fh_kn2,
    fh_ode_closed,
    fh_phi0_sq,
    fh_phi_hypergeometric,
    fh_step5_residual,
)
from .ladder import DEFAULT_SAMPLE_POINTS, check_lowering, check_T1_T2, ode_coefficients, ode_residual
from .opuc import build_toeplitz, check_recurrences, delta_product, det_lu, opuc_solve
from .rational import RationalFunction
from .report import ResidualReport
from .symbols import Bessel, ExpPoles, FisherHartwig, SymbolSpec, moments

__all__ = [
    "DEFAULT_TOLERANCES",
    "SUITES",
    "default_symbols",
    "run_suite",
    "suite_dp2",
    "suite_fh",
    "suite_ladder",
    "suite_ode",
    "suite_pole",
    "suite_recurrences",
]

DEFAULT_TOLERANCES = {
    "recurrences": 1e-9,
    "T1": 1e-8,
    "T2": 1e-8,
    "lowering": 1e-9,
    "ode": 1e-8,
    "ode_closed": 1e-10,
    "det": 1e-9,
    "kn2": 1e-9,
    "phi0_sq": 1e-9,
    "step5": 1e-12,
    "discriminant": 1e-8,
    "identity_3.7": 1e-9,
    "hypergeometric": 1e-8,
    "dp2": 1e-8,
    "bessel": 1e-8,
    "pole": 1e-6,
}

FH_GRID = ((0.5, 0.0), (1.0, 0.0), (0.3, 0.7), (2.0, 1.0))


def default_symbols(suite: str) -> list[SymbolSpec]:
    """Symbols a suite runs on when none is given."""
    fh = [FisherHartwig(a, b) for a, b in FH_GRID]
    if suite == "fh":
        return fh
    if suite == "dp2":
        return [Bessel(t) for t in (0.5, 1.0, 2.0)]
    if suite == "pole":
        return [ExpPoles(1.0, ((-0.5, 2.0),)), ExpPoles(1.0, ((-0.5, 1.0), (-0.25, 2.0)))]
    return fh + [Bessel(2.0), ExpPoles(1.0, ((-0.5, 2.0),))]


def _tol(tols: dict | None, key: str) -> float:
    merged = dict(DEFAULT_TOLERANCES)
    merged.update(tols or {})
    return merged[key]


def _constant_weight(spec) -> bool:
    return isinstance(spec, FisherHartwig) and spec.alpha == 0 and spec.beta == 0


def suite_recurrences(spec: SymbolSpec, n_max: int = 8, tols: dict | None = None) -> ResidualReport:
    """Szego recurrences and the ``l_n`` recursion for ``0 <= n < n_max``."""
    seq = opuc_solve(moments(spec, n_max), n_max)
    rep = ResidualReport()
    for n in range(n_max):
        rep.extend(check_recurrences(seq, n, _tol(tols, "recurrences")))
    return rep


def suite_ladder(
    spec: SymbolSpec,
    n_max: int = 6,
    sample_points: Sequence[complex] = DEFAULT_SAMPLE_POINTS,
    tols: dict | None = None,
) -> ResidualReport:
    """(T1)/(T2) at the sample points and the lowering relation, ``1 <= n <= n_max``.

    (T1)/(T2) are skipped for the constant weight, where ``s_n`` is undefined.
    """
    # the closed Bessel ladder at n + 1 uses s_{n+1}, hence r_{n+2}
    seq = opuc_solve(moments(spec, n_max + 2), n_max + 2)
    rep = ResidualReport()
    for n in range(1, n_max + 1):
        if not _constant_weight(spec):
            rep.extend(check_T1_T2(spec, seq, n, sample_points, _tol(tols, "T1")))
        rep.extend(check_lowering(spec, seq, n, z=sample_points, tol=_tol(tols, "lowering")))
    return rep


def _rf_distance(f: RationalFunction, g: RationalFunction) -> tuple[float, float]:
    d = f - g
    coeffs = [abs(d.constant)] + [abs(c) for p in d.poles() for c in d.terms[p]]
    scale = [abs(f.constant)] + [abs(c) for p in f.poles() for c in f.terms[p]]
    return max(coeffs), max(scale)


def suite_ode(
    spec: SymbolSpec,
    n_max: int = 6,
    sample_points: Sequence[complex] = DEFAULT_SAMPLE_POINTS,
    tols: dict | None = None,
) -> ResidualReport:
    """ODE residual at the sample points; FisherHartwig also matches the closed ``P, Q``."""
    seq = opuc_solve(moments(spec, n_max + 2), n_max + 2)
    rep = ResidualReport()
    for n in range(1, n_max + 1):
        P, Q = ode_coefficients(spec, seq, n)
        for z in sample_points:
            rep.add("ode", n, z, ode_residual(seq.left[n], P, Q, z), 1.0, _tol(tols, "ode"))
        if isinstance(spec, FisherHartwig):
            Pc, Qc = fh_ode_closed(spec.alpha, spec.beta, n)
            for name, f, g in (("ode_closed_P", P, Pc), ("ode_closed_Q", Q, Qc)):
                res, scale = _rf_distance(f, g)
                rep.add(name, n, "coeffs", res, scale, _tol(tols, "ode_closed"))
    return rep


def _phase_aligned(h: np.ndarray, g: np.ndarray) -> float:
    inner = np.vdot(h, g)
    phase = inner / abs(inner) if inner != 0 else 1.0
    return float(np.max(np.abs(h * phase - g)) / np.max(np.abs(g)))


def suite_fh(spec: FisherHartwig, n_max: int = 12, tols: dict | None = None) -> ResidualReport:
    """Closed Fisher-Hartwig data against independent numerical routes.

    Determinants (``lu``, ``product``, ``closed``) pairwise for ``n <= n_max``,
    ``k_n^2`` and ``|phi_n(0)|^2`` against Gram, Step-5 for ``n <= 30``,
    resultant against the closed discriminant and the modulus identity for
    ``n <= 6``, and the hypergeometric form up to phase for ``n <= 8``.
    """
    M = moments(spec, n_max + 1)
    seq = opuc_solve(M, n_max + 1)
    rep = ResidualReport()
    tol = lambda k: _tol(tols, k)  # noqa: E731
    for n in range(1, n_max + 1):
        vals = {
            "lu": complex(det_lu(build_toeplitz(M, n)).value),
            "product": complex(delta_product(seq, n)),
            "closed": fh_delta(spec, n),
        }
        for a, b in (("lu", "product"), ("lu", "closed"), ("product", "closed")):
            rep.add(f"det_{a}_{b}", n, None, vals[a] - vals[b], max(abs(vals[a]), abs(vals[b])), tol("det"))
        k2 = abs(seq.k[n]) ** 2
        rep.add("kn2", n, None, fh_kn2(spec, n) - k2, k2, tol("kn2"))
        p2 = abs(seq.phi0[n]) ** 2
        rep.add("phi0_sq", n, None, fh_phi0_sq(spec, n) - p2, max(p2, abs(fh_phi0_sq(spec, n)), 1e-300), tol("phi0_sq"))
    for n in range(0, 31):
        rep.add("step5", n, None, fh_step5_residual(spec, n), 1.0, tol("step5"))
    if not _constant_weight(spec):
        for n in range(1, min(6, n_max) + 1):
            dr = discriminant_resultant(seq.left[n])
            dc = fh_discriminant(spec, n)
            rep.add("discriminant", n, None, dr - dc, max(abs(dr), abs(dc)), tol("discriminant"))
            rep.add("identity_3.7", n, None, fh_identity_37(spec, n, seq)["relative"], 1.0, tol("identity_3.7"))
        for n in range(0, min(8, n_max) + 1):
            rep.add(
                "hypergeometric",
                n,
                "coeffs",
                _phase_aligned(fh_phi_hypergeometric(spec, n), seq.left[n]),
                1.0,
                tol("hypergeometric"),
            )
    return rep


def suite_dp2(
    spec: Bessel,
    n_max: int = 10,
    digits: int | None = 50,
    identity_n_max: int = 8,
    tols: dict | None = None,
) -> ResidualReport:
    """dP2 orbit against an extended-precision Gram oracle, plus the Bessel identities.

    The identities run on a 40-digit Gram solve (see :func:`bessel_step_checks`).
    """
    t = spec.t
    rep = ResidualReport()
    dps = max(80, 2 * (digits or 0))
    oracle = dp2_oracle(t, max(n_max, identity_n_max + 1), dps=dps)
    orbit = dp2_orbit(t, n_max, digits)
    for n in range(n_max + 1):
        o, v = oracle[n], orbit.values[n]
        rep.add("dp2", n, None, v - o, abs(o), _tol(tols, "dp2"), note=f"digits={digits}")
    for n in range(1, n_max + 1):
        flip = mp.sign(oracle[n]) == -mp.sign(oracle[n - 1])
        rep.add("alternating_sign", n, None, 0.0 if flip else 1.0, 1.0, 0.0)
    seq = opuc_solve(moments(spec, identity_n_max + 1, dps=40), identity_n_max + 1)
    for n in range(1, identity_n_max + 1):
        rep.extend(bessel_step_checks(seq, t, n, _tol(tols, "bessel")))
    return rep


def suite_pole(spec: ExpPoles, n_max: int = 6, tols: dict | None = None) -> ResidualReport:
    """Residue identities for ``0 <= n <= n_max``; for one pole also ``lambda`` and the recursion.

    Entries named ``*_printed`` evaluate the displayed formulas; the
    ``*_biorthogonal`` entries use the biorthogonal rederivation.
    """
    tol = _tol(tols, "pole")
    seq = opuc_solve(moments(spec, n_max + 2), n_max + 2)
    rep = ResidualReport()
    for n in range(n_max + 1):
        rep.extend(one_pole_residue_checks(spec, seq, n, tol))
    if len(spec.poles) == 1:
        z1, g1 = spec.poles[0]
        lam = one_pole_lambda_values(spec, seq, (0, 1, 2))
        for form in ("printed", "biorthogonal"):
            base = lam[form][0]
            for n, v in enumerate(lam[form]):
                rep.add(f"lambda_{form}", n, None, v - base, max(1.0, abs(base)), tol)
        orb = one_pole_orbit(spec.t, z1, g1, n_max + 2, seq)
        for form in ("printed", "biorthogonal"):
            for n, (p, o) in enumerate(zip(orb[form], orb["oracle"])):
                rep.add(f"one_pole_{form}", n, None, p - o, max(abs(o), abs(p)), tol, note="predicts r_(n+2)")
    return rep


SUITES = ("recurrences", "ladder", "ode", "fh", "dp2", "pole")


def _applicable(suite: str, spec: SymbolSpec) -> bool:
    if suite == "fh":
        return isinstance(spec, FisherHartwig)
    if suite == "dp2":
        return isinstance(spec, Bessel)
    if suite == "pole":
        return isinstance(spec, ExpPoles)
    return True


def run_suite(
    suite: str,
    spec: SymbolSpec | None = None,
    n_max: int | None = None,
    sample_points: Sequence[complex] = DEFAULT_SAMPLE_POINTS,
    digits: int | None = 50,
    tols: dict | None = None,
) -> list[tuple[SymbolSpec, str, ResidualReport]]:
    """Run one suite (or ``"all"``) on ``spec`` or on the suite's default symbols.

    Returns ``(symbol, suite, report)`` triples in a deterministic order.
    """
    names = SUITES if suite == "all" else (suite,)
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    out = []
    for name in names:
        specs = [spec] if spec is not None else default_symbols(name)
        for s in specs:
            if not _applicable(name, s):
                if suite != "all":
                    raise ValueError(f"suite {name!r} does not apply to symbol family {s.family!r}")
                continue
            kw = {} if n_max is None else {"n_max": n_max}
            if name == "recurrences":
                rep = suite_recurrences(s, tols=tols, **kw)
            elif name == "ladder":
                rep = suite_ladder(s, sample_points=sample_points, tols=tols, **kw)
            elif name == "ode":
                rep = suite_ode(s, sample_points=sample_points, tols=tols, **kw)
            elif name == "fh":
                rep = suite_fh(s, tols=tols, **kw)
            elif name == "dp2":
                rep = suite_dp2(s, digits=digits, tols=tols, **kw)
            else:
                rep = suite_pole(s, tols=tols, **kw)
            out.append((s, name, rep))
    return out
