"""Acceptance criteria at their stated tolerances.

Each test prints one ``PASS``/``FAIL`` line and asserts the criterion.
Run ``python tests/test_acceptance.py`` for the summary alone, or
``pytest tests/test_acceptance.py -s`` to see the lines inside pytest.
Lines tagged ``info`` are diagnostics next to a criterion and are not
asserted.
"""

from __future__ import annotations

import math
import time

import mpmath as mp
import numpy as np
import pytest

from toeplitz_ladder.diffeq import bessel_step_checks, dp2_oracle, dp2_orbit, one_pole_lambda_values, one_pole_orbit
from toeplitz_ladder.fh_closed import (
    discriminant_resultant,
    fh_asymptotics,
    fh_delta,
    fh_discriminant,
    fh_identity_37,
    fh_kn2,
    fh_ode_closed,
    fh_phi0_sq,
    fh_phi_hypergeometric,
    fh_step5_residual,
)
from toeplitz_ladder.ladder import DEFAULT_SAMPLE_POINTS, check_lowering, check_T1_T2, ode_coefficients, ode_residual
from toeplitz_ladder.opuc import build_toeplitz, delta_product, det_lu, opuc_solve
from toeplitz_ladder.symbols import Bessel, ExpPoles, FisherHartwig, moments

FH_GRID = [(0.5, 0.0), (1.0, 0.0), (0.3, 0.7), (2.0, 1.0)]
BESSEL_T = [0.5, 1.0, 2.0]


def _line(tag: str, ok: bool, detail: str) -> str:
    return f"[{tag:>10}] {'PASS' if ok else 'FAIL'}  {detail}"


def _info(tag: str, detail: str) -> str:
    return f"[{tag:>10}] info  {detail}"


# ---------------------------------------------------------------------------
# criteria; each returns (ok, [lines])


def criterion_1():
    start = time.perf_counter()
    worst = 0.0
    for ab in FH_GRID:
        p = FisherHartwig(*ab)
        M = moments(p, 12)
        seq = opuc_solve(M, 12)
        for n in range(1, 13):
            v = [complex(det_lu(build_toeplitz(M, n)).value), complex(delta_product(seq, n)), fh_delta(p, n)]
            for i in range(3):
                for j in range(i + 1, 3):
                    worst = max(worst, abs(v[i] - v[j]) / max(abs(v[i]), abs(v[j])))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 5.0
    return ok, [_line("1", ok, f"det lu/product/closed max rel {worst:.2e} (tol 1e-9), {elapsed:.2f} s (< 5 s)")]


def criterion_2():
    worst = 0.0
    for ab in FH_GRID:
        p = FisherHartwig(*ab)
        seq = opuc_solve(moments(p, 12), 12)
        for n in range(1, 13):
            k2, f2 = abs(seq.k[n]) ** 2, abs(seq.phi0[n]) ** 2
            worst = max(worst, abs(fh_kn2(p, n) - k2) / k2, abs(fh_phi0_sq(p, n) - f2) / f2)
    spot = abs(fh_kn2(FisherHartwig(1, 0), 1) - 4 / 3)
    ok = worst <= 1e-9 and spot < 1e-12
    return ok, [_line("2", ok, f"k_n^2, |phi_n(0)|^2 vs Gram max rel {worst:.2e} (tol 1e-9); k_1^2(1,0) - 4/3 = {spot:.1e}")]


def criterion_3():
    worst = max(fh_step5_residual(FisherHartwig(*ab), n) for ab in FH_GRID for n in range(31))
    ok = worst < 1e-12
    return ok, [_line("3", ok, f"Step-5 residual n <= 30 max {worst:.2e} (tol 1e-12)")]


def criterion_4():
    specs = [FisherHartwig(*ab) for ab in FH_GRID] + [Bessel(t) for t in BESSEL_T]
    t_worst = low_worst = ode_worst = closed_worst = 0.0
    for spec in specs:
        seq = opuc_solve(moments(spec, 8), 8)
        for n in range(1, 7):
            t_worst = max(t_worst, check_T1_T2(spec, seq, n).max_relative())
            low_worst = max(low_worst, check_lowering(spec, seq, n).max_relative())
            P, Q = ode_coefficients(spec, seq, n)
            for z in DEFAULT_SAMPLE_POINTS:
                ode_worst = max(ode_worst, abs(ode_residual(seq.left[n], P, Q, z)))
            if isinstance(spec, FisherHartwig):
                Pc, Qc = fh_ode_closed(spec.alpha, spec.beta, n)
                for z in DEFAULT_SAMPLE_POINTS:
                    closed_worst = max(
                        closed_worst,
                        abs(P(z) - Pc(z)) / max(1.0, abs(Pc(z))),
                        abs(Q(z) - Qc(z)) / max(1.0, abs(Qc(z))),
                    )
    ok = t_worst < 1e-8 and low_worst < 1e-9 and ode_worst < 1e-8 and closed_worst < 1e-8
    return ok, [
        _line(
            "4",
            ok,
            f"T1/T2 {t_worst:.2e} (1e-8), lowering coeffs {low_worst:.2e} (1e-9), "
            f"ODE {ode_worst:.2e} (1e-8), general vs FH closed P,Q {closed_worst:.2e}",
        )
    ]


_ORACLES: dict = {}


def _dp2_oracle(t):
    if t not in _ORACLES:
        _ORACLES[t] = dp2_oracle(t, 25, dps=80)
    return _ORACLES[t]


def criterion_5():
    lines = []
    worst_a = {}
    for t in BESSEL_T:
        orb = dp2_orbit(t, 10)
        orb.oracle = _dp2_oracle(t)[:11]
        worst_a[t] = max(orb.rel_diff())
    ok_a = max(worst_a.values()) <= 1e-8
    lines.append(
        _line("5a", ok_a, "double orbit n <= 10 max rel vs Gram: " + ", ".join(f"t={t}: {v:.2e}" for t, v in worst_a.items()) + " (tol 1e-8)")
    )
    worst_b, first_bad = {}, {}
    for t in BESSEL_T:
        orb = dp2_orbit(t, 25, precision_digits=40)
        orb.oracle = _dp2_oracle(t)
        rel = orb.rel_diff()
        worst_b[t] = max(rel)
        first_bad[t] = next((n for n, v in enumerate(rel) if v > 1e-12), None)
    ok_b = max(worst_b.values()) <= 1e-12
    lines.append(
        _line(
            "5b",
            ok_b,
            "40-digit orbit n <= 25 max rel: "
            + ", ".join(f"t={t}: {worst_b[t]:.1e} (first n > 1e-12: {first_bad[t]})" for t in BESSEL_T)
            + " (tol 1e-12)",
        )
    )
    r2 = dp2_orbit(2.0, 2).values[2]
    diff = abs(r2 - float(_dp2_oracle(2.0)[2]))
    ok_c = diff < 1e-4 and abs(r2 - 0.3599) < 1e-4
    lines.append(_line("5c", ok_c, f"r_2(t=2) = {r2:.6f}, |diff| vs Gram {diff:.1e} (tol 1e-4)"))
    ok = ok_a and ok_b and ok_c
    lines.append(_line("5", ok, "discrete Painleve II forward orbit (see 5a-5c; forward iteration is unstable)"))
    return ok, lines


def criterion_6():
    worst = {"5.6": 0.0, "5.7": 0.0, "5.8": 0.0, "a_n": 0.0}
    for t in BESSEL_T:
        seq = opuc_solve(moments(Bessel(t), 9, dps=40), 9)
        for n in range(1, 9):
            rep = bessel_step_checks(seq, t, n)
            for key in worst:
                worst[key] = max(worst[key], rep.max_relative(key))
    ok = max(worst.values()) < 1e-8
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    return ok, [_line("6", ok, f"Bessel identities n <= 8 (40-digit Gram data): {detail} (tol 1e-8)")]


def criterion_7():
    worst_d = worst_37 = 0.0
    for ab in [(1.0, 0.0), (0.5, 0.0)]:
        p = FisherHartwig(*ab)
        seq = opuc_solve(moments(p, 6), 6)
        for n in range(1, 7):
            dr, dc = discriminant_resultant(seq.left[n]), fh_discriminant(p, n)
            worst_d = max(worst_d, abs(dr - dc) / max(abs(dr), abs(dc)))
            worst_37 = max(worst_37, fh_identity_37(p, n, seq)["relative"])
    ok = worst_d <= 1e-8 and worst_37 < 1e-9
    return ok, [_line("7", ok, f"resultant vs closed discriminant {worst_d:.2e} (1e-8), modulus identity {worst_37:.2e} (1e-9)")]


def _trend(values):
    dev = [abs(v - 1) for v in values]
    return dev[0] > dev[1] > dev[2] and dev[2] <= 0.1, dev


def criterion_8():
    start = time.perf_counter()
    lines, ok = [], True
    grid = [(0.5, 0.0), (1.0, 0.0), (0.3, 0.7)]
    printed_ok = True
    for ab in grid:
        p = FisherHartwig(*ab)
        asy = [fh_asymptotics(p, n) for n in (10, 20, 30)]
        okd, _ = _trend([a.delta_ratio for a in asy])
        okD, _ = _trend([a.disc_ratio for a in asy])
        okP, _ = _trend([a.disc_ratio_printed for a in asy])
        ok &= okd and okD
        printed_ok &= okP
        lines.append(
            _info(
                "8",
                f"{ab}: Delta ratio {', '.join(f'{a.delta_ratio:.4f}' for a in asy)}; "
                f"|D| ratio {', '.join(f'{a.disc_ratio:.4f}' for a in asy)} at n = 10, 20, 30",
            )
        )
    slow = [fh_asymptotics(FisherHartwig(2.0, 1.0), n) for n in (10, 20, 30)]
    lines.append(
        _info(
            "8",
            f"(2, 1) converges slowly: Delta ratio {', '.join(f'{a.delta_ratio:.3f}' for a in slow)}, "
            f"|D| ratio {', '.join(f'{a.disc_ratio:.3f}' for a in slow)} (not part of the grid)",
        )
    )
    elapsed = time.perf_counter() - start
    ok &= elapsed < 1.0
    lines.append(_line("8", ok, f"asymptote ratios within 10% at n=30, monotone over 10/20/30 ({elapsed:.2f} s)"))
    lit = [fh_asymptotics(FisherHartwig(0.3, 0.7), n).disc_ratio_printed for n in (10, 20, 30)]
    lines.append(
        _line(
            "8-literal",
            printed_ok,
            f"|D| asymptote evaluated exactly as displayed: ratios {', '.join(f'{v:.1e}' for v in lit)} at (0.3, 0.7)",
        )
    )
    return ok, printed_ok, lines


def criterion_9():
    spec = ExpPoles(1.0, ((-0.5, 2.0),))
    seq = opuc_solve(moments(spec, 9), 9)
    orb = one_pole_orbit(1.0, -0.5, 2.0, 8, seq)
    err_p = max(abs(a - b) for a, b in zip(orb["printed"], orb["oracle"]))
    err_b = max(abs(a - b) for a, b in zip(orb["biorthogonal"], orb["oracle"]))
    lam = one_pole_lambda_values(spec, seq, (0, 1, 2))
    spread_p = max(abs(v - lam["printed"][0]) for v in lam["printed"])
    spread_b = max(abs(v - lam["biorthogonal"][0]) for v in lam["biorthogonal"])
    ok_a, ok_b = err_p <= 1e-6, spread_p <= 1e-6
    lines = [
        _line("9a", ok_a, f"displayed one-pole recursion, r_(n+2) for n <= 6: max |err| {err_p:.2e} (tol 1e-6)"),
        _line("9b", ok_b, f"lambda = t r_n r_(n+1) - c_n at n = 0,1,2: spread {spread_p:.2e} (tol 1e-6)"),
        _info("9", f"biorthogonal recursion max |err| {err_b:.1e}; lambda = t q_n r_(n+1) - c_n spread {spread_b:.1e}"),
        _line("9", ok_a and ok_b, "one-pole recursion and lambda constancy"),
    ]
    return ok_a and ok_b, lines


def criterion_10():
    p = FisherHartwig(0.3, 0.7)
    seq = opuc_solve(moments(p, 8), 8)
    worst = 0.0
    for n in range(9):
        h, g = fh_phi_hypergeometric(p, n), seq.left[n]
        inner = np.vdot(h, g)
        phase = inner / abs(inner)
        worst = max(worst, float(np.max(np.abs(h * phase - g)) / np.max(np.abs(g))))
    ok = worst <= 1e-8
    return ok, [_line("10", ok, f"hypergeometric phi_n vs Gram up to phase, n <= 8: {worst:.2e} (tol 1e-8)")]


# ---------------------------------------------------------------------------
# pytest wrappers


def _report(capsys, lines):
    with capsys.disabled():
        print()
        for line in lines:
            print(line)


@pytest.mark.parametrize(
    "crit", [criterion_1, criterion_2, criterion_3, criterion_4, criterion_6, criterion_7, criterion_10], ids=lambda f: f.__name__
)
def test_criterion(capsys, crit):
    ok, lines = crit()
    _report(capsys, lines)
    assert ok, lines[-1]


def test_criterion_5_dp2(capsys):
    ok, lines = criterion_5()
    _report(capsys, lines)
    assert ok, "\n".join(lines)


def test_criterion_8_asymptotics(capsys):
    ok, _, lines = criterion_8()
    _report(capsys, lines)
    assert ok, lines[-2]


def test_criterion_8_literal_display(capsys):
    _, printed_ok, lines = criterion_8()
    _report(capsys, lines[-1:])
    assert printed_ok, lines[-1]


def test_criterion_9_one_pole(capsys):
    ok, lines = criterion_9()
    _report(capsys, lines)
    assert ok, "\n".join(lines)


def main() -> int:
    results = []
    for crit in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7):
        ok, lines = crit()
        results.append(ok)
        print("\n".join(lines))
    ok, printed_ok, lines = criterion_8()
    results += [ok, printed_ok]
    print("\n".join(lines))
    for crit in (criterion_9, criterion_10):
        ok, lines = crit()
        results.append(ok)
        print("\n".join(lines))
    print(f"{sum(results)}/{len(results)} criterion lines pass")
    return 0 if all(results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
