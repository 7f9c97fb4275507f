import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toeplitz_ladder.errors import DomainError
from toeplitz_ladder.fh_closed import (
    discriminant_resultant,
    fh_asymptotics,
    fh_delta,
    fh_discriminant,
    fh_golden_table,
    fh_hypergeometric_prefactor,
    fh_identity_37,
    fh_kn2,
    fh_ln,
    fh_mn2,
    fh_phi0_sq,
    fh_phi_hypergeometric,
    fh_r,
    fh_step4_residual,
    fh_step5_residual,
)
from toeplitz_ladder.opuc import build_toeplitz, det_lu, opuc_solve
from toeplitz_ladder.symbols import FisherHartwig, moments

GRID = [(0.5, 0.0), (1.0, 0.0), (0.3, 0.7), (2.0, 1.0)]


def _seq(p, n):
    return opuc_solve(moments(p, n), n)


def test_hand_values():
    p = FisherHartwig(1, 0)
    assert abs(fh_kn2(p, 1) - 4 / 3) < 1e-14
    assert abs(fh_delta(p, 2) * 16 * math.pi**2 / 3 - 1) < 1e-13
    assert fh_mn2(p, 0) == 0.75
    assert abs(fh_r(p, 3) - 0.25) < 1e-15


def test_frozen_values():
    p = FisherHartwig(0.3, 0.7)
    assert abs(fh_delta(p, 4) - 0.00019485138521589253) < 1e-16
    assert abs(fh_delta(p, 8) / 1.5385130936087358e-08 - 1) < 1e-12
    assert abs(fh_kn2(p, 5) - 1.6802042948737983) < 1e-13
    assert abs(fh_phi0_sq(p, 5) - 0.034097917810594826) < 1e-15
    assert abs(fh_r(p, 3) - (-0.22178418304459774 - 0.04217089322742511j)) < 1e-15
    assert abs(fh_ln(p, 4) - (0.2163130490243139 - 0.8706600223228634j)) < 1e-13


def test_constant_weight():
    p = FisherHartwig(0, 0)
    assert abs(fh_delta(p, 5) - (2 * math.pi) ** -5) < 1e-18
    assert fh_kn2(p, 3) == 1.0 and fh_phi0_sq(p, 3) == 0.0 and fh_phi0_sq(p, 0) == 1.0


@pytest.mark.parametrize("ab", GRID)
def test_delta_against_lu(ab):
    p = FisherHartwig(*ab)
    M = moments(p, 12)
    for n in range(1, 13):
        lu = det_lu(build_toeplitz(M, n)).value
        assert abs(fh_delta(p, n) - lu) < 1e-10 * abs(lu)


@pytest.mark.parametrize("ab", GRID)
def test_coefficients_against_gram(ab):
    p = FisherHartwig(*ab)
    seq = _seq(p, 10)
    for n in range(1, 11):
        assert abs(fh_kn2(p, n) - abs(seq.k[n]) ** 2) < 1e-10 * fh_kn2(p, n)
        assert abs(fh_phi0_sq(p, n) - abs(seq.phi0[n]) ** 2) < 1e-10 * fh_phi0_sq(p, n)
        assert abs(fh_ln(p, n) - seq.l[n]) < 1e-10 * abs(seq.l[n])
        assert abs(fh_r(p, n) - seq.r[n]) < 1e-10 * abs(seq.r[n])


@pytest.mark.parametrize("ab", GRID)
def test_step_identities(ab):
    p = FisherHartwig(*ab)
    assert max(fh_step5_residual(p, n) for n in range(31)) < 1e-12
    seq = _seq(p, 8)
    assert max(fh_step4_residual(seq, p, n) for n in range(7)) < 1e-11


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.45, 4), st.floats(-3, 3), st.integers(0, 40))
def test_step5_property(alpha, beta, n):
    assert fh_step5_residual(FisherHartwig(alpha, beta), n) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 3), st.floats(-2, 2), st.integers(1, 25))
def test_delta_ratio_property(alpha, beta, n):
    # Delta_{n+1}/Delta_n = 1/(2 pi k_n^2)
    p = FisherHartwig(alpha, beta)
    ratio = fh_delta(p, n + 1) / fh_delta(p, n)
    assert abs(ratio * 2 * math.pi * fh_kn2(p, n) - 1) < 1e-10


def test_resultant_discriminant_hand():
    assert discriminant_resultant([-1, 0, 1]) == 4
    # z^3 + p z + q: -4 p^3 - 27 q^2
    assert abs(discriminant_resultant([2, -3, 0, 1]) - (-4 * -27 - 27 * 4)) < 1e-12
    assert discriminant_resultant([5, 2]) == 1
    with pytest.raises(DomainError):
        discriminant_resultant([1, 2, 0])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), min_size=2, max_size=5))
def test_resultant_matches_roots(roots):
    c = np.polynomial.polynomial.polyfromroots(roots) * 1.5
    ref = 1.5 ** (2 * len(roots) - 2) * np.prod(
        [(a - b) ** 2 for i, a in enumerate(roots) for b in roots[i + 1 :]]
    )
    assert abs(discriminant_resultant(c) - ref) <= 1e-9 * max(1.0, abs(ref))


def test_closed_discriminant_frozen():
    assert abs(fh_discriminant(FisherHartwig(1, 0), 3) + 2) < 1e-12
    assert abs(fh_discriminant(FisherHartwig(1, 0), 4) - 3.2) < 1e-12
    assert abs(fh_discriminant(FisherHartwig(0.3, 0.7), 3) - (-1.4841087330155305 - 1.3746772452564993j)) < 1e-12


@pytest.mark.parametrize("ab", [(1.0, 0.0), (0.5, 0.0), (0.3, 0.7)])
@pytest.mark.parametrize("form", ["final", "intermediate"])
def test_discriminant_routes(ab, form):
    p = FisherHartwig(*ab)
    seq = _seq(p, 6)
    for n in range(1, 7):
        dr = discriminant_resultant(seq.left[n])
        assert abs(fh_discriminant(p, n, form) - dr) < 1e-9 * abs(dr)
        assert fh_identity_37(p, n, seq)["relative"] < 1e-10


def test_hypergeometric_matches_gram():
    p = FisherHartwig(0.3, 0.7)
    seq = _seq(p, 8)
    for n in range(9):
        h = fh_phi_hypergeometric(p, n)
        assert np.max(np.abs(h - seq.left[n])) < 1e-10 * np.max(np.abs(seq.left[n]))


def test_hypergeometric_printed_prefactor_reading():
    # reading the ambiguous Gamma(B + a) with a = 1 reproduces the matched prefactor
    pref = fh_hypergeometric_prefactor(FisherHartwig(0.3, 0.7), 5)
    assert pref["discrepancy"] < 1e-12


def test_hypergeometric_degenerate():
    with pytest.raises(DomainError):
        fh_phi_hypergeometric(FisherHartwig(0, 0), 3)


def test_asymptotics_frozen():
    a = fh_asymptotics(FisherHartwig(0.3, 0.7), 20)
    assert abs(a.delta_ratio - 1.0088382742109008) < 1e-10
    assert abs(a.disc_ratio - 1.0088752788130728) < 1e-10
    # the displayed formula is off by C^n
    assert a.disc_ratio_printed < 1e-20


@pytest.mark.parametrize("ab", [(0.5, 0.0), (1.0, 0.0), (0.3, 0.7), (0.5, 0.5)])
def test_asymptotic_trend(ab):
    p = FisherHartwig(*ab)
    dev = [abs(fh_asymptotics(p, n).delta_ratio - 1) for n in (10, 20, 30)]
    assert dev[0] > dev[1] > dev[2] and dev[2] < 0.1
    dev = [abs(fh_asymptotics(p, n).disc_ratio - 1) for n in (10, 20, 30)]
    assert dev[0] > dev[1] > dev[2] and dev[2] < 0.1


def test_asymptotics_domain():
    with pytest.raises(DomainError):
        fh_asymptotics(FisherHartwig(0, 0), 10)
    with pytest.raises(DomainError):
        fh_asymptotics(FisherHartwig(1, 0), 1)


def test_golden_table():
    rows = fh_golden_table([(1.0, 0.0)], 3).splitlines()
    assert rows[0] == "alpha,beta,n,kn2,phi0_sq,delta_closed,delta_lu,rel_err"
    assert len(rows) == 4
    assert float(rows[-1].split(",")[-1]) < 1e-12
