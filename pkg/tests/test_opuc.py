import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toeplitz_ladder.errors import DegenerateWeightError, RangeError
from toeplitz_ladder.opuc import (
    build_toeplitz,
    check_recurrences,
    delta_product,
    det_lu,
    dual_star,
    opuc_solve,
    orthonormality_matrix,
    star,
)
from toeplitz_ladder.symbols import Bessel, ExpPoles, FisherHartwig, MomentSequence, moments

SYMBOLS = [
    FisherHartwig(0.3, 0.7),
    FisherHartwig(1.0, 0.0),
    Bessel(2.0),
    ExpPoles(1.0, ((-0.5, 2.0),)),
]


def test_det_hand_value():
    # Delta_2 for FH(1, 0): det [[1/2pi, -1/4pi], [-1/4pi, 1/2pi]] = 3/(16 pi^2)
    d = det_lu(build_toeplitz(moments(FisherHartwig(1, 0), 2), 2))
    assert abs(d.value - 3 / (16 * math.pi**2)) < 1e-17
    assert not d.singular


def test_constant_weight_det():
    d = det_lu(build_toeplitz(moments(FisherHartwig(0, 0), 5), 5))
    assert abs(d.value - (2 * math.pi) ** -5) < 1e-18


def test_fh_alpha1_polynomials():
    # FH(1, 0): phi_1 = k_1 (z - 1/2), k_1^2 = 4/3
    seq = opuc_solve(moments(FisherHartwig(1, 0), 3), 3)
    assert abs(seq.k[1] ** 2 - 4 / 3) < 1e-14
    assert abs(seq.r[1] - 0.5) < 1e-14


def test_bessel_r_frozen():
    # 50-digit Gram solve on Bessel(2) moments
    seq = opuc_solve(moments(Bessel(2.0), 4), 4)
    frozen = [1.0, -0.697774657964008, 0.3598915275570012, -0.1291077928545535, 0.03399751745494897]
    assert np.max(np.abs(seq.r - frozen)) < 1e-13


def test_pole_r_q_frozen():
    seq = opuc_solve(moments(ExpPoles(1.0, ((-0.5, 2.0),)), 2), 2)
    assert abs(seq.r[1] - (-10 / 17)) < 1e-13
    assert abs(seq.q[1] - (-0.7254902)) < 1e-7


@pytest.mark.parametrize("spec", SYMBOLS, ids=str)
def test_gram_vs_levinson(spec):
    M = moments(spec, 10)
    a, b = opuc_solve(M, 10), opuc_solve(M, 10, method="levinson")
    for n in range(11):
        assert np.max(np.abs(a.left[n] - b.left[n])) < 1e-11 * np.max(np.abs(a.left[n]))
        assert np.max(np.abs(a.right[n] - b.right[n])) < 1e-11 * np.max(np.abs(a.right[n]))


@pytest.mark.parametrize("spec", SYMBOLS, ids=str)
def test_delta_product_matches_lu(spec):
    M = moments(spec, 9)
    seq = opuc_solve(M, 9)
    for n in range(1, 10):
        lu = det_lu(build_toeplitz(M, n)).value
        assert abs(delta_product(seq, n) - lu) < 1e-12 * abs(lu)


@pytest.mark.parametrize("spec", SYMBOLS, ids=str)
def test_orthonormality(spec):
    seq = opuc_solve(moments(spec, 6), 6)
    G = orthonormality_matrix(seq)
    assert np.max(np.abs(G - np.eye(7))) < 1e-12


@pytest.mark.parametrize("spec", SYMBOLS, ids=str)
def test_recurrences(spec):
    seq = opuc_solve(moments(spec, 7), 7)
    for n in range(7):
        assert check_recurrences(seq, n).passed


def test_extended_precision_solve():
    spec = FisherHartwig(0.3, 0.7)
    a = opuc_solve(moments(spec, 8, dps=40), 8)
    b = opuc_solve(moments(spec, 8), 8)
    assert a.dps == 40
    assert max(abs(complex(x) - y) for x, y in zip(a.r, b.r)) < 1e-12


def test_hermitian_q_is_conj_r():
    seq = opuc_solve(moments(FisherHartwig(0.3, 0.7), 5), 5)
    assert np.max(np.abs(seq.q - np.conj(seq.r))) < 1e-14


def test_star_and_dual_star():
    assert np.allclose(star([1, 2j, 3]), [3, -2j, 1])
    seq = opuc_solve(moments(FisherHartwig(0.3, 0.7), 3), 3)
    assert np.allclose(dual_star(seq, 3), star(seq.left[3]))


def test_m_and_s_conventions():
    seq = opuc_solve(moments(FisherHartwig(1, 0), 3), 3)
    assert seq.m_at(-1) == 0
    with pytest.raises(RangeError):
        seq.m_at(3)
    assert abs(seq.s_at(0) - 0.5) < 1e-14


def test_constant_weight_s_undefined():
    seq = opuc_solve(moments(FisherHartwig(0, 0), 3), 3)
    assert np.all(seq.r[1:] == 0)
    assert np.isnan(seq.s[1])


def test_degenerate_weight_names_order():
    # w_0 = w_{+-1} = 1: rank-one Toeplitz matrix, the order-2 minor vanishes
    vals = np.array([0, 1, 1, 1, 0], dtype=complex)
    M = MomentSequence(FisherHartwig(0, 0), 2, vals)
    with pytest.raises(DegenerateWeightError) as err:
        opuc_solve(M, 2)
    assert err.value.n == 2


def test_range_error():
    with pytest.raises(RangeError):
        opuc_solve(moments(Bessel(1.0), 3), 5)


def test_exports():
    seq = opuc_solve(moments(FisherHartwig(1, 0), 2), 2)
    rec = seq.records()
    assert rec[1]["n"] == 1 and rec[2]["m_n"] is None
    assert '"k_n"' in seq.to_json()


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 2.5), st.floats(-2, 2))
def test_verblunsky_bound(alpha, beta):
    # positive weight: |phi_n(0)/k_n| < 1 and k_n increasing
    seq = opuc_solve(moments(FisherHartwig(alpha, beta), 6), 6)
    assert np.all(np.abs(seq.r[1:]) < 1)
    assert np.all(np.diff(np.abs(seq.k)) >= -1e-12)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.1, 6))
def test_bessel_r_real(t):
    seq = opuc_solve(moments(Bessel(t), 5), 5)
    assert np.max(np.abs(seq.r.imag)) < 1e-13
