import mpmath as mp
import numpy as np
import pytest

from toeplitz_ladder.diffeq import (
    RecurrenceOrbit,
    bessel_step_checks,
    dp2_oracle,
    dp2_orbit,
    dp2_seeds,
    dp2_step,
    one_pole_lambda,
    one_pole_lambda_values,
    one_pole_orbit,
    one_pole_residue_checks,
    one_pole_step,
    one_pole_step_biorthogonal,
)
from toeplitz_ladder.errors import DomainError, InconsistencyError, SingularStepError
from toeplitz_ladder.opuc import opuc_solve
from toeplitz_ladder.symbols import Bessel, ExpPoles, moments

ONE_POLE = ExpPoles(1.0, ((-0.5, 2.0),))
TWO_POLE = ExpPoles(1.0, ((-0.5, 1.0), (-0.25, 2.0)))


def test_seeds():
    assert abs(dp2_seeds(2.0)[1] - (-0.697774657964008)) < 1e-15
    assert abs(dp2_seeds(1e-8)[1]) < 1e-8
    for t in (0.1, 1.0, 30.0):
        assert -1 < dp2_seeds(t)[1] < 0
    with pytest.raises(DomainError):
        dp2_seeds(0.0)


def test_step():
    assert dp2_step(2.0, 5, 0.3, 0.0) == -0.3
    r2 = dp2_step(2.0, 1, 1.0, dp2_seeds(2.0)[1])
    assert abs(r2 - 0.3598915275570012) < 1e-14
    with pytest.raises(SingularStepError):
        dp2_step(1.0, 1, 0.5, 1.0)
    with pytest.raises(DomainError):
        dp2_step(0.0, 1, 0.5, 0.2)


def test_orbit_t1_n1_against_gram():
    orbit = dp2_orbit(1.0, 2)
    seq = opuc_solve(moments(Bessel(1.0), 2), 2)
    assert abs(orbit.values[2] - seq.r[2].real) < 1e-8


def test_orbit_extended_precision_short_range():
    orbit = dp2_orbit(2.0, 10, precision_digits=40)
    orbit.oracle = dp2_oracle(2.0, 10, dps=60)
    assert max(orbit.rel_diff()) < 1e-20


@pytest.mark.parametrize("t", [0.5, 1.0])
def test_double_orbit_instability_grows(t):
    # the discrepancy grows with n: the measurable signature of forward instability
    orbit = dp2_orbit(t, 20)
    orbit.oracle = dp2_oracle(t, 20)
    rel = orbit.rel_diff()
    assert rel[20] > 1e3 * max(rel[5], 1e-16)


def test_oracle_alternates():
    for t in (0.5, 1.0, 2.0):
        r = dp2_oracle(t, 10)
        assert all(mp.sign(r[n]) == -mp.sign(r[n - 1]) for n in range(1, 11))


def test_orbit_exports():
    orbit = dp2_orbit(2.0, 3)
    orbit.oracle = dp2_oracle(2.0, 3)
    assert orbit.to_csv().splitlines()[0] == "n,r_n,oracle_r_n,abs_diff"
    assert '"family": "dP2"' in orbit.to_json()
    with pytest.raises(ValueError):
        RecurrenceOrbit("dP2", {}, [1.0]).abs_diff()


@pytest.mark.parametrize("t,n", [(2.0, 3), (0.5, 1)])
def test_bessel_checks_double(t, n):
    seq = opuc_solve(moments(Bessel(t), n + 2), n + 2)
    assert bessel_step_checks(seq, t, n, tol=1e-9).passed


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_bessel_checks_extended(t):
    seq = opuc_solve(moments(Bessel(t), 9, dps=40), 9)
    for n in range(1, 9):
        assert bessel_step_checks(seq, t, n, tol=1e-15).passed


def test_bessel_58_at_n1():
    t = 2.0
    seq = opuc_solve(moments(Bessel(t), 2), 2)
    r1 = dp2_seeds(t)[1]
    assert abs(seq.m[0] ** 2 - (1 - r1**2)) < 1e-14


@pytest.mark.parametrize("spec", [ONE_POLE, TWO_POLE], ids=["one", "two"])
def test_residue_checks(spec):
    seq = opuc_solve(moments(spec, 9), 9)
    for n in range(7):
        rep = one_pole_residue_checks(spec, seq, n)
        assert rep.passed, rep.failures()[:1]


def test_a0_identity():
    seq = opuc_solve(moments(ONE_POLE, 2), 2)
    rep = one_pole_residue_checks(ONE_POLE, seq, 0)
    assert rep.max_relative("6.2") < 1e-13


def test_lambda_one_pole():
    lam = one_pole_lambda(1.0, -0.5, 2.0)
    assert abs(lam) < 1e-13
    assert abs(one_pole_lambda(2.0, -0.25, 4.0)) < 1e-13


def test_lambda_forms_differ():
    # the printed t r_n r_{n+1} - c_n form drifts with n; the biorthogonal one does not
    seq = opuc_solve(moments(ONE_POLE, 4), 4)
    vals = one_pole_lambda_values(ONE_POLE, seq)
    assert abs(vals["printed"][1] - 0.05468102734051322) < 1e-10
    assert max(abs(v - vals["biorthogonal"][0]) for v in vals["biorthogonal"]) < 1e-12


def test_lambda_inconsistency_raised():
    seq = opuc_solve(moments(ONE_POLE, 4), 4)
    with pytest.raises(InconsistencyError):
        one_pole_lambda(1.0, -0.5, 2.0, seq, tol=-1.0)


def test_lambda_domain():
    with pytest.raises(DomainError):
        one_pole_lambda(1.0, -0.5, 1.0)


def test_one_pole_step_formula():
    assert one_pole_step(1.0, -0.5, 0.0, 0, 1.0, 0.0) == -((-1.0) * -0.5 + 1) - 1.0
    with pytest.raises(SingularStepError):
        one_pole_step(1.0, -0.5, 0.0, 0, 1.0, 1.0)


def test_printed_step_disagrees_with_oracle():
    orb = one_pole_orbit(1.0, -0.5, 2.0, 4)
    assert abs(orb["printed"][0] - orb["oracle"][0]) > 1.0


def test_biorthogonal_step_matches_oracle():
    orb = one_pole_orbit(1.0, -0.5, 2.0, 8)
    err = np.abs(np.array(orb["biorthogonal"]) - np.array(orb["oracle"]))
    assert np.max(err) < 1e-12


def test_biorthogonal_step_singular():
    with pytest.raises(SingularStepError):
        one_pole_step_biorthogonal(1.0, -0.5, 0.0, 0, 1.0, 2.0, 1.0, 0.5)
