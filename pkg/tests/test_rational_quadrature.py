import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toeplitz_ladder.errors import AccuracyError
from toeplitz_ladder.quadrature import endpoint_rule, integrate, periodic_rule
from toeplitz_ladder.rational import RationalFunction

pts = st.complex_numbers(min_magnitude=0.1, max_magnitude=3, allow_nan=False, allow_infinity=False)


def _f():
    return RationalFunction(0.5, [(1.0, 1, 2.0), (0.0, 2, -1j), (-0.5, 1, 3.0)])


def _g():
    return RationalFunction(-1.0, [(1.0, 2, 1.0), (0.25j, 1, 0.5)])


@settings(max_examples=40, deadline=None)
@given(pts)
def test_product_matches_pointwise(z):
    f, g = _f(), _g()
    for p in (1.0, 0.0, -0.5, 0.25j):
        if abs(z - p) < 1e-2:
            return
    h = f * g
    assert abs(h(z) - f(z) * g(z)) <= 1e-10 * max(1.0, abs(f(z) * g(z)))


@settings(max_examples=40, deadline=None)
@given(pts)
def test_sum_and_derivative(z):
    f, g = _f(), _g()
    for p in (1.0, 0.0, -0.5, 0.25j):
        if abs(z - p) < 1e-2:
            return
    assert abs((f - g)(z) - (f(z) - g(z))) < 1e-10 * max(1.0, abs(f(z)), abs(g(z)))
    h = 1e-6
    fd = (f(z + h) - f(z - h)) / (2 * h)
    assert abs(f.derivative()(z) - fd) < 1e-5 * max(1.0, abs(fd))


def test_residue_and_order():
    f = _f()
    assert f.residue(1.0) == 2.0
    assert f.order(0.0) == 2 and f.coefficient(0.0, 2) == -1j
    assert f.residue(5.0) == 0


def test_log_derivative():
    # (z - 2)/(z - 1) = 1 - 1/(z - 1): log-derivative 1/(z-2) - 1/(z-1)
    f = RationalFunction(1.0, [(1.0, 1, -1.0)])
    d = f.log_derivative()
    z = 0.3 + 0.4j
    assert abs(d(z) - (1 / (z - 2) - 1 / (z - 1))) < 1e-12


def test_poles_merge():
    f = RationalFunction(0, [(1.0, 1, 1.0), (1.0 + 1e-14, 1, 1.0)])
    assert f.poles() == [1.0] and f.residue(1.0) == 2.0


def test_periodic_rule_exact_for_trig_polynomials():
    r = periodic_rule(16)
    assert abs(np.sum(r.weights) - 2 * math.pi) < 1e-14
    assert abs(np.sum(r.xi**3 * r.weights)) < 1e-14


def test_endpoint_rule_singular_integrand():
    # int_0^{2pi} |1 - e^{i theta}|^{-1/2} d theta = 2 pi Gamma(1/2)/Gamma(3/4)^2
    val = integrate(lambda r: np.array([np.sum(np.abs(r.xi_minus_one) ** -0.5 * r.weights)]), "endpoint")
    ref = 2 * math.pi * math.gamma(0.5) / math.gamma(0.75) ** 2
    assert abs(val[0] - ref) < 1e-11 * ref
    r = endpoint_rule(64)
    assert np.all(r.edge > 0) and np.all(np.abs(r.xi_minus_one) > 0)


def test_integrate_raises_accuracy_error():
    rng = np.random.default_rng(0)
    with pytest.raises(AccuracyError) as err:
        integrate(lambda r: np.array([rng.normal()]), "periodic", start=8, max_points=64)
    assert err.value.best_estimate is not None
