"""The numba kernels and their numpy twins must agree to rounding."""

import numpy as np
import pytest

from toeplitz_ladder import _kernels_numpy as npk
from toeplitz_ladder import kernels
from toeplitz_ladder._jit import ENV_FLAG, HAVE_NUMBA, backend_name

nbk = pytest.importorskip("toeplitz_ladder._kernels_numba") if HAVE_NUMBA else None
pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def test_backend_name():
    assert backend_name() in ("numba", "numpy")
    assert ENV_FLAG == "TOEPLITZ_LADDER_NO_JIT"


def test_lgamma():
    z = np.array([0.3 + 0.7j, -2.5 + 0.1j, 12 - 4j, 0.01 + 0j])
    assert np.max(np.abs(nbk.lgamma_array(z) - npk.lgamma_array(z))) < 1e-13


def test_barnes():
    z = np.array([0.5 + 0.2j, 3.3 + 0.7j, 11.0 + 0j])
    assert np.max(np.abs(nbk.log_barnes_g_array(z, 20) - npk.log_barnes_g_array(z, 20))) < 1e-12


@pytest.mark.parametrize("t", [0.5, 14.0, 40.0])
def test_bessel(t):
    a, b = nbk.bessel_i_all(10, t), npk.bessel_i_all(10, t)
    assert np.max(np.abs(a - b) / np.abs(b)) < 1e-13


def test_levinson():
    rng = np.random.default_rng(1)
    w = rng.normal(size=9) * 0.05 + 1j * rng.normal(size=9) * 0.05
    w[0] = 1.0
    w_neg = np.conj(w)
    a, b = nbk.levinson(w, w_neg, 8), npk.levinson(w, w_neg, 8)
    for x, y in zip(a, b):
        assert np.max(np.abs(x - y)) < 1e-12


def test_horner_and_fourier():
    c = np.array([1, 2j, -0.5, 3], dtype=complex)
    x = np.exp(1j * np.linspace(0, 6, 17))
    assert np.max(np.abs(nbk.horner(c, x) - npk.horner(c, x))) < 1e-14
    th = np.linspace(0.1, 6.0, 33)
    v = np.cos(th) + 0j
    assert np.max(np.abs(nbk.fourier_sums(th, v, -3, 3) - npk.fourier_sums(th, v, -3, 3))) < 1e-13


def test_hyp2f1_and_dp2():
    a, b = nbk.hyp2f1_coeffs(6, 1.3 + 0.7j, -6.3 + 0.7j), npk.hyp2f1_coeffs(6, 1.3 + 0.7j, -6.3 + 0.7j)
    assert np.max(np.abs(a - b)) < 1e-12 * np.max(np.abs(b))
    a, b = nbk.dp2_orbit(2.0, -0.697774657964008, 12), npk.dp2_orbit(2.0, -0.697774657964008, 12)
    assert np.allclose(a, b, rtol=1e-10, atol=0)


def test_dispatch_is_one_of_the_two():
    assert kernels.horner is nbk.horner or kernels.horner is npk.horner
