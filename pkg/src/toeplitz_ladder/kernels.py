"""Dispatch to the compiled or pure-numpy kernels (see ``_jit``)."""

from __future__ import annotations

from ._jit import USE_JIT, backend_name

if USE_JIT:
    from . import _kernels_numba as _impl
else:  # pragma: no cover - covered by the NO_JIT test run
    from . import _kernels_numpy as _impl

lgamma_scalar = _impl.lgamma_scalar
lgamma_array = _impl.lgamma_array
log_barnes_g_scalar = _impl.log_barnes_g_scalar
log_barnes_g_array = _impl.log_barnes_g_array
bessel_i_all = _impl.bessel_i_all
horner = _impl.horner
fourier_sums = _impl.fourier_sums
levinson = _impl.levinson
hyp2f1_coeffs = _impl.hyp2f1_coeffs
dp2_orbit = _impl.dp2_orbit

__all__ = [
    "backend_name",
    "bessel_i_all",
    "dp2_orbit",
    "fourier_sums",
    "horner",
    "hyp2f1_coeffs",
    "levinson",
    "lgamma_array",
    "lgamma_scalar",
    "log_barnes_g_array",
    "log_barnes_g_scalar",
]
