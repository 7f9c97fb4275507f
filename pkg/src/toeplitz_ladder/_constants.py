"""Numerical constants shared by both kernel backends."""

import numpy as np

# Lanczos approximation, g = 671/128, 14 terms (good to ~1e-15 for Re z >= 1/2).
LANCZOS_G = 5.24218750000000000
LANCZOS_C0 = 0.999999999999997092
LANCZOS_COEF = np.array(
    [
        57.1562356658629235,
        -59.5979603554754912,
        14.1360979747417471,
        -0.491913816097620199,
        0.339946499848118887e-4,
        0.465236289270485756e-4,
        -0.983744753048795646e-4,
        0.158088703224912494e-3,
        -0.210264441724104883e-3,
        0.217439618115212643e-3,
        -0.164318106536763890e-3,
        0.844182239838527433e-4,
        -0.261908384015814087e-4,
        0.368991826595316234e-5,
    ]
)
SQRT_2PI = 2.5066282746310005024

# log G(x + 1) ~ (x^2/2 - 1/12) log x - 3x^2/4 + x log(2 pi)/2 + zeta'(-1)
#                + sum_k B_{2k+2} / (4 k (k+1) x^{2k})
ZETA_PRIME_M1 = -0.16542114370045092921
LOG_2PI = 1.8378770664093454836
_BERNOULLI_EVEN = [
    -1.0 / 30.0,  # B4
    1.0 / 42.0,  # B6
    -1.0 / 30.0,  # B8
    5.0 / 66.0,  # B10
    -691.0 / 2730.0,  # B12
    7.0 / 6.0,  # B14
    -3617.0 / 510.0,  # B16
    43867.0 / 798.0,  # B18
]
BARNES_ASYMPT = np.array(
    [b / (4.0 * k * (k + 1)) for k, b in enumerate(_BERNOULLI_EVEN, start=1)]
)
BARNES_SHIFT_TO = 20.0

BESSEL_SERIES_MAX_T = 15.0
