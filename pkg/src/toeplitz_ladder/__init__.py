"""Toeplitz determinants and orthogonal polynomials on the unit circle.

Symbols with a rational logarithmic derivative (pure Fisher-Hartwig,
``exp(t cos theta)`` and exponential-with-poles) are handled through their
moments, an exact Gram/LU reference route, ladder operators built by
quadrature, and the closed forms and difference equations they produce.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AccuracyError,
    DegenerateWeightError,
    DivergentMomentError,
    DomainError,
    InconsistencyError,
    RangeError,
    SingularStepError,
    ToeplitzLadderError,
)
from .symbols import Bessel, ExpPoles, FisherHartwig, MomentSequence, moments  # noqa: E402
from .opuc import OpucSequence, build_toeplitz, delta_product, det_lu, opuc_solve  # noqa: E402
from .report import Residual, ResidualReport  # noqa: E402

__all__ = [
    "AccuracyError",
    "Bessel",
    "DegenerateWeightError",
    "DivergentMomentError",
    "DomainError",
    "ExpPoles",
    "FisherHartwig",
    "InconsistencyError",
    "MomentSequence",
    "OpucSequence",
    "RangeError",
    "Residual",
    "ResidualReport",
    "SingularStepError",
    "ToeplitzLadderError",
    "__version__",
    "build_toeplitz",
    "delta_product",
    "det_lu",
    "moments",
    "opuc_solve",
]
