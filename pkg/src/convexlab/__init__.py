"""convexlab: numerical convex geometry at desk scale.

Volume products and their lower bounds, log-Minkowski integrals and the
entropy chain, mixed-volume and cone-volume measures, affine surface
area, Loewner ellipsoids and exterior volume ratios, and SL(n) position
optimization of the mean-width functional.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (
    ConvergenceError,
    ConvexLabError,
    DegeneracyError,
    DimensionMismatchError,
    InvalidArgumentError,
    NumericDomainError,
    OriginNotInteriorError,
    UnsupportedRepresentationError,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "ConvexLabError",
    "InvalidArgumentError",
    "DimensionMismatchError",
    "OriginNotInteriorError",
    "DegeneracyError",
    "UnsupportedRepresentationError",
    "NumericDomainError",
    "ConvergenceError",
    "__version__",
]
