"""Finite-difference heat and wave solvers on the Minkowski curve."""

from ._core import *  # noqa: F401,F403
from ._core import (
    DivergedError,
    FractalFdmError,
    InvalidArgumentError,
    NumericalError,
    ResourceLimitError,
)

__version__ = "0.1.0"
