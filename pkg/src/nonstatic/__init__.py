"""Nonstatic quantum light waves in a static medium, in the q and p quadratures."""

from .core import (
    CoarseGridWarning,
    ConstraintError,
    DegenerateFrameError,
    DensityGrid,
    NonFiniteError,
    Space,
    TruncationWarning,
)
from .gaussian import GaussianFrame, GaussianParams
from .timefn import ComplexW, WaveParams

__version__ = "0.1.0"

__all__ = [
    "CoarseGridWarning",
    "ComplexW",
    "ConstraintError",
    "DegenerateFrameError",
    "DensityGrid",
    "GaussianFrame",
    "GaussianParams",
    "NonFiniteError",
    "Space",
    "TruncationWarning",
    "WaveParams",
    "__version__",
]
