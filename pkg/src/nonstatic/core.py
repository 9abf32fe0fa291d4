"""Shared types: quadrature space labels, sampled density grids, errors."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class Space(str, enum.Enum):
    Q = "q"
    P = "p"

    @classmethod
    def parse(cls, value: "str | Space") -> "Space":
        if isinstance(value, Space):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown space {value!r}, expected 'q' or 'p'") from None


class ConstraintError(ValueError):
    """Wave or state parameters violate a structural constraint."""


class NonFiniteError(FloatingPointError):
    """A numerical evaluation produced inf or nan."""


class DegenerateFrameError(ArithmeticError):
    """The Gaussian auxiliary function g(t) vanished."""


class CoarseGridWarning(UserWarning):
    pass


class TruncationWarning(UserWarning):
    pass


def require_finite(values, what: str):
    arr = np.asarray(values)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"non-finite values in {what}")
    return values


@dataclass(frozen=True)
class DensityGrid:
    """Probability density sampled on a (time x coordinate) rectangle.

    ``values[i, j]`` is the density at ``times[i]`` and ``axis[j]``.
    """

    axis: np.ndarray
    times: np.ndarray
    values: np.ndarray
    space: Space
    coarse: bool = False
    label: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def slice_norms(self) -> np.ndarray:
        return np.trapezoid(self.values, self.axis, axis=1)

    def slice_means(self) -> np.ndarray:
        return np.trapezoid(self.axis * self.values, self.axis, axis=1) / self.slice_norms()

    def slice_variances(self) -> np.ndarray:
        norms = self.slice_norms()
        mean = np.trapezoid(self.axis * self.values, self.axis, axis=1) / norms
        centred = (self.axis[None, :] - mean[:, None]) ** 2
        return np.trapezoid(centred * self.values, self.axis, axis=1) / norms


def check_axis(axis, name: str = "axis") -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    if axis.ndim != 1 or axis.size < 2:
        raise ValueError(f"{name} must be a 1-D array with at least two points")
    if not np.all(np.diff(axis) > 0):
        raise ValueError(f"{name} must be strictly increasing")
    return axis
