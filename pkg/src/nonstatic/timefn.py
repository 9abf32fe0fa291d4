"""Time functions of the nonstatic oscillator in a static medium.

Everything here is a closed-form function of :class:`WaveParams` and time.
Functions accept scalars or numpy arrays for ``t`` and broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ConstraintError, Space

CONSTRAINT_TOL = 1e-12


@dataclass(frozen=True)
class WaveParams:
    """Static-environment wave configuration.

    ``A``, ``B`` and ``C`` fix the time function ``f``; they must satisfy
    ``A*B - C**2 == 1`` (to ``CONSTRAINT_TOL``) with ``A, B > 0``.
    """

    A: float
    B: float
    C: float
    omega: float = 1.0
    phi: float = 0.0
    t0: float = 0.0
    epsilon: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("A", "B", "C", "omega", "phi", "t0", "epsilon", "hbar"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConstraintError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.A <= 0 or self.B <= 0:
            raise ConstraintError(f"A and B must be positive (A={self.A}, B={self.B})")
        gap = self.A * self.B - self.C**2 - 1.0
        if abs(gap) > CONSTRAINT_TOL:
            raise ConstraintError(f"A*B - C**2 must equal 1, off by {gap:.3e}")
        for name in ("omega", "epsilon", "hbar"):
            if getattr(self, name) <= 0:
                raise ConstraintError(f"{name} must be positive")

    @classmethod
    def from_ab(cls, A: float, B: float, c_sign: int = 1, **kwargs) -> "WaveParams":
        """Build params with ``C = c_sign * sqrt(A*B - 1)``."""
        if A * B < 1 - CONSTRAINT_TOL:
            raise ConstraintError(f"A*B must be >= 1 to derive C (A*B={A * B})")
        C = math.copysign(math.sqrt(max(A * B - 1.0, 0.0)), c_sign)
        return cls(A, B, C, **kwargs)

    @classmethod
    def static(cls, **kwargs) -> "WaveParams":
        return cls(1.0, 1.0, 0.0, **kwargs)

    @classmethod
    def unchecked(cls, **fields) -> "WaveParams":
        """Construct without validation. For negative controls only."""
        defaults = dict(omega=1.0, phi=0.0, t0=0.0, epsilon=1.0, hbar=1.0)
        defaults.update(fields)
        obj = object.__new__(cls)
        for name in ("A", "B", "C", "omega", "phi", "t0", "epsilon", "hbar"):
            object.__setattr__(obj, name, float(defaults[name]))
        return obj

    @property
    def period(self) -> float:
        """Period of ``f`` (and of every density), pi/omega."""
        return math.pi / self.omega

    @property
    def is_static(self) -> bool:
        return self.A == 1.0 and self.B == 1.0 and self.C == 0.0

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("A", "B", "C", "omega", "phi", "t0", "epsilon", "hbar")}


@dataclass(frozen=True)
class ComplexW:
    """Complex exponent parameter split into parts plus a continuous polar angle."""

    re: np.ndarray | float
    im: np.ndarray | float
    unwrapped_angle: np.ndarray | float

    @property
    def value(self):
        return self.re + 1j * self.im

    @property
    def ratio(self):
        return self.im / self.re

    @classmethod
    def from_complex(cls, z, unwrap: bool = False) -> "ComplexW":
        z = np.asarray(z, dtype=complex)
        angle = np.angle(z)
        if unwrap and angle.ndim == 1:
            angle = np.unwrap(angle)
        if z.ndim == 0:
            return cls(float(z.real), float(z.imag), float(angle))
        return cls(z.real, z.imag, angle)


def phase_tilde(params: WaveParams, t):
    return params.omega * (np.asarray(t, dtype=float) - params.t0) + params.phi


def f(params: WaveParams, t):
    """``A sin^2 + B cos^2 + C sin 2x`` at ``x = phase_tilde``, in double-angle form."""
    ph = 2 * phase_tilde(params, t)
    A, B = params.A, params.B
    return 0.5 * (A + B) + 0.5 * (B - A) * np.cos(ph) + params.C * np.sin(ph)


def f_dot(params: WaveParams, t):
    ph = phase_tilde(params, t)
    return params.omega * ((params.A - params.B) * np.sin(2 * ph) + 2 * params.C * np.cos(2 * ph))


def f_ddot(params: WaveParams, t):
    ph = phase_tilde(params, t)
    w2 = params.omega**2
    return 2 * w2 * ((params.A - params.B) * np.cos(2 * ph) - 2 * params.C * np.sin(2 * ph))


def w_complex(params: WaveParams, t):
    """W(t) as a complex number (array)."""
    fv = f(params, t)
    scale = params.epsilon / params.hbar
    return scale * params.omega / fv - 1j * scale * f_dot(params, t) / (2 * fv)


def w(params: WaveParams, t) -> ComplexW:
    """``W(t) = W_R + i W_I`` with ``W_R = eps*omega/(hbar f)``, ``W_I = -eps f'/(2 hbar f)``."""
    return ComplexW.from_complex(w_complex(params, t))


def w_p_complex(params: WaveParams, t):
    return 1.0 / (params.hbar**2 * w_complex(params, t))


def w_p(params: WaveParams, t) -> ComplexW:
    """p-space exponent parameter, ``W_p = 1/(hbar**2 W)``."""
    return ComplexW.from_complex(w_p_complex(params, t))


def w_sweep(params: WaveParams, times, space="q") -> ComplexW:
    """W or W_p along a monotone time sweep with the polar angle unwrapped."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or np.any(np.diff(times) < 0):
        raise ValueError("sweep times must be a non-decreasing 1-D array")
    z = w_complex(params, times) if Space.parse(space) is Space.Q else w_p_complex(params, times)
    return ComplexW.from_complex(z, unwrap=True)


def _antiderivative(params: WaveParams, ph):
    # omega * int dt / f  ==  int dph / f, and d/dph atan(A tan ph + C) = 1/f when A*B - C**2 = 1.
    # atan2(A sin + C cos, cos) is that angle continued through cos == 0; the map
    # (cos, sin) -> (cos, A sin + C cos) has positive eigenvalues, so the angle never
    # drifts by pi from ph and wrapping the difference gives the continuous branch.
    ph = np.asarray(ph, dtype=float)
    angle = np.arctan2(params.A * np.sin(ph) + params.C * np.cos(ph), np.cos(ph))
    return ph + np.angle(np.exp(1j * (angle - ph)))


def theta(params: WaveParams, t_from, t_to):
    """Phase integral ``omega * int_{t_from}^{t_to} dt'/f(t')``."""
    return _antiderivative(params, phase_tilde(params, t_to)) - _antiderivative(
        params, phase_tilde(params, t_from)
    )


def ratio_q(params: WaveParams, t):
    """``W_I/W_R = -f'/(2 omega)``."""
    return -f_dot(params, t) / (2 * params.omega)
