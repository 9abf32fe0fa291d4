"""Nonstatic Gaussian wave started from ``(K_R/pi)**1/4 exp(-K (q - xi)**2 / 2)``.

The auxiliary functions g, N, script-W, its p-space reciprocal and R are
built on the Fock-state exponent W(t) of the same environment. The time
origin is pinned to ``t0 = 0`` because they reference W(0).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import timefn
from .core import (
    CoarseGridWarning,
    ConstraintError,
    DegenerateFrameError,
    DensityGrid,
    Space,
    check_axis,
    require_finite,
)
from .timefn import WaveParams
from .verify import rms_over_period

DEFAULT_POINTS = 1024
G_FLOOR = 1e-12


@dataclass(frozen=True)
class GaussianParams:
    K_re: float
    K_im: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        for name in ("K_re", "K_im", "xi"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConstraintError(f"{name} must be finite")
            object.__setattr__(self, name, float(value))
        if self.K_re <= 0:
            raise ConstraintError(f"K_re must be positive for a normalizable state, got {self.K_re}")

    @property
    def K(self) -> complex:
        return complex(self.K_re, self.K_im)

    @classmethod
    def matching_fock(cls, params: WaveParams) -> "GaussianParams":
        """K = W(0), xi = 0: the state that reduces to the n = 0 Fock wave."""
        w0 = timefn.w_complex(params, 0.0)
        return cls(float(w0.real), float(w0.imag), 0.0)

    def as_dict(self) -> dict:
        return {"K_re": self.K_re, "K_im": self.K_im, "xi": self.xi}


@dataclass(frozen=True)
class GaussianFrame:
    t: np.ndarray | float
    g: np.ndarray | complex
    N: np.ndarray | complex
    W_script: np.ndarray | complex
    W_script_p: np.ndarray | complex
    R: np.ndarray | complex
    theta: np.ndarray | float


def _check_origin(params: WaveParams):
    if params.t0 != 0.0:
        raise ConstraintError(f"the Gaussian wave is defined with t0 = 0, got t0 = {params.t0}")


def frame(params: WaveParams, gp: GaussianParams, t) -> GaussianFrame:
    """All auxiliary time functions of the Gaussian wave at ``t`` (broadcasts)."""
    _check_origin(params)
    t = np.asarray(t, dtype=float)
    K, xi, hbar = gp.K, gp.xi, params.hbar
    w0 = complex(timefn.w_complex(params, 0.0))
    wt = timefn.w_complex(params, t)
    th = timefn.theta(params, 0.0, t)

    centre = K + w0.conjugate()
    shift = K - w0
    rot = np.exp(2j * th)
    g = centre * rot - shift
    if np.any(np.abs(g) < G_FLOOR):
        raise DegenerateFrameError("g(t) vanished")

    # h = g exp(-2i theta) runs on a circle about `centre` of radius |shift| < |centre|,
    # so arg(centre) + Arg(h/centre) is continuous and equals 0 at t = 0.
    h = centre - shift / rot
    arg_h = np.angle(centre) + np.angle(h / centre)
    root = np.sqrt(2 * math.sqrt(gp.K_re) / np.abs(h)) * np.exp(-0.5j * arg_h)

    N = (
        (w0.real * wt.real / math.pi) ** 0.25
        * root
        * np.exp(-0.5 * (K * xi**2 + 1j * th))
        * np.exp(K**2 * xi**2 / centre * (0.5 - w0.real / g))
    )
    W_script = wt + 2 * wt.real * shift / g
    W_script_p = 1.0 / (hbar**2 * W_script)
    R = 2 * K * xi * np.sqrt(w0.real * wt.real) * np.exp(1j * th) / g
    require_finite(N, "N(t)")
    if np.any(W_script.real <= 0):
        raise ConstraintError("script-W lost its positive real part")
    return GaussianFrame(t, g, N, W_script, W_script_p, R, th)


def psi_q_gaussian(params: WaveParams, gp: GaussianParams, q, t):
    """``N exp(-W q**2/2 + R q)``; ``q`` and ``t`` broadcast."""
    fr = frame(params, gp, t)
    q = np.asarray(q, dtype=float)
    return require_finite(fr.N * np.exp(-0.5 * fr.W_script * q * q + fr.R * q), "psi_q_gaussian")


def psi_p_gaussian(params: WaveParams, gp: GaussianParams, p, t):
    """``N / sqrt(hbar W) * exp(-W_p (p + i hbar R)**2 / 2)``.

    Re W > 0 keeps the principal square root continuous in t.
    """
    fr = frame(params, gp, t)
    p = np.asarray(p, dtype=float)
    hbar = params.hbar
    shifted = p + 1j * hbar * fr.R
    value = fr.N / np.sqrt(hbar * fr.W_script) * np.exp(-0.5 * fr.W_script_p * shifted * shifted)
    return require_finite(value, "psi_p_gaussian")


def initial_wave(gp: GaussianParams, q):
    q = np.asarray(q, dtype=float)
    return (gp.K_re / math.pi) ** 0.25 * np.exp(-0.5 * gp.K * (q - gp.xi) ** 2)


def mean(params: WaveParams, gp: GaussianParams, t, space) -> np.ndarray:
    """Closed-form centroid of the density in the given space."""
    fr = frame(params, gp, t)
    if Space.parse(space) is Space.Q:
        return fr.R.real / fr.W_script.real
    return params.hbar * (fr.W_script_p * fr.R).imag / fr.W_script_p.real


def variance(params: WaveParams, gp: GaussianParams, t, space) -> np.ndarray:
    """Closed-form variance ``1 / (2 Re W)`` (W or W_p) in the given space."""
    fr = frame(params, gp, t)
    exponent = fr.W_script if Space.parse(space) is Space.Q else fr.W_script_p
    return 1.0 / (2 * exponent.real)


def default_axis(params: WaveParams, gp: GaussianParams, times, space, count: int = DEFAULT_POINTS):
    times = np.atleast_1d(np.asarray(times, dtype=float))
    centre = np.abs(mean(params, gp, times, space)).max()
    width = np.sqrt(2 * variance(params, gp, times, space)).max()
    half = float(centre + 9.0 * width)
    return np.linspace(-half, half, count)


def density_gaussian(params: WaveParams, gp: GaussianParams, axis=None, times=None, space=Space.P) -> DensityGrid:
    """|psi|**2 on a (times x axis) grid in the requested space."""
    space = Space.parse(space)
    times = check_axis(np.linspace(0, 4 * params.period, 513) if times is None else times, "times")
    axis = check_axis(default_axis(params, gp, times, space) if axis is None else axis, space.value)
    fn = psi_q_gaussian if space is Space.Q else psi_p_gaussian
    values = np.abs(fn(params, gp, axis[None, :], times[:, None])) ** 2
    width = float(np.sqrt(variance(params, gp, times, space)).min())
    coarse = width / float(np.max(np.diff(axis))) < 16 / (2 * math.pi)
    if coarse:
        warnings.warn(f"{space.value}-grid is coarse relative to the narrowest slice", CoarseGridWarning, stacklevel=2)
    return DensityGrid(axis, times, values, space, coarse=coarse, label=f"gauss:{gp.K_re},{gp.K_im},{gp.xi}")


def ratio(params: WaveParams, gp: GaussianParams, t, space=Space.P):
    fr = frame(params, gp, t)
    z = fr.W_script if Space.parse(space) is Space.Q else fr.W_script_p
    return z.imag / z.real


def measure_nonstaticity_gaussian(params: WaveParams, gp: GaussianParams, space=Space.P) -> float:
    """RMS of the imaginary/real ratio of script-W (q) or its reciprocal (p) over 2 pi/omega."""
    return rms_over_period(lambda t: ratio(params, gp, t, space), 0.0, 2 * params.period, nodes=2048)
