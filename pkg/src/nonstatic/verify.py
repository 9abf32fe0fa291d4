"""Independent numerical oracles.

Nothing in here knows the closed-form p-space results: the Fourier transform
is a direct trapezoid discretization, moments are plain quadrature, and the
oscillation fitter estimates its own period.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import timefn
from .core import Space, TruncationWarning, check_axis

TAIL_TOL = 1e-12
MIN_SAMPLES = 64
# relative RMS residual above which the fixed 2*omega model is rejected
MODEL_REJECT = 1e-3


@dataclass(frozen=True)
class SampledWave:
    axis: np.ndarray
    values: np.ndarray
    t: float = 0.0
    space: Space = Space.Q

    def __post_init__(self):
        axis = check_axis(self.axis)
        values = np.asarray(self.values, dtype=complex)
        if values.shape != axis.shape:
            raise ValueError(f"axis and values differ in length ({axis.size} vs {values.size})")
        if axis.size < MIN_SAMPLES:
            raise ValueError(f"sampled wave needs at least {MIN_SAMPLES} points, got {axis.size}")
        steps = np.diff(axis)
        if np.max(np.abs(steps - steps.mean())) > 1e-12 * max(abs(axis[0]), abs(axis[-1]), steps.mean()) + 1e-15:
            raise ValueError("sampled wave axis must be uniformly spaced")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "space", Space.parse(self.space))

    @property
    def step(self) -> float:
        return float(self.axis[1] - self.axis[0])

    def tails_decayed(self, tol: float = TAIL_TOL) -> bool:
        peak = float(np.max(np.abs(self.values)))
        if peak == 0.0:
            return True
        return max(abs(self.values[0]), abs(self.values[-1])) <= tol * peak


@dataclass(frozen=True)
class OscillationReport:
    period: float
    phase_at_origin: float
    amplitude: float
    fit_residual: float
    offset: float = 0.0
    model: str = "2omega"


def _trapezoid_weights(n: int, step: float) -> np.ndarray:
    weights = np.full(n, step)
    weights[0] = weights[-1] = 0.5 * step
    return weights


def _warn_tails(wave: SampledWave, what: str):
    if not wave.tails_decayed():
        warnings.warn(f"{what}: input does not decay below {TAIL_TOL:g} at the axis ends", TruncationWarning, stacklevel=3)


def _transform(wave: SampledWave, target_axis, hbar: float, sign: int, out_space: Space) -> SampledWave:
    target = check_axis(target_axis, "target_axis")
    weights = _trapezoid_weights(wave.axis.size, wave.step)
    kernel = np.exp((sign * 1j / hbar) * np.outer(target, wave.axis))
    values = kernel @ (weights * wave.values) / math.sqrt(2 * math.pi * hbar)
    return SampledWave(target, values, wave.t, out_space)


def numerical_ft(wave: SampledWave, target_axis, hbar: float = 1.0) -> SampledWave:
    """``(2 pi hbar)**-1/2 * int psi(q) exp(-i p q / hbar) dq`` by the trapezoid rule.

    The target axis must itself satisfy the :class:`SampledWave` invariants.
    """
    _warn_tails(wave, "numerical_ft")
    return _transform(wave, target_axis, hbar, -1, Space.P)


def inverse_ft(wave: SampledWave, target_axis, hbar: float = 1.0) -> SampledWave:
    """Conjugate-kernel transform, p -> q."""
    _warn_tails(wave, "inverse_ft")
    return _transform(wave, target_axis, hbar, +1, Space.Q)


def ode_residual(params: timefn.WaveParams, t):
    """Left-hand side ``f'' - f'**2/(2f) + 2 omega**2 (f - 1/f)`` of the width equation."""
    fv = timefn.f(params, t)
    fd = timefn.f_dot(params, t)
    fdd = timefn.f_ddot(params, t)
    return fdd - fd * fd / (2 * fv) + 2 * params.omega**2 * (fv - 1 / fv)


def moments(wave: SampledWave) -> tuple[float, float, float]:
    """Norm, mean and centred variance of ``|psi|**2`` by the trapezoid rule."""
    _warn_tails(wave, "moments")
    rho = np.abs(wave.values) ** 2
    x = wave.axis
    norm = float(np.trapezoid(rho, x))
    mean = float(np.trapezoid(x * rho, x)) / norm
    var = float(np.trapezoid((x - mean) ** 2 * rho, x)) / norm
    return norm, mean, var


def _linear_fit(t, y, nu):
    design = np.column_stack([np.cos(nu * t), np.sin(nu * t), np.ones_like(t)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    return coef, float(np.sqrt(np.mean(resid**2)))


def _cos_form(coef):
    # a cos(x) + b sin(x) == amp * cos(x + d)
    a, b, c = coef
    return math.hypot(a, b), math.atan2(-b, a) % (2 * math.pi), c


def _coarse_period(t, y) -> float | None:
    y = y - y.mean()
    n = y.size
    acf = np.correlate(y, y, mode="full")[n - 1 :]
    acf = acf / (n - np.arange(n))
    acf = acf / acf[0]
    negative = np.nonzero(acf[: n // 2 + 1] < 0)[0]
    if negative.size == 0:
        return None
    start = negative[0]
    window = acf[start : n // 2 + 2]
    if window.size < 2:
        return None
    lag = start + int(np.argmax(window))
    return lag * float(t[1] - t[0])


def _refine_period(t, y, period0: float) -> float:
    nu0 = 2 * math.pi / period0
    res = minimize_scalar(
        lambda nu: _linear_fit(t, y, nu)[1],
        bounds=(0.85 * nu0, 1.15 * nu0),
        method="bounded",
        options={"xatol": 1e-13 * nu0},
    )
    return 2 * math.pi / res.x


def fit_oscillation(t, values, omega: float) -> OscillationReport:
    """Least-squares fit ``value ~ amp * cos(nu t + phase) + offset``.

    The default model fixes ``nu = 2 omega``. The period is estimated
    independently (autocorrelation, then a free-frequency refinement); when
    the fixed model leaves a relative residual above ``MODEL_REJECT`` the
    refined frequency is used for the phase and amplitude as well.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.shape != y.shape or t.ndim != 1:
        raise ValueError("series times and values must be 1-D arrays of equal length")
    half_period = math.pi / omega
    steps = np.diff(t)
    if t.size < 3 or np.any(steps <= 0):
        raise ValueError("series times must be strictly increasing with at least 3 samples")
    if t[-1] - t[0] < 2 * half_period * (1 - 1e-9):
        raise ValueError("series must cover at least two periods of pi/omega")
    if half_period / steps.max() < 32 * (1 - 1e-9):
        raise ValueError("series needs at least 32 samples per period pi/omega")

    coef, resid = _linear_fit(t, y, 2 * omega)
    amp, phase, offset = _cos_form(coef)
    spread = float(np.std(y))
    if spread <= 1e-12 * max(1.0, abs(float(np.mean(y)))):
        # flat series: nothing to estimate a period from
        return OscillationReport(half_period, phase, amp, resid, offset)

    uniform = np.allclose(steps, steps.mean(), rtol=1e-9, atol=0)
    period0 = _coarse_period(t, y) if uniform else None
    if period0 is None:
        period0 = half_period
    period = _refine_period(t, y, period0)

    if resid <= MODEL_REJECT * spread:
        return OscillationReport(period, phase, amp, resid, offset)
    coef, resid = _linear_fit(t, y, 2 * math.pi / period)
    amp, phase, offset = _cos_form(coef)
    return OscillationReport(period, phase, amp, resid, offset, model="free")


def phase_opposition(varq, varp, omega: float) -> float:
    """Fitted phase of the p series minus that of the q series, in [0, 2pi).

    Each series is a ``(t, values)`` pair.
    """
    fq = fit_oscillation(*varq, omega)
    fp = fit_oscillation(*varp, omega)
    diff = (fp.phase_at_origin - fq.phase_at_origin) % (2 * math.pi)
    # fold values a hair below 2pi onto 0
    return 0.0 if 2 * math.pi - diff < 1e-12 else diff


def rms_over_period(fn, t_start: float, period: float, nodes: int = 1024) -> float:
    """``sqrt(mean(fn**2))`` over one period, periodic trapezoid rule."""
    if period <= 0:
        raise ValueError("period must be positive")
    nodes = max(int(nodes), 512)
    t = t_start + period * np.arange(nodes) / nodes
    values = np.asarray(fn(t), dtype=float)
    if values.shape != t.shape:
        values = np.array([fn(x) for x in t], dtype=float)
    return float(np.sqrt(np.mean(values**2)))
