"""Nonstatic Fock-state waves in the q and p quadratures.

The q-space wave is a Hermite-Gaussian with the complex exponent W(t); its
p-space counterpart is the Fourier transform, which stays Hermite-Gaussian
with ``W_p = 1/(hbar**2 W)``.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import timefn
from .core import CoarseGridWarning, DensityGrid, Space, check_axis, require_finite
from .timefn import WaveParams
from .verify import rms_over_period

MAX_N = 64
DEFAULT_POINTS = 1024
# points per Hermite oscillation below which a density grid is flagged as coarse
MIN_POINTS_PER_OSCILLATION = 16


def check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f"Fock index must be an integer, got {n!r}")
    n = int(n)
    if not 0 <= n <= MAX_N:
        raise ValueError(f"Fock index must lie in [0, {MAX_N}], got {n}")
    return n


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by three-term recurrence."""
    n = check_n(n)
    x = np.asarray(x, dtype=float)
    h_prev, h = np.zeros_like(x), np.ones_like(x)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n):
            h_prev, h = h, 2 * x * h - 2 * k * h_prev
    return require_finite(h, f"H_{n}")


def hermite_normalized(n: int, x):
    """``H_n(x) / sqrt(2**n n!)``, evaluated with the normalization folded in."""
    n = check_n(n)
    x = np.asarray(x)
    h_prev, h = np.zeros_like(x, dtype=float), np.ones_like(x, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n):
            h_prev, h = h, math.sqrt(2.0 / (k + 1)) * x * h - math.sqrt(k / (k + 1)) * h_prev
    return h


def gamma_n(params: WaveParams, n: int, t, gamma0: float = 0.0):
    """Accumulated phase ``-(n + 1/2) * theta(t0, t) + gamma0``."""
    n = check_n(n)
    return -(n + 0.5) * timefn.theta(params, params.t0, t) + gamma0


def psi_q(params: WaveParams, n: int, q, t, gamma0: float = 0.0):
    """q-space wave function <q|psi_n(t)>; ``q`` and ``t`` broadcast."""
    n = check_n(n)
    q = np.asarray(q, dtype=float)
    W = timefn.w_complex(params, t)
    wr = W.real
    value = (
        (wr / math.pi) ** 0.25
        * hermite_normalized(n, np.sqrt(wr) * q)
        * np.exp(-0.5 * W * q * q + 1j * gamma_n(params, n, t, gamma0))
    )
    return require_finite(value, "psi_q")


def psi_p(params: WaveParams, n: int, p, t, gamma0: float = 0.0):
    """p-space wave function <p|psi_n(t)>; ``p`` and ``t`` broadcast.

    The fractional power ``sqrt(conj(W)**n / W**(n+1))`` is taken as
    ``|W|**-1/2 * exp(-i (2n+1) arg(W) / 2)``. Since Re W > 0 the principal
    angle never leaves (-pi/2, pi/2), so this branch is continuous in t.
    """
    n = check_n(n)
    p = np.asarray(p, dtype=float)
    hbar = params.hbar
    W = timefn.w_complex(params, t)
    wr, mod2 = W.real, (W * W.conj()).real
    angle = np.angle(W)
    prefactor = (
        (-1j) ** n
        * (wr / (math.pi * hbar**2)) ** 0.25
        * mod2**-0.25
        * np.exp(-0.5j * (2 * n + 1) * angle)
    )
    w_p = 1.0 / (hbar**2 * W)
    value = (
        prefactor
        * hermite_normalized(n, np.sqrt(wr / mod2) * p / hbar)
        * np.exp(-0.5 * w_p * p * p + 1j * gamma_n(params, n, t, gamma0))
    )
    return require_finite(value, "psi_p")


def exponent_re(params: WaveParams, t, space) -> np.ndarray:
    """Real part of the Gaussian exponent coefficient (W_R or W_{p,R})."""
    if Space.parse(space) is Space.Q:
        return np.asarray(timefn.w_complex(params, t).real)
    return np.asarray(timefn.w_p_complex(params, t).real)


def variance(params: WaveParams, n: int, t, space) -> np.ndarray:
    """Closed-form quadrature variance ``(2n+1) / (2 Re W)`` in the given space."""
    return (2 * check_n(n) + 1) / (2 * exponent_re(params, t, space))


def default_axis(params: WaveParams, n: int, times, space, count: int | None = None) -> np.ndarray:
    """Symmetric grid covering the widest slice of the sweep.

    The half-width is ``(sqrt(2n+1) + 8)`` widths of the Gaussian envelope,
    i.e. the classical turning point plus eight envelope widths. Without an
    explicit ``count`` the grid has ``DEFAULT_POINTS`` points, doubled until
    the narrowest slice is resolved.
    """
    n = check_n(n)
    re = exponent_re(params, np.atleast_1d(times), space)
    half = (math.sqrt(2 * n + 1) + 8.0) / math.sqrt(float(re.min()))
    if count is None:
        count = DEFAULT_POINTS
        while _is_coarse(n, np.linspace(-half, half, count), float(re.max())):
            count *= 2
    return np.linspace(-half, half, count)


def _is_coarse(n: int, axis: np.ndarray, re_max: float) -> bool:
    wavelength = 2 * math.pi / (math.sqrt(2 * n + 1) * math.sqrt(re_max))
    return wavelength / float(np.max(np.diff(axis))) < MIN_POINTS_PER_OSCILLATION


def density(
    params: WaveParams, n: int, axis=None, times=None, space=Space.P, gamma0: float = 0.0
) -> DensityGrid:
    """|psi_n|**2 on a (times x axis) grid in the requested space."""
    space = Space.parse(space)
    n = check_n(n)
    times = check_axis(np.linspace(0, 2 * params.period, 257) if times is None else times, "times")
    axis = check_axis(default_axis(params, n, times, space) if axis is None else axis, space.value)
    fn = psi_q if space is Space.Q else psi_p
    values = np.abs(fn(params, n, axis[None, :], times[:, None], gamma0)) ** 2
    coarse = _is_coarse(n, axis, float(exponent_re(params, times, space).max()))
    if coarse:
        warnings.warn(
            f"{space.value}-grid has fewer than {MIN_POINTS_PER_OSCILLATION} points per "
            f"oscillation of H_{n}",
            CoarseGridWarning,
            stacklevel=2,
        )
    return DensityGrid(axis, times, values, space, coarse=coarse, label=f"fock:{n}")


def atan_two_arg(x, y):
    """Angle theta in [0, 2pi) with ``tan(theta) = y/x``; argument order (x, y)."""
    return np.mod(np.arctan2(y, x), 2 * math.pi)


def ratio_delta(params: WaveParams) -> float:
    """Phase offset of the p-space ratio waveform, ``atan(2C, B - A)``."""
    return float(atan_two_arg(2 * params.C, params.B - params.A))


def ratio_amplitude(params: WaveParams) -> float:
    return 0.5 * math.sqrt((params.A + params.B) ** 2 - 4)


def ratio_p(params: WaveParams, t):
    """``W_{p,I}/W_{p,R}`` from the components of W_p."""
    wp = timefn.w_p_complex(params, t)
    return wp.imag / wp.real


def ratio_p_closed_form(params: WaveParams, t):
    """Sinusoidal form ``amp * cos(2 phase_tilde + delta)`` of the p-space ratio."""
    return ratio_amplitude(params) * np.cos(2 * timefn.phase_tilde(params, t) + ratio_delta(params))


def measure_closed_form(params: WaveParams) -> float:
    return math.sqrt((params.A + params.B) ** 2 - 4) / (2 * math.sqrt(2))


def measure_nonstaticity(params: WaveParams, space=Space.P) -> float:
    """RMS over one period of the imaginary/real ratio of W (q) or W_p (p)."""
    if Space.parse(space) is Space.Q:
        fn = lambda t: timefn.ratio_q(params, t)  # noqa: E731
    else:
        fn = lambda t: ratio_p(params, t)  # noqa: E731
    return rms_over_period(fn, params.t0, params.period)
