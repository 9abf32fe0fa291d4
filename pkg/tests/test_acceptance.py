"""Acceptance criteria, one ``[PASS]/[FAIL] criterion N: ...`` line each.

Run with ``pytest -v tests/test_acceptance.py -s`` to see the summary lines
interleaved with the test names; the lines are printed either way.
"""

import math
import time

import numpy as np
import pytest

from nonstatic import GaussianParams, Space, WaveParams, fock, gaussian, timefn, verify
from nonstatic.cli import density_grid, ratio_series

from .conftest import golden_configs

ENV = WaveParams(1.0, 5.0, 2.0)
GOLDEN = golden_configs()
NONSTATIC = sorted(name for name, cfg in GOLDEN.items() if not cfg.wave_params().is_static)
SWEEP = np.linspace(0.0, 4 * math.pi, 513)


@pytest.fixture
def report(capsys):
    def _report(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return _report


def grids(name, space):
    cfg = GOLDEN[name]
    params, state = cfg.validate()
    return density_grid(params, state, Space.parse(space), None, cfg.time_axis(params))


def test_c1_measure(report):
    start = time.perf_counter()
    values = {"closed_form": fock.measure_closed_form(ENV)}
    for space in Space:
        values[f"rms_{space.value}"] = fock.measure_nonstaticity(ENV, space)
    elapsed = time.perf_counter() - start
    err = max(abs(v - 2.0) for v in values.values())
    detail = ", ".join(f"{k}={v:.12f}" for k, v in values.items())
    report(1, err < 1e-8 and elapsed < 1.0, f"measure 2.0 ({detail}; max err {err:.1e}; {elapsed:.3f} s)")


def test_c2_ratio_amplitude(report):
    fock_fit = verify.fit_oscillation(SWEEP, fock.ratio_p(ENV, SWEEP), ENV.omega)
    gp = GaussianParams(1.0, 2.0, 0.0)
    gauss_fit = verify.fit_oscillation(SWEEP, gaussian.ratio(ENV, gp, SWEEP, Space.P), ENV.omega)
    target = 2 * math.sqrt(2)
    amp_err = max(abs(fock_fit.amplitude - target), abs(gauss_fit.amplitude - target))
    delta = fock.ratio_delta(ENV)
    delta_err = max(abs(delta - math.pi / 4), abs(fock_fit.phase_at_origin - math.pi / 4))
    report(
        2,
        amp_err < 1e-6 and delta_err < 1e-9,
        f"amplitudes fock={fock_fit.amplitude:.9f} gauss={gauss_fit.amplitude:.9f} (target {target:.9f}); "
        f"delta={delta:.12f} fitted={fock_fit.phase_at_origin:.12f} (pi/4)",
    )


def _ft_error(psi_q, psi_p, axis_q, axis_p, t, hbar):
    wave = verify.SampledWave(axis_q, psi_q(axis_q, t), t)
    numeric = verify.numerical_ft(wave, axis_p, hbar)
    return float(np.max(np.abs(numeric.values - psi_p(axis_p, t))))


def test_c3_fourier_oracle(report):
    rng = np.random.default_rng(20261016)
    start = time.perf_counter()
    worst = 0.0
    for n in range(11):
        times = rng.uniform(0.0, 2 * math.pi, 20)
        aq = fock.default_axis(ENV, n, times, Space.Q, 1024)
        ap = fock.default_axis(ENV, n, times, Space.P, 1024)
        for t in times:
            err = _ft_error(
                lambda x, s: fock.psi_q(ENV, n, x, s), lambda x, s: fock.psi_p(ENV, n, x, s), aq, ap, t, ENV.hbar
            )
            worst = max(worst, err)
    for xi in (0.0, 1.0):
        gp = GaussianParams(1.0, 1.0, xi)
        times = rng.uniform(0.0, 2 * math.pi, 20)
        aq = gaussian.default_axis(ENV, gp, times, Space.Q, 1024)
        ap = gaussian.default_axis(ENV, gp, times, Space.P, 1024)
        for t in times:
            err = _ft_error(
                lambda x, s: gaussian.psi_q_gaussian(ENV, gp, x, s),
                lambda x, s: gaussian.psi_p_gaussian(ENV, gp, x, s),
                aq,
                ap,
                t,
                ENV.hbar,
            )
            worst = max(worst, err)
    elapsed = time.perf_counter() - start
    report(3, worst < 1e-8 and elapsed < 30.0, f"max |analytic - numerical FT| = {worst:.2e} over 260 cases ({elapsed:.1f} s)")


def test_c4_periods(report):
    found = {}
    for name in ("fig1_fock_density", "fig3_gauss_density"):
        for space in "qp":
            grid = grids(name, space)
            found[f"{name}/{space} variance"] = (verify.fit_oscillation(grid.times, grid.slice_variances(), 1.0).period, math.pi)
    grid = grids("fig4_gauss_displaced_density", "p")
    found["fig4 p-centroid"] = (verify.fit_oscillation(grid.times, grid.slice_means(), 1.0).period, 2 * math.pi)
    rel = max(abs(got / want - 1) for got, want in found.values())
    detail = ", ".join(f"{k}={got:.6f}" for k, (got, _) in found.items())
    report(4, rel < 1e-3, f"periods {detail} (max rel err {rel:.1e})")


@pytest.mark.parametrize("name", ["fig1_fock_density", "fig3_gauss_density", "fig4_gauss_displaced_density"])
def test_c5_phase_opposition(report, name):
    q, p = grids(name, "q"), grids(name, "p")
    diff = verify.phase_opposition((q.times, q.slice_variances()), (p.times, p.slice_variances()), 1.0)
    err = abs(diff - math.pi)
    report(5, err < 0.02, f"{name}: q/p variance phase difference {diff:.6f} rad (|diff - pi| = {err:.1e})")


def test_c6_ode_residual(report):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(1000):
        A = rng.uniform(0.2, 5.0)
        B = (1.0 + rng.uniform(0.0, 10.0)) / A
        params = WaveParams.from_ab(
            A, B, rng.choice([-1, 1]), omega=rng.uniform(0.2, 3.0), phi=rng.uniform(-math.pi, math.pi), t0=rng.uniform(-5, 5)
        )
        t = rng.uniform(-20.0, 20.0)
        worst = max(worst, abs(float(verify.ode_residual(params, t))))
    bad = WaveParams.unchecked(A=1.0, B=5.0, C=2.1)
    control = float(np.max(np.abs(verify.ode_residual(bad, np.linspace(0, math.pi, 257)))))
    report(6, worst < 1e-9 and control > 1e-3, f"max residual {worst:.2e}; negative control {control:.3f}")


def test_c7_normalization(report):
    worst, where = 0.0, ""
    for name in GOLDEN:
        for space in "qp":
            err = float(np.max(np.abs(grids(name, space).slice_norms() - 1.0)))
            if err >= worst:
                worst, where = err, f"{name}/{space}"
    report(7, worst < 1e-6, f"max |norm - 1| = {worst:.2e} over {len(GOLDEN)} configs x 2 spaces (worst {where})")


@pytest.mark.parametrize("name", NONSTATIC)
def test_c8_squeezing(report, name):
    params = GOLDEN[name].wave_params()
    sq = np.sqrt(grids(name, "q").slice_variances())
    sp = np.sqrt(grids(name, "p").slice_variances())
    hbar, static_q = params.hbar, math.sqrt(params.hbar / (2 * params.epsilon * params.omega))
    static_p = math.sqrt(params.epsilon * params.omega * params.hbar / 2)
    heis = float(np.min(sq * sp))
    ok = sq.min() < static_q and sp.min() < static_p and heis >= hbar / 2 - 1e-9
    report(
        8,
        ok,
        f"{name}: min sigma_q={sq.min():.6f} (< {static_q:.6f}), min sigma_p={sp.min():.6f} (< {static_p:.6f}), "
        f"min sigma_q*sigma_p={heis:.6f} (>= {hbar / 2})",
    )


def test_c9_static_reduction(report):
    cases = {
        "static_fock": GOLDEN["static_fock"],
        "static_gauss": GOLDEN["static_gauss"],
    }
    drift, measure = 0.0, 0.0
    for name, cfg in cases.items():
        params, state = cfg.validate()
        assert params.is_static
        for space in Space:
            values = grids(name, space).values
            drift = max(drift, float(np.max(np.abs(values - values[0]))))
            kind, value = state
            if kind == "fock":
                m = fock.measure_nonstaticity(params, space)
            else:
                assert value.K == pytest.approx(params.epsilon * params.omega / params.hbar)
                m = gaussian.measure_nonstaticity_gaussian(params, value, space)
            measure = max(measure, abs(m))
    ratio = np.abs(ratio_series(WaveParams.static(), ("fock", 0), Space.P, SWEEP)[:, 1]).max()
    report(9, drift < 1e-10 and measure < 1e-12 and ratio == 0.0, f"max slice drift {drift:.1e}, max |measure| {measure:.1e}")


def test_c10_fock_reduction(report):
    gp = GaussianParams.matching_fock(ENV)
    worst = 0.0
    for space in Space:
        axis = fock.default_axis(ENV, 0, SWEEP, space)
        ref = fock.density(ENV, 0, axis, SWEEP, space).values
        got = gaussian.density_gaussian(ENV, gp, axis, SWEEP, space).values
        worst = max(worst, float(np.max(np.abs(got - ref))))
    report(10, worst < 1e-10, f"K = W(0) = {gp.K:.6f}, xi = 0 vs Fock n=0: max density difference {worst:.1e}")
