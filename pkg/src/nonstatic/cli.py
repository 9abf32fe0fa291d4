"""Command-line front end: density grids, ratio series, measures, verification.

Exit codes: 0 success, 1 usage/config error, 2 verification failure,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, fock, gaussian, timefn, verify
from .core import ConstraintError, DegenerateFrameError, NonFiniteError, Space
from .gaussian import GaussianParams
from .timefn import CONSTRAINT_TOL, WaveParams

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2, 3


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"invalid config field '{field}': {message}")
        self.field = field


@dataclass(frozen=True)
class RunConfig:
    A: float = 1.0
    B: float = 5.0
    C: float | None = 2.0
    c_sign: int = 1
    omega: float = 1.0
    phi: float = 0.0
    t0: float = 0.0
    epsilon: float = 1.0
    hbar: float = 1.0
    state: str = "fock:5"
    space: str = "both"
    grid: tuple | None = None
    times: tuple | None = None
    format: str = "csv"
    out: str | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown field")
        data = dict(data)
        for key in ("grid", "times"):
            if data.get(key) is not None:
                data[key] = tuple(data[key])
        return cls(**data)

    def to_dict(self) -> dict:
        data = dataclasses.asdict(self)
        for key in ("grid", "times"):
            if data[key] is not None:
                data[key] = list(data[key])
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def wave_params(self) -> WaveParams:
        for name in ("A", "B", "omega", "phi", "t0", "epsilon", "hbar"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigError(name, f"expected a finite number, got {value!r}")
        for name in ("A", "B", "omega", "epsilon", "hbar"):
            if getattr(self, name) <= 0:
                raise ConfigError(name, "must be positive")
        kwargs = dict(omega=self.omega, phi=self.phi, t0=self.t0, epsilon=self.epsilon, hbar=self.hbar)
        if self.C is None:
            if self.c_sign not in (1, -1):
                raise ConfigError("c_sign", "must be +1 or -1")
            if self.A * self.B < 1:
                raise ConfigError("B", "A*B must be at least 1 to derive C")
            return WaveParams.from_ab(self.A, self.B, self.c_sign, **kwargs)
        gap = self.A * self.B - self.C**2 - 1.0
        if abs(gap) > CONSTRAINT_TOL:
            raise ConfigError("C", f"A*B - C**2 must equal 1 (off by {gap:.3e})")
        return WaveParams(self.A, self.B, self.C, **kwargs)

    def parsed_state(self):
        """``("fock", n)`` or ``("gauss", GaussianParams)``."""
        kind, _, rest = str(self.state).partition(":")
        try:
            if kind == "fock":
                return "fock", fock.check_n(int(rest))
            if kind == "gauss":
                parts = [float(v) for v in rest.split(",")]
                if len(parts) != 3:
                    raise ValueError("expected gauss:<K_re>,<K_im>,<xi>")
                return "gauss", GaussianParams(*parts)
        except (ValueError, ConstraintError) as exc:
            raise ConfigError("state", str(exc)) from None
        raise ConfigError("state", f"expected fock:<n> or gauss:<K_re>,<K_im>,<xi>, got {self.state!r}")

    def spaces(self) -> list[Space]:
        if self.space == "both":
            return [Space.Q, Space.P]
        try:
            return [Space.parse(self.space)]
        except ValueError:
            raise ConfigError("space", f"expected q, p or both, got {self.space!r}") from None

    def time_axis(self, params: WaveParams) -> np.ndarray:
        if self.times is None:
            return np.linspace(0.0, 4 * params.period, 513)
        return _linspace("times", self.times)

    def axis(self) -> np.ndarray | None:
        return None if self.grid is None else _linspace("grid", self.grid)

    def validate(self) -> tuple[WaveParams, tuple]:
        params = self.wave_params()
        state = self.parsed_state()
        if state[0] == "gauss" and params.t0 != 0.0:
            raise ConfigError("t0", "the Gaussian state is defined with t0 = 0")
        self.spaces()
        self.time_axis(params)
        self.axis()
        if self.format not in ("csv", "json"):
            raise ConfigError("format", f"expected csv or json, got {self.format!r}")
        return params, state


def _linspace(field: str, spec) -> np.ndarray:
    try:
        lo, hi, count = spec
        lo, hi, count = float(lo), float(hi), int(count)
    except (TypeError, ValueError):
        raise ConfigError(field, f"expected <min>,<max>,<count>, got {spec!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo or count < 2:
        raise ConfigError(field, "needs finite min < max and count >= 2")
    return np.linspace(lo, hi, count)


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return RunConfig.from_dict(json.load(fh))


# --- output -----------------------------------------------------------------


def _fmt(x: float) -> str:
    return repr(float(x))


def _table_text(columns, rows, fmt: str, command: str, space: Space, config: RunConfig) -> str:
    if fmt == "json":
        envelope = {
            "tool": "nonstatic",
            "version": __version__,
            "command": command,
            "space": space.value,
            "config": config.to_dict(),
            "columns": list(columns),
            "rows": [[float(v) for v in row] for row in rows],
        }
        return json.dumps(envelope, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _output_path(config: RunConfig, space: Space, n_spaces: int) -> Path | None:
    if config.out is None:
        if n_spaces > 1:
            raise ConfigError("out", "an output path is required when space is 'both'")
        return None
    path = Path(config.out)
    if n_spaces > 1:
        path = path.with_name(f"{path.stem}_{space.value}{path.suffix}")
    return path


def _emit(text: str, path: Path | None, stdout):
    if path is None:
        stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _check_finite(arr, what):
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"non-finite values in {what}")


# --- commands ---------------------------------------------------------------


def density_grid(params: WaveParams, state, space: Space, axis, times):
    kind, value = state
    if kind == "fock":
        return fock.density(params, value, axis=axis, times=times, space=space)
    return gaussian.density_gaussian(params, value, axis=axis, times=times, space=space)


def cmd_density(config: RunConfig, stdout=sys.stdout) -> int:
    params, state = config.validate()
    spaces = config.spaces()
    times = config.time_axis(params)
    for space in spaces:
        path = _output_path(config, space, len(spaces))
        grid = density_grid(params, state, space, config.axis(), times)
        _check_finite(grid.values, "density")
        tt, xx = np.meshgrid(grid.times, grid.axis, indexing="ij")
        rows = np.column_stack([tt.ravel(), xx.ravel(), grid.values.ravel()])
        _emit(_table_text(("t", "x", "density"), rows, config.format, "density", space, config), path, stdout)
    return EXIT_OK


def ratio_series(params: WaveParams, state, space: Space, times):
    """Rows ``(t, im/re, re, im)`` of W-type exponent parameters."""
    kind, value = state
    if kind == "fock":
        z = timefn.w_complex(params, times) if space is Space.Q else timefn.w_p_complex(params, times)
    else:
        fr = gaussian.frame(params, value, times)
        z = fr.W_script if space is Space.Q else fr.W_script_p
    return np.column_stack([times, z.imag / z.real, z.real, z.imag])


def cmd_ratio(config: RunConfig, stdout=sys.stdout) -> int:
    params, state = config.validate()
    spaces = config.spaces()
    times = config.time_axis(params)
    for space in spaces:
        path = _output_path(config, space, len(spaces))
        rows = ratio_series(params, state, space, times)
        _check_finite(rows, "ratio series")
        _emit(_table_text(("t", "ratio", "re", "im"), rows, config.format, "ratio", space, config), path, stdout)
    return EXIT_OK


def measures(params: WaveParams, state, space: Space) -> float:
    kind, value = state
    if kind == "fock":
        return fock.measure_nonstaticity(params, space)
    return gaussian.measure_nonstaticity_gaussian(params, value, space)


def cmd_measure(config: RunConfig, stdout=sys.stdout) -> int:
    params, state = config.validate()
    for space in config.spaces():
        line = f"measure[{space.value}] rms={measures(params, state, space):.12f}"
        if state[0] == "fock":
            line += f" closed_form={fock.measure_closed_form(params):.12f}"
        stdout.write(line + "\n")
    return EXIT_OK


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def _series_variances(params, state, times):
    out = {}
    for space in (Space.Q, Space.P):
        grid = density_grid(params, state, space, None, times)
        out[space] = grid.slice_variances()
    return out


def _wavefunctions(params, state):
    kind, value = state
    if kind == "fock":
        return (lambda x, t: fock.psi_q(params, value, x, t)), (lambda x, t: fock.psi_p(params, value, x, t))
    return (lambda x, t: gaussian.psi_q_gaussian(params, value, x, t)), (
        lambda x, t: gaussian.psi_p_gaussian(params, value, x, t)
    )


def _default_axes(params, state, times, count=1024):
    kind, value = state
    if kind == "fock":
        return tuple(fock.default_axis(params, value, times, s, count) for s in (Space.Q, Space.P))
    return tuple(gaussian.default_axis(params, value, times, s, count) for s in (Space.Q, Space.P))


def run_checks(config: RunConfig) -> list[Check]:
    params, state = config.validate()
    checks = []
    period = params.period

    sample_t = np.linspace(0.0, 2 * period, 1000)
    res = float(np.max(np.abs(verify.ode_residual(params, sample_t))))
    tol = 1e-9 * max(1.0, params.omega**2)
    checks.append(Check("ode_residual", res < tol, f"max|residual|={res:.3e} (tol {tol:.0e})"))

    times = config.time_axis(params)
    probe = times[np.linspace(0, times.size - 1, 5).astype(int)]
    qaxis, paxis = _default_axes(params, state, times)
    psi_q, psi_p = _wavefunctions(params, state)
    err = 0.0
    for t in probe:
        wave = verify.SampledWave(qaxis, psi_q(qaxis, t), float(t), Space.Q)
        ft = verify.numerical_ft(wave, paxis, params.hbar)
        err = max(err, float(np.max(np.abs(ft.values - psi_p(paxis, t)))))
    checks.append(Check("fourier_oracle", err < 1e-8, f"max|analytic - numerical FT|={err:.3e}"))

    norm_err = 0.0
    grids = {}
    for space in (Space.Q, Space.P):
        grids[space] = density_grid(params, state, space, config.axis(), times)
        norm_err = max(norm_err, float(np.max(np.abs(grids[space].slice_norms() - 1))))
    checks.append(Check("normalization", norm_err < 1e-6, f"max|norm - 1|={norm_err:.3e}"))

    d_q, d_p = measures(params, state, Space.Q), measures(params, state, Space.P)
    ok = abs(d_q - d_p) < 1e-8
    detail = f"D_q={d_q:.12f} D_p={d_p:.12f}"
    if state[0] == "fock":
        closed = fock.measure_closed_form(params)
        ok = ok and abs(d_p - closed) < 1e-8
        detail += f" closed_form={closed:.12f}"
    checks.append(Check("measure_equality", ok, detail))

    nonstatic = max(d_q, d_p) > 1e-9
    if nonstatic:
        sweep = np.linspace(0.0, 2 * period, 257)
        var = _series_variances(params, state, sweep)
        diff = verify.phase_opposition((sweep, var[Space.Q]), (sweep, var[Space.P]), params.omega)
        checks.append(
            Check("phase_opposition", abs(diff - math.pi) < 0.02, f"phase(p) - phase(q)={diff:.6f} rad")
        )
    else:
        drift = max(float(np.max(np.abs(g.values - g.values[0]))) for g in grids.values())
        checks.append(Check("time_invariance", drift < 1e-10, f"max slice drift={drift:.3e}"))
    return checks


def cmd_verify(config: RunConfig, stdout=sys.stdout) -> int:
    checks = run_checks(config)
    for check in checks:
        stdout.write(f"{'PASS' if check.passed else 'FAIL'}  {check.name:<18} {check.detail}\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


COMMANDS = {"density": cmd_density, "ratio": cmd_ratio, "measure": cmd_measure, "verify": cmd_verify}


# --- argument parsing -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _triple(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected <min>,<max>,<count>, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <min>,<max>,<count>, got {text!r}") from None


def _c_value(text: str):
    if text in ("+", "-"):
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or +/- for a derived C, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    for name in ("A", "B", "omega", "phi", "t0", "epsilon", "hbar"):
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--C", type=_c_value, help="value, or + / - to derive C = ±sqrt(AB - 1)")
    common.add_argument("--state", help="fock:<n> or gauss:<K_re>,<K_im>,<xi>")
    common.add_argument("--space", choices=["q", "p", "both"])
    common.add_argument("--grid", type=_triple, help="<min>,<max>,<count> of the coordinate axis")
    common.add_argument("--times", type=_triple, help="<min>,<max>,<count> of the time axis")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", help="output path (suffixed _q/_p when space is both)")
    common.add_argument("--config", dest="config_file", help="JSON config file; flags override it")
    common.add_argument("--echo-config", action="store_true", help="print the resolved config and exit")

    parser = _Parser(prog="nonstatic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("density", parents=[common], help="probability density grids (long format)")
    sub.add_parser("ratio", parents=[common], help="imaginary/real ratio series of W-type parameters")
    sub.add_parser("measure", parents=[common], help="RMS nonstaticity measure")
    sub.add_parser("verify", parents=[common], help="run the oracle checks for a configuration")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    flags = vars(args).copy()
    flags.pop("command", None)
    flags.pop("echo_config", None)
    data = {}
    config_file = flags.pop("config_file", None)
    if config_file is not None:
        try:
            with open(config_file, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("config", str(exc)) from None
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be a JSON object")
    if "C" in flags:
        c = flags.pop("C")
        if isinstance(c, str):
            flags["C"], flags["c_sign"] = None, 1 if c == "+" else -1
        else:
            flags["C"] = c
    data.update(flags)
    return RunConfig.from_dict(data)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help / --version exit 0; usage errors exit EXIT_USAGE via _Parser.error
        return int(exc.code or 0)
    try:
        config = resolve_config(args)
        if getattr(args, "echo_config", False):
            config.validate()
            sys.stdout.write(config.to_json())
            return EXIT_OK
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = COMMANDS[args.command](config, sys.stdout)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        return code
    except (ConfigError, ConstraintError) as exc:
        print(f"nonstatic: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonFiniteError, DegenerateFrameError, FloatingPointError) as exc:
        print(f"nonstatic: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
