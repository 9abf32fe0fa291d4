"""Regenerate the figure data from the shipped configs and summarize the claims.

Usage::

    python3 scripts/reproduce_figures.py [--out-dir out]

Density configs go through ``nonstatic density``, ratio configs through
``nonstatic ratio``. The summary reports the measure, the fitted periods of
the variance and centroid series and the q/p phase difference.
"""

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

from nonstatic import Space, verify
from nonstatic.cli import cmd_density, cmd_ratio, density_grid, load_config, measures

ROOT = Path(__file__).resolve().parents[1]


def summarize(name, cfg):
    params, state = cfg.validate()
    times = cfg.time_axis(params)
    q = density_grid(params, state, Space.Q, None, times)
    p = density_grid(params, state, Space.P, None, times)
    lines = [f"{name} ({cfg.state})", f"  measure q={measures(params, state, Space.Q):.9f} p={measures(params, state, Space.P):.9f}"]
    if params.is_static:
        drift = max(abs(g.values - g.values[0]).max() for g in (q, p))
        lines.append(f"  static: max slice drift {drift:.1e}")
        return lines
    vq, vp = q.slice_variances(), p.slice_variances()
    period = verify.fit_oscillation(times, vp, params.omega).period
    lines.append(f"  variance period {period:.6f} (pi/omega = {math.pi / params.omega:.6f})")
    diff = verify.phase_opposition((times, vq), (times, vp), params.omega)
    lines.append(f"  q/p variance phase difference {diff:.6f}")
    centroid = p.slice_means()
    if abs(centroid).max() > 1e-9:
        lines.append(f"  p-centroid period {verify.fit_oscillation(times, centroid, params.omega).period:.6f}")
    return lines


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default=str(ROOT / "out"))
    args = parser.parse_args(argv)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for path in sorted((ROOT / "configs").glob("*.json")):
        cfg = load_config(path)
        command = cmd_ratio if "ratio" in path.stem else cmd_density
        cfg = replace(cfg, out=str(out_dir / f"{path.stem}.{cfg.format}"))
        command(cfg)
        print("\n".join(summarize(path.stem, cfg)))
    print(f"data written to {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
