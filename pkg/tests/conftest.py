import math
from pathlib import Path

import pytest
from hypothesis import strategies as st

from nonstatic import WaveParams
from nonstatic.cli import load_config

ROOT = Path(__file__).resolve().parents[1]
CONFIG_DIR = ROOT / "configs"
GOLDEN = sorted(CONFIG_DIR.glob("*.json"))


@pytest.fixture
def env():
    return WaveParams(1.0, 5.0, 2.0)


@pytest.fixture
def static():
    return WaveParams.static()


def golden_configs():
    return {path.stem: load_config(path) for path in GOLDEN}


@st.composite
def wave_params(draw, max_excess=4.0, free_origin=True, units=True):
    """Valid WaveParams: A*B = 1 + s with C = ±sqrt(s)."""
    A = draw(st.floats(0.3, 3.0))
    s = draw(st.floats(0.0, max_excess))
    sign = draw(st.sampled_from([1, -1]))
    kwargs = {}
    if units:
        kwargs.update(
            omega=draw(st.floats(0.5, 2.0)),
            epsilon=draw(st.floats(0.5, 2.0)),
            hbar=draw(st.floats(0.5, 2.0)),
        )
    kwargs["phi"] = draw(st.floats(-math.pi, math.pi))
    if free_origin:
        kwargs["t0"] = draw(st.floats(-2.0, 2.0))
    return WaveParams.from_ab(A, (1.0 + s) / A, sign, **kwargs)
