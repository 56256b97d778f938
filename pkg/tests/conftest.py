"""Pytest configuration and fixtures for ssm2d tests."""

import tempfile
from pathlib import Path

import numpy as np
import pytest

from ssm2d.models import LayerConfig, Mode, ScalarField, SsmParams
from ssm2d.params import constrain, delta_params, init_raw, pascal_params


@pytest.fixture
def rng():
    """Seeded generator so every test run draws the same numbers."""
    return np.random.default_rng(1234)


@pytest.fixture
def temp_dir():
    """Create a temporary directory for file-based tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def pascal():
    """Pascal restriction A1 = A2 = A3 = 1, A4 = 0, B1 = C1 = 1."""
    return pascal_params()


@pytest.fixture
def delta():
    """Zero-A parameters whose unrelaxed kernel is a unit delta."""
    return delta_params()


@pytest.fixture
def hand_params():
    """N = 1 parameters used for by-hand recurrence steps."""
    return SsmParams(
        field=ScalarField.REAL,
        a=[[0.5], [0.25], [0.3], [0.2]],
        b=[[1.0], [1.0]],
        c=[[1.0], [0.0]],
        d=[0.0],
    )


@pytest.fixture
def random_params():
    """Factory of constrained parameters drawn from a seed."""

    def make(
        seed: int = 0,
        field: ScalarField = ScalarField.REAL,
        n: int = 3,
        l1: int = 6,
        l2: int = 6,
        mode: Mode = Mode.NORMALIZED,
    ) -> SsmParams:
        cfg = LayerConfig(l1=l1, l2=l2, n=n, field=field, mode=mode)
        return constrain(init_raw(seed, cfg))

    return make


PASCAL_CONFIG = """\
# Pascal restriction
field = real
n = 1
mode = unnormalized
a1 = 1
a2 = 1
a3 = 1
a4 = 0
b1 = 1
b2 = 0
c1 = 1
c2 = 0
d = 0
"""

DELTA_CONFIG = """\
field = real
n = 1
mode = unnormalized
a1 = 0
a2 = 0
a3 = 0
a4 = 0
b1 = 1
b2 = 1
c1 = 0.5
c2 = 0.5
d = 1
"""


@pytest.fixture
def pascal_config(temp_dir):
    """Parameter file holding the Pascal restriction."""
    path = temp_dir / "pascal.cfg"
    path.write_text(PASCAL_CONFIG, encoding="utf-8")
    return path


@pytest.fixture
def delta_config(temp_dir):
    """Parameter file with a delta kernel and D = 1."""
    path = temp_dir / "delta.cfg"
    path.write_text(DELTA_CONFIG, encoding="utf-8")
    return path
