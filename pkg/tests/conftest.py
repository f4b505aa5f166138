from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gridhf import fixture_path  # noqa: E402
from gridhf.grid import read_grid  # noqa: E402

# fixtures small enough for the full complex (n <= 9)
SMALL = ["unknot2", "trefoil_rh", "torus_2_5_tbmax", "k1_substitute", "sixone_tbmax"]
LARGE = ["cable_l1", "k2_sum", "cable_5_2_candidate", "k1_full"]


def load(name: str):
    return read_grid(fixture_path(f"{name}.grid"))


@pytest.fixture(scope="session")
def grids():
    return {name: load(name) for name in SMALL + LARGE}
