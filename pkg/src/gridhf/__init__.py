"""Grid homology, Legendrian grid invariants and a Lagrangian concordance obstruction."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

__version__ = "0.1.0"


def fixture_path(name: str) -> Path:
    """Path of a shipped fixture file, e.g. ``fixture_path("sixone_tbmax.grid")``."""
    return Path(str(resources.files(__name__) / "fixtures" / name))
