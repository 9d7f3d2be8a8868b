import os
import sys
from pathlib import Path

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
SRC_PATH = os.path.join(ROOT, "src")
for path in (ROOT, SRC_PATH):
    if path not in sys.path:
        sys.path.insert(0, path)

import pytest

from src.core.constants import (
    ANGSTROM,
    ELECTRON_MASS_KG,
    CODATA_2018,
    half_width_for_group,
    make_engine_config,
)
from src.router.config_text import Command, RunConfig


@pytest.fixture
def electron_cfg():
    """Electron in a 0.5 Å half-width box."""
    return make_engine_config(ELECTRON_MASS_KG, 0.5 * ANGSTROM)


@pytest.fixture
def cfg_at_group():
    """Factory for an electron config whose αβ at ``temperature`` equals ``alpha_beta``."""

    def build(alpha_beta: float, temperature: float = 100.0, **kwargs):
        L = half_width_for_group(ELECTRON_MASS_KG, temperature, alpha_beta, CODATA_2018)
        return make_engine_config(ELECTRON_MASS_KG, L, **kwargs)

    return build


@pytest.fixture
def run_config(tmp_path):
    return RunConfig(command=Command.CYCLE, out_dir=tmp_path / "out")


GOLDEN_DIR = Path(ROOT) / "tests" / "data"


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="rewrite the golden files under tests/data from the current output",
    )


@pytest.fixture
def golden(request):
    """Compare bytes against tests/data/<name>; a missing file is written and the test skipped."""
    update = request.config.getoption("--update-golden")

    def compare(name: str, produced: bytes) -> None:
        path = GOLDEN_DIR / name
        if update or not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(produced)
            pytest.skip(f"golden file {path.name} written; commit it and rerun")
        assert produced == path.read_bytes(), f"output differs from {path}"

    return compare
