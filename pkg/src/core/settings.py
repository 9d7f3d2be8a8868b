from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from .constants import DEFAULT_SERIES_MAX_TERMS, DEFAULT_SERIES_REL_TOL

ENV_PATH = Path(__file__).resolve().parents[2] / ".env"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    out_dir: Path
    log_level: str
    series_rel_tol: float
    series_max_terms: int


def load_settings(env_file: Optional[Path] = ENV_PATH) -> Settings:
    """
    Read process-level defaults.

    Environment variables are read at call time so tests can monkeypatch them:
    - RELQHE_OUT_DIR: default output directory
    - RELQHE_LOG_LEVEL: logging level name
    - RELQHE_SERIES_REL_TOL / RELQHE_SERIES_MAX_TERMS: series defaults
    """
    if env_file is not None and env_file.exists():
        load_dotenv(env_file, override=False)

    return Settings(
        out_dir=Path(os.getenv("RELQHE_OUT_DIR", "out")),
        log_level=os.getenv("RELQHE_LOG_LEVEL", "WARNING").upper(),
        series_rel_tol=float(os.getenv("RELQHE_SERIES_REL_TOL", DEFAULT_SERIES_REL_TOL)),
        series_max_terms=int(os.getenv("RELQHE_SERIES_MAX_TERMS", DEFAULT_SERIES_MAX_TERMS)),
    )


def configure_logging(level: str | int = "WARNING") -> None:
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)
