from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"

VALID = "valid"


def write_csv(path: Path, rows: Iterable[Mapping[str, object]], columns: Sequence[str]) -> Path:
    """Write rows in column order: 17 significant digits, ',' separator, '\\n' line endings."""
    frame = pd.DataFrame(list(rows), columns=list(columns))
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(
        path,
        index=False,
        float_format=FLOAT_FORMAT,
        lineterminator="\n",
        na_rep="nan",
        encoding="utf-8",
    )
    logger.info("wrote %d rows to %s", len(frame), path)
    return path


def read_csv(path: Path) -> pd.DataFrame:
    return pd.read_csv(path, keep_default_na=True)


def ensure_out_dir(out_dir: Path) -> Path:
    """Create the output directory and prove it is writable."""
    out_dir.mkdir(parents=True, exist_ok=True)
    marker = out_dir / ".relqhe-write-marker"
    marker.write_text("", encoding="utf-8")
    marker.unlink()
    return out_dir


def error_flag(exc: Exception) -> str:
    return f"error:{type(exc).__name__}"

