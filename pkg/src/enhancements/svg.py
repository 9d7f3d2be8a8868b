from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

logger = logging.getLogger(__name__)

# Glyphs as paths and a fixed hash salt: no font files, repeatable output.
matplotlib.rcParams["svg.fonttype"] = "path"
matplotlib.rcParams["svg.hashsalt"] = "relqhe"

SERIES_COLUMNS = ("T_K", "n_bar")
COMPANION_COLUMNS = {"eta_upper": "eta_lower"}


def render_svg(csv_path: Path, x_column: str, y_column: str, title: str) -> Optional[Path]:
    """
    Draw one line chart next to ``csv_path`` and return its path.

    Rows are split into one line per value of the first series column that
    varies (temperature or fixed n̄); rows flagged invalid are left out.
    """
    frame = pd.read_csv(csv_path)
    if "validity" in frame:
        frame = frame[frame["validity"] == "valid"]
    if frame.empty or x_column not in frame or y_column not in frame:
        logger.warning("nothing to plot in %s (%s vs %s)", csv_path, y_column, x_column)
        return None

    series = next((column for column in SERIES_COLUMNS if column in frame and frame[column].nunique() > 1), None)
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    if series is None:
        frame = frame.sort_values(x_column)
        ax.plot(frame[x_column], frame[y_column], "-", linewidth=1.5, label=y_column)
        companion = COMPANION_COLUMNS.get(y_column)
        if companion and companion in frame:
            ax.plot(frame[x_column], frame[companion], "--", linewidth=1.5, label=companion)
    else:
        for value, group in frame.groupby(series, sort=True):
            ordered = group.sort_values(x_column)
            ax.plot(ordered[x_column], ordered[y_column], "-", linewidth=1.5, label=f"{series}={value:g}")
    ax.set_xlabel(x_column)
    ax.set_ylabel(y_column)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()

    svg_path = csv_path.with_suffix(".svg")
    fig.savefig(svg_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info("wrote %s", svg_path)
    return svg_path
