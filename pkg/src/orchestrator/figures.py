"""Row builders for the four figure data sets and the sweep table."""

from __future__ import annotations

import functools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

from src.core.constants import ANGSTROM, dimensionless_group, half_width_for_group
from src.core.exceptions import EngineError, NegativeVariance
from src.cycle.efficiency_bounds import efficiency_bound_point
from src.cycle.stirling import run_cycle
from src.ensemble.partition import Method, internal_energy
from src.router.config_text import GridSpec, RunConfig, SweepVariable
from src.uncertainty.thermal import UncertaintyReport, sum_uncertainty_fixed_n, uncertainty_report
from src.uncertainty.thermo_map import entropy_from_uncertainty, entropy_literal

from .output import VALID, error_flag

logger = logging.getLogger(__name__)

Rows = List[Dict[str, object]]
ReportTool = Callable[..., UncertaintyReport]

FIG1_COLUMNS = ["L_angstrom", "T_K", "alpha_beta", "dx", "dp", "sum", "product", "method", "validity"]
FIG2_COLUMNS = ["L_angstrom", "T_K", "n_bar", "sum", "method", "validity"]
FIG3_COLUMNS = ["L_angstrom", "T_K", "u_sum", "entropy", "entropy_literal", "method", "validity"]
FIG4_COLUMNS = [
    "L_angstrom",
    "T1_K",
    "T2_K",
    "u_T1",
    "u_T2",
    "eta_lower",
    "eta_upper",
    "carnot",
    "method",
    "validity",
]
SWEEP_COLUMNS = [
    "L_angstrom",
    "alpha_beta_T1",
    "T1_K",
    "T2_K",
    "dx_T1",
    "dp_T1",
    "sum_T1",
    "product_T1",
    "sum_T2",
    "U_T1",
    "entropy_mapped_T1",
    "W",
    "efficiency",
    "carnot",
    "method",
    "validity",
]

FIG2_MEAN_LEVELS = (1.0, 2.0)
SWEEP_WORKERS = 4


def _bath_pair(run: RunConfig) -> Tuple[float, float]:
    # lower temperature first, as the dotted curve
    return run.T2_K, run.T1_K


def fig1_rows(run: RunConfig, report_tool: ReportTool = uncertainty_report) -> Rows:
    """ΔX_T, ΔP_T and their normalized sum along the L grid, evaluated with ``run.method``."""
    rows: Rows = []
    for T in _bath_pair(run):
        for L in run.grid.values():
            cfg = run.engine_config(float(L))
            row: Dict[str, object] = {
                "L_angstrom": float(L),
                "T_K": T,
                "alpha_beta": dimensionless_group(cfg, T),
                "method": run.method.value,
            }
            try:
                report = report_tool(cfg, T, run.method)
                row.update(
                    dx=report.dx,
                    dp=report.dp,
                    sum=report.sum_normalized,
                    product=report.product,
                    validity=report.validity_flag.value,
                )
            except EngineError as exc:
                row.update(dx=math.nan, dp=math.nan, sum=math.nan, product=math.nan, validity=error_flag(exc))
            rows.append(row)
    return rows


def fig2_rows(run: RunConfig) -> Rows:
    rows: Rows = []
    for n_bar in FIG2_MEAN_LEVELS:
        for L in run.grid.values():
            cfg = run.engine_config(float(L))
            row: Dict[str, object] = {
                "L_angstrom": float(L),
                "T_K": run.T_K,
                "n_bar": n_bar,
                "method": Method.PAPER_CLOSED_FORM.value,
            }
            try:
                row.update(sum=sum_uncertainty_fixed_n(cfg, n_bar, run.T_K), validity=VALID)
            except NegativeVariance:
                row.update(sum=math.nan, validity="negative_variance_regime")
            except EngineError as exc:
                row.update(sum=math.nan, validity=error_flag(exc))
            rows.append(row)
    return rows


def fig3_rows(run: RunConfig, report_tool: ReportTool = uncertainty_report) -> Rows:
    """S against ΔX_T + ΔP_T in SI units, the sum the mapped partition function takes."""
    rows: Rows = []
    for T in _bath_pair(run):
        for L in run.grid.values():
            cfg = run.engine_config(float(L))
            row: Dict[str, object] = {"L_angstrom": float(L), "T_K": T, "method": run.method.value}
            try:
                report = report_tool(cfg, T, run.method)
                if not report.valid:
                    row.update(
                        u_sum=math.nan, entropy=math.nan, entropy_literal=math.nan, validity=report.validity_flag.value
                    )
                else:
                    row.update(
                        u_sum=report.dx + report.dp,
                        entropy=entropy_from_uncertainty(cfg, T),
                        entropy_literal=entropy_literal(cfg, T),
                        validity=VALID,
                    )
            except EngineError as exc:
                row.update(u_sum=math.nan, entropy=math.nan, entropy_literal=math.nan, validity=error_flag(exc))
            rows.append(row)
    return rows


def fig4_rows(run: RunConfig) -> Rows:
    rows: Rows = []
    for L in sweep_half_widths(run, run.eta_grid):
        cfg = run.engine_config(L)
        row: Dict[str, object] = {"L_angstrom": L, "T1_K": run.T1_K, "T2_K": run.T2_K, "method": run.method.value}
        try:
            point = efficiency_bound_point(cfg, run.T1_K, run.T2_K, basis_size=run.basis_size, method=run.method)
            row.update(
                u_T1=point.u_T1,
                u_T2=point.u_T2,
                eta_lower=point.eta_lower,
                eta_upper=point.eta_upper,
                carnot=point.carnot,
                validity=point.flag,
            )
        except EngineError as exc:
            row.update(
                u_T1=math.nan,
                u_T2=math.nan,
                eta_lower=math.nan,
                eta_upper=math.nan,
                carnot=1.0 - run.T2_K / run.T1_K,
                validity=error_flag(exc),
            )
        rows.append(row)
    return rows


FIGURE_BUILDERS = {
    1: (fig1_rows, FIG1_COLUMNS, "sum"),
    2: (fig2_rows, FIG2_COLUMNS, "sum"),
    3: (fig3_rows, FIG3_COLUMNS, "entropy"),
    4: (fig4_rows, FIG4_COLUMNS, "eta_upper"),
}


def sweep_half_widths(run: RunConfig, grid: Optional[GridSpec] = None) -> List[float]:
    """Grid values turned into half-widths in Å; an αβ grid is read at T1."""
    grid = grid or run.grid
    values = grid.values()
    if grid.variable is SweepVariable.ALPHA_BETA:
        cfg = run.engine_config()
        return [
            half_width_for_group(run.mass_kg, run.T1_K, float(ab), cfg.constants) / ANGSTROM for ab in values
        ]
    return [float(L) for L in values]


def sweep_rows(
    run: RunConfig,
    report_tool: ReportTool = uncertainty_report,
    cycle_tool: Callable = run_cycle,
    max_workers: int = SWEEP_WORKERS,
) -> Rows:
    """
    One row per grid point. Points are evaluated on a thread pool; ``map``
    hands rows back in grid order so the written file does not depend on
    scheduling.
    """
    point = functools.partial(_sweep_row, run, report_tool, cycle_tool)
    half_widths = sweep_half_widths(run)
    if max_workers <= 1 or len(half_widths) < 2:
        return [point(L) for L in half_widths]
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        return list(executor.map(point, half_widths))


def _sweep_row(run: RunConfig, report_tool: ReportTool, cycle_tool: Callable, L: float) -> Dict[str, object]:
    cfg = run.engine_config(L)
    row: Dict[str, object] = {
        "L_angstrom": L,
        "alpha_beta_T1": dimensionless_group(cfg, run.T1_K),
        "T1_K": run.T1_K,
        "T2_K": run.T2_K,
        "method": run.method.value,
    }
    try:
        hot = report_tool(cfg, run.T1_K, run.method)
        cold = report_tool(cfg, run.T2_K, run.method)
        cycle = cycle_tool(cfg, run.T1_K, run.T2_K, run.method)
        row.update(
            dx_T1=hot.dx,
            dp_T1=hot.dp,
            sum_T1=hot.sum_normalized,
            product_T1=hot.product,
            sum_T2=cold.sum_normalized,
            U_T1=internal_energy(cfg, run.T1_K, method=run.method),
            W=cycle.W,
            efficiency=cycle.efficiency,
            carnot=cycle.carnot,
        )
        validity = VALID if hot.valid and cold.valid else "negative_variance_regime"
        try:
            row["entropy_mapped_T1"] = entropy_from_uncertainty(cfg, run.T1_K)
        except EngineError as exc:
            row["entropy_mapped_T1"] = math.nan
            validity = error_flag(exc)
        row["validity"] = validity
    except EngineError as exc:
        logger.debug("sweep point L=%.4f Å failed: %s", L, exc)
        row["validity"] = error_flag(exc)
    return {column: row.get(column, math.nan) for column in SWEEP_COLUMNS}
