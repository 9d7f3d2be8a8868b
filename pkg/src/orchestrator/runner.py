from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from src.core.exceptions import EngineError
from src.cycle.stirling import (
    CycleReport,
    efficiency_from_uncertainty,
    run_cycle,
    work_from_uncertainty,
    work_prefactor,
    work_prefactor_literal,
)
from src.router.config_text import Command, RunConfig
from src.uncertainty.thermal import uncertainty_report

from . import figures
from .output import VALID, ensure_out_dir, error_flag, write_csv
from .verify import VerificationReport, run_verification

logger = logging.getLogger(__name__)

CYCLE_COLUMNS = ["quantity", "value", "unit", "method", "validity"]

SvgTool = Callable[[Path, str, str, str], Optional[Path]]


@dataclass
class RunResult:
    command: str
    outputs: List[Path] = field(default_factory=list)
    rows: int = 0
    errors: Dict[str, str] = field(default_factory=dict)
    exit_code: int = 0
    report_text: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "outputs": [str(path) for path in self.outputs],
            "rows": self.rows,
            "errors": self.errors,
            "exit_code": self.exit_code,
            "report_text": self.report_text,
        }


class RunOrchestrator:
    """
    Executes a RunConfig: computes rows, writes CSV and optional SVG.

    The compute and rendering callables are injected so tests can swap them.
    """

    def __init__(
        self,
        *,
        cycle_tool: Callable[..., CycleReport] = run_cycle,
        report_tool: Callable = uncertainty_report,
        svg_tool: Optional[SvgTool] = None,
        verify_tool: Callable[[RunConfig], VerificationReport] = run_verification,
    ) -> None:
        self._cycle = cycle_tool
        self._report = report_tool
        self._svg = svg_tool
        self._verify = verify_tool

    def run(self, run: RunConfig) -> RunResult:
        logger.info("running %s with %s", run.command.value, run.to_dict())
        if run.command is Command.VERIFY:
            return self.cmd_verify(run)
        ensure_out_dir(run.out_dir)
        if run.command is Command.FIG:
            return self.cmd_fig(run)
        if run.command is Command.CYCLE:
            return self.cmd_cycle(run)
        return self.cmd_sweep(run)

    def cmd_fig(self, run: RunConfig) -> RunResult:
        fig_id = int(run.fig_id or 0)
        builder, columns, y_column = figures.FIGURE_BUILDERS[fig_id]
        if fig_id in (1, 3):
            rows = builder(run, self._report)
        else:
            rows = builder(run)
        x_column = {1: "L_angstrom", 2: "L_angstrom", 3: "u_sum", 4: "u_T1"}[fig_id]
        path = write_csv(run.out_dir / f"fig{fig_id}.csv", rows, columns)
        result = RunResult(command=f"fig{fig_id}", outputs=[path], rows=len(rows))
        self._maybe_svg(run, result, path, x_column, y_column, f"Figure {fig_id}")
        result.errors = _row_errors(rows)
        return result

    def cmd_cycle(self, run: RunConfig) -> RunResult:
        cfg = run.engine_config()
        errors: Dict[str, str] = {}
        rows: List[Dict[str, object]] = []
        method = run.method.value
        try:
            report = self._cycle(cfg, run.T1_K, run.T2_K, run.method)
        except EngineError as exc:
            errors["cycle"] = str(exc)
            report = None

        if report is not None:
            for name, unit in _CYCLE_QUANTITIES:
                rows.append(
                    {"quantity": name, "value": getattr(report, name), "unit": unit, "method": method, "validity": VALID}
                )

        for name, unit, compute in (
            ("W_from_uncertainty", "J", lambda: work_from_uncertainty(cfg, run.T1_K, run.T2_K, run.method)),
            ("efficiency_from_uncertainty", "1", lambda: efficiency_from_uncertainty(cfg, run.T1_K, run.T2_K, run.method)),
            ("work_prefactor", "J", lambda: work_prefactor(cfg)),
            ("work_prefactor_literal", "1/kg", lambda: work_prefactor_literal(cfg)),
        ):
            try:
                rows.append({"quantity": name, "value": compute(), "unit": unit, "method": method, "validity": VALID})
            except EngineError as exc:
                errors[name] = str(exc)
                rows.append(
                    {"quantity": name, "value": math.nan, "unit": unit, "method": method, "validity": error_flag(exc)}
                )

        path = write_csv(run.out_dir / "cycle.csv", rows, CYCLE_COLUMNS)
        exit_code = 1 if "cycle" in errors else 0
        return RunResult(command="cycle", outputs=[path], rows=len(rows), errors=errors, exit_code=exit_code)

    def cmd_sweep(self, run: RunConfig) -> RunResult:
        rows = figures.sweep_rows(run, self._report, self._cycle)
        path = write_csv(run.out_dir / "sweep.csv", rows, figures.SWEEP_COLUMNS)
        result = RunResult(command="sweep", outputs=[path], rows=len(rows))
        self._maybe_svg(run, result, path, "L_angstrom", "sum_T1", "Sweep")
        result.errors = _row_errors(rows)
        return result

    def cmd_verify(self, run: RunConfig) -> RunResult:
        report = self._verify(run)
        text = report.to_text()
        failures = {check.name: check.detail for check in report.failures}
        return RunResult(command="verify", rows=len(report.checks), errors=failures, exit_code=report.exit_code, report_text=text)

    def _maybe_svg(self, run: RunConfig, result: RunResult, csv_path: Path, x: str, y: str, title: str) -> None:
        if not run.emit_svg or self._svg is None:
            return
        svg_path = self._svg(csv_path, x, y, title)
        if svg_path is not None:
            result.outputs.append(svg_path)


_CYCLE_QUANTITIES = (
    ("log_Z_A", "1"),
    ("log_Z_B", "1"),
    ("log_Z_C", "1"),
    ("log_Z_D", "1"),
    ("U_A", "J"),
    ("U_B", "J"),
    ("U_C", "J"),
    ("U_D", "J"),
    ("Q_AB", "J"),
    ("Q_BC", "J"),
    ("Q_CD", "J"),
    ("Q_DA", "J"),
    ("W", "J"),
    ("efficiency", "1"),
    ("efficiency_from_heats", "1"),
    ("carnot", "1"),
)


def _row_errors(rows: List[Dict[str, object]]) -> Dict[str, str]:
    errors: Dict[str, str] = {}
    for index, row in enumerate(rows):
        flag = str(row.get("validity", VALID))
        if flag.startswith("error:"):
            errors[f"row{index}"] = flag
    return errors
