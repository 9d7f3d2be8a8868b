from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from src.core.constants import (
    ANGSTROM,
    ELECTRON_MASS_KG,
    EngineConfig,
    MomentumConvention,
    SpectrumMode,
    make_engine_config,
)
from src.core.exceptions import ConflictingFlags, EngineError, ParseError, UnknownKey
from src.ensemble.partition import Method


class Command(Enum):
    FIG = "fig"
    CYCLE = "cycle"
    SWEEP = "sweep"
    VERIFY = "verify"


class GridScale(Enum):
    LINEAR = "linear"
    LOG = "log"


class SweepVariable(Enum):
    L = "L"
    ALPHA_BETA = "alpha_beta"


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    steps: int
    scale: GridScale = GridScale.LINEAR
    variable: SweepVariable = SweepVariable.L

    def values(self) -> np.ndarray:
        if self.scale is GridScale.LOG:
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class RunConfig:
    command: Command = Command.CYCLE
    fig_id: Optional[int] = None
    mass_kg: float = ELECTRON_MASS_KG
    L_angstrom: float = 0.5
    T_K: float = 100.0
    T1_K: float = 300.0
    T2_K: float = 100.0
    grid: GridSpec = field(default_factory=lambda: GridSpec(0.05, 1.0, 40))
    # figure 4 sweeps the hot-bath αβ window where the cycle produces work
    eta_grid: GridSpec = field(
        default_factory=lambda: GridSpec(0.75, 3.0, 16, GridScale.LOG, SweepVariable.ALPHA_BETA)
    )
    method: Method = Method.ORACLE_SERIES
    paper_literal: bool = False
    spectrum: SpectrumMode = SpectrumMode.EXPANDED
    series_rel_tol: Optional[float] = None
    series_max_terms: Optional[int] = None
    basis_size: int = 64
    out_dir: Path = Path("out")
    emit_svg: bool = False

    def engine_config(self, L_angstrom: Optional[float] = None) -> EngineConfig:
        momentum = MomentumConvention.PAPER_LITERAL if self.paper_literal else MomentumConvention.DIMENSIONAL
        return make_engine_config(
            self.mass_kg,
            (L_angstrom if L_angstrom is not None else self.L_angstrom) * ANGSTROM,
            {"series_rel_tol": self.series_rel_tol, "series_max_terms": self.series_max_terms},
            spectrum=self.spectrum,
            momentum=momentum,
        )

    def to_dict(self) -> dict:
        return {
            "command": self.command.value,
            "fig_id": self.fig_id,
            "mass_kg": self.mass_kg,
            "L_angstrom": self.L_angstrom,
            "T_K": self.T_K,
            "T1_K": self.T1_K,
            "T2_K": self.T2_K,
            "grid_from": self.grid.start,
            "grid_to": self.grid.stop,
            "grid_steps": self.grid.steps,
            "grid_scale": self.grid.scale.value,
            "grid_var": self.grid.variable.value,
            "eta_grid_from": self.eta_grid.start,
            "eta_grid_to": self.eta_grid.stop,
            "eta_grid_steps": self.eta_grid.steps,
            "eta_grid_var": self.eta_grid.variable.value,
            "method": self.method.value,
            "paper_literal": self.paper_literal,
            "spectrum": self.spectrum.value,
            "series_rel_tol": self.series_rel_tol,
            "series_max_terms": self.series_max_terms,
            "basis_size": self.basis_size,
            "out_dir": str(self.out_dir),
            "svg": self.emit_svg,
        }


# -- value converters --------------------------------------------------------


def _positive_float(raw: Any) -> float:
    value = float(raw)
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"must be a positive number, got {raw!r}")
    return value


def _int_at_least(minimum: int) -> Callable[[Any], int]:
    def convert(raw: Any) -> int:
        value = int(raw)
        if value < minimum:
            raise ValueError(f"must be an integer >= {minimum}, got {raw!r}")
        return value

    return convert


def _boolean(raw: Any) -> bool:
    if isinstance(raw, bool):
        return raw
    lowered = str(raw).strip().lower()
    if lowered in {"true", "yes", "1", "on"}:
        return True
    if lowered in {"false", "no", "0", "off"}:
        return False
    raise ValueError(f"expected true or false, got {raw!r}")


def _choice(enum_cls: type, aliases: Optional[Mapping[str, Enum]] = None) -> Callable[[Any], Enum]:
    def convert(raw: Any) -> Enum:
        if isinstance(raw, enum_cls):
            return raw
        text = str(raw).strip()
        if aliases and text.lower() in aliases:
            return aliases[text.lower()]
        for member in enum_cls:
            if member.value.lower() == text.lower():
                return member
        options = ", ".join(member.value for member in enum_cls)
        raise ValueError(f"expected one of {options}, got {raw!r}")

    return convert


_METHOD_ALIASES = {"oracle": Method.ORACLE_SERIES, "paper": Method.PAPER_CLOSED_FORM, "corrected": Method.CORRECTED_INTEGRAL}

_CONVERTERS: Dict[str, Callable[[Any], Any]] = {
    "mass_kg": _positive_float,
    "L_angstrom": _positive_float,
    "T_K": _positive_float,
    "T1_K": _positive_float,
    "T2_K": _positive_float,
    "grid_from": _positive_float,
    "grid_to": _positive_float,
    "grid_steps": _int_at_least(2),
    "grid_scale": _choice(GridScale),
    "grid_var": _choice(SweepVariable),
    "eta_grid_from": _positive_float,
    "eta_grid_to": _positive_float,
    "eta_grid_steps": _int_at_least(2),
    "eta_grid_var": _choice(SweepVariable),
    "method": _choice(Method, _METHOD_ALIASES),
    "paper_literal": _boolean,
    "spectrum": _choice(SpectrumMode),
    "series_rel_tol": _positive_float,
    "series_max_terms": _int_at_least(1),
    "basis_size": _int_at_least(1),
    "out_dir": lambda raw: Path(str(raw).strip()),
    "svg": _boolean,
}

KNOWN_KEYS = tuple(_CONVERTERS)


def _split_line(raw_line: str, line_no: int) -> Optional[Tuple[str, str]]:
    line = raw_line.split("#", 1)[0].strip()
    if not line:
        return None
    if "=" not in line:
        raise ParseError(f"expected 'key = value', got {raw_line.strip()!r}", line=line_no)
    key, value = (part.strip() for part in line.split("=", 1))
    if not key or not value:
        raise ParseError(f"expected 'key = value', got {raw_line.strip()!r}", line=line_no)
    return key, value


def _convert(key: str, raw: Any, line_no: Optional[int]) -> Any:
    if key not in _CONVERTERS:
        raise UnknownKey(key, line=line_no)
    try:
        return _CONVERTERS[key](raw)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{key}: {exc}", line=line_no) from exc


def parse_values(text: str) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        pair = _split_line(raw_line, line_no)
        if pair is None:
            continue
        key, raw = pair
        if key in values:
            raise ParseError(f"duplicate key '{key}'", line=line_no)
        values[key] = _convert(key, raw, line_no)
    return values


def parse_config(
    text: str,
    *,
    command: Command = Command.CYCLE,
    fig_id: Optional[int] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    defaults: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """
    Build a RunConfig from ``key = value`` text.

    ``#`` starts a comment. Precedence, lowest first: ``defaults`` (process
    settings), the file, ``overrides`` (CLI flags). ``None`` entries are ignored.
    """
    values = {key: _convert(key, raw, None) for key, raw in (defaults or {}).items() if raw is not None}
    values.update(parse_values(text))
    for key, raw in (overrides or {}).items():
        if raw is None:
            continue
        values[key] = _convert(key, raw, None)
    return build_run_config(values, command=command, fig_id=fig_id)


def build_run_config(values: Mapping[str, Any], *, command: Command, fig_id: Optional[int] = None) -> RunConfig:
    run = RunConfig(command=command, fig_id=fig_id)
    grid = run.grid
    grid = replace(
        grid,
        start=values.get("grid_from", grid.start),
        stop=values.get("grid_to", grid.stop),
        steps=values.get("grid_steps", grid.steps),
        scale=values.get("grid_scale", grid.scale),
        variable=values.get("grid_var", grid.variable),
    )
    if not grid.start < grid.stop:
        raise ParseError(f"grid_from ({grid.start}) must be below grid_to ({grid.stop})")
    eta_grid = replace(
        run.eta_grid,
        start=values.get("eta_grid_from", run.eta_grid.start),
        stop=values.get("eta_grid_to", run.eta_grid.stop),
        steps=values.get("eta_grid_steps", run.eta_grid.steps),
        variable=values.get("eta_grid_var", run.eta_grid.variable),
    )
    if not eta_grid.start < eta_grid.stop:
        raise ParseError(f"eta_grid_from ({eta_grid.start}) must be below eta_grid_to ({eta_grid.stop})")

    run = replace(
        run,
        mass_kg=values.get("mass_kg", run.mass_kg),
        L_angstrom=values.get("L_angstrom", run.L_angstrom),
        T_K=values.get("T_K", run.T_K),
        T1_K=values.get("T1_K", run.T1_K),
        T2_K=values.get("T2_K", run.T2_K),
        grid=grid,
        eta_grid=eta_grid,
        method=values.get("method", run.method),
        paper_literal=values.get("paper_literal", run.paper_literal),
        spectrum=values.get("spectrum", run.spectrum),
        series_rel_tol=values.get("series_rel_tol", run.series_rel_tol),
        series_max_terms=values.get("series_max_terms", run.series_max_terms),
        basis_size=values.get("basis_size", run.basis_size),
        out_dir=values.get("out_dir", run.out_dir),
        emit_svg=values.get("svg", run.emit_svg),
    )

    if run.T2_K > run.T1_K:
        raise ConflictingFlags(f"T2_K = {run.T2_K} exceeds T1_K = {run.T1_K}")
    if run.method is Method.CORRECTED_INTEGRAL and run.spectrum is SpectrumMode.EXACT:
        raise ConflictingFlags("method 'corrected' needs the expanded spectrum")
    if command is Command.FIG and fig_id not in (1, 2, 3, 4):
        raise ParseError(f"figure id must be 1..4, got {fig_id!r}")

    try:
        run.engine_config()
    except EngineError as exc:
        raise ParseError(str(exc)) from exc
    return run
