"""``relqhe`` command line: fig, cycle, sweep and verify."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from src.core.exceptions import ConfigError, EngineError
from src.core.settings import configure_logging, load_settings
from src.enhancements.svg import render_svg
from src.orchestrator.runner import RunOrchestrator
from src.router.config_text import Command, parse_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

# argparse dest -> config key
_FLAG_KEYS = {
    "mass_kg": "mass_kg",
    "L": "L_angstrom",
    "T": "T_K",
    "T1": "T1_K",
    "T2": "T2_K",
    "grid_from": "grid_from",
    "grid_to": "grid_to",
    "steps": "grid_steps",
    "scale": "grid_scale",
    "var": "grid_var",
    "method": "method",
    "paper_literal": "paper_literal",
    "spectrum": "spectrum",
    "series_rel_tol": "series_rel_tol",
    "series_max_terms": "series_max_terms",
    "basis_size": "basis_size",
    "out_dir": "out_dir",
    "svg": "svg",
}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="key = value run configuration file")
    common.add_argument("--mass-kg", dest="mass_kg", type=float, default=None)
    common.add_argument("--L", dest="L", type=float, default=None, help="half-width L in angstrom")
    common.add_argument("--T", dest="T", type=float, default=None, help="single temperature in K")
    common.add_argument("--T1", dest="T1", type=float, default=None, help="hot bath in K")
    common.add_argument("--T2", dest="T2", type=float, default=None, help="cold bath in K")
    common.add_argument("--method", choices=("oracle", "paper", "corrected"), default=None)
    common.add_argument("--spectrum", choices=("expanded", "exact"), default=None)
    common.add_argument(
        "--paper-literal",
        dest="paper_literal",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="use the printed momentum rest term; --no-paper-literal overrides a config file",
    )
    common.add_argument("--series-rel-tol", dest="series_rel_tol", type=float, default=None)
    common.add_argument("--series-max-terms", dest="series_max_terms", type=int, default=None)
    common.add_argument("--basis-size", dest="basis_size", type=int, default=None)
    common.add_argument("--out-dir", dest="out_dir", default=None)
    common.add_argument("--svg", action="store_true", default=None, help="also write an SVG per CSV")
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def _grid_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--from", dest="grid_from", type=float, default=None)
    parser.add_argument("--to", dest="grid_to", type=float, default=None)
    parser.add_argument("--steps", type=int, default=None)
    parser.add_argument("--scale", choices=("linear", "log"), default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="relqhe",
        description="Relativistic quantum Stirling engine: figures, cycle, sweeps and verification.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    fig = commands.add_parser("fig", parents=[common], help="write the data of figure 1-4")
    fig.add_argument("--id", dest="fig_id", type=int, choices=(1, 2, 3, 4), required=True)
    _grid_options(fig)

    commands.add_parser("cycle", parents=[common], help="evaluate one Stirling cycle")

    sweep = commands.add_parser("sweep", parents=[common], help="sweep L or alpha*beta")
    sweep.add_argument("--var", choices=("L", "alpha_beta"), default=None)
    _grid_options(sweep)

    commands.add_parser("verify", parents=[common], help="run the verification suite")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: getattr(args, dest, None) for dest, key in _FLAG_KEYS.items()}


def _log_level(verbose: int, default: str) -> str:
    if verbose >= 2:
        return "DEBUG"
    if verbose == 1:
        return "INFO"
    return default


def main(argv: Optional[Sequence[str]] = None, orchestrator: Optional[RunOrchestrator] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = load_settings()
    configure_logging(_log_level(args.verbose, settings.log_level))

    try:
        text = args.config.read_text(encoding="utf-8") if args.config else ""
        run = parse_config(
            text,
            command=Command(args.command),
            fig_id=getattr(args, "fig_id", None),
            overrides=_overrides(args),
            defaults={
                "out_dir": str(settings.out_dir),
                "series_rel_tol": settings.series_rel_tol,
                "series_max_terms": settings.series_max_terms,
            },
        )
    except (ConfigError, OSError) as exc:
        print(f"relqhe: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    orchestrator = orchestrator or RunOrchestrator(svg_tool=render_svg)
    try:
        result = orchestrator.run(run)
    except OSError as exc:
        print(f"relqhe: cannot write output: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EngineError as exc:
        print(f"relqhe: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED

    if result.report_text is not None:
        print(result.report_text)
    for path in result.outputs:
        print(path)
    for name, message in result.errors.items():
        logger.warning("%s: %s", name, message)
    return result.exit_code


__all__ = ["EXIT_CONFIG", "EXIT_FAILED", "EXIT_OK", "build_parser", "main"]
