# SPDX-License-Identifier: GPL-3.0-or-later
# Copyright (C) 2026 Rydspec Contributors

"""Command-line entry point.

Exit codes: 0 success, 1 configuration or data-file error, 2 physics-domain
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import structlog

from rydspec import __version__
from rydspec.config import get_settings
from rydspec.errors import RydspecError
from rydspec.log import configure_logging
from rydspec.radial import RadialCache
from rydspec.scenarios import RunContext, ScenarioRegistry, default_registry
from rydspec.schemas.config import SUBCOMMANDS, RunConfig, load_run_config, parse_run_config
from rydspec.services.artifacts import write_json
from rydspec.structure import load_atom_data

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_IO = 3


@dataclass(frozen=True, slots=True)
class RunResult:
    summary: dict[str, Any]
    artifacts: list[Path]
    metadata: Path


def run(
    config: RunConfig,
    *,
    options: dict[str, Any] | None = None,
    workers: int | None = None,
    registry: ScenarioRegistry | None = None,
) -> RunResult:
    """Run one subcommand and write ``<subcommand>.json`` metadata next to its artifacts."""
    settings = get_settings()
    registry = registry or default_registry()
    scenario = registry.require(config.subcommand)
    constants = config.constants_file or settings.constants_file
    data = load_atom_data(constants)
    context = RunContext(
        data=data,
        output_dir=config.output_dir,
        workers=workers or settings.workers,
        options=options or {},
        cache=RadialCache(),
    )
    log = logger.bind(subcommand=config.subcommand, constants=data.version)
    log.info("run_started", output_dir=str(config.output_dir))
    summary = scenario.run(config, context)

    metadata = {
        "package_version": __version__,
        "subcommand": config.subcommand,
        "scenario_version": scenario.version,
        "constants": {
            "path": str(constants),
            "species": data.species,
            "version": data.version,
            "sha256": data.sha256,
        },
        "config": config.model_dump(mode="json"),
        "artifacts": [p.name for p in context.artifacts],
        "summary": summary,
    }
    path = write_json(config.output_dir / f"{config.subcommand}.json", metadata)
    log.info("run_finished", artifacts=len(context.artifacts))
    return RunResult(summary=summary, artifacts=list(context.artifacts), metadata=path)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("expected non-negative saturation parameters")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML run configuration")
    common.add_argument("--constants", type=Path, help="atomic constants file")
    common.add_argument("--output-dir", type=Path, help="directory for artifacts")
    common.add_argument("--seed", type=int, help="seed for the optional trace noise")
    common.add_argument("--log-level", choices=["debug", "info", "warning", "error"])
    common.add_argument("--log-format", choices=["console", "json"])
    common.add_argument("--workers", type=int, help="thread pool width for Stark maps")

    parser = argparse.ArgumentParser(prog="rydspec", description="87Rb Rydberg spectroscopy")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("list", help="list the available scenarios")
    registry = default_registry()
    for name in SUBCOMMANDS:
        scenario = registry.require(name)
        sub = commands.add_parser(name, parents=[common], help=scenario.description)
        if name == "autler":
            sub.add_argument(
                "--sweep-s",
                type=_float_list,
                help="comma-separated saturation parameters, e.g. 2,151",
            )
        if name == "sequence":
            sub.add_argument(
                "--annotate",
                action="store_true",
                help="write the during-pulse/prompt/Rydberg feature annotation",
            )
    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    overrides: dict[str, object] = {
        "subcommand": args.command,
        "constants_file": str(args.constants) if args.constants else None,
        "output_dir": str(args.output_dir) if args.output_dir else None,
        "seed": args.seed,
    }
    if args.config is not None:
        return load_run_config(args.config, **overrides)
    return parse_run_config({k: v for k, v in overrides.items() if v is not None})


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    configure_logging(
        getattr(args, "log_level", None) or settings.log_level,
        getattr(args, "log_format", None) or settings.log_format,
    )

    if args.command == "list":
        for scenario in default_registry().all_scenarios():
            print(f"{scenario.name:<14} {scenario.version:<7} {scenario.description}")
        return EXIT_OK

    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be at least 1")
    options = {
        "sweep_s": getattr(args, "sweep_s", None),
        "annotate": getattr(args, "annotate", False),
    }
    try:
        config = _load_config(args)
        result = run(config, options=options, workers=args.workers)
    except RydspecError as exc:
        logger.error("run_failed", error=str(exc), kind=type(exc).__name__)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        logger.error("io_failed", error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    print(json.dumps(result.summary, sort_keys=True, default=str))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
