"""Command-line entry point.

Usage:
  python -m bialgebroid [flags] <command> <file> [names...]

Examples:
  python -m bialgebroid jacobi fixtures/contact.alg contact
  python -m bialgebroid --format json check-pair fixtures/poisson_plane.alg plane
  python -m bialgebroid triangular fixtures/lie_point.alg g phi P

Exit codes: 0 when every check passes, 1 when a check fails, 2 when the file
cannot be read, parsed or resolved, or when a flag or BIALGEBROID_* value is invalid.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError as ConfigError

from bialgebroid.cli.commands import COMMANDS, run_command, to_run_report
from bialgebroid.core.sampling import SampleConfig
from bialgebroid.dsl.loader import load_path
from bialgebroid.errors import AlgebroidError, DslError

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

FORMATS = ("text", "json")

# flag name -> (SampleConfig field, environment variable)
_SAMPLING_ENV = {
    "seed": ("seed", "BIALGEBROID_SEED"),
    "degree": ("max_degree", "BIALGEBROID_DEGREE"),
    "trials": ("trials", "BIALGEBROID_TRIALS"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bialgebroid",
        description="Check generalized Lie bialgebroids declared in a structure file.",
    )
    parser.add_argument("--seed", type=lambda s: int(s, 0), help="run seed (default 0)")
    parser.add_argument("--degree", type=int, help="max sample degree (default 2)")
    parser.add_argument("--trials", type=int, help="samples per check (default 32)")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--output", type=Path, help="write emitted structure files here")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for command, (_, names) in COMMANDS.items():
        cmd = sub.add_parser(command)
        cmd.add_argument("file", type=Path)
        for name in names:
            cmd.add_argument(name)
    return parser


def sample_config(args: argparse.Namespace) -> SampleConfig:
    """Flags first, then BIALGEBROID_* variables, then the model defaults."""
    values = {}
    for flag, (field_name, variable) in _SAMPLING_ENV.items():
        value = getattr(args, flag)
        if value is None:
            value = os.environ.get(variable, "").strip() or None
        if value is not None:
            values[field_name] = value
    return SampleConfig(**values)


def output_format(args: argparse.Namespace) -> str:
    value = args.format or os.environ.get("BIALGEBROID_FORMAT", "").strip() or "text"
    if value not in FORMATS:
        raise ValueError(f"BIALGEBROID_FORMAT must be one of {', '.join(FORMATS)}, got {value!r}")
    return value


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _write_output(path: Path, emitted: list[str]) -> None:
    path.write_text("\n".join(emitted), encoding="utf-8")
    logger.info("[main] wrote %d structure file(s) to %s", len(emitted), path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        config = sample_config(args)
        fmt = output_format(args)
    except ConfigError as exc:
        error = exc.errors()[0]
        where = ".".join(str(part) for part in error["loc"])
        print(f"error: invalid sampling parameter {where}: {error['msg']}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    _, names = COMMANDS[args.command]
    try:
        workspace = load_path(args.file)
        outcome = run_command(args.command, workspace, [getattr(args, name) for name in names], config)
    except OSError as exc:
        logger.info("[main] cannot read %s: %s", args.file, exc)
        print(f"error: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT
    except DslError as exc:
        logger.info("[main] %s: %s", args.file, exc)
        separator = ":" if exc.line else ": "
        print(f"{args.file}{separator}{exc}", file=sys.stderr)
        return EXIT_INPUT
    except AlgebroidError as exc:
        logger.info("[main] %s %s refused: %s", args.command, args.file, exc)
        print(f"error: {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT

    report = to_run_report(args.command, config, outcome)
    if fmt == "json":
        print(report.model_dump_json(indent=2, exclude_none=True, by_alias=True))
    else:
        print(outcome.report.render_text())
        for name, text in outcome.artifacts.items():
            print(f"--- {name}")
            print(text.rstrip("\n"))
        print("PASS" if outcome.passed else "FAIL")
    if args.output is not None:
        _write_output(args.output, outcome.emitted)
    return EXIT_PASS if outcome.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
