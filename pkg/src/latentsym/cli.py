#!/usr/bin/env python3
"""
latentsym CLI: spectra, time evolution, gamma sweeps and cospectrality reports
for non-Hermitian tight-binding networks.
"""

import argparse
import sys
from typing import Optional

from loguru import logger
from rich.text import Text

from latentsym.data_model.simulation import Command, OutputFormat
from latentsym.exceptions import ConfigError, InputError, NumericError
from latentsym.registry import registry
from latentsym.run import load_run_config
from latentsym.settings import settings
from latentsym.utils.display import ConsoleDisplay

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_NUMERIC_ERROR = 2


def add_run_args(parser: argparse.ArgumentParser):
    """Add run arguments to a parser."""
    parser.add_argument(
        "--config", required=True, help="Run config file (.json, .yaml or .toml)"
    )
    parser.add_argument(
        "--out", default=None, help="Output file. Standard output if not given."
    )
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=None,
        help="Output format. Defaults to json for spectrum/cospectral and csv otherwise.",
    )
    parser.add_argument(
        "--tol", type=float, default=None, help="Comparison tolerance"
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help=f"Log level. Defaults to LATENTSYM_LOG_LEVEL or {settings.log_level}.",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Print a summary of the run to standard error",
    )


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latentsym",
        description="Latent-symmetric non-Hermitian networks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    helps = {
        Command.SPECTRUM: "Eigenvalues, sectors and phase of a model",
        Command.EVOLVE: "Propagate an initial state over a time grid",
        Command.SWEEP: "Sweep gamma and locate the exceptional points",
        Command.COSPECTRAL: "Cospectral site pairs and singlet sites",
    }
    for command, help_text in helps.items():
        add_run_args(subparsers.add_parser(command.value, help=help_text))
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Main CLI entry point. Returns the process exit code."""
    parser = get_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG_ERROR

    logger.remove()
    logger.add(sys.stderr, level=(args.log_level or settings.log_level).upper())

    overrides = {}
    if args.out is not None:
        overrides["output"] = args.out
    if args.format is not None:
        overrides["format"] = args.format
    if args.tol is not None:
        overrides["tol"] = args.tol

    try:
        config = load_run_config(args.config, command=args.command, overrides=overrides)
        if args.verbose:
            ConsoleDisplay.display_run_config(config)
        registry.run(config, console_display=args.verbose)
    except (ConfigError, InputError) as e:
        logger.error(str(e))
        ConsoleDisplay.console.print(Text(f"Error: {e}", style="bold red"))
        return EXIT_CONFIG_ERROR
    except NumericError as e:
        logger.error(str(e))
        ConsoleDisplay.console.print(Text(f"Numeric error: {e}", style="bold red"))
        return EXIT_NUMERIC_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
