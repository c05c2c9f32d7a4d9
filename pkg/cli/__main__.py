"""
Command-line entry point.

    python -m cli convert data/raw/*.txt --format transposed --output-dir data/canonical
    python -m cli evaluate --config config/table1.json
    python -m cli analyze priors --config config/analysis.json
    python -m cli report results

Exit codes: 0 success, 1 runtime failure, 2 configuration or usage error.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import argparse
import sys

from cli import cmd_analyze, cmd_convert, cmd_evaluate, cmd_report
from cli.common import EXIT_USAGE
from utils.utils_logger import logger


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cli", description="Pedestrian motion prediction benchmark toolkit"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (cmd_convert, cmd_evaluate, cmd_analyze, cmd_report):
        command.add_parser(subparsers)
    return parser


#####################################
# Define main function for this module.
#####################################


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0
    logger.info(f"START {args.command}")
    code = args.handler(args)
    logger.info(f"END {args.command} (exit {code})")
    return code


#####################################
# Conditional Execution
#####################################

if __name__ == "__main__":
    sys.exit(main())
