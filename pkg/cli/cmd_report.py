"""
cmd_report.py - merge result files into one Markdown report.

Collects every results.csv below the results directory (benchmark and
experiment runs alike), averages seeds per cell, recomputes AVG rows and
writes report.md. Missing, corrupt or conflicting files exit 1 and are
listed.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import argparse
import pathlib

from cli.common import EXIT_FAILURE, EXIT_OK
from evaluation.report import write_text
from evaluation.tables import read_results, render_report
from utils.utils_config import get_default_output_dir
from utils.utils_errors import ReportError
from utils.utils_logger import logger

RESULT_FILE = "results.csv"


def add_parser(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("report", help="Merge result files into a Markdown report")
    parser.add_argument("results_dir", nargs="?", type=pathlib.Path, help="Directory holding result files")
    parser.add_argument("--output-dir", help="Where report.md goes (default: the results directory)")
    parser.set_defaults(handler=run)
    return parser


def find_results(results_dir: pathlib.Path) -> list[pathlib.Path]:
    return sorted(pathlib.Path(results_dir).rglob(RESULT_FILE))


def build_report(results_dir: pathlib.Path, output_dir: pathlib.Path | None = None) -> pathlib.Path:
    paths = find_results(results_dir)
    if not paths:
        raise ReportError(f"no {RESULT_FILE} found", [str(results_dir)])
    logger.info(f"Merging {len(paths)} result files from {results_dir}")
    frame = read_results(paths)
    text = render_report(frame, frame["config_hash"].astype(str).tolist(), frame["seed"].astype(int).tolist())
    return write_text(pathlib.Path(output_dir or results_dir) / "report.md", text)


def run(args: argparse.Namespace) -> int:
    results_dir = args.results_dir or get_default_output_dir()
    if not pathlib.Path(results_dir).is_dir():
        logger.error(f"report: results directory not found: {results_dir}")
        return EXIT_FAILURE
    try:
        path = build_report(results_dir, args.output_dir)
    except ReportError as e:
        logger.error(f"report failed: {e}")
        for offender in e.offending_files:
            logger.error(f"  offending: {offender}")
        return EXIT_FAILURE
    logger.info(f"Report written to {path}")
    return EXIT_OK
