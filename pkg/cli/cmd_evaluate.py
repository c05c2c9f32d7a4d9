"""
cmd_evaluate.py - run the leave-one-out benchmark for the configured models.

Writes under <output-dir>/benchmark/:
    results.csv   long-format rows (one per model, seed, scene, metric)
    table.md      displacement-error table, scenes x models
    results.json  full metadata, config hash and seeds
    models/       one fitted model file per trainable model, seed and fold
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import argparse
import pathlib

from cli.common import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, load_scenes, resolve_config, run_flags
from evaluation.benchmark import run_benchmark
from evaluation.report import reports_frame, reports_payload, write_csv, write_json, write_text
from evaluation.tables import render_report
from utils.utils_config import RunConfig
from utils.utils_errors import BenchmarkError, ConfigError, FoldError
from utils.utils_logger import logger

EXPERIMENT = "benchmark"


def add_parser(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "evaluate", parents=[run_flags()], help="Leave-one-out evaluation of the configured models"
    )
    parser.set_defaults(handler=run)
    return parser


def evaluate(config: RunConfig) -> pathlib.Path:
    """Run every model and seed; returns the results directory."""
    if not config.models:
        raise ConfigError("the configuration lists no models")
    scenes = load_scenes(config)
    out = pathlib.Path(config.output_dir) / EXPERIMENT
    reports = run_benchmark(
        config.models,
        scenes,
        config.seeds,
        config.test_scenes,
        config.workers,
        config.validation_fraction,
        model_dir=out / "models",
        config_hash=config.config_hash,
    )
    frame = reports_frame(reports, EXPERIMENT, config.config_hash)
    write_csv(out / "results.csv", frame)
    write_text(out / "table.md", render_report(frame, [config.config_hash], config.seeds))
    payload = reports_payload(reports, EXPERIMENT, config.config_hash, config.to_dict())
    payload["seeds"] = list(config.seeds)
    write_json(out / "results.json", payload)
    return out


def run(args: argparse.Namespace) -> int:
    try:
        config = resolve_config(args)
        out = evaluate(config)
    except ConfigError as e:
        logger.error(f"evaluate: {e}")
        return EXIT_USAGE
    except FoldError as e:
        logger.error(f"evaluate failed in fold '{e.test_scene}': {e.cause}")
        return EXIT_FAILURE
    except (BenchmarkError, OSError) as e:
        logger.error(f"evaluate failed: {e}")
        return EXIT_FAILURE
    logger.info(f"Benchmark results in {out}")
    return EXIT_OK
