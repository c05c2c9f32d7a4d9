"""
cmd_analyze.py - run one analysis experiment.

    priors       Basic / Relative / Rotations for FF and RED
    attribution  per-timestep gradient influence shares
    correlation  Pearson matrices between history timesteps (X and Y)
    deprivation  retraining with history lengths 7..1
    neighbors    Basic / History / Future neighbor inputs

Outputs go to <output-dir>/<experiment>/ together with metadata.json.
Every CSV carries config_hash and seeds columns and every table.md ends
with the config hash and seeds. Networks trained along the way are saved
under <output-dir>/<experiment>/models/.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import argparse
import pathlib
from dataclasses import replace

import pandas as pd

from analysis.attribution import attribution_experiment, share_table
from analysis.correlation import correlation_experiment
from analysis.deprivation import history_deprivation_experiment
from analysis.grid import ExperimentGrid, ExperimentResult
from analysis.interactions import neighbor_experiment
from analysis.priors import environmental_prior_experiment
from cli.common import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    load_scenes,
    resolve_config,
    run_flags,
    run_metadata,
    seeds_text,
)
from evaluation.report import write_csv, write_json, write_text
from evaluation.tables import provenance_note, to_markdown
from utils.utils_config import RunConfig
from utils.utils_errors import BenchmarkError, ConfigError, FoldError
from utils.utils_logger import logger

EXPERIMENTS = ("priors", "attribution", "correlation", "deprivation", "neighbors")


def add_parser(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("analyze", parents=[run_flags()], help="Run an analysis experiment")
    parser.add_argument("experiment", help=", ".join(EXPERIMENTS))
    parser.add_argument(
        "--network",
        help="Attribution network: 'train', 'copy-last' or a checkpoint path (overrides the config)",
    )
    parser.set_defaults(handler=run)
    return parser


def make_grid(config: RunConfig, model_dir: pathlib.Path | None = None) -> ExperimentGrid:
    return ExperimentGrid(
        model_families=config.analysis.model_families,
        seeds=config.seeds,
        test_scenes=config.test_scenes,
        epochs=config.analysis.epochs,
        workers=config.workers,
        config_hash=config.config_hash,
        model_dir=model_dir,
    )


def _tagged(frame: pd.DataFrame, config: RunConfig) -> pd.DataFrame:
    frame = frame.copy()
    frame["config_hash"] = config.config_hash
    frame["seeds"] = seeds_text(config)
    return frame


def write_table_md(out: pathlib.Path, title: str, body: str, config: RunConfig) -> None:
    note = provenance_note([config.config_hash], config.seeds)
    write_text(out / "table.md", f"# {title}\n\n{body}\n\n{note}\n")


def _write_grid_result(out: pathlib.Path, title: str, result: ExperimentResult, config: RunConfig) -> None:
    write_csv(out / "results.csv", result.rows)
    write_csv(out / "table.csv", _tagged(result.table, config))
    write_table_md(out, title, to_markdown(result.table), config)


def analyze(experiment: str, config: RunConfig, network: str | None = None) -> pathlib.Path:
    """Run one experiment; returns its output directory."""
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment '{experiment}', expected one of {', '.join(EXPERIMENTS)}")
    scenes = load_scenes(config)
    out = pathlib.Path(config.output_dir) / experiment
    grid = make_grid(config, out / "models")

    if experiment == "priors":
        _write_grid_result(out, "Environmental priors", environmental_prior_experiment(grid, scenes), config)
    elif experiment == "deprivation":
        grid = replace(grid, levels=config.analysis.history_lengths)
        _write_grid_result(out, "Motion history deprivation", history_deprivation_experiment(grid, scenes), config)
    elif experiment == "neighbors":
        _write_grid_result(out, "Neighborhood information", neighbor_experiment(grid, scenes), config)
    elif experiment == "attribution":
        shares = attribution_experiment(grid, scenes, network or config.analysis.attribution_network)
        write_csv(out / "shares.csv", shares.assign(seeds=seeds_text(config)))
        write_table_md(out, "History attribution", to_markdown(share_table(shares), digits=3), config)
    else:
        scene_set = [s for s in scenes if not config.test_scenes or s.name in config.test_scenes]
        corr_x, corr_y = correlation_experiment(scene_set)
        sections = []
        for axis, matrix in (("x", corr_x), ("y", corr_y)):
            matrix = matrix.rename_axis("timestep").reset_index()
            write_csv(out / f"correlation_{axis}.csv", _tagged(matrix, config))
            sections.append(f"## {axis.upper()}\n\n{to_markdown(matrix, digits=3)}")
        write_table_md(out, "History correlation", "\n\n".join(sections), config)

    metadata = run_metadata(config)
    metadata["experiment"] = experiment
    if experiment == "attribution":
        metadata["network"] = network or config.analysis.attribution_network
    write_json(out / "metadata.json", metadata)
    return out


def run(args: argparse.Namespace) -> int:
    try:
        config = resolve_config(args)
        out = analyze(args.experiment, config, args.network)
    except ConfigError as e:
        logger.error(f"analyze: {e}")
        return EXIT_USAGE
    except FoldError as e:
        logger.error(f"analyze {args.experiment} failed in fold '{e.test_scene}': {e.cause}")
        return EXIT_FAILURE
    except (BenchmarkError, OSError) as e:
        logger.error(f"analyze {args.experiment} failed: {e}")
        return EXIT_FAILURE
    logger.info(f"{args.experiment} outputs in {out}")
    return EXIT_OK
