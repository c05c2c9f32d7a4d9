"""
grid.py - experiment grids for the analysis experiments.

A grid crosses model families (FF, RED) with the levels of one factor and
a list of seeds. Every cell is one independent leave-one-out training run.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import pathlib
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Sequence

import pandas as pd

from evaluation.benchmark import EvalReport, evaluate_model
from evaluation.report import RESULT_COLUMNS, report_rows
from trajectories.scene_loader import Scene
from trajectories.windows import slice_windows
from utils.utils_config import ModelConfig
from utils.utils_logger import logger

FAMILY_LABELS = {"ff": "FF", "red": "RED"}


#####################################
# Grid Types
#####################################


class GridCell(NamedTuple):
    family: str
    level: object
    seed: int


@dataclass(frozen=True)
class ExperimentGrid:
    """One experiment's cells; derive variants with dataclasses.replace."""

    model_families: tuple[str, ...] = ("ff", "red")
    levels: tuple = ()
    seeds: tuple[int, ...] = (0,)
    test_scenes: tuple[str, ...] | None = None
    epochs: int = 35
    workers: int = 1
    config_hash: str = ""
    model_dir: pathlib.Path | None = None

    def cells(self) -> Iterator[GridCell]:
        for family in self.model_families:
            for level in self.levels:
                for seed in self.seeds:
                    yield GridCell(family, level, seed)


@dataclass
class ExperimentResult:
    """Long-format rows (for CSV / report merging), the shaped table, and the raw reports."""

    rows: pd.DataFrame
    table: pd.DataFrame
    reports: list[EvalReport] = field(default_factory=list)


#####################################
# Running
#####################################


def run_grid(
    experiment: str,
    grid: ExperimentGrid,
    scenes: Sequence[Scene],
    make_config: Callable[[str, object], ModelConfig],
    variant_label: Callable[[object], str],
) -> tuple[pd.DataFrame, list[EvalReport]]:
    """
    Run every cell as a full leave-one-out evaluation.

    Args:
        experiment (str): Experiment name written into every row.
        grid (ExperimentGrid): Families x levels x seeds, plus folds, workers and model directory.
        scenes (Sequence[Scene]): Scenes of the leave-one-out protocol.
        make_config (Callable): (family, level) -> ModelConfig of the cell.
        variant_label (Callable): level -> the variant column value.

    Returns:
        tuple[pd.DataFrame, list[EvalReport]]: Long-format rows and one report per cell.
    """
    windows = {scene.name: slice_windows(scene) for scene in scenes} if grid.workers <= 1 else None
    rows, reports = [], []
    for cell in grid.cells():
        config = make_config(cell.family, cell.level)
        logger.info(f"{experiment}: {config.name} level={cell.level} seed={cell.seed}")
        report = evaluate_model(
            config,
            scenes,
            cell.seed,
            grid.test_scenes,
            grid.workers,
            windows=windows,
            model_dir=grid.model_dir,
            config_hash=grid.config_hash,
        )
        report.model = FAMILY_LABELS[cell.family]
        reports.append(report)
        rows.extend(report_rows(report, experiment, grid.config_hash, variant=variant_label(cell.level)))
    return pd.DataFrame(rows, columns=RESULT_COLUMNS), reports
