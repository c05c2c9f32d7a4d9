"""
interactions.py - does knowing the neighbors help?

Basic:   no neighbor input
History: the 12 nearest neighbors' observed positions
Future:  the 12 nearest neighbors' true future positions, at train and
         test time alike

All variants use relative inputs with rotation augmentation; contexts are
rotated together with their window.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from analysis.grid import ExperimentGrid, ExperimentResult, run_grid
from evaluation.report import AVERAGE_ROW
from evaluation.tables import seed_means, variant_table
from trajectories.scene_loader import Scene
from utils.utils_config import NEIGHBOR_VARIANTS, ModelConfig


#####################################
# Model Configurations
#####################################


def neighbor_model_config(family: str, variant: str, epochs: int = 35) -> ModelConfig:
    return ModelConfig(
        name=f"{family}-neighbors-{variant.lower()}",
        kind=family,
        representation="relative",
        rotations=True,
        neighbor_variant=variant,
        epochs=epochs,
    )


#####################################
# Experiment
#####################################


def neighbor_experiment(grid: ExperimentGrid, scenes: Sequence[Scene]) -> ExperimentResult:
    """
    Train every family without neighbors, with their history and with their future.

    Args:
        grid (ExperimentGrid): Families, seeds and folds; empty levels mean all three variants.
        scenes (Sequence[Scene]): Scenes of the leave-one-out protocol.

    Returns:
        ExperimentResult: Long-format rows and the AVG table.
    """
    if not grid.levels:
        grid = replace(grid, levels=NEIGHBOR_VARIANTS)
    rows, reports = run_grid(
        "neighbors",
        grid,
        scenes,
        lambda family, variant: neighbor_model_config(family, variant, grid.epochs),
        str,
    )
    table = variant_table(seed_means(rows), "neighbors", [AVERAGE_ROW])
    return ExperimentResult(rows, table, reports)
