"""
deprivation.py - retrain with shorter and shorter motion histories.

Relative inputs with rotation augmentation; one full leave-one-out run per
history length (7 displacements down to 1). The horizon stays 12.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from analysis.grid import ExperimentGrid, ExperimentResult, run_grid
from evaluation.tables import deprivation_table, seed_means
from trajectories.scene_loader import Scene
from utils.utils_config import ModelConfig

HISTORY_LENGTHS = (7, 6, 5, 4, 3, 2, 1)


def history_label(history_steps: int) -> str:
    return f"history={history_steps}"


#####################################
# Model Configurations
#####################################


def deprivation_model_config(family: str, history_steps: int, epochs: int = 35) -> ModelConfig:
    return ModelConfig(
        name=f"{family}-history{history_steps}",
        kind=family,
        representation="relative",
        rotations=True,
        history_steps=history_steps,
        epochs=epochs,
    )


#####################################
# Experiment
#####################################


def history_deprivation_experiment(grid: ExperimentGrid, scenes: Sequence[Scene]) -> ExperimentResult:
    """Retrain with each history length of grid.levels (default 7 down to 1)."""
    if not grid.levels:
        grid = replace(grid, levels=HISTORY_LENGTHS)
    rows, reports = run_grid(
        "deprivation",
        grid,
        scenes,
        lambda family, length: deprivation_model_config(family, length, grid.epochs),
        history_label,
    )
    return ExperimentResult(rows, deprivation_table(seed_means(rows)), reports)
