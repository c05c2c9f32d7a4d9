"""
priors.py - environmental prior ablation.

Basic:     absolute positions, no augmentation
Relative:  displacement inputs
Rotations: displacement inputs, every training sample rotated once
           by an angle from N(0, 180 deg^2)
Reported for the Hotel fold and the five-fold average.
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
from utils.utils_config import ModelConfig

PRIOR_VARIANTS = ("Basic", "Relative", "Rotations")
HIGHLIGHT_SCENE = "Hotel"


#####################################
# Model Configurations
#####################################


def prior_model_config(family: str, variant: str, epochs: int = 35) -> ModelConfig:
    return ModelConfig(
        name=f"{family}-{variant.lower()}",
        kind=family,
        representation="absolute" if variant == "Basic" else "relative",
        rotations=variant == "Rotations",
        epochs=epochs,
    )


#####################################
# Experiment
#####################################


def environmental_prior_experiment(grid: ExperimentGrid, scenes: Sequence[Scene]) -> ExperimentResult:
    """
    Train every family under Basic, Relative and Rotations inputs.

    Args:
        grid (ExperimentGrid): Families, seeds and folds; empty levels mean all three variants.
            The grid passed in is not modified.
        scenes (Sequence[Scene]): Scenes of the leave-one-out protocol.

    Returns:
        ExperimentResult: Long-format rows and the Hotel / AVG table.
    """
    if not grid.levels:
        grid = replace(grid, levels=PRIOR_VARIANTS)
    rows, reports = run_grid(
        "priors",
        grid,
        scenes,
        lambda family, variant: prior_model_config(family, variant, grid.epochs),
        str,
    )
    table = variant_table(seed_means(rows), "priors", [HIGHLIGHT_SCENE, AVERAGE_ROW])
    return ExperimentResult(rows, table, reports)
