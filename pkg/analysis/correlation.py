"""
correlation.py - Pearson correlation between motion-history timesteps.

Each window contributes its relative history (the last 7 displacements);
X and Y components get separate matrices. A timestep whose values never
vary has no defined correlation and is reported as NaN.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

from typing import Sequence

import numpy as np
import pandas as pd

from analysis.attribution import timestep_labels
from neural.features import FeatureSpec, build_features
from trajectories.scene_loader import Scene
from trajectories.windows import TrajectoryWindow, slice_windows
from utils.utils_errors import InsufficientLength
from utils.utils_logger import logger

HISTORY_STEPS = 7


#####################################
# Correlation Matrices
#####################################


def history_matrix(windows: Sequence[TrajectoryWindow], history_steps: int = HISTORY_STEPS) -> np.ndarray:
    """(N, history_steps, 2) relative histories."""
    spec = FeatureSpec("relative", history_steps)
    return build_features(list(windows), spec).reshape(len(windows), history_steps, 2)


def history_correlation(
    windows: Sequence[TrajectoryWindow], history_steps: int = HISTORY_STEPS
) -> tuple[pd.DataFrame, pd.DataFrame]:
    """
    Pearson matrices between history timesteps, X and Y separately.

    Args:
        windows (Sequence[TrajectoryWindow]): At least two windows.
        history_steps (int): Number of most recent displacements to correlate.

    Returns:
        tuple[pd.DataFrame, pd.DataFrame]: The X and Y matrices, labelled t-6 .. t.
    """
    if len(windows) < 2:
        raise InsufficientLength(f"correlation needs at least 2 windows, got {len(windows)}")
    histories = history_matrix(windows, history_steps)
    labels = timestep_labels(history_steps)
    corr_x = pd.DataFrame(histories[:, :, 0], columns=labels).corr(method="pearson")
    corr_y = pd.DataFrame(histories[:, :, 1], columns=labels).corr(method="pearson")
    for axis, matrix in (("X", corr_x), ("Y", corr_y)):
        if matrix.isna().any().any():
            logger.warning(f"{axis} correlation has undefined entries (zero-variance timesteps)")
    return corr_x, corr_y


def correlation_experiment(
    scenes: Sequence[Scene], history_steps: int = HISTORY_STEPS
) -> tuple[pd.DataFrame, pd.DataFrame]:
    """Correlations over every window of every scene."""
    windows = [w for scene in scenes for w in slice_windows(scene)]
    corr_x, corr_y = history_correlation(windows, history_steps)
    logger.info(
        f"Correlation over {len(windows)} windows: min X {np.nanmin(corr_x.values):.3f}, "
        f"min Y {np.nanmin(corr_y.values):.3f}"
    )
    return corr_x, corr_y
