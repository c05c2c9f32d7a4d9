"""
const_acc.py - Constant Acceleration baseline.

With v1 = p^(t-1) - p^(t-2), v2 = p^t - p^(t-1) and a = v2 - v1,
the k-th predicted displacement (k = 0..horizon-1) is v2 + (k + 1) a.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

from typing import Sequence

import numpy as np

from trajectories.core_types import DisplacementSequence, MotionHistory, as_points
from trajectories.windows import TrajectoryWindow
from utils.utils_config import PREDICTION_HORIZON
from utils.utils_errors import InsufficientHistory


#####################################
# Constant Acceleration
#####################################


def const_acc_predict(history, horizon: int = PREDICTION_HORIZON) -> DisplacementSequence:
    """
    Extrapolate the last acceleration over the horizon.

    Args:
        history: MotionHistory or (n, 2) positions, n >= 3.
        horizon (int): Number of predicted displacements.

    Returns:
        DisplacementSequence: v2 + (k + 1) a for k = 0 .. horizon - 1.
    """
    points = history.positions if isinstance(history, MotionHistory) else as_points(history, "history")
    if len(points) < 3:
        raise InsufficientHistory(f"constant acceleration needs 3 positions, got {len(points)}")
    v1 = points[-2] - points[-3]
    v2 = points[-1] - points[-2]
    acceleration = v2 - v1
    steps = np.arange(1, horizon + 1)[:, None]
    return DisplacementSequence(v2 + steps * acceleration)


#####################################
# Batch Predictor
#####################################


class ConstAccPredictor:
    trainable = False
    sampled = False

    def __init__(self, name: str = "ConstAcc"):
        self.name = name

    def fit(self, train_windows, validation_windows) -> None:
        return None

    def predict_batch(self, windows: Sequence[TrajectoryWindow]) -> np.ndarray:
        if not windows:
            return np.zeros((0, PREDICTION_HORIZON, 2))
        tail = np.stack([w.observed.positions[-3:] for w in windows])
        v1 = tail[:, 1] - tail[:, 0]
        v2 = tail[:, 2] - tail[:, 1]
        steps = np.arange(1, PREDICTION_HORIZON + 1)[None, :, None]
        return v2[:, None, :] + steps * (v2 - v1)[:, None, :]

    def describe(self) -> dict:
        return {"kind": "const_acc"}
