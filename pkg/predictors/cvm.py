"""
cvm.py - the Constant Velocity Model and its sampled variant.

CVM repeats the most recent displacement p^t - p^(t-1) over the horizon.
The sampled variant rotates that displacement by one angle per sample,
drawn from N(0, sigma^2), giving a straight fan of k rays with the
observed speed.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

from typing import Sequence

import numpy as np

from trajectories.core_types import DisplacementSequence, MotionHistory, as_points
from trajectories.windows import TrajectoryWindow, rotation_matrix
from utils.utils_config import PREDICTION_HORIZON
from utils.utils_errors import InsufficientHistory
from utils.utils_logger import logger

SAMPLES = 20
ANGULAR_SIGMA_DEG = 25.0


#####################################
# Single-History Predictions
#####################################


def _positions(history) -> np.ndarray:
    return history.positions if isinstance(history, MotionHistory) else as_points(history, "history")


def last_displacement(history) -> np.ndarray:
    points = _positions(history)
    if len(points) < 2:
        raise InsufficientHistory(f"constant velocity needs 2 positions, got {len(points)}")
    return points[-1] - points[-2]


def cvm_predict(history, horizon: int = PREDICTION_HORIZON) -> DisplacementSequence:
    """horizon copies of the last observed displacement."""
    delta = last_displacement(history)
    return DisplacementSequence(np.tile(delta, (horizon, 1)))


def cvm_sampled_predict(
    history,
    horizon: int = PREDICTION_HORIZON,
    k: int = SAMPLES,
    sigma_deg: float = ANGULAR_SIGMA_DEG,
    seed: int | np.random.Generator = 0,
) -> list[DisplacementSequence]:
    """
    k straight predictions, each the last displacement rotated by one normal draw.

    Args:
        history: MotionHistory or (n, 2) positions, n >= 2.
        horizon (int): Number of predicted displacements.
        k (int): Number of samples.
        sigma_deg (float): Standard deviation of the angular offset in degrees.
        seed (int | np.random.Generator): Seed or generator of the angle draws.

    Returns:
        list[DisplacementSequence]: k sequences, each keeping the observed speed.
    """
    delta = last_displacement(history)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    angles = np.deg2rad(rng.normal(0.0, sigma_deg, size=k))
    samples = []
    for angle in angles:
        rotated = rotation_matrix(angle) @ delta
        samples.append(DisplacementSequence(np.tile(rotated, (horizon, 1))))
    return samples


#####################################
# Batch predictors
#####################################


def _last_displacements(windows: Sequence[TrajectoryWindow]) -> np.ndarray:
    if not windows:
        return np.zeros((0, 2))
    observed = np.stack([w.observed.positions[-2:] for w in windows])
    return observed[:, 1] - observed[:, 0]


class CVMPredictor:
    """OUR: deterministic constant velocity."""

    trainable = False
    sampled = False

    def __init__(self, name: str = "OUR"):
        self.name = name

    def fit(self, train_windows, validation_windows) -> None:
        return None

    def predict_batch(self, windows: Sequence[TrajectoryWindow]) -> np.ndarray:
        deltas = _last_displacements(windows)
        return np.repeat(deltas[:, None, :], PREDICTION_HORIZON, axis=1)

    def describe(self) -> dict:
        return {"kind": "cvm"}


class SampledCVMPredictor:
    """OUR-S: k angularly perturbed constant-velocity rays per window."""

    trainable = False
    sampled = True

    def __init__(self, name: str = "OUR-S", k: int = SAMPLES, sigma_deg: float = ANGULAR_SIGMA_DEG, seed: int = 0):
        self.name = name
        self.k = k
        self.sigma_deg = sigma_deg
        self.seed = seed

    def fit(self, train_windows, validation_windows) -> None:
        return None

    def predict_batch(self, windows: Sequence[TrajectoryWindow]) -> np.ndarray:
        return CVMPredictor(self.name).predict_batch(windows)

    def predict_samples(self, windows: Sequence[TrajectoryWindow]) -> np.ndarray:
        """(N, k, 12, 2); angles drawn window by window, in order, from one seeded stream."""
        rng = np.random.default_rng(self.seed)
        deltas = _last_displacements(windows)
        angles = np.deg2rad(rng.normal(0.0, self.sigma_deg, size=(len(windows), self.k)))
        cos, sin = np.cos(angles), np.sin(angles)
        dx = cos * deltas[:, None, 0] - sin * deltas[:, None, 1]
        dy = sin * deltas[:, None, 0] + cos * deltas[:, None, 1]
        rays = np.stack([dx, dy], axis=-1)
        logger.debug(f"Sampled {self.k} rays for {len(windows)} windows (sigma={self.sigma_deg} deg)")
        return np.repeat(rays[:, :, None, :], PREDICTION_HORIZON, axis=2)

    def describe(self) -> dict:
        return {"kind": "cvm_sampled", "k": self.k, "sigma_deg": self.sigma_deg, "seed": self.seed}
