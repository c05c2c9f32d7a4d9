"""
metrics.py - displacement errors in meters.

ADE: mean Euclidean distance over the compared steps.
FDE: Euclidean distance at the last ground-truth step.
Predictions longer than the ground truth are truncated to its length, so
shortened windows are scored on the steps they have.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from utils.utils_errors import ConfigError, InsufficientLength


def _aligned(predicted, ground_truth) -> tuple[np.ndarray, np.ndarray]:
    truth = np.asarray(ground_truth, dtype=np.float64).reshape(-1, 2)
    if len(truth) == 0:
        raise InsufficientLength("ground truth is empty")
    prediction = np.asarray(predicted, dtype=np.float64).reshape(-1, 2)
    if len(prediction) < len(truth):
        raise InsufficientLength(
            f"prediction has {len(prediction)} steps, ground truth {len(truth)}"
        )
    return prediction[: len(truth)], truth


def step_distances(predicted, ground_truth) -> np.ndarray:
    prediction, truth = _aligned(predicted, ground_truth)
    return np.linalg.norm(prediction - truth, axis=1)


def ade(predicted, ground_truth) -> float:
    return float(step_distances(predicted, ground_truth).mean())


def fde(predicted, ground_truth) -> float:
    prediction, truth = _aligned(predicted, ground_truth)
    return float(np.linalg.norm(prediction[-1] - truth[-1]))


def min_over_k(samples: Sequence, ground_truth) -> tuple[float, float]:
    """Best ADE and best FDE over the samples, minimised independently."""
    if len(samples) == 0:
        raise ConfigError("min_over_k needs at least one sample")
    ades = [ade(sample, ground_truth) for sample in samples]
    fdes = [fde(sample, ground_truth) for sample in samples]
    return min(ades), min(fdes)
