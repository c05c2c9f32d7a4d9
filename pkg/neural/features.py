"""
features.py - turn windows into network inputs and regression targets.

Inputs, per window, flattened oldest first:
    absolute: the last `history_steps` observed positions (default 8 -> 16 values)
    relative: the last `history_steps` observed displacements (default 7 -> 14 values)
followed, for the History/Future variants, by the flattened 12-slot
neighbor context (12*8*2 or 12*12*2 values).

Targets are always the 12 future displacements (24 values).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from trajectories.neighbors import extract_neighbors, neighbor_feature_length
from trajectories.windows import TrajectoryWindow, to_relative
from utils.utils_config import NEIGHBOR_VARIANTS, OBSERVATION_STEPS, PREDICTION_HORIZON, REPRESENTATIONS
from utils.utils_errors import ConfigError, InsufficientLength

OUTPUT_DIM = 2 * PREDICTION_HORIZON


@dataclass(frozen=True)
class FeatureSpec:
    representation: str = "relative"
    history_steps: int | None = None
    neighbor_variant: str = "Basic"

    def __post_init__(self):
        if self.representation not in REPRESENTATIONS:
            raise ConfigError(f"unknown representation '{self.representation}'")
        if self.neighbor_variant not in NEIGHBOR_VARIANTS:
            raise ConfigError(f"unknown neighbor variant '{self.neighbor_variant}'")
        limit = self.max_history_steps
        if self.history_steps is None:
            object.__setattr__(self, "history_steps", limit)
        elif not 1 <= self.history_steps <= limit:
            raise ConfigError(
                f"{self.representation} inputs allow 1..{limit} history steps, got {self.history_steps}"
            )

    @property
    def max_history_steps(self) -> int:
        return OBSERVATION_STEPS if self.representation == "absolute" else OBSERVATION_STEPS - 1

    @property
    def history_dim(self) -> int:
        return 2 * self.history_steps

    @property
    def neighbor_dim(self) -> int:
        return neighbor_feature_length(self.neighbor_variant)

    @property
    def input_dim(self) -> int:
        return self.history_dim + self.neighbor_dim

    def to_dict(self) -> dict:
        return asdict(self)


def history_features(window: TrajectoryWindow, spec: FeatureSpec) -> np.ndarray:
    if spec.representation == "absolute":
        points = window.observed.positions
    else:
        points = to_relative(window).history.displacements
    return points[-spec.history_steps :].reshape(-1)


def window_features(window: TrajectoryWindow, spec: FeatureSpec) -> np.ndarray:
    parts = [history_features(window, spec)]
    if spec.neighbor_variant != "Basic":
        parts.append(extract_neighbors(window, variant=spec.neighbor_variant).flatten())
    return np.concatenate(parts)


def build_features(windows: Sequence[TrajectoryWindow], spec: FeatureSpec) -> np.ndarray:
    """(N, input_dim) feature matrix."""
    if not windows:
        return np.zeros((0, spec.input_dim))
    return np.stack([window_features(w, spec) for w in windows])


def build_targets(windows: Sequence[TrajectoryWindow]) -> np.ndarray:
    """(N, 24) future displacements; every window must have a full 12-step future."""
    rows = []
    for window in windows:
        target = to_relative(window).target.displacements
        if len(target) != PREDICTION_HORIZON:
            raise InsufficientLength(
                f"window {window.key} has {len(target)} future steps, training needs {PREDICTION_HORIZON}"
            )
        rows.append(target.reshape(-1))
    if not rows:
        return np.zeros((0, OUTPUT_DIM))
    return np.stack(rows)
