"""
windows.py

Slice trajectories into benchmark windows and convert them to the
relative (displacement) representation.

Each window observes 8 positions and keeps 2..12 ground-truth future
positions. Windows start at every index of a trajectory (step size one);
anything shorter than 10 positions is rejected.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple

import numpy as np

from trajectories.core_types import (
    DisplacementSequence,
    FutureTrajectory,
    MotionHistory,
    Position,
    positions_to_displacements,
)
from trajectories.scene_loader import Scene, Trajectory
from utils.utils_config import OBSERVATION_STEPS, PREDICTION_HORIZON
from utils.utils_errors import ValidationError
from utils.utils_logger import logger

MIN_WINDOW_LENGTH = OBSERVATION_STEPS + 2
FULL_WINDOW_LENGTH = OBSERVATION_STEPS + PREDICTION_HORIZON

#####################################
# Window Type
#####################################


@dataclass(frozen=True, eq=False)
class TrajectoryWindow:
    """
    One benchmark sample.

    anchor_frame is the frame of the last observed position (timestep t).
    rotation is the angle (radians) the window was rotated by about its
    anchor; neighbor positions read from the source scene get the same turn.
    """

    scene: str
    pedestrian_id: int
    anchor_frame: int
    observed: MotionHistory
    future: FutureTrajectory
    frame_step: int = 1
    rotation: float = 0.0
    source: Scene | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.observed) != OBSERVATION_STEPS:
            raise ValidationError(
                f"window observes {len(self.observed)} positions, expected {OBSERVATION_STEPS}"
            )

    @property
    def anchor(self) -> Position:
        return self.observed.current

    @property
    def length(self) -> int:
        return len(self.observed) + len(self.future)

    @property
    def is_full(self) -> bool:
        return len(self.future) == PREDICTION_HORIZON

    @property
    def key(self) -> tuple[str, int, int]:
        """Window identity: scene, pedestrian and anchor frame."""
        return (self.scene, self.pedestrian_id, self.anchor_frame)

    def observed_frames(self) -> list[int]:
        start = self.anchor_frame - (OBSERVATION_STEPS - 1) * self.frame_step
        return [start + i * self.frame_step for i in range(OBSERVATION_STEPS)]

    def future_frames(self, steps: int = PREDICTION_HORIZON) -> list[int]:
        return [self.anchor_frame + (i + 1) * self.frame_step for i in range(steps)]

    def rotated(self, angle: float) -> "TrajectoryWindow":
        """Rotate observed and future positions about the anchor by angle (radians)."""
        if angle == 0.0:
            return self
        rotation = rotation_matrix(angle)
        anchor = self.observed.positions[-1]
        observed = (self.observed.positions - anchor) @ rotation.T + anchor
        future = (self.future.positions - anchor) @ rotation.T + anchor
        return replace(
            self,
            observed=MotionHistory(observed),
            future=FutureTrajectory(future),
            rotation=self.rotation + angle,
        )


def rotation_matrix(angle: float) -> np.ndarray:
    cos, sin = np.cos(angle), np.sin(angle)
    return np.array([[cos, -sin], [sin, cos]])


#####################################
# Slicing
#####################################


def window_starts(length: int) -> list[tuple[int, int]]:
    """(start, window length) pairs for a trajectory of the given length."""
    spans = []
    for start in range(length):
        size = min(FULL_WINDOW_LENGTH, length - start)
        if size < MIN_WINDOW_LENGTH:
            break
        spans.append((start, size))
    return spans


def slice_trajectory(scene: Scene, trajectory: Trajectory) -> list[TrajectoryWindow]:
    windows = []
    for start, size in window_starts(len(trajectory)):
        piece = trajectory.positions[start : start + size]
        anchor_frame = int(trajectory.frames[start + OBSERVATION_STEPS - 1])
        windows.append(
            TrajectoryWindow(
                scene=scene.name,
                pedestrian_id=trajectory.pedestrian_id,
                anchor_frame=anchor_frame,
                observed=MotionHistory(piece[:OBSERVATION_STEPS]),
                future=FutureTrajectory(piece[OBSERVATION_STEPS:]),
                frame_step=scene.frame_step,
                source=scene,
            )
        )
    return windows


def slice_windows(scene: Scene) -> list[TrajectoryWindow]:
    """Every window of every trajectory in the scene, in trajectory order."""
    windows: list[TrajectoryWindow] = []
    for trajectory in scene.trajectories:
        windows.extend(slice_trajectory(scene, trajectory))
    full = sum(1 for w in windows if w.is_full)
    logger.info(
        f"Scene '{scene.name}': {len(windows)} windows ({full} full length, "
        f"{len(windows) - full} shortened)"
    )
    return windows


def full_length(windows: Iterable[TrajectoryWindow]) -> list[TrajectoryWindow]:
    """Windows with a complete 12-step future, the only ones used for training."""
    return [w for w in windows if w.is_full]


#####################################
# Relative Representation
#####################################


class RelativeSample(NamedTuple):
    history: DisplacementSequence
    target: DisplacementSequence
    anchor: Position


def to_relative(window: TrajectoryWindow) -> RelativeSample:
    """
    history: 7 displacements of the observed positions.
    target: displacements from the last observed position through the future.
    anchor: the last observed position p^t.
    """
    observed = window.observed.positions
    history = positions_to_displacements(observed)
    target = positions_to_displacements(np.vstack([observed[-1:], window.future.positions]))
    return RelativeSample(history, target, window.anchor)
