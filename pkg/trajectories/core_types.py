"""
core_types.py - domain vocabulary shared by every package.

All coordinates are double precision, in meters, in the world frame.
Sequences are stored as read-only numpy arrays of shape (n, 2).
The 0.4 s timestep is carried as metadata only; every model works per step.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from utils.utils_config import OBSERVATION_STEPS, PREDICTION_HORIZON, TIMESTEP_SECONDS
from utils.utils_errors import InsufficientLength, ValidationError

NEIGHBOR_SLOTS = 12

#####################################
# Helpers
#####################################


def as_points(values, name: str = "positions") -> np.ndarray:
    """Return values as a read-only float64 array of shape (n, 2)."""
    array = np.array(values, dtype=np.float64)
    if array.size == 0:
        array = array.reshape(0, 2)
    if array.ndim != 2 or array.shape[1] != 2:
        raise ValidationError(f"{name} must have shape (n, 2), got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"{name} contain non-finite values")
    array.setflags(write=False)
    return array


#####################################
# Value Types
#####################################


class Position(NamedTuple):
    x: float
    y: float


class Displacement(NamedTuple):
    dx: float
    dy: float


@dataclass(frozen=True)
class MotionHistory:
    """Observed prefix of a trajectory, oldest first; the last entry is p^t."""

    positions: np.ndarray
    timestep: float = TIMESTEP_SECONDS

    def __post_init__(self):
        points = as_points(self.positions, "history positions")
        if not 1 <= len(points) <= OBSERVATION_STEPS:
            raise InsufficientLength(
                f"motion history needs 1..{OBSERVATION_STEPS} positions, got {len(points)}"
            )
        object.__setattr__(self, "positions", points)

    def __len__(self) -> int:
        return len(self.positions)

    @property
    def current(self) -> Position:
        return Position(*self.positions[-1])


@dataclass(frozen=True)
class FutureTrajectory:
    positions: np.ndarray

    def __post_init__(self):
        points = as_points(self.positions, "future positions")
        if not 2 <= len(points) <= PREDICTION_HORIZON:
            raise InsufficientLength(
                f"future trajectory needs 2..{PREDICTION_HORIZON} positions, got {len(points)}"
            )
        object.__setattr__(self, "positions", points)

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class DisplacementSequence:
    """Successive per-step relative motions."""

    displacements: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "displacements", as_points(self.displacements, "displacements")
        )

    def __len__(self) -> int:
        return len(self.displacements)

    def __getitem__(self, index) -> Displacement:
        return Displacement(*self.displacements[index])


@dataclass(frozen=True)
class NeighborContext:
    """
    Exactly 12 neighbor slots relative to the target's current position.

    positions has shape (12, steps, 2); absent slots are zero-filled and come
    after every present slot. Present slots are sorted by distance at t.
    """

    positions: np.ndarray
    present: np.ndarray
    distances: np.ndarray = field(repr=False)

    def __post_init__(self):
        positions = np.array(self.positions, dtype=np.float64)
        present = np.array(self.present, dtype=bool)
        if positions.ndim != 3 or positions.shape[0] != NEIGHBOR_SLOTS or positions.shape[2] != 2:
            raise ValidationError(f"neighbor context must be (12, steps, 2), got {positions.shape}")
        if present.shape != (NEIGHBOR_SLOTS,):
            raise ValidationError("neighbor presence mask must have 12 entries")
        count = int(present.sum())
        if not present[:count].all():
            raise ValidationError("present neighbor slots must precede absent slots")
        positions.setflags(write=False)
        present.setflags(write=False)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "present", present)

    @property
    def steps(self) -> int:
        return self.positions.shape[1]

    def flatten(self) -> np.ndarray:
        return self.positions.reshape(-1)


@dataclass(frozen=True)
class AttributionDistribution:
    """Share of output influence per history timestep, oldest first."""

    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.float64)
        if np.any(weights < 0):
            raise ValidationError("attribution weights must be non-negative")
        if abs(weights.sum() - 1.0) > 1e-9:
            raise ValidationError(f"attribution weights must sum to 1, got {weights.sum()}")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return len(self.weights)


# Named parameter arrays of a model, e.g. {"W1": (16, 60), ...}
ModelParameters = dict[str, np.ndarray]

#####################################
# Conversions
#####################################


def positions_to_displacements(positions) -> DisplacementSequence:
    """output[k] = positions[k+1] - positions[k]."""
    points = as_points(positions)
    if len(points) < 2:
        raise InsufficientLength(
            f"need at least 2 positions to form displacements, got {len(points)}"
        )
    return DisplacementSequence(np.diff(points, axis=0))


def displacements_to_positions(anchor, seq: DisplacementSequence | np.ndarray) -> np.ndarray:
    """Accumulate displacements starting from anchor; the anchor itself is not emitted."""
    steps = seq.displacements if isinstance(seq, DisplacementSequence) else as_points(seq)
    origin = np.asarray(anchor, dtype=np.float64).reshape(1, 2)
    positions = origin + np.cumsum(steps, axis=0)
    positions.setflags(write=False)
    return positions
