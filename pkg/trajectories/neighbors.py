"""
neighbors.py - neighbor contexts for the interaction experiments.

Up to 12 neighbors, ordered by distance to the target at timestep t,
positions relative to the target's p^t, missing slots zero-padded.
Neighbors that are not present for the whole observed span are skipped.

    History: the neighbor's 8 observed positions, t-7 .. t
    Future:  the neighbor's 12 true future positions, t+1 .. t+12
             (presence at t is also required, for the distance ordering)
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import numpy as np

from trajectories.core_types import NEIGHBOR_SLOTS, NeighborContext
from trajectories.scene_loader import Scene
from trajectories.windows import TrajectoryWindow, rotation_matrix
from utils.utils_config import OBSERVATION_STEPS, PREDICTION_HORIZON
from utils.utils_errors import ConfigError

HISTORY = "History"
FUTURE = "Future"

STEPS_BY_VARIANT = {HISTORY: OBSERVATION_STEPS, FUTURE: PREDICTION_HORIZON}


#####################################
# Neighbor Contexts
#####################################


def neighbor_feature_length(variant: str) -> int:
    """Flattened feature count of a context, 0 for the Basic variant."""
    if variant == "Basic":
        return 0
    return NEIGHBOR_SLOTS * STEPS_BY_VARIANT[variant] * 2


def extract_neighbors(
    window: TrajectoryWindow,
    tracks: Scene | None = None,
    variant: str = HISTORY,
) -> NeighborContext:
    """
    Build the 12-slot context of a window from its scene's tracks.

    Args:
        window (TrajectoryWindow): The target window, possibly rotated.
        tracks (Scene, optional): Scene to read neighbors from; defaults to the window's source scene.
        variant (str): "History" or "Future".

    Returns:
        NeighborContext: Positions relative to the target at t, nearest first,
        rotated with the window.
    """
    if variant not in STEPS_BY_VARIANT:
        raise ConfigError(f"unknown neighbor variant '{variant}'")
    scene = tracks if tracks is not None else window.source
    if scene is None:
        raise ConfigError(f"window {window.key} carries no scene to read neighbors from")

    index = scene.frame_index
    anchor = np.asarray(window.anchor, dtype=np.float64)
    if variant == HISTORY:
        frames = window.observed_frames()
    else:
        frames = window.future_frames(PREDICTION_HORIZON)

    at_t = index.get(window.anchor_frame, {})
    candidates = []
    for pedestrian_id, position_t in at_t.items():
        if pedestrian_id == window.pedestrian_id:
            continue
        track = []
        for frame in frames:
            position = index.get(frame, {}).get(pedestrian_id)
            if position is None:
                break
            track.append(position)
        else:
            distance = float(np.hypot(*(position_t - anchor)))
            candidates.append((distance, pedestrian_id, np.array(track)))

    candidates.sort(key=lambda c: (c[0], c[1]))
    steps = STEPS_BY_VARIANT[variant]
    positions = np.zeros((NEIGHBOR_SLOTS, steps, 2))
    present = np.zeros(NEIGHBOR_SLOTS, dtype=bool)
    distances = np.zeros(NEIGHBOR_SLOTS)
    rotation = rotation_matrix(window.rotation) if window.rotation else None
    for slot, (distance, _, track) in enumerate(candidates[:NEIGHBOR_SLOTS]):
        relative = track - anchor
        if rotation is not None:
            relative = relative @ rotation.T
        positions[slot] = relative
        present[slot] = True
        distances[slot] = distance
    return NeighborContext(positions, present, distances)
