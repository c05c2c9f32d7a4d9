"""
Shared fixtures: small hand-made scenes and synthetic datasets.
"""

import numpy as np
import pytest

from trajectories.scene_loader import build_scene
from trajectories.windows import slice_windows
from utils.utils_gen_synthetic_scenes import synthetic_scenes

FRAME_STEP = 10


def straight_records(pedestrian_id, start_frame, length, start, velocity, frame_step=FRAME_STEP):
    """Records of one pedestrian walking a straight line at constant velocity."""
    start = np.asarray(start, dtype=float)
    velocity = np.asarray(velocity, dtype=float)
    return [
        (start_frame + i * frame_step, pedestrian_id, *map(float, start + i * velocity))
        for i in range(length)
    ]


def scene_of(name, records, frame_step=FRAME_STEP):
    return build_scene(name, records, frame_step=frame_step)


@pytest.fixture
def line_scene():
    """One pedestrian, 20 positions, moving (0.5, 0.25) per step."""
    return scene_of("line", straight_records(1, 0, 20, (1.0, 2.0), (0.5, 0.25)))


@pytest.fixture
def line_window(line_scene):
    (window,) = slice_windows(line_scene)
    return window


@pytest.fixture(scope="session")
def isotropic_scenes():
    return synthetic_scenes(("A", "B", "C"), kind="isotropic", seed=3, n_pedestrians=12)


@pytest.fixture(scope="session")
def stationary_scenes():
    return synthetic_scenes(("A", "B", "C"), kind="stationary", seed=5, n_pedestrians=4)
