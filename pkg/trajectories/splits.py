"""
splits.py - leave-one-out splits.

The held-out scene provides every test window. The remaining scenes form a
pool that is shuffled with a seeded numpy PCG64 generator; 10% becomes the
validation set and the rest the training set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from trajectories.scene_loader import Scene
from trajectories.windows import TrajectoryWindow, slice_windows
from utils.utils_config import VALIDATION_FRACTION
from utils.utils_errors import ConfigError
from utils.utils_logger import logger

#####################################
# Split Types
#####################################


@dataclass(frozen=True)
class SplitPlan:
    test_scene: str
    train_scenes: tuple[str, ...]
    validation_fraction: float
    seed: int


class Split(NamedTuple):
    plan: SplitPlan
    train: list[TrajectoryWindow]
    validation: list[TrajectoryWindow]
    test: list[TrajectoryWindow]


#####################################
# Leave-One-Out Folds
#####################################


def make_split(
    scenes: Sequence[Scene],
    test_scene: str,
    seed: int,
    validation_fraction: float = VALIDATION_FRACTION,
    windows: dict[str, list[TrajectoryWindow]] | None = None,
) -> Split:
    """
    Build one leave-one-out fold.

    Args:
        scenes (Sequence[Scene]): Every scene of the run, test scene included.
        test_scene (str): Name of the held-out scene.
        seed (int): Seed of the validation shuffle.
        validation_fraction (float): Share of the pooled training windows held back for validation.
        windows (dict, optional): Pre-sliced windows per scene name, so that a
            multi-fold run slices every scene once.

    Returns:
        Split: The plan plus the train, validation and test windows.
    """
    names = [scene.name for scene in scenes]
    if test_scene not in names:
        raise ConfigError(f"unknown test scene '{test_scene}', expected one of {names}")
    if len(scenes) < 2:
        raise ConfigError("a leave-one-out split needs at least two scenes")

    if windows is None:
        windows = {scene.name: slice_windows(scene) for scene in scenes}

    train_scenes = tuple(name for name in names if name != test_scene)
    pool = [w for name in train_scenes for w in windows[name]]
    order = np.random.default_rng(seed).permutation(len(pool))
    n_validation = int(round(len(pool) * validation_fraction))
    validation = [pool[i] for i in order[:n_validation]]
    train = [pool[i] for i in order[n_validation:]]
    test = list(windows[test_scene])

    plan = SplitPlan(test_scene, train_scenes, validation_fraction, seed)
    logger.info(
        f"Split test='{test_scene}' seed={seed}: {len(train)} train, "
        f"{len(validation)} validation, {len(test)} test windows"
    )
    return Split(plan, train, validation, test)
