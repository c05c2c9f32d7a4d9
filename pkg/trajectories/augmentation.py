"""
augmentation.py - random rotation augmentation for training windows.

Each window is rotated exactly once about its anchor by an angle drawn
from N(0, sigma^2), so the augmented set has the same size as the input.
Angles are used as drawn: values beyond +-180 degrees are valid rotations.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import numpy as np

from trajectories.windows import TrajectoryWindow
from utils.utils_logger import logger

ROTATION_SIGMA_DEG = 180.0

#####################################
# Rotation Augmentation
#####################################


def augment_rotations(
    windows: list[TrajectoryWindow],
    sigma_deg: float = ROTATION_SIGMA_DEG,
    seed: int | np.random.Generator = 0,
) -> list[TrajectoryWindow]:
    """
    Rotate every window once about its anchor.

    Args:
        windows (list[TrajectoryWindow]): Training windows.
        sigma_deg (float): Standard deviation of the rotation angle in degrees.
        seed (int | np.random.Generator): Seed, or the training run's generator to continue.

    Returns:
        list[TrajectoryWindow]: Rotated copies; angles come from one normal draw
        per window, in input order.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    angles = np.deg2rad(rng.normal(0.0, sigma_deg, size=len(windows)))
    logger.debug(f"Rotating {len(windows)} training windows (sigma={sigma_deg} deg)")
    return [window.rotated(float(angle)) for window, angle in zip(windows, angles)]
