"""
interchange.py - line-oriented window dump for debugging and diffing.

One window per line, whitespace separated:
    scene pedestrian_id anchor_frame n_observed n_future x0 y0 x1 y1 ...
Coordinates use shortest round-trip float text; scene names must not
contain whitespace.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import pathlib
from typing import Iterable

import numpy as np

from trajectories.core_types import FutureTrajectory, MotionHistory
from trajectories.windows import TrajectoryWindow
from utils.utils_errors import ParseError
from utils.utils_logger import logger

#####################################
# Writing
#####################################


def format_window(window: TrajectoryWindow) -> str:
    """One line: scene, id, anchor frame, counts, then every observed and future coordinate."""
    points = np.vstack([window.observed.positions, window.future.positions]).reshape(-1)
    coordinates = " ".join(repr(float(v)) for v in points)
    return (
        f"{window.scene} {window.pedestrian_id} {window.anchor_frame} "
        f"{len(window.observed)} {len(window.future)} {coordinates}"
    )


def write_windows(path: pathlib.Path, windows: Iterable[TrajectoryWindow]) -> int:
    """
    Write windows in the interchange format, one per line.

    Args:
        path (pathlib.Path): Target file, overwritten.
        windows (Iterable[TrajectoryWindow]): Windows to write, in order.

    Returns:
        int: Number of windows written.
    """
    path = pathlib.Path(path)
    lines = [format_window(w) for w in windows]
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    logger.info(f"Wrote {len(lines)} windows to {path}")
    return len(lines)


#####################################
# Reading
#####################################


def parse_window(line: str, line_number: int = 0, frame_step: int = 1) -> TrajectoryWindow:
    tokens = line.split()
    try:
        scene, pedestrian_id, anchor_frame, n_observed, n_future = (
            tokens[0],
            int(tokens[1]),
            int(tokens[2]),
            int(tokens[3]),
            int(tokens[4]),
        )
        values = np.array([float(t) for t in tokens[5:]])
    except (IndexError, ValueError) as e:
        raise ParseError(f"malformed window record: {e}", line_number) from e
    if len(values) != 2 * (n_observed + n_future):
        raise ParseError(
            f"expected {2 * (n_observed + n_future)} coordinates, found {len(values)}", line_number
        )
    points = values.reshape(-1, 2)
    return TrajectoryWindow(
        scene=scene,
        pedestrian_id=pedestrian_id,
        anchor_frame=anchor_frame,
        observed=MotionHistory(points[:n_observed]),
        future=FutureTrajectory(points[n_observed:]),
        frame_step=frame_step,
    )


def read_windows(path: pathlib.Path) -> list[TrajectoryWindow]:
    """
    Read a window dump written by write_windows.

    Args:
        path (pathlib.Path): Interchange file; blank lines are skipped.

    Returns:
        list[TrajectoryWindow]: The windows, without their source scenes.

    Raises:
        ParseError: A line is malformed; the error carries its line number.
    """
    path = pathlib.Path(path)
    windows = []
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if line.strip():
            windows.append(parse_window(line, line_number))
    return windows
