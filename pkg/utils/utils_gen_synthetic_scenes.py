"""
utils_gen_synthetic_scenes.py - synthetic pedestrian scenes for tests and demos.

Every pedestrian walks in a straight line at constant velocity, optionally
with Gaussian position noise. Headings are either drawn uniformly
(isotropic, no directional prior to learn) or spread around one dominant
heading. Pedestrians enter at staggered frames so that tracks overlap and
neighbor contexts are non-trivial.

Run directly to write a five-scene canonical dataset plus manifest:

    python -m utils.utils_gen_synthetic_scenes
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import pathlib
from typing import Sequence

import numpy as np

from trajectories.scene_loader import BENCHMARK_SCENES, Scene, build_scene, write_canonical, write_manifest
from utils.utils_errors import ConfigError
from utils.utils_logger import logger

#####################################
# Constants
#####################################

FRAME_STEP = 10
TRACK_LENGTH = 20
PEDESTRIANS = 40
SPEED_RANGE = (0.3, 0.6)  # meters per timestep
ARENA = 20.0
OUTPUT_DIR = pathlib.Path("data/synthetic")

#####################################
# Generators
#####################################


def constant_velocity_records(
    n_pedestrians: int = PEDESTRIANS,
    track_length: int = TRACK_LENGTH,
    seed: int = 0,
    isotropic: bool = True,
    heading_deg: float = 0.0,
    heading_spread_deg: float = 15.0,
    speed_range: tuple[float, float] = SPEED_RANGE,
    noise_std: float = 0.0,
    frame_step: int = FRAME_STEP,
    stagger: int = 2,
    arena: float = ARENA,
) -> list[tuple[int, int, float, float]]:
    """(frame, id, x, y) records, frame-major like the public annotation files.

    Start positions are uniform in a square of side arena centred on the origin.
    """
    rng = np.random.default_rng(seed)
    records = []
    for pedestrian_id in range(1, n_pedestrians + 1):
        if isotropic:
            heading = rng.uniform(0.0, 2.0 * np.pi)
        else:
            heading = np.deg2rad(rng.normal(heading_deg, heading_spread_deg))
        speed = rng.uniform(*speed_range)
        start = rng.uniform(-arena / 2, arena / 2, size=2)
        velocity = speed * np.array([np.cos(heading), np.sin(heading)])
        steps = np.arange(track_length)[:, None]
        positions = start + steps * velocity
        if noise_std > 0:
            positions = positions + rng.normal(0.0, noise_std, size=positions.shape)
        first_frame = (pedestrian_id - 1) * stagger * frame_step
        for i, (x, y) in enumerate(positions):
            records.append((first_frame + i * frame_step, pedestrian_id, float(x), float(y)))
    records.sort(key=lambda r: (r[0], r[1]))
    return records


def stationary_records(
    n_pedestrians: int = 10,
    track_length: int = TRACK_LENGTH,
    seed: int = 0,
    frame_step: int = FRAME_STEP,
) -> list[tuple[int, int, float, float]]:
    """Pedestrians standing still; every motion model predicts them exactly."""
    rng = np.random.default_rng(seed)
    records = []
    for pedestrian_id in range(1, n_pedestrians + 1):
        x, y = (float(v) for v in rng.uniform(-ARENA / 2, ARENA / 2, size=2))
        records.extend((i * frame_step, pedestrian_id, x, y) for i in range(track_length))
    records.sort(key=lambda r: (r[0], r[1]))
    return records


def synthetic_scene(name: str, kind: str = "isotropic", seed: int = 0, **options) -> Scene:
    if kind == "isotropic":
        records = constant_velocity_records(seed=seed, isotropic=True, **options)
    elif kind == "directional":
        records = constant_velocity_records(seed=seed, isotropic=False, **options)
    elif kind == "stationary":
        records = stationary_records(seed=seed, **options)
    else:
        raise ConfigError(f"unknown synthetic scene kind '{kind}'")
    return build_scene(name, records, frame_step=options.get("frame_step", FRAME_STEP))


def synthetic_scenes(
    names: Sequence[str] = BENCHMARK_SCENES, kind: str = "isotropic", seed: int = 0, **options
) -> list[Scene]:
    """One scene per name; scene i is generated from seed + i."""
    return [synthetic_scene(name, kind, seed + i, **options) for i, name in enumerate(names)]


def write_synthetic_dataset(
    output_dir: pathlib.Path = OUTPUT_DIR,
    names: Sequence[str] = BENCHMARK_SCENES,
    kind: str = "isotropic",
    seed: int = 0,
    **options,
) -> pathlib.Path:
    """Write canonical scene files and a manifest; returns the manifest path."""
    output_dir = pathlib.Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    files = {}
    for i, name in enumerate(names):
        if kind == "stationary":
            records = stationary_records(seed=seed + i, **options)
        else:
            records = constant_velocity_records(seed=seed + i, isotropic=kind == "isotropic", **options)
        path = output_dir / f"{name.lower()}.txt"
        write_canonical(path, records)
        files[name] = path
    manifest = output_dir / "manifest.json"
    write_manifest(manifest, files)
    return manifest


#####################################
# Main Function
#####################################


def main():
    logger.info("START synthetic scene generation...")
    manifest = write_synthetic_dataset(OUTPUT_DIR, noise_std=0.02)
    logger.info(f"END synthetic scene generation: {manifest}")


if __name__ == "__main__":
    main()
