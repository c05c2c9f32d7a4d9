"""
benchmark.py - the leave-one-out benchmark runner.

For each held-out scene: build the split, fit trainable models on the
other scenes, predict every test window, convert predicted displacements
back to positions from the window's anchor and score them. Scene values
are the unweighted mean over windows; the average row is the unweighted
mean over scenes.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import pathlib
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from evaluation.metrics import ade, fde, min_over_k
from predictors.base import Predictor, SavesModel, build_predictor, protocol_label
from trajectories.scene_loader import Scene
from trajectories.splits import make_split
from trajectories.windows import TrajectoryWindow, slice_windows
from utils.utils_config import VALIDATION_FRACTION, ModelConfig
from utils.utils_errors import BenchmarkError, FoldError
from utils.utils_logger import logger

#####################################
# Report Types
#####################################


@dataclass(frozen=True)
class SceneResult:
    scene: str
    ade: float
    fde: float
    windows: int


@dataclass
class EvalReport:
    model: str
    seed: int
    scenes: dict[str, SceneResult]
    metadata: dict = field(default_factory=dict)

    @property
    def average_ade(self) -> float:
        return float(np.mean([r.ade for r in self.scenes.values()]))

    @property
    def average_fde(self) -> float:
        return float(np.mean([r.fde for r in self.scenes.values()]))

    @property
    def total_windows(self) -> int:
        return sum(r.windows for r in self.scenes.values())


#####################################
# Window Scoring
#####################################


def displacements_to_tracks(windows: Sequence[TrajectoryWindow], displacements: np.ndarray) -> np.ndarray:
    """(N, ..., 12, 2) displacements -> absolute positions from each window's anchor."""
    anchors = np.stack([w.observed.positions[-1] for w in windows])
    shape = (len(windows),) + (1,) * (displacements.ndim - 2) + (2,)
    return anchors.reshape(shape) + np.cumsum(displacements, axis=-2)


def score_windows(windows: Sequence[TrajectoryWindow], predicted: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Per-window ADE and FDE.

    predicted is (N, 12, 2) for point predictors or (N, k, 12, 2) for
    samplers; for samplers ADE and FDE are each minimised over the k samples.
    """
    if not windows:
        return np.zeros(0), np.zeros(0)
    tracks = displacements_to_tracks(windows, predicted)
    ades = np.empty(len(windows))
    fdes = np.empty(len(windows))
    for i, window in enumerate(windows):
        truth = window.future.positions
        if tracks.ndim == 4:
            ades[i], fdes[i] = min_over_k(tracks[i], truth)
        else:
            ades[i], fdes[i] = ade(tracks[i], truth), fde(tracks[i], truth)
    return ades, fdes


def evaluate_predictor(predictor: Predictor, windows: Sequence[TrajectoryWindow]) -> tuple[np.ndarray, np.ndarray]:
    if getattr(predictor, "sampled", False):
        predicted = predictor.predict_samples(windows)
    else:
        predicted = predictor.predict_batch(windows)
    return score_windows(windows, predicted)


#####################################
# Folds
#####################################


@dataclass(frozen=True)
class FoldTask:
    config: ModelConfig
    scenes: tuple[Scene, ...]
    test_scene: str
    seed: int
    validation_fraction: float = VALIDATION_FRACTION
    model_dir: pathlib.Path | None = None
    config_hash: str = ""


def model_file_stem(model_name: str, seed: int, test_scene: str) -> str:
    """File name (without suffix) of the model trained for one fold and seed."""
    return re.sub(r"[^A-Za-z0-9_-]+", "_", f"{model_name}-seed{seed}-{test_scene}")


def run_fold(task: FoldTask, windows: dict[str, list[TrajectoryWindow]] | None = None) -> tuple[SceneResult, dict]:
    """Train (if needed) and evaluate one model on one held-out scene."""
    saved = None
    try:
        split = make_split(
            task.scenes, task.test_scene, task.seed, task.validation_fraction, windows=windows
        )
        predictor = build_predictor(task.config, task.seed)
        if predictor.trainable:
            logger.info(f"Fitting '{task.config.name}' for test scene '{task.test_scene}'")
            predictor.fit(split.train, split.validation)
            if task.model_dir is not None and isinstance(predictor, SavesModel):
                stem = pathlib.Path(task.model_dir) / model_file_stem(task.config.name, task.seed, task.test_scene)
                saved = predictor.save(stem, task.config_hash, task.seed)
        ades, fdes = evaluate_predictor(predictor, split.test)
        if len(ades) == 0:
            raise BenchmarkError(f"scene '{task.test_scene}' has no test windows")
    except FoldError:
        raise
    except Exception as e:
        logger.error(f"Fold '{task.test_scene}' of model '{task.config.name}' failed: {e}")
        raise FoldError(task.test_scene, e) from e

    result = SceneResult(task.test_scene, float(ades.mean()), float(fdes.mean()), len(ades))
    logger.info(
        f"{task.config.name} seed={task.seed} test={task.test_scene}: "
        f"ADE {result.ade:.4f} FDE {result.fde:.4f} over {result.windows} windows"
    )
    info = predictor.describe()
    if saved is not None:
        info["model_file"] = saved.name
    return result, info


def _run_fold_task(task: FoldTask) -> tuple[SceneResult, dict]:
    return run_fold(task)


def evaluate_model(
    config: ModelConfig,
    scenes: Sequence[Scene],
    seed: int,
    test_scenes: Sequence[str] | None = None,
    workers: int = 1,
    validation_fraction: float = VALIDATION_FRACTION,
    windows: dict[str, list[TrajectoryWindow]] | None = None,
    model_dir: pathlib.Path | None = None,
    config_hash: str = "",
) -> EvalReport:
    """One model, one seed, every requested fold; trained models go to model_dir when given."""
    test_scenes = list(test_scenes or [s.name for s in scenes])
    tasks = [
        FoldTask(config, tuple(scenes), name, seed, validation_fraction, model_dir, config_hash)
        for name in test_scenes
    ]
    logger.info(f"Evaluating '{config.name}' seed={seed} over folds {test_scenes} (workers={workers})")

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_fold_task, tasks))
    else:
        if windows is None:
            windows = {scene.name: slice_windows(scene) for scene in scenes}
        outcomes = [run_fold(task, windows) for task in tasks]

    results = {result.scene: result for result, _ in outcomes}
    metadata = {
        "kind": config.kind,
        "variant": protocol_label(config),
        "representation": config.representation,
        "rotations": config.rotations,
        "neighbor_variant": config.neighbor_variant,
        "history_steps": config.history_steps,
        "seed": seed,
        "folds": {result.scene: info for result, info in outcomes},
    }
    if config.kind == "cvm_sampled":
        metadata.update({"k": config.k, "sigma_deg": config.sigma_deg})
    report = EvalReport(config.name, seed, results, metadata)
    logger.info(
        f"'{config.name}' seed={seed}: AVG ADE {report.average_ade:.4f} FDE {report.average_fde:.4f}"
    )
    return report


def run_benchmark(
    models: Sequence[ModelConfig],
    scenes: Sequence[Scene],
    seeds: Sequence[int],
    test_scenes: Sequence[str] | None = None,
    workers: int = 1,
    validation_fraction: float = VALIDATION_FRACTION,
    model_dir: pathlib.Path | None = None,
    config_hash: str = "",
) -> list[EvalReport]:
    """Every model under every seed; deterministic models still run once per seed."""
    windows = {scene.name: slice_windows(scene) for scene in scenes} if workers <= 1 else None
    reports = []
    for config in models:
        for seed in seeds:
            reports.append(
                evaluate_model(
                    config, scenes, seed, test_scenes, workers, validation_fraction, windows, model_dir, config_hash
                )
            )
    return reports
