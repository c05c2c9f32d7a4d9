"""
attribution.py - how much each history timestep drives a network's output.

The prediction of a window is summarised as f = sum of |outputs| over the
24 raw outputs. For every test window the gradient of f with respect to
each history timestep's input pair is taken, its Euclidean norm summed
over windows per timestep, and the sums normalised to a distribution.

The experiment attributes networks trained with relative inputs and
rotation augmentation, one network per fold and seed. Norm totals are
summed over folds before normalising.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import pathlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from analysis.grid import FAMILY_LABELS, ExperimentGrid
from analysis.priors import prior_model_config
from evaluation.benchmark import model_file_stem
from neural.autodiff import Tensor
from neural.checkpoints import load_checkpoint
from neural.features import FeatureSpec, build_features
from neural.networks import FFNetwork, Network
from predictors.base import build_predictor
from trajectories.core_types import AttributionDistribution
from trajectories.scene_loader import Scene
from trajectories.splits import make_split
from trajectories.windows import TrajectoryWindow, slice_windows
from utils.utils_config import ModelConfig
from utils.utils_errors import CapabilityError, ConfigError
from utils.utils_logger import logger

CHUNK = 2048
TRAINED = "train"
COPY_LAST = "copy-last"
SHARE_COLUMNS = [
    "experiment",
    "model",
    "variant",
    "timestep",
    "share",
    "windows",
    "seed",
    "config_hash",
]

#####################################
# Gradient Readout
#####################################


def _require_gradients(network) -> Network:
    if not isinstance(network, Network):
        raise CapabilityError(
            f"{type(network).__name__} does not expose input gradients; attribution needs a neural network"
        )
    return network


def readout_gradient(network: Network, features: np.ndarray) -> np.ndarray:
    """d f / d input for each row of features, where f sums |outputs| of that row."""
    network = _require_gradients(network)
    x = Tensor(np.atleast_2d(np.asarray(features, dtype=np.float64)), requires_grad=True)
    network.forward(x).abs().sum().backward()
    return x.grad


def timestep_norms(network: Network, features: np.ndarray) -> np.ndarray:
    """(N, history_steps) gradient norms of the readout per history input pair."""
    spec = network.spec
    grads = readout_gradient(network, features)[:, : spec.history_dim]
    return np.linalg.norm(grads.reshape(len(grads), spec.history_steps, 2), axis=2)


def attribution_totals(network, windows: Sequence[TrajectoryWindow]) -> np.ndarray:
    """Per-timestep gradient norms summed over windows, before normalisation."""
    network = _require_gradients(network)
    totals = np.zeros(network.spec.history_steps)
    for start in range(0, len(windows), CHUNK):
        features = build_features(windows[start : start + CHUNK], network.spec)
        totals += timestep_norms(network, features).sum(axis=0)
    return totals


def normalise_totals(totals: np.ndarray) -> AttributionDistribution:
    grand_total = float(np.sum(totals))
    if not np.isfinite(grand_total) or grand_total <= 0:
        raise CapabilityError("the readout has zero gradient on every window; no distribution exists")
    return AttributionDistribution(np.asarray(totals) / grand_total)


def gradient_attribution(network, windows: Sequence[TrajectoryWindow]) -> AttributionDistribution:
    """
    Normalised gradient influence of each history timestep.

    Args:
        network (Network): Any FF or RED network; other predictors raise CapabilityError.
        windows (Sequence[TrajectoryWindow]): Windows to attribute over.

    Returns:
        AttributionDistribution: Non-negative shares summing to 1, oldest timestep first.
    """
    distribution = normalise_totals(attribution_totals(network, windows))
    logger.info(f"Attribution over {len(windows)} windows: {np.round(distribution.weights, 4).tolist()}")
    return distribution


def timestep_labels(history_steps: int) -> list[str]:
    """Oldest first; the last input pair is the displacement into t."""
    return [f"t-{history_steps - 1 - i}" if i < history_steps - 1 else "t" for i in range(history_steps)]


#####################################
# Fixture Network
#####################################


def build_copy_last_network(history_steps: int = 7) -> FFNetwork:
    """
    An FF network whose 12 output pairs all equal the last input displacement.

    Hidden units 0..3 hold relu(dx), relu(-dx), relu(dy), relu(-dy) of the
    last pair; the second layer passes them through; the output recombines
    them as dx = u0 - u1 and dy = u2 - u3. Every other weight is zero.
    """
    spec = FeatureSpec("relative", history_steps)
    network = FFNetwork(spec)
    params = {name: np.zeros_like(value) for name, value in network.get_parameters().items()}
    last = 2 * (history_steps - 1)
    params["W1"][last, 0], params["W1"][last, 1] = 1.0, -1.0
    params["W1"][last + 1, 2], params["W1"][last + 1, 3] = 1.0, -1.0
    for unit in range(4):
        params["W2"][unit, unit] = 1.0
    params["W3"][0, 0::2], params["W3"][1, 0::2] = 1.0, -1.0
    params["W3"][2, 1::2], params["W3"][3, 1::2] = 1.0, -1.0
    network.set_parameters(params)
    return network


#####################################
# Experiment
#####################################


def _share_rows(
    model: str,
    variant: str,
    distribution: AttributionDistribution,
    windows: int,
    seed: int,
    config_hash: str,
) -> list[dict]:
    return [
        {
            "experiment": "attribution",
            "model": model,
            "variant": variant,
            "timestep": label,
            "share": float(share),
            "windows": windows,
            "seed": seed,
            "config_hash": config_hash,
        }
        for label, share in zip(timestep_labels(len(distribution)), distribution.weights)
    ]


def _fixed_network_rows(
    network: Network, label: str, variant: str, grid: ExperimentGrid, windows: dict[str, list[TrajectoryWindow]]
) -> list[dict]:
    test_windows = [w for name in grid.test_scenes or windows for w in windows[name]]
    distribution = gradient_attribution(network, test_windows)
    return [
        row
        for seed in grid.seeds
        for row in _share_rows(label, variant, distribution, len(test_windows), seed, grid.config_hash)
    ]


@dataclass(frozen=True)
class AttributionFold:
    """One fold and seed of the trained attribution run."""

    config: ModelConfig
    scenes: tuple[Scene, ...]
    test_scene: str
    seed: int
    model_dir: pathlib.Path | None = None
    config_hash: str = ""


def attribute_fold(
    fold: AttributionFold, windows: dict[str, list[TrajectoryWindow]] | None = None
) -> tuple[np.ndarray, int]:
    """Train the fold's network; returns its gradient totals over the test windows and the window count."""
    split = make_split(fold.scenes, fold.test_scene, fold.seed, windows=windows)
    predictor = build_predictor(fold.config, fold.seed)
    predictor.fit(split.train, split.validation)
    if fold.model_dir is not None:
        stem = pathlib.Path(fold.model_dir) / model_file_stem(fold.config.name, fold.seed, fold.test_scene)
        predictor.save(stem, fold.config_hash, fold.seed)
    return attribution_totals(predictor.network, split.test), len(split.test)


def _attribute_fold_task(fold: AttributionFold) -> tuple[np.ndarray, int]:
    return attribute_fold(fold)


def _trained_rows(
    grid: ExperimentGrid, scenes: Sequence[Scene], windows: dict[str, list[TrajectoryWindow]]
) -> list[dict]:
    test_scenes = list(grid.test_scenes or windows)
    rows = []
    for family in grid.model_families:
        config = prior_model_config(family, "Rotations", grid.epochs)
        for seed in grid.seeds:
            folds = [
                AttributionFold(config, tuple(scenes), name, seed, grid.model_dir, grid.config_hash)
                for name in test_scenes
            ]
            if grid.workers > 1 and len(folds) > 1:
                with ProcessPoolExecutor(max_workers=grid.workers) as pool:
                    outcomes = list(pool.map(_attribute_fold_task, folds))
            else:
                outcomes = [attribute_fold(fold, windows) for fold in folds]
            totals = np.sum([fold_totals for fold_totals, _ in outcomes], axis=0)
            count = sum(n for _, n in outcomes)
            distribution = normalise_totals(totals)
            logger.info(
                f"attribution: {FAMILY_LABELS[family]} seed={seed} shares {np.round(distribution.weights, 4).tolist()}"
            )
            rows.extend(_share_rows(FAMILY_LABELS[family], "Rotations", distribution, count, seed, grid.config_hash))
    return rows


def attribution_experiment(
    grid: ExperimentGrid,
    scenes: Sequence[Scene],
    network_source: str = TRAINED,
) -> pd.DataFrame:
    """
    Per-timestep influence shares, one block of rows per model and seed.

    Args:
        grid (ExperimentGrid): Families, seeds, folds and workers; trained
            networks are saved to grid.model_dir when it is set.
        scenes (Sequence[Scene]): Scenes of the leave-one-out protocol.
        network_source (str): "train" (one Rotations network per fold),
            "copy-last" (the analytic fixture) or the path of a saved checkpoint.

    Returns:
        pd.DataFrame: One row per model, seed and timestep (SHARE_COLUMNS).

    Raises:
        ConfigError: network_source names no existing checkpoint.
    """
    windows = {scene.name: slice_windows(scene) for scene in scenes}
    if network_source == COPY_LAST:
        rows = _fixed_network_rows(build_copy_last_network(), "copy-last", "fixture", grid, windows)
        return pd.DataFrame(rows, columns=SHARE_COLUMNS)
    if network_source != TRAINED:
        path = pathlib.Path(network_source)
        if not path.exists():
            raise ConfigError(f"attribution network '{network_source}' is neither 'train', 'copy-last' nor a checkpoint")
        network, meta = load_checkpoint(path)
        label = FAMILY_LABELS.get(meta["architecture"]["family"], path.stem)
        rows = _fixed_network_rows(network, label, "checkpoint", grid, windows)
        return pd.DataFrame(rows, columns=SHARE_COLUMNS)

    return pd.DataFrame(_trained_rows(grid, scenes, windows), columns=SHARE_COLUMNS)


def share_table(frame: pd.DataFrame) -> pd.DataFrame:
    """Seed-averaged shares, one row per model, one column per timestep."""
    means = frame.groupby(["model", "timestep"], sort=False)["share"].mean().reset_index()
    table = means.pivot(index="model", columns="timestep", values="share")
    table = table[list(dict.fromkeys(frame["timestep"]))]
    return table.reset_index().rename(columns={"model": "Model"})
