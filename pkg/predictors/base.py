"""
base.py - the predictor interface and the registry that builds
predictors from run-configuration entries.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import pathlib
from typing import Any, Protocol, Sequence, runtime_checkable

import numpy as np

from neural.features import FeatureSpec
from neural.training import TrainConfig
from predictors.const_acc import ConstAccPredictor
from predictors.cvm import CVMPredictor, SampledCVMPredictor
from predictors.linreg import LinRegPredictor
from predictors.neural_predictor import NeuralPredictor
from trajectories.windows import TrajectoryWindow
from utils.utils_config import ModelConfig
from utils.utils_errors import ConfigError


#####################################
# Predictor Interface
#####################################


@runtime_checkable
class Predictor(Protocol):
    """Anything that maps windows to 12 predicted displacements each."""

    name: str
    trainable: bool
    sampled: bool

    def fit(self, train_windows: Sequence[TrajectoryWindow], validation_windows: Sequence[TrajectoryWindow]) -> None:
        ...

    def predict_batch(self, windows: Sequence[TrajectoryWindow]) -> np.ndarray:
        ...

    def describe(self) -> dict[str, Any]:
        ...


@runtime_checkable
class SavesModel(Protocol):
    """Trained predictors that can write their fitted model next to the results."""

    def save(self, stem: pathlib.Path, config_hash: str = "", seed: int | None = None) -> pathlib.Path:
        ...


#####################################
# Registry
#####################################


def protocol_label(config: ModelConfig) -> str:
    """Basic / Relative / Rotations, the input treatment of a model."""
    if config.representation == "absolute":
        return "Basic"
    return "Rotations" if config.rotations else "Relative"


def build_predictor(config: ModelConfig, seed: int) -> Predictor:
    """
    A fresh, unfitted predictor for one fold and seed.

    Args:
        config (ModelConfig): The model entry of the run configuration.
        seed (int): Seeds sampling (OUR-S) and network training.

    Returns:
        Predictor: The predictor named by config.kind.
    """
    if config.kind == "cvm":
        return CVMPredictor(config.name)
    if config.kind == "cvm_sampled":
        return SampledCVMPredictor(config.name, k=config.k, sigma_deg=config.sigma_deg, seed=seed)
    if config.kind == "const_acc":
        return ConstAccPredictor(config.name)
    if config.kind == "linreg":
        return LinRegPredictor(config.name, representation=config.representation)
    if config.kind in ("ff", "red"):
        spec = FeatureSpec(config.representation, config.history_steps, config.neighbor_variant)
        train_config = TrainConfig(
            learning_rate=config.learning_rate,
            batch_size=config.batch_size,
            epochs=config.epochs,
            seed=seed,
            rotations=config.rotations,
        )
        return NeuralPredictor(config.name, config.kind, spec, train_config, hidden=config.hidden)
    raise ConfigError(f"model '{config.name}': unknown kind '{config.kind}'")
