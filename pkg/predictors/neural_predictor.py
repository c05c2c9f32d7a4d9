"""
neural_predictor.py - FF / RED networks behind the predictor interface.

fit() builds a fresh network from the seed, then trains it; the same
generator continues into augmentation and shuffling.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import pathlib
from typing import Sequence

import numpy as np

from neural.checkpoints import save_checkpoint
from neural.features import FeatureSpec
from neural.networks import Network, build_network
from neural.training import LossCurves, TrainConfig, predict_windows, train
from trajectories.windows import TrajectoryWindow
from utils.utils_errors import ConfigError


#####################################
# Neural Predictor
#####################################


class NeuralPredictor:
    trainable = True
    sampled = False

    def __init__(
        self,
        name: str,
        family: str,
        spec: FeatureSpec,
        train_config: TrainConfig,
        hidden: tuple[int, ...] = (60, 30),
    ):
        self.name = name
        self.family = family
        self.spec = spec
        self.train_config = train_config
        self.hidden = hidden
        self.network: Network | None = None
        self.curves: LossCurves | None = None

    def fit(self, train_windows: Sequence[TrajectoryWindow], validation_windows: Sequence[TrajectoryWindow]) -> None:
        rng = np.random.default_rng(self.train_config.seed)
        network = build_network(self.family, self.spec, rng=rng, hidden=self.hidden)
        self.network, self.curves = train(network, train_windows, validation_windows, self.train_config, rng=rng)

    def predict_batch(self, windows: Sequence[TrajectoryWindow]) -> np.ndarray:
        if self.network is None:
            raise ConfigError(f"model '{self.name}' used before fit")
        return predict_windows(self.network, list(windows))

    def save(self, stem: pathlib.Path, config_hash: str = "", seed: int | None = None) -> pathlib.Path:
        """
        Write the trained network as a checkpoint.

        Args:
            stem (pathlib.Path): Target path without suffix; ".npz" is appended.
            config_hash (str): Hash of the run configuration, stored in the checkpoint metadata.
            seed (int, optional): Seed of the training run.

        Returns:
            pathlib.Path: The written checkpoint.
        """
        if self.network is None:
            raise ConfigError(f"model '{self.name}' saved before fit")
        path = pathlib.Path(stem).with_suffix(".npz")
        return save_checkpoint(path, self.network, self.train_config.to_dict(), seed, config_hash)

    def describe(self) -> dict:
        info = {
            "kind": self.family,
            "features": self.spec.to_dict(),
            "train_config": self.train_config.to_dict(),
        }
        if self.family == "ff":
            info["hidden"] = list(self.hidden)
        if self.curves is not None:
            info["initial_train_loss"] = self.curves.initial_train
            info["final_train_loss"] = self.curves.train[-1]
        return info
