"""
training.py - mini-batch MSE training and window prediction.

One numpy PCG64 stream per run feeds, in this order: weight
initialisation (done by the caller), rotation augmentation, then the
per-epoch shuffles. Same seed and data give bit-identical parameters.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from neural.autodiff import Tensor
from neural.features import FeatureSpec, build_features, build_targets, window_features
from neural.networks import Network
from neural.optim import BETA1, BETA2, EPSILON, LEARNING_RATE, Adam
from trajectories.augmentation import ROTATION_SIGMA_DEG, augment_rotations
from trajectories.core_types import DisplacementSequence, ModelParameters
from trajectories.windows import TrajectoryWindow, full_length
from utils.utils_config import PREDICTION_HORIZON
from utils.utils_errors import ConfigError
from utils.utils_logger import logger

#####################################
# Configuration
#####################################


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = LEARNING_RATE
    batch_size: int = 64
    epochs: int = 35
    seed: int = 0
    rotations: bool = False
    rotation_sigma_deg: float = ROTATION_SIGMA_DEG
    beta1: float = BETA1
    beta2: float = BETA2
    eps: float = EPSILON

    def __post_init__(self):
        if self.learning_rate <= 0 or self.batch_size <= 0 or self.epochs <= 0:
            raise ConfigError("learning rate, batch size and epochs must be positive")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class LossCurves:
    initial_train: float = float("nan")
    train: list[float] = field(default_factory=list)
    validation: list[float] = field(default_factory=list)


#####################################
# Loss and Gradients
#####################################


def mse_loss(outputs: Tensor, targets: np.ndarray) -> Tensor:
    """Mean over the batch and all 24 components."""
    return (outputs - targets).square().mean()


def backward(
    network: Network, inputs: np.ndarray, targets: np.ndarray
) -> tuple[float, ModelParameters, np.ndarray]:
    """Loss, gradients w.r.t. every parameter, and gradient w.r.t. the inputs."""
    x = Tensor(np.atleast_2d(np.asarray(inputs, dtype=np.float64)), requires_grad=True)
    network.zero_grad()
    loss = mse_loss(network.forward(x), np.atleast_2d(targets))
    loss.backward()
    grads = {
        name: tensor.grad if tensor.grad is not None else np.zeros_like(tensor.data)
        for name, tensor in network.parameters.items()
    }
    input_grad = x.grad if x.grad is not None else np.zeros_like(x.data)
    return float(loss.data), grads, input_grad


def evaluate_loss(network: Network, inputs: np.ndarray, targets: np.ndarray, chunk: int = 4096) -> float:
    if len(inputs) == 0:
        return float("nan")
    total = 0.0
    for start in range(0, len(inputs), chunk):
        outputs = network.predict(inputs[start : start + chunk])
        total += float(((outputs - targets[start : start + chunk]) ** 2).sum())
    return total / targets.size


#####################################
# Training Loop
#####################################


def train(
    network: Network,
    train_windows: Sequence[TrajectoryWindow],
    validation_windows: Sequence[TrajectoryWindow],
    config: TrainConfig,
    rng: np.random.Generator | None = None,
) -> tuple[Network, LossCurves]:
    """
    Minimise MSE for config.epochs epochs with Adam; no early stopping.

    Shortened windows are skipped. With config.rotations, every training
    window is rotated once before the first epoch.
    """
    rng = rng if rng is not None else np.random.default_rng(config.seed)
    train_full = full_length(train_windows)
    validation_full = full_length(validation_windows)
    if not train_full:
        raise ConfigError("training set contains no full-length windows")
    skipped = len(train_windows) - len(train_full)
    if skipped:
        logger.debug(f"Skipping {skipped} shortened training windows")

    if config.rotations:
        train_full = augment_rotations(train_full, config.rotation_sigma_deg, rng)

    spec: FeatureSpec = network.spec
    inputs, targets = build_features(train_full, spec), build_targets(train_full)
    val_inputs, val_targets = build_features(validation_full, spec), build_targets(validation_full)

    optimizer = Adam(network, config.learning_rate, config.beta1, config.beta2, config.eps)
    curves = LossCurves(initial_train=evaluate_loss(network, inputs, targets))
    logger.info(
        f"Training {network.family} ({network.parameter_count()} parameters) on "
        f"{len(inputs)} windows, {config.epochs} epochs, initial loss {curves.initial_train:.6f}"
    )

    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(len(inputs))
        batch_losses = []
        for start in range(0, len(order), config.batch_size):
            batch = order[start : start + config.batch_size]
            loss, grads, _ = backward(network, inputs[batch], targets[batch])
            optimizer.step(grads)
            batch_losses.append(loss * len(batch))
        curves.train.append(sum(batch_losses) / len(order))
        curves.validation.append(evaluate_loss(network, val_inputs, val_targets))
        if epoch == 1 or epoch % 5 == 0 or epoch == config.epochs:
            logger.info(
                f"Epoch {epoch}/{config.epochs}: train {curves.train[-1]:.6f}, "
                f"validation {curves.validation[-1]:.6f}"
            )
    return network, curves


#####################################
# Prediction
#####################################


def predict_window(
    network: Network,
    window: TrajectoryWindow,
    representation: str | None = None,
    neighbor_variant: str | None = None,
) -> DisplacementSequence:
    """12 predicted displacements; the network's own feature spec must match the request."""
    spec = network.spec
    if representation is not None and representation != spec.representation:
        raise ConfigError(
            f"network trained on {spec.representation} inputs, asked for {representation}"
        )
    if neighbor_variant is not None and neighbor_variant != spec.neighbor_variant:
        raise ConfigError(
            f"network trained with neighbor variant {spec.neighbor_variant}, asked for {neighbor_variant}"
        )
    outputs = network.predict(window_features(window, spec)[None, :])
    return DisplacementSequence(outputs.reshape(PREDICTION_HORIZON, 2))


def predict_windows(network: Network, windows: Sequence[TrajectoryWindow], chunk: int = 4096) -> np.ndarray:
    """(N, 12, 2) predicted displacements."""
    if not windows:
        return np.zeros((0, PREDICTION_HORIZON, 2))
    parts = []
    for start in range(0, len(windows), chunk):
        features = build_features(windows[start : start + chunk], network.spec)
        parts.append(network.predict(features))
    return np.concatenate(parts).reshape(len(windows), PREDICTION_HORIZON, 2)
