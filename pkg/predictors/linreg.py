"""
linreg.py - multivariate multi-target linear regression.

Each of the 24 outputs (12 steps x 2 coordinates) is an independent
ordinary least squares fit on the flattened motion history:
16 inputs for absolute positions, 14 for relative displacements.
Rank-deficient designs get numpy's minimum-norm lstsq solution and are
flagged on the model.

Model file (text, versioned):
    # linreg-model v1
    # representation=relative input_dim=14 outputs=24 rank=15 rank_deficient=1 config_hash=<hash> seed=0
    <input_dim rows of weights, 24 columns>
    <1 row of intercepts>
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import pathlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from neural.features import OUTPUT_DIM, FeatureSpec, build_features, build_targets, history_features
from trajectories.windows import TrajectoryWindow, full_length
from utils.utils_config import PREDICTION_HORIZON
from utils.utils_errors import ConfigError, ParseError, ShapeError
from utils.utils_logger import logger

MODEL_FILE_VERSION = 1


#####################################
# Model
#####################################


@dataclass(frozen=True)
class LinRegModel:
    weights: np.ndarray
    intercept: np.ndarray
    representation: str
    rank: int
    rank_deficient: bool

    def __post_init__(self):
        expected = FeatureSpec(self.representation).input_dim
        if self.weights.shape != (expected, OUTPUT_DIM):
            raise ShapeError(
                f"{self.representation} model needs weights {(expected, OUTPUT_DIM)}, got {self.weights.shape}"
            )
        if self.intercept.shape != (OUTPUT_DIM,):
            raise ShapeError(f"intercept must have {OUTPUT_DIM} entries, got {self.intercept.shape}")

    @property
    def input_dim(self) -> int:
        return self.weights.shape[0]


#####################################
# Fitting and Prediction
#####################################


def fit_arrays(inputs: np.ndarray, targets: np.ndarray, representation: str) -> LinRegModel:
    """
    Least squares with an intercept column; all outputs solved in one lstsq call.

    Args:
        inputs (np.ndarray): (N, input_dim) flattened histories.
        targets (np.ndarray): (N, 24) future displacements.
        representation (str): "absolute" or "relative", recorded on the model.

    Returns:
        LinRegModel: Weights, intercept and the rank of the design.
    """
    n, d = inputs.shape
    if n < d + 1:
        raise ConfigError(f"linear regression needs at least {d + 1} full-length windows, got {n}")
    design = np.hstack([inputs, np.ones((n, 1))])
    solution, _, rank, _ = np.linalg.lstsq(design, targets, rcond=None)
    rank_deficient = int(rank) < d + 1
    if rank_deficient:
        logger.warning(f"Linear regression design is rank deficient ({rank} < {d + 1}); using minimum-norm solution")
    return LinRegModel(solution[:-1], solution[-1], representation, int(rank), rank_deficient)


def linreg_fit(windows: Sequence[TrajectoryWindow], representation: str = "absolute") -> LinRegModel:
    """Fit on the full-length windows only; shortened windows lack a 12-step target."""
    full = full_length(windows)
    spec = FeatureSpec(representation)
    model = fit_arrays(build_features(full, spec), build_targets(full), representation)
    logger.info(f"Fitted linear regression ({representation}) on {len(full)} windows, rank {model.rank}")
    return model


def linreg_predict(model: LinRegModel, history) -> np.ndarray:
    """
    12 predicted displacement pairs, shape (12, 2).

    history is 8 positions (absolute) or 7 displacements (relative), shape
    (n, 2) or already flattened.
    """
    values = np.asarray(history, dtype=np.float64).reshape(-1)
    if values.size != model.input_dim:
        raise ShapeError(
            f"{model.representation} regression expects {model.input_dim // 2} input pairs, got {values.size / 2:g}"
        )
    return (values @ model.weights + model.intercept).reshape(PREDICTION_HORIZON, 2)


#####################################
# Model Files
#####################################


def save_linreg(
    path: pathlib.Path, model: LinRegModel, config_hash: str = "", seed: int | None = None
) -> pathlib.Path:
    """
    Write a version 1 model file.

    Args:
        path (pathlib.Path): Target file; parent directories are created.
        model (LinRegModel): The fitted model.
        config_hash (str): Hash of the run configuration, added to the header when set.
        seed (int, optional): Seed of the run, added to the header when set.

    Returns:
        pathlib.Path: The written file.
    """
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = (
        f"linreg-model v{MODEL_FILE_VERSION}\n"
        f"representation={model.representation} input_dim={model.input_dim} "
        f"outputs={OUTPUT_DIM} rank={model.rank} rank_deficient={int(model.rank_deficient)}"
    )
    if config_hash:
        header += f" config_hash={config_hash}"
    if seed is not None:
        header += f" seed={seed}"
    np.savetxt(path, np.vstack([model.weights, model.intercept[None, :]]), fmt="%.17g", header=header)
    logger.info(f"Linear regression model written: {path}")
    return path


def load_linreg(path: pathlib.Path) -> LinRegModel:
    path = pathlib.Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if len(lines) < 2 or lines[0].strip() != f"# linreg-model v{MODEL_FILE_VERSION}":
        raise ParseError("not a version 1 linear regression model file", 1, str(path))
    fields = dict(item.split("=", 1) for item in lines[1].lstrip("# ").split())
    matrix = np.loadtxt(path, ndmin=2)
    return LinRegModel(
        weights=matrix[:-1],
        intercept=matrix[-1],
        representation=fields["representation"],
        rank=int(fields["rank"]),
        rank_deficient=fields["rank_deficient"] == "1",
    )


#####################################
# Batch Predictor
#####################################


class LinRegPredictor:
    trainable = True
    sampled = False

    def __init__(self, name: str = "Lin", representation: str = "absolute"):
        self.name = name
        self.representation = representation
        self.model: LinRegModel | None = None

    def fit(self, train_windows, validation_windows) -> None:
        self.model = linreg_fit(train_windows, self.representation)

    def predict_batch(self, windows: Sequence[TrajectoryWindow]) -> np.ndarray:
        if self.model is None:
            raise ConfigError(f"model '{self.name}' used before fit")
        spec = FeatureSpec(self.representation)
        if not windows:
            return np.zeros((0, PREDICTION_HORIZON, 2))
        inputs = np.stack([history_features(w, spec) for w in windows])
        outputs = inputs @ self.model.weights + self.model.intercept
        return outputs.reshape(len(windows), PREDICTION_HORIZON, 2)

    def save(self, stem: pathlib.Path, config_hash: str = "", seed: int | None = None) -> pathlib.Path:
        if self.model is None:
            raise ConfigError(f"model '{self.name}' saved before fit")
        return save_linreg(pathlib.Path(stem).with_suffix(".txt"), self.model, config_hash, seed)

    def describe(self) -> dict:
        info = {"kind": "linreg", "representation": self.representation}
        if self.model is not None:
            info["rank_deficient"] = self.model.rank_deficient
        return info
