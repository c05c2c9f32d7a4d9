"""
networks.py - the two regressors used throughout the benchmark.

FFNetwork: input -> 60 (ReLU) -> 30 (ReLU) -> 24 (linear).
REDNetwork: per-timestep linear embedding (16), a single-gate recurrent
encoder (state 64) over the history pairs, and an MLP decoder (60, ReLU)
from the final state, optionally concatenated with neighbor features,
to 24 outputs.

Weights and biases are drawn uniformly from +-INIT_SCALE / sqrt(fan_in).
"""

from __future__ import annotations

import numpy as np

from neural.autodiff import Tensor, as_tensor, concat, parameter
from neural.features import OUTPUT_DIM, FeatureSpec
from trajectories.core_types import ModelParameters
from utils.utils_errors import ConfigError, ShapeError

INIT_SCALE = 1.0


def uniform_init(rng: np.random.Generator, fan_in: int, shape: tuple[int, ...]) -> np.ndarray:
    bound = INIT_SCALE / np.sqrt(fan_in)
    return rng.uniform(-bound, bound, size=shape)


class Network:
    """Shared parameter handling; subclasses define layout and _forward."""

    family = "network"

    def __init__(self, spec: FeatureSpec, rng: np.random.Generator | None = None):
        self.spec = spec
        self.input_dim = spec.input_dim
        self.output_dim = OUTPUT_DIM
        self.parameters: dict[str, Tensor] = {}
        rng = rng if rng is not None else np.random.default_rng(0)
        for name, (fan_in, shape) in self.layout().items():
            self.parameters[name] = parameter(uniform_init(rng, fan_in, shape), name=name)

    def layout(self) -> dict[str, tuple[int, tuple[int, ...]]]:
        """name -> (fan_in, shape), in creation order."""
        raise NotImplementedError

    def _forward(self, x: Tensor) -> Tensor:
        raise NotImplementedError

    def forward(self, features) -> Tensor:
        """(B, input_dim) features -> (B, 24) displacement outputs."""
        x = as_tensor(features)
        if x.data.ndim == 1:
            x = Tensor(x.data.reshape(1, -1), ((x, lambda g: g.reshape(x.shape)),))
        if x.data.ndim != 2 or x.shape[1] != self.input_dim:
            raise ShapeError(
                f"{self.family} expects inputs of width {self.input_dim}, got shape {x.shape}"
            )
        return self._forward(x)

    def __call__(self, features) -> Tensor:
        return self.forward(features)

    def predict(self, features: np.ndarray) -> np.ndarray:
        return self.forward(np.asarray(features, dtype=np.float64)).data

    def zero_grad(self) -> None:
        for tensor in self.parameters.values():
            tensor.zero_grad()

    def get_parameters(self) -> ModelParameters:
        return {name: tensor.data.copy() for name, tensor in self.parameters.items()}

    def set_parameters(self, values: ModelParameters) -> None:
        for name, tensor in self.parameters.items():
            array = np.asarray(values[name], dtype=np.float64)
            if array.shape != tensor.shape:
                raise ShapeError(f"parameter '{name}' expects {tensor.shape}, got {array.shape}")
            tensor.data = array.copy()

    def parameter_count(self) -> int:
        return sum(t.data.size for t in self.parameters.values())

    def architecture(self) -> dict:
        return {"family": self.family, "features": self.spec.to_dict()}


class FFNetwork(Network):
    family = "ff"

    def __init__(
        self,
        spec: FeatureSpec,
        hidden: tuple[int, ...] = (60, 30),
        rng: np.random.Generator | None = None,
    ):
        self.hidden = tuple(hidden)
        super().__init__(spec, rng)

    def layout(self):
        widths = [self.spec.input_dim, *self.hidden, OUTPUT_DIM]
        shapes = {}
        for i, (fan_in, fan_out) in enumerate(zip(widths[:-1], widths[1:]), start=1):
            shapes[f"W{i}"] = (fan_in, (fan_in, fan_out))
            shapes[f"b{i}"] = (fan_in, (fan_out,))
        return shapes

    def _forward(self, x: Tensor) -> Tensor:
        layers = len(self.hidden) + 1
        out = x
        for i in range(1, layers + 1):
            out = out @ self.parameters[f"W{i}"] + self.parameters[f"b{i}"]
            if i < layers:
                out = out.relu()
        return out

    def architecture(self) -> dict:
        return {**super().architecture(), "hidden": list(self.hidden)}


class REDNetwork(Network):
    family = "red"

    def __init__(
        self,
        spec: FeatureSpec,
        embedding: int = 16,
        state: int = 64,
        decoder_hidden: int = 60,
        rng: np.random.Generator | None = None,
    ):
        self.embedding = embedding
        self.state = state
        self.decoder_hidden = decoder_hidden
        super().__init__(spec, rng)

    def layout(self):
        e, s, d = self.embedding, self.state, self.decoder_hidden
        decoder_in = s + self.spec.neighbor_dim
        return {
            "embed_W": (2, (2, e)),
            "embed_b": (2, (e,)),
            "gate_W": (e, (e, s)),
            "gate_U": (s, (s, s)),
            "gate_b": (s, (s,)),
            "cand_W": (e, (e, s)),
            "cand_U": (s, (s, s)),
            "cand_b": (s, (s,)),
            "dec1_W": (decoder_in, (decoder_in, d)),
            "dec1_b": (decoder_in, (d,)),
            "dec2_W": (d, (d, OUTPUT_DIM)),
            "dec2_b": (d, (OUTPUT_DIM,)),
        }

    def encode(self, x: Tensor) -> Tensor:
        p = self.parameters
        h = Tensor(np.zeros((x.shape[0], self.state)))
        for step in range(self.spec.history_steps):
            e = x.columns(2 * step, 2 * step + 2) @ p["embed_W"] + p["embed_b"]
            f = (e @ p["gate_W"] + h @ p["gate_U"] + p["gate_b"]).sigmoid()
            candidate = (e @ p["cand_W"] + (f * h) @ p["cand_U"] + p["cand_b"]).tanh()
            h = (1.0 - f) * h + f * candidate
        return h

    def _forward(self, x: Tensor) -> Tensor:
        p = self.parameters
        encoding = self.encode(x)
        if self.spec.neighbor_dim:
            start = self.spec.history_dim
            encoding = concat([encoding, x.columns(start, start + self.spec.neighbor_dim)])
        hidden = (encoding @ p["dec1_W"] + p["dec1_b"]).relu()
        return hidden @ p["dec2_W"] + p["dec2_b"]

    def architecture(self) -> dict:
        return {
            **super().architecture(),
            "embedding": self.embedding,
            "state": self.state,
            "decoder_hidden": self.decoder_hidden,
        }


def build_network(
    family: str,
    spec: FeatureSpec,
    rng: np.random.Generator | None = None,
    hidden: tuple[int, ...] = (60, 30),
) -> Network:
    if family == "ff":
        return FFNetwork(spec, hidden=hidden, rng=rng)
    if family == "red":
        return REDNetwork(spec, rng=rng)
    raise ConfigError(f"unknown network family '{family}'")
