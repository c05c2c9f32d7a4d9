"""
optim.py - bias-corrected Adam.

    m <- b1 m + (1 - b1) g
    v <- b2 v + (1 - b2) g^2
    p <- p - lr * (m / (1 - b1^k)) / (sqrt(v / (1 - b2^k)) + eps)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from trajectories.core_types import ModelParameters
from utils.utils_errors import NonFiniteGradientError

LEARNING_RATE = 0.0004
BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


@dataclass
class AdamState:
    step: int = 0
    m: ModelParameters = field(default_factory=dict)
    v: ModelParameters = field(default_factory=dict)

    @classmethod
    def zeros_like(cls, params: ModelParameters) -> "AdamState":
        return cls(
            step=0,
            m={name: np.zeros_like(value) for name, value in params.items()},
            v={name: np.zeros_like(value) for name, value in params.items()},
        )


def check_finite(grads: ModelParameters) -> None:
    for name, grad in grads.items():
        finite = np.isfinite(grad)
        if not finite.all():
            bad = int((~finite).sum())
            raise NonFiniteGradientError(
                name, f"{bad} of {grad.size} entries non-finite, shape {grad.shape}"
            )


def adam_step(
    params: ModelParameters,
    grads: ModelParameters,
    state: AdamState,
    lr: float = LEARNING_RATE,
    beta1: float = BETA1,
    beta2: float = BETA2,
    eps: float = EPSILON,
) -> tuple[ModelParameters, AdamState]:
    """Return updated parameters and state; inputs are left untouched."""
    check_finite(grads)
    step = state.step + 1
    new_params, new_m, new_v = {}, {}, {}
    for name, value in params.items():
        grad = grads[name]
        m = beta1 * state.m.get(name, np.zeros_like(value)) + (1.0 - beta1) * grad
        v = beta2 * state.v.get(name, np.zeros_like(value)) + (1.0 - beta2) * grad**2
        m_hat = m / (1.0 - beta1**step)
        v_hat = v / (1.0 - beta2**step)
        new_params[name] = value - lr * m_hat / (np.sqrt(v_hat) + eps)
        new_m[name], new_v[name] = m, v
    return new_params, AdamState(step, new_m, new_v)


class Adam:
    """Adam bound to a network's parameter tensors."""

    def __init__(self, network, lr: float = LEARNING_RATE, beta1: float = BETA1, beta2: float = BETA2, eps: float = EPSILON):
        self.network = network
        self.lr, self.beta1, self.beta2, self.eps = lr, beta1, beta2, eps
        self.state = AdamState.zeros_like(network.get_parameters())

    def step(self, grads: ModelParameters) -> None:
        params = {name: tensor.data for name, tensor in self.network.parameters.items()}
        updated, self.state = adam_step(params, grads, self.state, self.lr, self.beta1, self.beta2, self.eps)
        for name, tensor in self.network.parameters.items():
            tensor.data = updated[name]
