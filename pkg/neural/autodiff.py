"""
autodiff.py - minimal reverse-mode differentiation over numpy arrays.

A Tensor holds a float64 array, a gradient accumulator of the same shape
and the parents it was computed from, each with a function mapping the
output gradient to that parent's gradient contribution. backward() visits
every node of the graph exactly once, in reverse topological order.

Kinks (relu at 0, abs at 0) use subgradient 0.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

GradFn = Callable[[np.ndarray], np.ndarray]


def _unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Sum a broadcast gradient back down to the operand's shape."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "_parents", "name")

    def __init__(
        self,
        data,
        parents: Sequence[tuple["Tensor", GradFn]] = (),
        requires_grad: bool = False,
        name: str = "",
    ):
        self.data = np.asarray(data, dtype=np.float64)
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad or any(p.requires_grad for p, _ in parents)
        self._parents = tuple(p for p in parents if p[0].requires_grad)
        self.name = name

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"Tensor{label}(shape={self.shape})"

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    def zero_grad(self) -> None:
        self.grad = None

    #####################################
    # Arithmetic
    #####################################

    def __add__(self, other) -> "Tensor":
        other = as_tensor(other)
        return Tensor(
            self.data + other.data,
            (
                (self, lambda g: _unbroadcast(g, self.shape)),
                (other, lambda g: _unbroadcast(g, other.shape)),
            ),
        )

    __radd__ = __add__

    def __neg__(self) -> "Tensor":
        return Tensor(-self.data, ((self, lambda g: -g),))

    def __sub__(self, other) -> "Tensor":
        return self + (-as_tensor(other))

    def __rsub__(self, other) -> "Tensor":
        return as_tensor(other) + (-self)

    def __mul__(self, other) -> "Tensor":
        other = as_tensor(other)
        return Tensor(
            self.data * other.data,
            (
                (self, lambda g: _unbroadcast(g * other.data, self.shape)),
                (other, lambda g: _unbroadcast(g * self.data, other.shape)),
            ),
        )

    __rmul__ = __mul__

    def __matmul__(self, other) -> "Tensor":
        other = as_tensor(other)
        return Tensor(
            self.data @ other.data,
            (
                (self, lambda g: g @ other.data.T),
                (other, lambda g: self.data.T @ g),
            ),
        )

    def square(self) -> "Tensor":
        return Tensor(self.data**2, ((self, lambda g: 2.0 * self.data * g),))

    #####################################
    # Elementwise nonlinearities
    #####################################

    def relu(self) -> "Tensor":
        mask = self.data > 0
        return Tensor(np.where(mask, self.data, 0.0), ((self, lambda g: g * mask),))

    def abs(self) -> "Tensor":
        sign = np.sign(self.data)
        return Tensor(np.abs(self.data), ((self, lambda g: g * sign),))

    def tanh(self) -> "Tensor":
        out = np.tanh(self.data)
        return Tensor(out, ((self, lambda g: g * (1.0 - out**2)),))

    def sigmoid(self) -> "Tensor":
        out = 0.5 * (1.0 + np.tanh(0.5 * self.data))
        return Tensor(out, ((self, lambda g: g * out * (1.0 - out)),))

    #####################################
    # Reductions and reshaping
    #####################################

    def sum(self) -> "Tensor":
        return Tensor(self.data.sum(), ((self, lambda g: np.broadcast_to(g, self.shape).copy()),))

    def mean(self) -> "Tensor":
        count = self.data.size
        return Tensor(
            self.data.mean(),
            ((self, lambda g: np.broadcast_to(g / count, self.shape).copy()),),
        )

    def columns(self, start: int, stop: int) -> "Tensor":
        """Columns start:stop of a 2-D tensor."""

        def grad_fn(g: np.ndarray) -> np.ndarray:
            full = np.zeros(self.shape)
            full[:, start:stop] = g
            return full

        return Tensor(self.data[:, start:stop], ((self, grad_fn),))

    #####################################
    # Reverse pass
    #####################################

    def backward(self, grad: np.ndarray | float | None = None) -> None:
        """Accumulate d(self)/d(node) into every node that requires a gradient."""
        order = _topological_order(self)
        grads: dict[int, np.ndarray] = {
            id(self): np.ones(self.shape) if grad is None else np.broadcast_to(grad, self.shape).astype(np.float64)
        }
        for node in reversed(order):
            node_grad = grads.pop(id(node), None)
            if node_grad is None:
                continue
            if not node._parents:
                node.grad = node_grad if node.grad is None else node.grad + node_grad
                continue
            for parent, grad_fn in node._parents:
                contribution = grad_fn(node_grad)
                key = id(parent)
                grads[key] = contribution if key not in grads else grads[key] + contribution


def _topological_order(root: Tensor) -> list[Tensor]:
    order: list[Tensor] = []
    visited: set[int] = set()
    stack: list[tuple[Tensor, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent, _ in node._parents:
            if id(parent) not in visited:
                stack.append((parent, False))
    return order


def as_tensor(value) -> Tensor:
    return value if isinstance(value, Tensor) else Tensor(value)


def parameter(data, name: str = "") -> Tensor:
    """A leaf that collects gradients."""
    return Tensor(np.array(data, dtype=np.float64), requires_grad=True, name=name)


def concat(tensors: Iterable[Tensor]) -> Tensor:
    """Concatenate 2-D tensors along the feature axis."""
    tensors = [as_tensor(t) for t in tensors]
    widths = [t.shape[1] for t in tensors]
    bounds = np.cumsum([0] + widths)
    parents = []
    for tensor, start, stop in zip(tensors, bounds[:-1], bounds[1:]):
        parents.append((tensor, lambda g, a=int(start), b=int(stop): g[:, a:b]))
    return Tensor(np.concatenate([t.data for t in tensors], axis=1), parents)
