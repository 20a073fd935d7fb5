"""
Feed-forward ReLU networks with exact rational weights.

A network is a sequence of dense affine layers, each followed by either a
ReLU or the identity. Neurons may carry an annotation: the 1-based index
tuple whose max the neuron contributes to.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Tuple

from estimators.exact import ExactVector, to_exact

from .exceptions import NetworkShapeError

RELU = "relu"
IDENTITY = "identity"
ACTIVATIONS = (RELU, IDENTITY)

Annotation = Tuple[int, ...]


@dataclass(frozen=True)
class DenseLayer:
    weights: Tuple[ExactVector, ...]
    bias: ExactVector
    activation: str = RELU
    annotations: Optional[Tuple[Annotation, ...]] = None
    units_per_value: int = 1

    def __post_init__(self):
        if self.activation not in ACTIVATIONS:
            raise NetworkShapeError(f"Unknown activation {self.activation!r}.")
        if len(self.weights) != len(self.bias):
            raise NetworkShapeError(
                f"Layer has {len(self.weights)} weight rows but {len(self.bias)} biases."
            )
        widths = {len(row) for row in self.weights}
        if len(widths) > 1:
            raise NetworkShapeError(f"Ragged weight matrix with row lengths {sorted(widths)}.")
        if self.annotations is not None and len(self.annotations) != len(self.bias):
            raise NetworkShapeError("One annotation per neuron is required.")
        if self.units_per_value < 1 or len(self.bias) % self.units_per_value:
            raise NetworkShapeError(
                f"{len(self.bias)} units cannot be grouped {self.units_per_value} per value."
            )

    @classmethod
    def build(cls, weights, bias, activation=RELU, annotations=None, units_per_value=1) -> "DenseLayer":
        return cls(
            weights=tuple(tuple(to_exact(w) for w in row) for row in weights),
            bias=tuple(to_exact(b) for b in bias),
            activation=activation,
            annotations=tuple(tuple(a) for a in annotations) if annotations is not None else None,
            units_per_value=units_per_value,
        )

    @property
    def input_dim(self) -> int:
        return len(self.weights[0]) if self.weights else 0

    @property
    def output_dim(self) -> int:
        return len(self.bias)

    @property
    def value_width(self) -> int:
        return self.output_dim // self.units_per_value

    @cached_property
    def _sparse(self):
        return tuple(
            tuple((j, w) for j, w in enumerate(row) if w != 0) for row in self.weights
        )

    def apply(self, values: Sequence[Fraction]) -> ExactVector:
        out = []
        for row, b in zip(self._sparse, self.bias):
            z = b + sum((w * values[j] for j, w in row), Fraction(0))
            if self.activation == RELU and z < 0:
                z = Fraction(0)
            out.append(z)
        return tuple(out)


@dataclass(frozen=True)
class ReluNetwork:
    input_dim: int
    output_dim: int
    layers: Tuple[DenseLayer, ...]

    def __post_init__(self):
        if not self.layers:
            raise NetworkShapeError("A network needs at least one layer.")
        expected = self.input_dim
        for index, layer in enumerate(self.layers, start=1):
            if layer.input_dim != expected:
                raise NetworkShapeError(
                    f"Layer {index} expects {layer.input_dim} inputs but receives {expected}."
                )
            expected = layer.output_dim
        if expected != self.output_dim:
            raise NetworkShapeError(f"Network ends with {expected} outputs, declared {self.output_dim}.")

    @property
    def relu_stages(self) -> int:
        return sum(1 for layer in self.layers if layer.activation == RELU)

    @property
    def relu_widths(self) -> Tuple[int, ...]:
        return tuple(layer.output_dim for layer in self.layers if layer.activation == RELU)

    @property
    def value_widths(self) -> Tuple[int, ...]:
        return tuple(layer.value_width for layer in self.layers if layer.activation == RELU)


def forward(net: ReluNetwork, x: Sequence) -> ExactVector:
    """Exact alternating affine/activation evaluation."""
    if len(x) != net.input_dim:
        raise NetworkShapeError(f"Input has length {len(x)}, network expects {net.input_dim}.")
    values = tuple(to_exact(v) for v in x)
    for layer in net.layers:
        values = layer.apply(values)
    return values
