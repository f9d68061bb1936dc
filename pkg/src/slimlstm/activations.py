"""The five activation functions and their backward passes.

Derivatives are taken in output form (tanh' = 1 - y^2, sigmoid' = y(1 - y)),
so the backward pass needs only the stored activation output.  ReLU's
derivative at exactly 0 is defined as 0; the output y carries the sign of the
pre-activation (y > 0 iff the pre-activation was > 0), so output form covers
it too.

Softmax normalizes across the whole vector it is applied to.  When softmax is
configured as a cell or gate activation, that vector is the hidden-dimension
gate/candidate vector; the normalization axis is the hidden dimension.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError

TANH = "tanh"
SIGMOID = "sigmoid"
LINEAR = "linear"
RELU = "relu"
SOFTMAX = "softmax"

ACTIVATION_KINDS = (TANH, SIGMOID, LINEAR, RELU, SOFTMAX)


def parse_activation(name: str) -> str:
    """Validate a config spelling (lowercase, exact)."""
    if name not in ACTIVATION_KINDS:
        raise ConfigError(
            f"unknown activation {name!r}; expected one of {', '.join(ACTIVATION_KINDS)}"
        )
    return name


def apply(kind: str, v: np.ndarray) -> np.ndarray:
    """Activation output for a vector (softmax sums to 1 over the vector)."""
    if kind == SIGMOID:
        with np.errstate(over="ignore"):
            return 1.0 / (1.0 + np.exp(-v))
    if kind == TANH:
        return np.tanh(v)
    if kind == LINEAR:
        return np.array(v, dtype=np.float64, copy=True)
    if kind == RELU:
        return np.maximum(v, 0.0)
    if kind == SOFTMAX:
        shifted = v - np.max(v)
        e = np.exp(shifted)
        return e / np.sum(e)
    raise ConfigError(f"unknown activation {kind!r}")


def backprop(kind: str, y: np.ndarray, upstream: np.ndarray) -> np.ndarray:
    """Jacobian-transpose product given the stored output y of apply()."""
    if kind == SIGMOID:
        return y * (1.0 - y) * upstream
    if kind == TANH:
        return (1.0 - y * y) * upstream
    if kind == LINEAR:
        return np.array(upstream, dtype=np.float64, copy=True)
    if kind == RELU:
        return np.where(y > 0.0, upstream, 0.0)
    if kind == SOFTMAX:
        return y * (upstream - np.dot(y, upstream))
    raise ConfigError(f"unknown activation {kind!r}")
