"""Feed-forward network with one registry activation between layers.

Hidden layers are affine maps followed by the configured activation; the
output layer is affine only.  When the activation is KDAC, every hidden
layer owns a per-feature (beta1, beta2) pair sized to its width.
"""

from dataclasses import dataclass, field

import numpy as np

from ..activations import (
    ActivationKind,
    eval_activation_derivative_array,
    eval_activation_array,
)
from ..errors import ConfigurationError, ShapeError, TrainingDiverged
from ..kdac import BETA_FLOOR, KdacParams, kdac_backward_tensor, kdac_forward_tensor


@dataclass
class MlpModel:
    layer_dims: tuple
    activation: ActivationKind
    weights: list = field(default_factory=list)  # (fan_in, fan_out) per layer
    biases: list = field(default_factory=list)  # (fan_out,) per layer
    kdac_layers: list = field(default_factory=list)  # KdacParams per hidden layer, or empty

    @property
    def n_layers(self):
        return len(self.weights)

    def trainable(self) -> dict:
        """Name -> array views of every trainable parameter (shared, not copied)."""
        params = {}
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            params[f"w{i}"] = w
            params[f"b{i}"] = b
        for i, kp in enumerate(self.kdac_layers):
            params[f"beta1_{i}"] = kp.beta1
            params[f"beta2_{i}"] = kp.beta2
        return params

    def lower_bounds(self) -> dict:
        """Per-parameter lower clamps applied after optimizer steps."""
        return {
            name: BETA_FLOOR for name in self.trainable() if name.startswith("beta")
        }


def init_mlp(layer_dims, activation: ActivationKind, seed: int) -> MlpModel:
    """Glorot-uniform weights, zero biases, from one seeded generator."""
    dims = tuple(int(d) for d in layer_dims)
    if len(dims) < 2 or any(d < 1 for d in dims):
        raise ConfigurationError(f"layer_dims needs >= 2 positive entries, got {dims}")
    rng = np.random.default_rng(seed)
    model = MlpModel(layer_dims=dims, activation=activation)
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        model.weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        model.biases.append(np.zeros(fan_out))
    if activation.tag == "kdac":
        p = activation.params
        for width in dims[1:-1]:
            model.kdac_layers.append(
                KdacParams.uniform(width, p["beta1"], p["beta2"], p["mu"])
            )
    return model


def _check_input(model, x):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != model.layer_dims[0]:
        raise ShapeError(
            f"input must be (batch, {model.layer_dims[0]}), got shape {x.shape}"
        )
    return x


def _forward_cached(model, x):
    # caches (layer input, pre-activation) per hidden layer for backward
    a = x
    cache = []
    last = model.n_layers - 1
    for i in range(last):
        z = a @ model.weights[i] + model.biases[i]
        cache.append((a, z))
        if model.activation.tag == "kdac":
            a = kdac_forward_tensor(z, model.kdac_layers[i])
        else:
            a = eval_activation_array(model.activation, z)
    out = a @ model.weights[last] + model.biases[last]
    return out, a, cache


def mlp_forward(model: MlpModel, x) -> np.ndarray:
    """Network output for a (batch, features) input."""
    x = _check_input(model, x)
    out, _, _ = _forward_cached(model, x)
    return out


def mlp_backward(model: MlpModel, x, upstream) -> dict:
    """Gradients of sum(upstream * output) for every trainable parameter.

    Returns a dict keyed like ``model.trainable()``.
    """
    x = _check_input(model, x)
    upstream = np.asarray(upstream, dtype=np.float64)
    out_dim = model.layer_dims[-1]
    if upstream.shape != (x.shape[0], out_dim):
        raise ShapeError(
            f"upstream must be (batch, {out_dim}), got shape {upstream.shape}"
        )
    _, a_last, cache = _forward_cached(model, x)

    grads = {}
    last = model.n_layers - 1
    delta = upstream
    grads[f"w{last}"] = a_last.T @ delta
    grads[f"b{last}"] = delta.sum(axis=0)
    delta = delta @ model.weights[last].T
    for i in range(last - 1, -1, -1):
        a_in, z = cache[i]
        if model.activation.tag == "kdac":
            delta, db1, db2 = kdac_backward_tensor(z, delta, model.kdac_layers[i])
            grads[f"beta1_{i}"] = db1
            grads[f"beta2_{i}"] = db2
        else:
            delta = delta * eval_activation_derivative_array(model.activation, z)
        grads[f"w{i}"] = a_in.T @ delta
        grads[f"b{i}"] = delta.sum(axis=0)
        delta = delta @ model.weights[i].T

    for name, g in grads.items():
        if not np.all(np.isfinite(g)):
            raise TrainingDiverged(f"non-finite gradient in {name}")
    return grads
