"""Adam with bias correction, updating parameter arrays in place."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import ShapeError


@dataclass
class AdamState:
    m: dict = field(default_factory=dict)  # first-moment estimates
    v: dict = field(default_factory=dict)  # second-moment estimates
    step: int = 0


def init_adam(params: dict) -> AdamState:
    state = AdamState()
    for name, value in params.items():
        state.m[name] = np.zeros_like(value)
        state.v[name] = np.zeros_like(value)
    return state


def adam_step(params: dict, grads: dict, state: AdamState, config, min_bounds=None):
    """One optimizer step; ``config`` carries the TrainConfig hyperparameters.

    Parameters listed in ``min_bounds`` (name -> floor) are clamped after
    the update; the KDAC betas use this to stay positive.
    """
    b1 = config.adam_beta1
    b2 = config.adam_beta2
    eps = config.adam_eps
    state.step += 1
    bc1 = 1.0 - b1 ** state.step
    bc2 = 1.0 - b2 ** state.step
    for name, p in params.items():
        g = grads[name]
        if g.shape != p.shape:
            raise ShapeError(f"gradient shape {g.shape} != parameter shape {p.shape} for {name}")
        m = state.m[name]
        v = state.v[name]
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * (g * g)
        p -= config.learning_rate * (m / bc1) / (np.sqrt(v / bc2) + eps)
        if min_bounds and name in min_bounds:
            np.maximum(p, min_bounds[name], out=p)
