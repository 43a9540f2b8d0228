"""Minibatch training loop: deterministic given the config seed."""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError, TrainingDiverged
from .losses import mse_loss, softmax_cross_entropy
from .metrics import span_prf_corpus
from .model import mlp_backward, mlp_forward
from .optim import adam_step, init_adam
from .tasks import RegressionData, TaggingData, labels_to_sequences


@dataclass(frozen=True)
class TrainConfig:
    seed: int = 0
    learning_rate: float = 1e-3
    epochs: int = 20
    batch_size: int = 32
    optimizer: str = "adam"
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8

    def __post_init__(self):
        # learning_rate 0 is allowed as a no-op ablation
        if not (math.isfinite(self.learning_rate) and self.learning_rate >= 0.0):
            raise ConfigurationError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if self.epochs < 1:
            raise ConfigurationError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ConfigurationError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.optimizer != "adam":
            raise ConfigurationError(f"unknown optimizer {self.optimizer!r}")


@dataclass(frozen=True)
class EpochRecord:
    epoch: int  # 0 is the pre-training state
    loss: float
    metric: float


def _regression_io(data):
    return data.inputs, data.targets.reshape(-1, 1)


def _evaluate(model, data):
    """Full-dataset (loss, metric) without touching parameters."""
    if isinstance(data, RegressionData):
        inputs, targets = _regression_io(data)
        loss, _ = mse_loss(mlp_forward(model, inputs), targets)
        return loss, loss
    logits = mlp_forward(model, data.inputs)
    loss, _ = softmax_cross_entropy(logits, data.label_ids)
    pred = labels_to_sequences(data, np.argmax(logits, axis=1))
    _, _, f1 = span_prf_corpus(data.sequences, pred)
    return loss, f1


def evaluate(model, data):
    """Public view of the per-epoch evaluation used in histories."""
    return _evaluate(model, data)


def train(model, data, config: TrainConfig) -> list:
    """Train in place; returns per-epoch records, index 0 = before training.

    Raises TrainingDiverged (with the epoch index) if the loss or any
    gradient goes non-finite.
    """
    if isinstance(data, RegressionData):
        inputs, targets = _regression_io(data)
        def batch_loss_grad(idx):
            pred = mlp_forward(model, inputs[idx])
            return mse_loss(pred, targets[idx])
        batch_inputs = lambda idx: inputs[idx]
    elif isinstance(data, TaggingData):
        inputs = data.inputs
        def batch_loss_grad(idx):
            logits = mlp_forward(model, inputs[idx])
            return softmax_cross_entropy(logits, data.label_ids[idx])
        batch_inputs = lambda idx: inputs[idx]
    else:
        raise ConfigurationError(f"unsupported dataset type {type(data).__name__}")

    n = inputs.shape[0]
    rng = np.random.default_rng(config.seed)
    params = model.trainable()
    state = init_adam(params)
    bounds = model.lower_bounds()

    loss, metric = _evaluate(model, data)
    history = [EpochRecord(0, loss, metric)]
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            idx = order[start:start + config.batch_size]
            loss, grad = batch_loss_grad(idx)
            if not math.isfinite(loss):
                raise TrainingDiverged(f"non-finite loss at epoch {epoch}", epoch=epoch)
            try:
                grads = mlp_backward(model, batch_inputs(idx), grad)
            except TrainingDiverged as exc:
                raise TrainingDiverged(str(exc), epoch=epoch) from None
            adam_step(params, grads, state, config, min_bounds=bounds)
        loss, metric = _evaluate(model, data)
        if not (math.isfinite(loss) and math.isfinite(metric)):
            raise TrainingDiverged(f"non-finite evaluation at epoch {epoch}", epoch=epoch)
        history.append(EpochRecord(epoch, loss, metric))
    return history
