"""Scalar losses with their input gradients."""

import numpy as np

from ..errors import DomainError, ShapeError


def mse_loss(pred, target):
    """Mean squared error and its gradient 2*(pred - target)/N."""
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise ShapeError(f"shape mismatch: pred {pred.shape} vs target {target.shape}")
    diff = pred - target
    n = diff.size
    loss = float(np.sum(diff * diff) / n)
    return loss, 2.0 * diff / n


def softmax_cross_entropy(logits, labels):
    """Mean NLL of integer labels under softmax(logits), plus the logit gradient.

    Uses max-subtraction for stability; gradient is (softmax - onehot)/batch.
    """
    logits = np.asarray(logits, dtype=np.float64)
    labels = np.asarray(labels)
    if logits.ndim != 2:
        raise ShapeError(f"logits must be (batch, classes), got shape {logits.shape}")
    batch, n_classes = logits.shape
    if labels.shape != (batch,):
        raise ShapeError(f"labels must be ({batch},), got shape {labels.shape}")
    if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
        raise DomainError(f"labels must lie in [0, {n_classes}), got range "
                          f"[{labels.min()}, {labels.max()}]")
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_z = np.log(np.sum(np.exp(shifted), axis=1, keepdims=True))
    log_probs = shifted - log_z
    loss = float(-np.mean(log_probs[np.arange(batch), labels]))
    grad = np.exp(log_probs)
    grad[np.arange(batch), labels] -= 1.0
    return loss, grad / batch
