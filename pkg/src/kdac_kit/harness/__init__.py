"""Minimal dense-tensor training stack for activation comparisons.

Tensors are float64 numpy arrays in C (row-major) order throughout.
"""

from .losses import mse_loss, softmax_cross_entropy
from .metrics import TagSequence, extract_spans, render_spans, span_prf, span_prf_corpus
from .model import MlpModel, init_mlp, mlp_backward, mlp_forward
from .optim import AdamState, adam_step, init_adam
from .tasks import (
    RegressionData,
    TaggingData,
    gen_regression_task,
    gen_toy_tagging_task,
    majority_label_baseline,
    make_tagging_data,
    token_frequency_baseline,
)
from .train import EpochRecord, TrainConfig, train

__all__ = [
    "AdamState",
    "EpochRecord",
    "MlpModel",
    "RegressionData",
    "TagSequence",
    "TaggingData",
    "TrainConfig",
    "adam_step",
    "extract_spans",
    "gen_regression_task",
    "gen_toy_tagging_task",
    "init_adam",
    "init_mlp",
    "majority_label_baseline",
    "make_tagging_data",
    "mlp_backward",
    "mlp_forward",
    "mse_loss",
    "render_spans",
    "softmax_cross_entropy",
    "span_prf",
    "span_prf_corpus",
    "token_frequency_baseline",
    "train",
]
