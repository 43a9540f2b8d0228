"""KDAC activation function and desk-scale verification harness."""

__version__ = "0.1.0"

from .activations import (
    ActivationKind,
    eval_activation,
    eval_activation_derivative,
    list_registry,
    make_kind,
    parse_activation_spec,
)
from .errors import ConfigurationError, DomainError, ShapeError, TrainingDiverged
from .kdac import (
    KdacGradients,
    KdacParams,
    asymptotic_slopes,
    find_breakpoints,
    kdac_backward,
    kdac_backward_tensor,
    kdac_forward_tensor,
    kdac_scalar,
    sample_curve,
)
from .smoothing import (
    SmoothBlend,
    blend_partials,
    smooth_max,
    smooth_min,
    switching_factor_max,
    switching_factor_min,
)

__all__ = [
    "ActivationKind",
    "ConfigurationError",
    "DomainError",
    "KdacGradients",
    "KdacParams",
    "ShapeError",
    "SmoothBlend",
    "TrainingDiverged",
    "asymptotic_slopes",
    "blend_partials",
    "eval_activation",
    "eval_activation_derivative",
    "find_breakpoints",
    "kdac_backward",
    "kdac_backward_tensor",
    "kdac_forward_tensor",
    "kdac_scalar",
    "list_registry",
    "make_kind",
    "parse_activation_spec",
    "sample_curve",
    "smooth_max",
    "smooth_min",
    "switching_factor_max",
    "switching_factor_min",
]
