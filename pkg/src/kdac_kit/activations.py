"""The nine scalar activations behind one registry.

Each activation has a scalar value/derivative pair (``eval_activation``,
``eval_activation_derivative``) and a vectorized counterpart used by the
training harness.  Kinds are identified by lowercase tag strings; the
tags double as the config/CLI names.

Breakpoint conventions (piecewise kinds): the derivative returned at a
breakpoint is the right-limit value.  ``activation_breakpoints`` lists
the affected abscissas so finite-difference checks can flag or exclude
samples landing there.
"""

import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from . import kdac
from .errors import ConfigurationError, DomainError

REGISTRY_ORDER = (
    "tanh",
    "sigmoid",
    "relu",
    "leaky_relu",
    "selu",
    "swish",
    "lisa",
    "rsigelud",
    "kdac",
)

DISPLAY_NAMES = {
    "tanh": "Tanh",
    "sigmoid": "Sigmoid",
    "relu": "ReLU",
    "leaky_relu": "Leaky ReLU",
    "selu": "SELU",
    "swish": "Swish",
    "lisa": "LiSA",
    "rsigelud": "RSigELUD",
    "kdac": "KDAC",
}

# canonical hyperparameter order per tag (also the echo order in configs)
_PARAM_NAMES = {
    "tanh": (),
    "sigmoid": (),
    "relu": (),
    "leaky_relu": ("alpha",),
    # self-normalizing constants; the slope/scale pair from the SELU literature
    "selu": ("lambda", "alpha"),
    "swish": (),
    "lisa": ("alpha1", "alpha2"),
    "rsigelud": ("alpha", "beta"),
    "kdac": ("beta1", "beta2", "mu"),
}

_DEFAULT_PARAMS = {
    "tanh": {},
    "sigmoid": {},
    "relu": {},
    "leaky_relu": {"alpha": 0.01},
    "selu": {"lambda": 1.0507009873554805, "alpha": 1.6732632423543772},
    "swish": {},
    "lisa": {"alpha1": 0.25, "alpha2": 0.15},
    "rsigelud": {"alpha": 0.05, "beta": 0.2},
    "kdac": {"beta1": 1.2, "beta2": 0.8, "mu": 0.01},
}

# abscissas where the right-limit derivative convention applies
_BREAKPOINTS = {
    "relu": (0.0,),
    "leaky_relu": (0.0,),
    "selu": (0.0,),
    "lisa": (0.0, 1.0),
    "rsigelud": (0.0, 1.0),
}


@dataclass(frozen=True)
class ActivationKind:
    """One activation tag plus its hyperparameters."""

    tag: str
    params: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        if self.tag not in _PARAM_NAMES:
            raise ConfigurationError(
                f"unknown activation tag {self.tag!r}; known: {', '.join(REGISTRY_ORDER)}"
            )
        params = dict(self.params)
        for name in _PARAM_NAMES[self.tag]:
            if name not in params:
                raise ConfigurationError(f"{self.tag} requires hyperparameter {name!r}")
            value = params[name]
            if not math.isfinite(value):
                raise ConfigurationError(f"{self.tag} hyperparameter {name!r} is not finite")
        for name in params:
            if name not in _PARAM_NAMES[self.tag]:
                raise ConfigurationError(f"{self.tag} has no hyperparameter {name!r}")
        if self.tag == "kdac":
            for name in ("beta1", "beta2", "mu"):
                if not params[name] > 0.0:
                    raise ConfigurationError(f"kdac requires {name} > 0, got {params[name]}")
        object.__setattr__(self, "params", MappingProxyType(params))

    def __eq__(self, other):
        if not isinstance(other, ActivationKind):
            return NotImplemented
        return self.tag == other.tag and dict(self.params) == dict(other.params)

    def __hash__(self):
        return hash((self.tag, tuple(sorted(self.params.items()))))


def make_kind(tag: str, **overrides) -> ActivationKind:
    """Build a kind with registry defaults, overridden by keyword params."""
    if tag not in _DEFAULT_PARAMS:
        raise ConfigurationError(
            f"unknown activation tag {tag!r}; known: {', '.join(REGISTRY_ORDER)}"
        )
    params = dict(_DEFAULT_PARAMS[tag])
    for name, value in overrides.items():
        if name not in _PARAM_NAMES[tag]:
            raise ConfigurationError(f"{tag} has no hyperparameter {name!r}")
        params[name] = float(value)
    return ActivationKind(tag, MappingProxyType(params))


def list_registry() -> list[ActivationKind]:
    """All nine activations with their default hyperparameters."""
    return [make_kind(tag) for tag in REGISTRY_ORDER]


def activation_breakpoints(kind: ActivationKind) -> tuple[float, ...]:
    """Fixed abscissas where the derivative uses the right-limit convention.

    KDAC's blend-band edges depend on its parameters and are not listed
    here; gradient checks detect them from the blend regime flags instead.
    """
    return _BREAKPOINTS.get(kind.tag, ())


def _sigmoid(x):
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def _val_tanh(x, p):
    return math.tanh(x)


def _der_tanh(x, p):
    t = math.tanh(x)
    return 1.0 - t * t


def _val_sigmoid(x, p):
    return _sigmoid(x)


def _der_sigmoid(x, p):
    s = _sigmoid(x)
    return s * (1.0 - s)


def _val_relu(x, p):
    return x if x > 0.0 else 0.0


def _der_relu(x, p):
    return 1.0 if x >= 0.0 else 0.0


def _val_leaky_relu(x, p):
    return x if x > 0.0 else p["alpha"] * x


def _der_leaky_relu(x, p):
    return 1.0 if x >= 0.0 else p["alpha"]


def _val_selu(x, p):
    if x > 0.0:
        return p["lambda"] * x
    return p["lambda"] * p["alpha"] * (math.exp(x) - 1.0)


def _der_selu(x, p):
    if x >= 0.0:
        return p["lambda"]
    return p["lambda"] * p["alpha"] * math.exp(x)


def _val_swish(x, p):
    return x * _sigmoid(x)


def _der_swish(x, p):
    s = _sigmoid(x)
    return s + x * s * (1.0 - s)


def _val_lisa(x, p):
    # both one-sided limits agree at 0 and 1; assign the middle branch there
    if x > 1.0:
        return p["alpha1"] * x - p["alpha1"] + 1.0
    if x >= 0.0:
        return x
    return p["alpha2"] * x


def _der_lisa(x, p):
    if x >= 1.0:
        return p["alpha1"]
    if x >= 0.0:
        return 1.0
    return p["alpha2"]


def _val_rsigelud(x, p):
    # closed-right intervals; the jump at x = 1 is inherent to the definition
    if x >= 1.0:
        return p["alpha"] * x * _sigmoid(x) + x
    if x >= 0.0:
        return x
    return p["beta"] * (math.exp(x) - 1.0)


def _der_rsigelud(x, p):
    if x >= 1.0:
        s = _sigmoid(x)
        return p["alpha"] * (s + x * s * (1.0 - s)) + 1.0
    if x >= 0.0:
        return 1.0
    return p["beta"] * math.exp(x)


def _val_kdac(x, p):
    return kdac.kdac_scalar(x, p["beta1"], p["beta2"], p["mu"])


def _der_kdac(x, p):
    return kdac.kdac_backward(x, p["beta1"], p["beta2"], p["mu"]).d_x


_VALUES = {
    "tanh": _val_tanh,
    "sigmoid": _val_sigmoid,
    "relu": _val_relu,
    "leaky_relu": _val_leaky_relu,
    "selu": _val_selu,
    "swish": _val_swish,
    "lisa": _val_lisa,
    "rsigelud": _val_rsigelud,
    "kdac": _val_kdac,
}

_DERIVATIVES = {
    "tanh": _der_tanh,
    "sigmoid": _der_sigmoid,
    "relu": _der_relu,
    "leaky_relu": _der_leaky_relu,
    "selu": _der_selu,
    "swish": _der_swish,
    "lisa": _der_lisa,
    "rsigelud": _der_rsigelud,
    "kdac": _der_kdac,
}


def eval_activation(kind: ActivationKind, x: float) -> float:
    """Value of the activation at a scalar point."""
    if not math.isfinite(x):
        raise DomainError(f"activation input must be finite, got {x}")
    return _VALUES[kind.tag](x, kind.params)


def eval_activation_derivative(kind: ActivationKind, x: float) -> float:
    """First derivative at a scalar point (right-limit at breakpoints)."""
    if not math.isfinite(x):
        raise DomainError(f"activation input must be finite, got {x}")
    return _DERIVATIVES[kind.tag](x, kind.params)


def scalar_callable(kind: ActivationKind):
    """Bind the kind's parameters into a bare ``f(x) -> y`` closure.

    Skips per-call input validation; meant for timing loops and other
    hot paths that guarantee finite inputs themselves.
    """
    fn = _VALUES[kind.tag]
    params = kind.params
    return lambda x: fn(x, params)


# -- vectorized paths (float64 ndarrays), used by the training harness ------


def _sigmoid_array(x):
    e = np.exp(-np.abs(x))
    return np.where(x >= 0.0, 1.0 / (1.0 + e), e / (1.0 + e))


def eval_activation_array(kind: ActivationKind, x: np.ndarray) -> np.ndarray:
    """Elementwise activation value on a float64 array."""
    p = kind.params
    tag = kind.tag
    if tag == "tanh":
        return np.tanh(x)
    if tag == "sigmoid":
        return _sigmoid_array(x)
    if tag == "relu":
        return np.where(x > 0.0, x, 0.0)
    if tag == "leaky_relu":
        return np.where(x > 0.0, x, p["alpha"] * x)
    if tag == "selu":
        neg = p["lambda"] * p["alpha"] * (np.exp(np.minimum(x, 0.0)) - 1.0)
        return np.where(x > 0.0, p["lambda"] * x, neg)
    if tag == "swish":
        return x * _sigmoid_array(x)
    if tag == "lisa":
        return np.where(x > 1.0, p["alpha1"] * x - p["alpha1"] + 1.0,
                        np.where(x >= 0.0, x, p["alpha2"] * x))
    if tag == "rsigelud":
        top = p["alpha"] * x * _sigmoid_array(x) + x
        neg = p["beta"] * (np.exp(np.minimum(x, 0.0)) - 1.0)
        return np.where(x >= 1.0, top, np.where(x >= 0.0, x, neg))
    if tag == "kdac":
        y, _ = kdac.kdac_curve(x, p["beta1"], p["beta2"], p["mu"])
        return y
    raise ConfigurationError(f"unknown activation tag {tag!r}")


def eval_activation_derivative_array(kind: ActivationKind, x: np.ndarray) -> np.ndarray:
    """Elementwise first derivative on a float64 array."""
    p = kind.params
    tag = kind.tag
    if tag == "tanh":
        t = np.tanh(x)
        return 1.0 - t * t
    if tag == "sigmoid":
        s = _sigmoid_array(x)
        return s * (1.0 - s)
    if tag == "relu":
        return np.where(x >= 0.0, 1.0, 0.0)
    if tag == "leaky_relu":
        return np.where(x >= 0.0, 1.0, p["alpha"])
    if tag == "selu":
        neg = p["lambda"] * p["alpha"] * np.exp(np.minimum(x, 0.0))
        return np.where(x >= 0.0, p["lambda"], neg)
    if tag == "swish":
        s = _sigmoid_array(x)
        return s + x * s * (1.0 - s)
    if tag == "lisa":
        return np.where(x >= 1.0, p["alpha1"], np.where(x >= 0.0, 1.0, p["alpha2"]))
    if tag == "rsigelud":
        s = _sigmoid_array(x)
        top = p["alpha"] * (s + x * s * (1.0 - s)) + 1.0
        neg = p["beta"] * np.exp(np.minimum(x, 0.0))
        return np.where(x >= 1.0, top, np.where(x >= 0.0, 1.0, neg))
    if tag == "kdac":
        _, dy = kdac.kdac_curve(x, p["beta1"], p["beta2"], p["mu"])
        return dy
    raise ConfigurationError(f"unknown activation tag {tag!r}")


# -- config/CLI spec strings: tag[:name=value,...] ---------------------------


def parse_activation_spec(spec: str) -> ActivationKind:
    """Parse ``tag`` or ``tag:name=value,...`` into an ActivationKind."""
    spec = spec.strip()
    if not spec:
        raise ConfigurationError("empty activation spec")
    tag, _, rest = spec.partition(":")
    tag = tag.strip()
    overrides = {}
    if rest:
        for pair in rest.split(","):
            pair = pair.strip()
            if not pair:
                continue
            name, eq, value = pair.partition("=")
            if not eq:
                raise ConfigurationError(
                    f"malformed hyperparameter {pair!r} in activation spec {spec!r}"
                )
            try:
                overrides[name.strip()] = float(value)
            except ValueError:
                raise ConfigurationError(
                    f"hyperparameter {name.strip()!r} has non-numeric value {value!r}"
                ) from None
    return make_kind(tag, **overrides)


def format_activation_spec(kind: ActivationKind) -> str:
    """Canonical spec string; inverse of parse_activation_spec."""
    names = _PARAM_NAMES[kind.tag]
    if not names:
        return kind.tag
    pairs = ",".join(f"{n}={format(kind.params[n], '.17g')}" for n in names)
    return f"{kind.tag}:{pairs}"
