"""The KDAC activation: smoothed max(min(tanh x, b1*x), b2*x).

The inner blend smooths the crossing of tanh with the first linear map,
the outer blend smooths the crossing of that result with the second
linear map, both within a band of half-width ``mu``.  The slopes b1 and
b2 are trainable per feature; ``mu`` is a fixed constant (default 0.01).

Scalar operations compose the reference blends from ``smoothing``; the
tensor operations run an identical vectorized core, so scalar and tensor
results agree bit for bit.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import smoothing
from .errors import ConfigurationError, DomainError, ShapeError

DEFAULT_BETA1 = 1.2
DEFAULT_BETA2 = 0.8
DEFAULT_MU = 0.01

# lower clamp applied to the betas after optimizer steps
BETA_FLOOR = 1e-3


@dataclass(frozen=True)
class KdacGradients:
    """Partials of one scalar evaluation."""

    d_x: float
    d_beta1: float
    d_beta2: float


@dataclass
class KdacParams:
    """Per-feature trainable slopes plus the fixed smoothing band.

    ``beta1`` and ``beta2`` have one entry per feature (the last tensor
    axis) and broadcast over all leading axes.
    """

    beta1: np.ndarray
    beta2: np.ndarray
    mu: float = DEFAULT_MU

    def __post_init__(self):
        self.beta1 = np.asarray(self.beta1, dtype=np.float64)
        self.beta2 = np.asarray(self.beta2, dtype=np.float64)
        if self.beta1.ndim != 1 or self.beta2.ndim != 1:
            raise ConfigurationError("beta vectors must be one-dimensional")
        if self.beta1.shape != self.beta2.shape:
            raise ConfigurationError(
                f"beta vectors must have equal length, got {self.beta1.shape[0]} and {self.beta2.shape[0]}"
            )
        if self.beta1.size == 0:
            raise ConfigurationError("beta vectors must be non-empty")
        for name, vec in (("beta1", self.beta1), ("beta2", self.beta2)):
            if not np.all(np.isfinite(vec) & (vec > 0.0)):
                raise ConfigurationError(f"every {name} entry must be finite and > 0")
        if not (math.isfinite(self.mu) and self.mu > 0.0):
            raise ConfigurationError(f"mu must be finite and > 0, got {self.mu}")

    @property
    def width(self) -> int:
        return self.beta1.shape[0]

    @classmethod
    def uniform(cls, width: int, beta1: float = DEFAULT_BETA1,
                beta2: float = DEFAULT_BETA2, mu: float = DEFAULT_MU) -> "KdacParams":
        return cls(np.full(width, beta1), np.full(width, beta2), mu)

    @classmethod
    def scalar(cls, beta1: float = DEFAULT_BETA1, beta2: float = DEFAULT_BETA2,
               mu: float = DEFAULT_MU) -> "KdacParams":
        return cls.uniform(1, beta1, beta2, mu)


class Breakpoints(NamedTuple):
    """Positive roots delimiting the branch regions (None when absent)."""

    k: Optional[float]
    t: Optional[float]


@dataclass(frozen=True)
class CurveSample:
    x: float
    y: float
    dy_dx: float


def _check_scalar_params(beta1, beta2, mu):
    if not (math.isfinite(beta1) and beta1 > 0.0):
        raise ConfigurationError(f"beta1 must be finite and > 0, got {beta1}")
    if not (math.isfinite(beta2) and beta2 > 0.0):
        raise ConfigurationError(f"beta2 must be finite and > 0, got {beta2}")
    if not (math.isfinite(mu) and mu > 0.0):
        raise ConfigurationError(f"mu must be finite and > 0, got {mu}")


def kdac_scalar(x: float, beta1: float, beta2: float, mu: float = DEFAULT_MU) -> float:
    """Forward value at one point: smooth_max(smooth_min(b1*x, tanh x), b2*x)."""
    _check_scalar_params(beta1, beta2, mu)
    if not math.isfinite(x):
        raise DomainError(f"input must be finite, got {x}")
    f2 = float(np.tanh(x))
    p_min = smoothing.smooth_min(beta1 * x, f2, mu)
    return smoothing.smooth_max(p_min, beta2 * x, mu)


def kdac_backward(x: float, beta1: float, beta2: float, mu: float = DEFAULT_MU) -> KdacGradients:
    """Closed-form partials with respect to x, beta1, beta2 at one point.

    Writing z and w for the clamped inner/outer switching factors, the
    blend weights give

        d_x     = (1-w) * ((1-z) * beta1 + z * sech^2 x) + w * beta2
        d_beta1 = (1-w) * (1-z) * x
        d_beta2 = w * x
    """
    _check_scalar_params(beta1, beta2, mu)
    if not math.isfinite(x):
        raise DomainError(f"input must be finite, got {x}")
    f1 = beta1 * x
    f2 = float(np.tanh(x))
    f3 = beta2 * x
    inner = smoothing.switching_factor_min(f1, f2, mu)
    p_min = smoothing.smooth_min(f1, f2, mu)
    outer = smoothing.switching_factor_max(p_min, f3, mu)
    w_f1, w_tanh = smoothing.blend_partials(inner)
    w_min, w_lin = smoothing.blend_partials(outer)
    sech2 = 1.0 - f2 * f2
    return KdacGradients(
        d_x=w_min * (w_f1 * beta1 + w_tanh * sech2) + w_lin * beta2,
        d_beta1=w_min * w_f1 * x,
        d_beta2=w_lin * x,
    )


def _core(x, beta1, beta2, mu):
    # vectorized mirror of the smoothing-module formulas (kept textually in
    # sync so scalar and tensor paths agree bit for bit)
    f1 = beta1 * x
    f2 = np.tanh(x)
    f3 = beta2 * x
    zeta = np.clip(0.5 + (f1 - f2) / (2.0 * mu), 0.0, 1.0)
    p_min = f1 * (1.0 - zeta) + zeta * f2 - mu * zeta * (1.0 - zeta)
    xi = np.clip(0.5 + (f3 - p_min) / (2.0 * mu), 0.0, 1.0)
    y = p_min * (1.0 - xi) + xi * f3 + mu * xi * (1.0 - xi)
    return y, zeta, xi, f2


def kdac_curve(x, beta1: float, beta2: float, mu: float = DEFAULT_MU):
    """Vectorized (value, derivative) at the given points for scalar betas."""
    _check_scalar_params(beta1, beta2, mu)
    x = np.asarray(x, dtype=np.float64)
    y, zeta, xi, f2 = _core(x, beta1, beta2, mu)
    dy = (1.0 - xi) * ((1.0 - zeta) * beta1 + zeta * (1.0 - f2 * f2)) + xi * beta2
    return y, dy


def _broadcast_betas(x, params):
    if x.ndim < 1 or x.shape[-1] != params.width:
        raise ShapeError(
            f"last input axis must have length {params.width}, got shape {x.shape}"
        )
    shape = (1,) * (x.ndim - 1) + (params.width,)
    return params.beta1.reshape(shape), params.beta2.reshape(shape)


def kdac_forward_tensor(x: np.ndarray, params: KdacParams) -> np.ndarray:
    """Elementwise forward with per-feature betas broadcast over leading axes."""
    x = np.asarray(x, dtype=np.float64)
    b1, b2 = _broadcast_betas(x, params)
    y, _, _, _ = _core(x, b1, b2, params.mu)
    return y


def kdac_backward_tensor(x: np.ndarray, upstream: np.ndarray, params: KdacParams):
    """Reverse-mode step: (dx, dbeta1, dbeta2) for an upstream cotangent.

    Beta gradients are summed over all broadcast (leading) axes, in fixed
    axis order, so results are independent of batching.
    """
    x = np.asarray(x, dtype=np.float64)
    upstream = np.asarray(upstream, dtype=np.float64)
    if upstream.shape != x.shape:
        raise ShapeError(
            f"upstream shape {upstream.shape} must match input shape {x.shape}"
        )
    b1, b2 = _broadcast_betas(x, params)
    _, zeta, xi, f2 = _core(x, b1, b2, params.mu)
    d_x = (1.0 - xi) * ((1.0 - zeta) * b1 + zeta * (1.0 - f2 * f2)) + xi * b2
    lead = tuple(range(x.ndim - 1))
    dbeta1 = np.sum(upstream * (1.0 - xi) * (1.0 - zeta) * x, axis=lead)
    dbeta2 = np.sum(upstream * xi * x, axis=lead)
    return upstream * d_x, dbeta1, dbeta2


def _tanh_line_root(slope: float) -> float:
    """Positive root of slope*x - tanh(x) for slope in (0, 1), by bisection."""
    lo = 1e-12  # slope*lo - tanh(lo) < 0 since slope < 1
    hi = 1.0 / slope + 1.0  # slope*hi = 1 + slope > tanh(hi)
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if slope * mid - math.tanh(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_breakpoints(beta1: float, beta2: float) -> Breakpoints:
    """Branch-boundary abscissas of the (mu -> 0) composition.

    k: positive crossing of the first linear map with tanh; exists only
    for beta1 < 1 (at beta1 >= 1 the sole crossing is the origin) and
    approaches 1/beta1 as beta1 shrinks.

    t: magnitude of the nonzero crossing of the second linear map with
    max's other argument.  That crossing always lands on a tanh-governed
    segment, so t is the positive root of beta2*x = tanh x: present only
    for beta2 < 1, and approaching k as beta2 decreases toward beta1.
    """
    if not (math.isfinite(beta1) and beta1 > 0.0 and math.isfinite(beta2) and beta2 > 0.0):
        raise ConfigurationError("breakpoints require finite positive slopes")
    k = _tanh_line_root(beta1) if beta1 < 1.0 else None
    t = _tanh_line_root(beta2) if beta2 < 1.0 else None
    return Breakpoints(k=k, t=t)


def asymptotic_slopes(beta1: float, beta2: float) -> tuple[float, float]:
    """Limiting slopes (negative side, positive side).

    For x -> +inf the outer max always hands over to beta2*x; for
    x -> -inf it keeps whichever linear branch has the smaller slope.
    """
    _check_scalar_params(beta1, beta2, 1.0)
    return min(beta1, beta2), beta2


def sample_curve(params: KdacParams, x_min: float, x_max: float, steps: int) -> list[CurveSample]:
    """Evenly spaced (x, y, dy/dx) samples for a width-1 parameter set."""
    if params.width != 1:
        raise ConfigurationError("curve sampling expects scalar betas (width 1)")
    if steps < 2:
        raise ConfigurationError(f"steps must be >= 2, got {steps}")
    if not (math.isfinite(x_min) and math.isfinite(x_max) and x_min < x_max):
        raise ConfigurationError(f"invalid range [{x_min}, {x_max}]")
    xs = np.linspace(x_min, x_max, steps)
    y, dy = kdac_curve(xs, float(params.beta1[0]), float(params.beta2[0]), params.mu)
    return [CurveSample(float(a), float(b), float(c)) for a, b, c in zip(xs, y, dy)]
