"""Clamped quadratic blends that replace hard min/max inside a band.

A blend swaps the corner of min(a, b) or max(a, b) for a quadratic arc on
the band |a - b| < mu.  Outside the band it reproduces the hard function
exactly; at the band edges the one-sided derivatives match, so the blend
is C1 everywhere.  The interpolation coordinate ("switching factor") is
an affine function of a - b clamped to [0, 1], and the quadratic term is
shaped so its derivative cancels the factor's own x-dependence at the
edges.
"""

from dataclasses import dataclass

from .errors import ConfigurationError

BELOW = "below"
INSIDE = "inside"
ABOVE = "above"


@dataclass(frozen=True)
class SmoothBlend:
    """State of one blend evaluation: clamped factor plus gradient weights.

    ``factor`` is the clamped switching factor in [0, 1].  The gradient of
    the blended value splits between the two arguments as
    ``(weight_first, weight_second) = (1 - factor, factor)``; the quadratic
    term's contribution cancels exactly (see ``blend_partials``).
    """

    factor: float
    mu: float
    clamped: str  # below / inside / above

    @property
    def weight_first(self) -> float:
        return 1.0 - self.factor

    @property
    def weight_second(self) -> float:
        return self.factor


def _require_mu(mu):
    if not mu > 0.0:
        raise ConfigurationError(f"smoothing band mu must be > 0, got {mu}")


def _classify(raw):
    # clamp to [0, 1]; "inside" means strictly between the band edges
    if raw <= 0.0:
        return 0.0, BELOW
    if raw >= 1.0:
        return 1.0, ABOVE
    return raw, INSIDE


def switching_factor_min(f_i: float, f_j: float, mu: float) -> SmoothBlend:
    """Switching factor of the smoothed minimum: clamp(1/2 + (f_i - f_j)/(2 mu))."""
    _require_mu(mu)
    factor, clamped = _classify(0.5 + (f_i - f_j) / (2.0 * mu))
    return SmoothBlend(factor=factor, mu=mu, clamped=clamped)


def switching_factor_max(f_i: float, f_j: float, mu: float) -> SmoothBlend:
    """Switching factor of the smoothed maximum: clamp(1/2 + (f_j - f_i)/(2 mu))."""
    _require_mu(mu)
    factor, clamped = _classify(0.5 + (f_j - f_i) / (2.0 * mu))
    return SmoothBlend(factor=factor, mu=mu, clamped=clamped)


def smooth_min(f_i: float, f_j: float, mu: float) -> float:
    """C1 approximation of min(f_i, f_j), exact for |f_i - f_j| >= mu.

    Lies in [min - mu/4, min]; the deviation is largest (exactly mu/4)
    at f_i == f_j.
    """
    _require_mu(mu)
    raw = 0.5 + (f_i - f_j) / (2.0 * mu)
    t = 0.0 if raw <= 0.0 else (1.0 if raw >= 1.0 else raw)
    # at t == 0 or 1 every correction term is exactly zero, so the hard
    # branch value comes back bit-for-bit
    return f_i * (1.0 - t) + t * f_j - mu * t * (1.0 - t)


def smooth_max(f_i: float, f_j: float, mu: float) -> float:
    """C1 approximation of max(f_i, f_j), exact for |f_i - f_j| >= mu.

    Lies in [max, max + mu/4], peaking at f_i == f_j.
    """
    _require_mu(mu)
    raw = 0.5 + (f_j - f_i) / (2.0 * mu)
    t = 0.0 if raw <= 0.0 else (1.0 if raw >= 1.0 else raw)
    return f_i * (1.0 - t) + t * f_j + mu * t * (1.0 - t)


def blend_partials(blend: SmoothBlend) -> tuple[float, float]:
    """Partial derivatives of a blend with respect to its two arguments.

    Inside the band the factor itself depends on the arguments, but that
    dependence cancels: d(blend)/d(factor) = (f_j - f_i) -/+ mu(1 - 2t)
    vanishes identically once the factor definition is substituted.  What
    survives is the pair of convex weights (1 - factor, factor).  In the
    clamped regions the blend equals one argument outright.
    """
    if blend.clamped == BELOW:
        return 1.0, 0.0
    if blend.clamped == ABOVE:
        return 0.0, 1.0
    return 1.0 - blend.factor, blend.factor
