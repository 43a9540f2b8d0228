"""Finite-difference verification of every analytic gradient in the package.

Five check families:

  activation_derivative_fd  -- each registry activation on a dense grid
  blend_partials_fd         -- smoothed min/max partials on random triples
  blend_edge_c1             -- one-sided derivatives agree at band edges
  kdac_partials_fd          -- d_x, d_beta1, d_beta2 on random points
  mlp_end_to_end_fd         -- full parameter gradients of small networks

Central differences apply where the whole stencil stays in one blend
regime / on one side of a breakpoint; samples near a regime change fall
back to a second-order one-sided stencil taken from the pure side (the
blends are quadratic there, so the stencil is exact up to rounding).
"""

from dataclasses import dataclass

import numpy as np

from .activations import (
    activation_breakpoints,
    eval_activation,
    eval_activation_derivative,
    list_registry,
)
from .harness.losses import mse_loss
from .harness.model import init_mlp, mlp_backward, mlp_forward
from .kdac import kdac_backward, kdac_scalar
from .smoothing import (
    smooth_max,
    smooth_min,
    switching_factor_max,
    switching_factor_min,
)

FD_STEP = 1e-5


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst_error: float
    tolerance: float
    detail: str = ""


def _central(fn, x, h):
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def _one_sided(fn, x, h):
    """Second-order one-sided stencil from x toward x + 2h (h may be < 0)."""
    return (-3.0 * fn(x) + 4.0 * fn(x + h) - fn(x + 2.0 * h)) / (2.0 * h)


def _kdac_flags(x, beta1, beta2, mu):
    f1 = beta1 * x
    f2 = float(np.tanh(x))
    f3 = beta2 * x
    inner = switching_factor_min(f1, f2, mu)
    p_min = smooth_min(f1, f2, mu)
    outer = switching_factor_max(p_min, f3, mu)
    return inner.clamped, outer.clamped


def check_activation_derivatives(kinds=None, derivative_fn=None, grid_points=2401):
    """One result per activation: analytic derivative vs central differences.

    Grid points within 1e-6 of a listed breakpoint are excluded; KDAC
    samples whose stencil straddles a blend-band edge are checked with
    the looser one-sided tolerance instead.
    """
    if kinds is None:
        kinds = list_registry()
    if derivative_fn is None:
        derivative_fn = eval_activation_derivative
    results = []
    xs = np.linspace(-6.0, 6.0, grid_points)
    h = FD_STEP
    for kind in kinds:
        breaks = activation_breakpoints(kind)
        fn = lambda v: eval_activation(kind, v)
        worst = 0.0
        worst_edge = 0.0
        n_edge = 0
        n_used = 0
        for x in xs:
            x = float(x)
            if any(abs(x - b) < 1e-6 for b in breaks):
                continue
            # a stencil whose endpoints sit on opposite sides of a
            # breakpoint sees the corner, not the derivative
            if any((x - h - b) * (x + h - b) < 0.0 for b in breaks):
                continue
            analytic = derivative_fn(kind, x)
            central_ok = True
            if kind.tag == "kdac":
                p = kind.params
                flags = _kdac_flags(x, p["beta1"], p["beta2"], p["mu"])
                central_ok = (
                    _kdac_flags(x - h, p["beta1"], p["beta2"], p["mu"]) == flags
                    and _kdac_flags(x + h, p["beta1"], p["beta2"], p["mu"]) == flags
                )
            n_used += 1
            if central_ok:
                fd = _central(fn, x, h)
                worst = max(worst, abs(fd - analytic) / max(1.0, abs(analytic)))
            else:
                n_edge += 1
                p = kind.params
                flags = _kdac_flags(x, p["beta1"], p["beta2"], p["mu"])
                best = np.inf
                for side in (h, -h):
                    if _kdac_flags(x + 2.0 * side, p["beta1"], p["beta2"], p["mu"]) == flags:
                        fd = _one_sided(fn, x, side)
                        best = min(best, abs(fd - analytic) / max(1.0, abs(analytic)))
                if np.isfinite(best):
                    worst_edge = max(worst_edge, best)
        passed = worst < 1e-6 and worst_edge < 1e-4
        detail = f"{n_used} samples"
        if n_edge:
            detail += f", {n_edge} near band edges (worst {worst_edge:.3g} vs 1e-04)"
        results.append(CheckResult(
            name=f"activation_derivative_fd[{kind.tag}]",
            passed=passed,
            worst_error=worst,
            tolerance=1e-6,
            detail=detail,
        ))
    return results


def check_blend_partials(n_samples=3000, seed=20240):
    """blend_partials weights vs finite differences of smooth_min/smooth_max."""
    rng = np.random.default_rng(seed)
    mus = (1e-4, 1e-2, 0.5)
    h = 1e-7
    worst = 0.0
    used = 0
    for i in range(n_samples):
        mu = mus[i % len(mus)]
        a = float(rng.normal(scale=2.0))
        # half the draws land inside the band so both regimes get exercised
        if i % 2 == 0:
            b = a + float(rng.uniform(-mu, mu))
        else:
            b = float(rng.normal(scale=2.0))
        for value_fn, factor_fn in (
            (smooth_min, switching_factor_min),
            (smooth_max, switching_factor_max),
        ):
            blend = factor_fn(a, b, mu)
            # stencil must stay in one regime in each perturbed direction
            if factor_fn(a - h, b, mu).clamped != factor_fn(a + h, b, mu).clamped:
                continue
            if factor_fn(a, b - h, mu).clamped != factor_fn(a, b + h, mu).clamped:
                continue
            d_first = _central(lambda v: value_fn(v, b, mu), a, h)
            d_second = _central(lambda v: value_fn(a, v, mu), b, h)
            w_first = 1.0 - blend.factor if blend.clamped == "inside" else (
                1.0 if blend.clamped == "below" else 0.0)
            w_second = 1.0 - w_first
            worst = max(worst, abs(d_first - w_first), abs(d_second - w_second))
            used += 1
    return [CheckResult(
        name="blend_partials_fd",
        passed=worst < 1e-7,
        worst_error=worst,
        tolerance=1e-7,
        detail=f"{used} blend/argument pairs",
    )]


def check_blend_edge_c1(n_probes=1000, seed=20241):
    """One-sided derivatives just inside vs just outside |a - b| = mu agree.

    Uses second-order one-sided stencils: the blend is quadratic inside
    the band and linear outside, so both stencils are exact up to
    rounding; agreement shows the construction is C1 at the edges.
    """
    rng = np.random.default_rng(seed)
    h = 1e-6
    worst = 0.0
    for _ in range(n_probes):
        b = float(rng.normal(scale=2.0))
        mu = float(10.0 ** rng.uniform(-4, -0.3))
        for fn in (smooth_min, smooth_max):
            for edge in (b + mu, b - mu):
                inward = -h if edge > b else h
                inside = _one_sided(lambda v: fn(v, b, mu), edge, inward)
                outside = _one_sided(lambda v: fn(v, b, mu), edge, -inward)
                worst = max(worst, abs(inside - outside))
    return [CheckResult(
        name="blend_edge_c1",
        passed=worst < 1e-6,
        worst_error=worst,
        tolerance=1e-6,
        detail=f"{n_probes} probe points, both blends, both edges",
    )]


def _kdac_partial_errors(x, beta1, beta2, mu, h):
    """(central_errs, edge_errs) for the three partials at one point."""
    grads = kdac_backward(x, beta1, beta2, mu)
    base_flags = _kdac_flags(x, beta1, beta2, mu)
    probes = (
        (grads.d_x, lambda v: kdac_scalar(v, beta1, beta2, mu), x),
        (grads.d_beta1, lambda v: kdac_scalar(x, v, beta2, mu), beta1),
        (grads.d_beta2, lambda v: kdac_scalar(x, beta1, v, mu), beta2),
    )
    flag_of = (
        lambda v: _kdac_flags(v, beta1, beta2, mu),
        lambda v: _kdac_flags(x, v, beta2, mu),
        lambda v: _kdac_flags(x, beta1, v, mu),
    )
    central, edge = [], []
    for (analytic, fn, at), flags in zip(probes, flag_of):
        pure = flags(at - h) == base_flags and flags(at + h) == base_flags
        if pure:
            fd = _central(fn, at, h)
            central.append(abs(fd - analytic) / max(1.0, abs(analytic)))
        else:
            best = np.inf
            for side in (h, -h):
                if flags(at + 2.0 * side) == base_flags and flags(at + side) == base_flags:
                    fd = _one_sided(fn, at, side)
                    best = min(best, abs(fd - analytic) / max(1.0, abs(analytic)))
            if np.isfinite(best):
                edge.append(best)
    return central, edge


def check_kdac_partials(n_samples=10000, seed=20242):
    """Analytic KDAC partials vs finite differences on random points."""
    rng = np.random.default_rng(seed)
    mus = (1e-4, 1e-2, 0.5)
    h = FD_STEP
    worst = 0.0
    worst_edge = 0.0
    n_edge = 0
    for i in range(n_samples):
        x = float(rng.uniform(-6.0, 6.0))
        beta1 = float(rng.uniform(0.05, 3.0))
        beta2 = float(rng.uniform(0.05, 3.0))
        mu = mus[i % len(mus)]
        central, edge = _kdac_partial_errors(x, beta1, beta2, mu, h)
        if central:
            worst = max(worst, max(central))
        if edge:
            n_edge += 1
            worst_edge = max(worst_edge, max(edge))
    passed = worst < 1e-6 and worst_edge < 1e-4
    return [CheckResult(
        name="kdac_partials_fd",
        passed=passed,
        worst_error=worst,
        tolerance=1e-6,
        detail=(f"{n_samples} points, {n_edge} near band edges "
                f"(worst {worst_edge:.3g} vs 1e-04)"),
    )]


def check_mlp_gradients(kinds=None, seeds=(0, 1, 2, 3, 4), layer_dims=(2, 8, 8, 1)):
    """Full-parameter FD check of small networks, one result per activation."""
    if kinds is None:
        kinds = list_registry()
    h = FD_STEP
    results = []
    for kind in kinds:
        worst = 0.0
        n_params = 0
        for seed in seeds:
            rng = np.random.default_rng(1000 + seed)
            x = rng.normal(size=(8, layer_dims[0]))
            target = rng.normal(size=(8, layer_dims[-1]))
            model = init_mlp(layer_dims, kind, seed=seed)

            def loss_value():
                return mse_loss(mlp_forward(model, x), target)[0]

            _, grad_out = mse_loss(mlp_forward(model, x), target)
            grads = mlp_backward(model, x, grad_out)
            for name, arr in model.trainable().items():
                flat = arr.ravel()
                gflat = grads[name].ravel()
                for i in range(flat.size):
                    orig = flat[i]
                    flat[i] = orig + h
                    up = loss_value()
                    flat[i] = orig - h
                    down = loss_value()
                    flat[i] = orig
                    fd = (up - down) / (2.0 * h)
                    worst = max(worst, abs(fd - gflat[i]) / max(1.0, abs(gflat[i])))
                    n_params += 1
        results.append(CheckResult(
            name=f"mlp_end_to_end_fd[{kind.tag}]",
            passed=worst < 1e-5,
            worst_error=worst,
            tolerance=1e-5,
            detail=f"{n_params} parameter/seed probes, dims {'-'.join(map(str, layer_dims))}",
        ))
    return results


def run_all_checks(kinds=None, fast=False):
    """Every family; ``fast`` shrinks sample counts for quick smoke runs."""
    scale = 10 if fast else 1
    results = []
    results += check_activation_derivatives(kinds=kinds,
                                            grid_points=2401 // scale or 241)
    results += check_blend_partials(n_samples=3000 // scale)
    results += check_blend_edge_c1(n_probes=1000 // scale)
    results += check_kdac_partials(n_samples=10000 // scale)
    results += check_mlp_gradients(kinds=kinds,
                                   seeds=(0,) if fast else (0, 1, 2, 3, 4))
    return results


def format_results(results) -> list:
    lines = []
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{status}  {r.name:<{width}}  worst={r.worst_error:.3e}  "
            f"tol={r.tolerance:.0e}  {r.detail}"
        )
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return lines
