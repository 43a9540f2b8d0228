"""Curve dumps: per-activation CSV files with columns x, y, dy_dx."""

import os

import numpy as np

from .activations import (
    eval_activation_array,
    eval_activation_derivative_array,
)
from .errors import ConfigurationError
from .kdac import find_breakpoints
from .runconfig import RunConfig, comment_header


def _fmt(x: float) -> str:
    return format(x, ".17g")


def curve_path(out: str, index: int, tag: str, total: int) -> str:
    if total == 1:
        return out
    stem, ext = os.path.splitext(out)
    return f"{stem}_{index:02d}_{tag}{ext or '.csv'}"


def run_curves(cfg: RunConfig) -> list:
    """Write one CSV per selected activation; returns the file paths.

    KDAC files carry the branch breakpoints (k, t) as an extra comment
    line after the config echo.
    """
    if not cfg.out:
        raise ConfigurationError("curves requires an output path (--out)")
    if cfg.steps < 2:
        raise ConfigurationError(f"steps must be >= 2, got {cfg.steps}")
    if not cfg.x_min < cfg.x_max:
        raise ConfigurationError(f"invalid range [{cfg.x_min}, {cfg.x_max}]")
    xs = np.linspace(cfg.x_min, cfg.x_max, cfg.steps)
    paths = []
    header = comment_header(cfg)
    for index, kind in enumerate(cfg.activations):
        y = eval_activation_array(kind, xs)
        dy = eval_activation_derivative_array(kind, xs)
        path = curve_path(cfg.out, index, kind.tag, len(cfg.activations))
        with open(path, "w", encoding="utf-8") as fh:
            for line in header:
                fh.write(line + "\n")
            if kind.tag == "kdac":
                bp = find_breakpoints(kind.params["beta1"], kind.params["beta2"])
                k = _fmt(bp.k) if bp.k is not None else "none"
                t = _fmt(bp.t) if bp.t is not None else "none"
                fh.write(f"# kdac breakpoints: k={k}, t={t}\n")
            fh.write("x,y,dy_dx\n")
            for a, b, c in zip(xs, y, dy):
                fh.write(f"{_fmt(a)},{_fmt(b)},{_fmt(c)}\n")
        paths.append(path)
    return paths


def load_curve(path):
    """Read back a curve CSV as (x, y, dy_dx) arrays."""
    cols = ([], [], [])
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("x,"):
                continue
            for col, value in zip(cols, line.split(",")):
                col.append(float(value))
    return tuple(np.asarray(c) for c in cols)
