"""Train-and-compare benchmark over the synthetic tasks.

Each selected activation trains once per seed; the report carries the
per-seed held-out metrics with their mean and population standard
deviation.  Dataset contents are fixed (independent of the run seeds),
so repeats measure initialization/shuffling variance only, and report
files are byte-identical across invocations of the same config.  Wall
times are kept out of the files for that reason; they live on the
returned rows.
"""

import math
import os
import time
from dataclasses import dataclass

import numpy as np

from .activations import DISPLAY_NAMES
from .errors import TrainingDiverged
from .harness.model import init_mlp
from .harness.tasks import (
    gen_regression_task,
    gen_toy_tagging_task,
    make_tagging_data,
    RegressionData,
)
from .harness.train import evaluate, train
from .runconfig import RunConfig, comment_header

DATA_SEED = 1234
REGRESSION_SAMPLES = 256
REGRESSION_TRAIN = 192
TAGGING_SEQUENCES = 200
TAGGING_TRAIN = 150
TAGGING_WINDOW = 2

_HIDDEN = {"regression": (16, 16), "tagging": (32,)}


@dataclass
class BenchRow:
    activation: object  # ActivationKind
    values: list  # per-seed held-out metric, NaN when diverged
    diverged: list  # per-seed flags
    wall_time: float  # seconds, console-only

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    @property
    def sd(self) -> float:
        return float(np.std(self.values))


@dataclass
class BenchReport:
    task: str
    metric_name: str
    direction: str
    seeds: tuple
    rows: list


def make_task_splits(task: str):
    """(train_data, eval_data, input_dim, output_dim) for a task name."""
    if task == "regression":
        data = gen_regression_task(DATA_SEED, REGRESSION_SAMPLES)
        train_data = RegressionData(data.inputs[:REGRESSION_TRAIN],
                                    data.targets[:REGRESSION_TRAIN])
        eval_data = RegressionData(data.inputs[REGRESSION_TRAIN:],
                                   data.targets[REGRESSION_TRAIN:])
        return train_data, eval_data, 2, 1
    sequences = gen_toy_tagging_task(DATA_SEED, TAGGING_SEQUENCES)
    train_data = make_tagging_data(sequences[:TAGGING_TRAIN], window=TAGGING_WINDOW)
    eval_data = make_tagging_data(sequences[TAGGING_TRAIN:], window=TAGGING_WINDOW)
    dim = train_data.inputs.shape[1]
    return train_data, eval_data, dim, 5


def run_bench(cfg: RunConfig) -> BenchReport:
    train_data, eval_data, in_dim, out_dim = make_task_splits(cfg.task)
    dims = (in_dim,) + _HIDDEN[cfg.task] + (out_dim,)
    metric_name = "mse" if cfg.task == "regression" else "span_f1"
    direction = "lower-better" if cfg.task == "regression" else "higher-better"
    rows = []
    for kind in cfg.activations:
        values = []
        diverged = []
        started = time.perf_counter()
        for seed in cfg.seeds:
            model = init_mlp(dims, kind, seed=seed)
            try:
                train(model, train_data, cfg.train_config(seed))
                _, metric = evaluate(model, eval_data)
            except TrainingDiverged:
                values.append(math.nan)
                diverged.append(True)
                continue
            values.append(metric)
            diverged.append(False)
        rows.append(BenchRow(
            activation=kind,
            values=values,
            diverged=diverged,
            wall_time=time.perf_counter() - started,
        ))
    report = BenchReport(task=cfg.task, metric_name=metric_name,
                         direction=direction, seeds=cfg.seeds, rows=rows)
    if cfg.out:
        write_report(report, cfg)
    return report


def _fmt(x: float) -> str:
    return format(x, ".17g")


def report_csv_lines(report: BenchReport, cfg: RunConfig) -> list:
    lines = list(comment_header(cfg))
    lines.append(f"# task = {report.task}; metric = {report.metric_name} ({report.direction})")
    seed_cols = ",".join(f"seed_{s}" for s in report.seeds)
    lines.append(f"activation,mean,sd,n_diverged,{seed_cols}")
    for row in report.rows:
        values = ",".join(_fmt(v) for v in row.values)
        lines.append(
            f"{row.activation.tag},{_fmt(row.mean)},{_fmt(row.sd)},"
            f"{sum(row.diverged)},{values}"
        )
    return lines


def report_table_lines(report: BenchReport, cfg: RunConfig) -> list:
    lines = list(comment_header(cfg))
    lines.append(f"# task = {report.task}; metric = {report.metric_name} ({report.direction})")
    name_w = max(len(DISPLAY_NAMES[r.activation.tag]) for r in report.rows)
    header = f"{'activation':<{name_w}}  {'mean':>12}  {'sd':>12}  flags"
    lines.append(header)
    lines.append("-" * len(header))
    for row in report.rows:
        flag = f"{sum(row.diverged)} diverged" if any(row.diverged) else ""
        lines.append(
            f"{DISPLAY_NAMES[row.activation.tag]:<{name_w}}  "
            f"{row.mean:>12.6f}  {row.sd:>12.6f}  {flag}"
        )
    return lines


def write_report(report: BenchReport, cfg: RunConfig):
    """CSV at cfg.out plus an aligned-text table alongside it."""
    with open(cfg.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(report_csv_lines(report, cfg)) + "\n")
    stem, _ = os.path.splitext(cfg.out)
    with open(stem + ".txt", "w", encoding="utf-8") as fh:
        fh.write("\n".join(report_table_lines(report, cfg)) + "\n")
