"""Per-call latency of the scalar activations.

Timing uses the median (and p95) over fixed-size batches of calls rather
than a mean, which resists scheduler noise; inputs are a fixed random
pool shared by every activation.
"""

import time
from dataclasses import dataclass

import numpy as np

from .activations import scalar_callable
from .runconfig import RunConfig, comment_header

N_BATCHES = 64
WARMUP_CALLS = 20000


@dataclass
class TimingRow:
    tag: str
    median_ns: float
    p95_ns: float
    calls: int


@dataclass
class TimingReport:
    rows: list
    kdac_relu_ratio: float  # of medians; NaN when either is missing


def _time_callable(fn, pool, calls: int):
    batch = max(1, calls // N_BATCHES)
    per_call = []
    for x in pool[:WARMUP_CALLS]:
        fn(x)
    done = 0
    i = 0
    n = len(pool)
    while done < calls:
        size = min(batch, calls - done)
        start = time.perf_counter_ns()
        for _ in range(size):
            fn(pool[i])
            i += 1
            if i == n:
                i = 0
        elapsed = time.perf_counter_ns() - start
        per_call.append(elapsed / size)
        done += size
    return float(np.median(per_call)), float(np.percentile(per_call, 95))


def run_timing(cfg: RunConfig) -> TimingReport:
    rng = np.random.default_rng(99)
    pool = [float(v) for v in rng.uniform(-4.0, 4.0, size=65536)]
    rows = []
    for kind in cfg.activations:
        median, p95 = _time_callable(scalar_callable(kind), pool, cfg.calls)
        rows.append(TimingRow(tag=kind.tag, median_ns=median, p95_ns=p95,
                              calls=cfg.calls))
    medians = {row.tag: row.median_ns for row in rows}
    ratio = float("nan")
    if "kdac" in medians and "relu" in medians and medians["relu"] > 0:
        ratio = medians["kdac"] / medians["relu"]
    report = TimingReport(rows=rows, kdac_relu_ratio=ratio)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(report_lines(report, cfg)) + "\n")
    return report


def report_lines(report: TimingReport, cfg: RunConfig) -> list:
    lines = list(comment_header(cfg))
    lines.append("activation,median_ns,p95_ns,calls")
    for row in report.rows:
        lines.append(
            f"{row.tag},{format(row.median_ns, '.17g')},"
            f"{format(row.p95_ns, '.17g')},{row.calls}"
        )
    lines.append(f"# kdac/relu median ratio = {format(report.kdac_relu_ratio, '.17g')}")
    return lines
