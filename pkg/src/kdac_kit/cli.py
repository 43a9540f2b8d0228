"""kdac-kit command line: gradcheck, curves, bench, timing.

Exit codes: 0 success, 1 check failure, 2 configuration error.
"""

import argparse
import sys

from .activations import parse_activation_spec
from .bench import run_bench
from .curves import run_curves
from .errors import ConfigurationError, DomainError, ShapeError
from .gradcheck import format_results, run_all_checks
from .runconfig import comment_header, parse_config
from .timing import run_timing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kdac-kit",
        description="Verify and benchmark the KDAC activation function.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--out", help="output file path")

    p = sub.add_parser("gradcheck", help="run every gradient-check family")
    common(p)
    p.add_argument("--fast", action="store_true",
                   help="smaller sample counts for a quick smoke run")

    p = sub.add_parser("curves", help="dump x,y,dy_dx CSV curves")
    common(p)
    p.add_argument("--activation", action="append",
                   help="activation spec, repeatable (e.g. kdac or lisa:alpha1=0.3,alpha2=0.1)")
    p.add_argument("--beta1", type=float, help="kdac first slope")
    p.add_argument("--beta2", type=float, help="kdac second slope")
    p.add_argument("--mu", type=float, help="kdac smoothing half-band")
    p.add_argument("--min", dest="x_min", type=float, help="range start")
    p.add_argument("--max", dest="x_max", type=float, help="range end")
    p.add_argument("--steps", type=int, help="number of samples")

    p = sub.add_parser("bench", help="train each activation on a synthetic task")
    common(p)
    p.add_argument("--task", choices=("regression", "tagging"))
    p.add_argument("--seeds", help="comma-separated seed list")
    p.add_argument("--repeats", type=int, help="seed count when --seeds not given")
    p.add_argument("--activations", help="whitespace-separated activation specs")
    p.add_argument("--lr", dest="learning_rate", type=float, help="learning rate")
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", dest="batch_size", type=int)

    p = sub.add_parser("timing", help="median per-call latency per activation")
    common(p)
    p.add_argument("--calls", type=int, help="scalar calls per activation")

    return parser


def _overrides_from_args(args) -> dict:
    overrides = {}
    for attr in ("task", "out", "repeats", "calls", "learning_rate", "epochs",
                 "batch_size", "x_min", "x_max", "steps", "beta1", "beta2", "mu"):
        value = getattr(args, attr, None)
        if value is not None:
            overrides[attr] = value
    seeds = getattr(args, "seeds", None)
    if seeds is not None:
        try:
            overrides["seeds"] = tuple(int(v) for v in seeds.replace(",", " ").split())
        except ValueError:
            raise ConfigurationError(f"cannot parse seed list {seeds!r}") from None
    specs = getattr(args, "activations", None)
    if specs is not None:
        overrides["activations"] = tuple(
            parse_activation_spec(s) for s in specs.split()
        )
    selected = getattr(args, "activation", None)
    if selected:
        kinds = []
        for spec in selected:
            kind = parse_activation_spec(spec)
            if kind.tag == "kdac":
                # bare kdac picks up the curve-shape flags
                params = dict(kind.params)
                for name in ("beta1", "beta2", "mu"):
                    value = getattr(args, name, None)
                    if value is not None and ":" not in spec:
                        params[name] = value
                kind = parse_activation_spec(
                    "kdac:" + ",".join(f"{k}={v!r}" for k, v in params.items())
                )
            kinds.append(kind)
        overrides["activations"] = tuple(kinds)
    return overrides


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.command, path=args.config,
                           overrides=_overrides_from_args(args))
        if args.command == "gradcheck":
            results = run_all_checks(fast=getattr(args, "fast", False))
            lines = format_results(results)
            if cfg.out:
                with open(cfg.out, "w", encoding="utf-8") as fh:
                    fh.write("\n".join(comment_header(cfg) + lines) + "\n")
            print("\n".join(lines))
            return 0 if all(r.passed for r in results) else 1
        if args.command == "curves":
            for path in run_curves(cfg):
                print(path)
            return 0
        if args.command == "bench":
            report = run_bench(cfg)
            for row in report.rows:
                flag = " DIVERGED" if any(row.diverged) else ""
                print(f"{row.activation.tag}: {report.metric_name} "
                      f"{row.mean:.6f} +/- {row.sd:.6f} "
                      f"({row.wall_time:.2f}s){flag}")
            return 0
        if args.command == "timing":
            report = run_timing(cfg)
            for row in report.rows:
                print(f"{row.tag}: median {row.median_ns:.0f} ns, "
                      f"p95 {row.p95_ns:.0f} ns")
            print(f"kdac/relu median ratio: {report.kdac_relu_ratio:.2f}")
            return 0
        raise ConfigurationError(f"unknown command {args.command!r}")
    except (ConfigurationError, DomainError, ShapeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
