"""Command-line frontend: ``denmune {cluster,sweep,stats,metrics,plot,bench}``.

All tabular output is CSV on stdout. Errors print one ``error: ...`` line on
stderr and exit with status 1 (argument errors exit 2, as argparse does).
"""

from __future__ import annotations

import argparse
import csv
import sys

from .dataio import DELIMITERS, DatasetSpec, load_dataset, load_labels, save_labels
from .engine import MODES, denmune
from .errors import DenMuneError, InvalidParameterError
from .metrics import NOISE_POLICIES, evaluate
from .neighbor_graph import STRATEGIES
from .plotting import write_svg
from .sweep import SCORES, SweepRow, bench, sweep


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _add_dataset_args(p):
    p.add_argument("--input", required=True, help="numeric data file")
    p.add_argument("--delimiter", choices=sorted(DELIMITERS), default="comma")
    p.add_argument("--label-col", type=int, default=None,
                   help="0-based column holding ground-truth labels")
    p.add_argument("--header", action="store_true", help="skip the first line")


def _add_algo_args(p):
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--mode", choices=MODES, default="members")
    p.add_argument("--threads", type=int, default=1,
                   help="threads for the neighbor search (-1: all cores)")


def _load(args):
    return load_dataset(DatasetSpec(args.input, args.delimiter, args.label_col, args.header))


def _k_list(text):
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty k list")
    return values


def cmd_cluster(args, out):
    points = _load(args)
    result = denmune(points, args.k, strategy=args.strategy, mode=args.mode, n_jobs=args.threads)
    if args.output:
        save_labels(result, args.output)
    w = _writer(out)
    w.writerow(["k", "m", "n_strong", "n_weak_assigned", "n_noise1", "n_noise2"])
    w.writerow([result.k, result.m, *result.counts])
    if points.truth_labels is not None:
        report = evaluate(result.labels, points.truth_labels, args.noise_policy)
        w.writerow(report.FIELDS)
        w.writerow([_fmt(v) for v in report.as_row()])
    return 0


def _resolve_range(args):
    k_min = args.k_min if args.k_min is not None else args.k
    k_max = args.k_max if args.k_max is not None else args.k
    if k_min is None or k_max is None:
        raise InvalidParameterError("give --k or both --k-min and --k-max")
    return k_min, k_max


def cmd_sweep(args, out):
    points = _load(args)
    truth = load_labels(args.truth, densify=True) if args.truth else None
    k_min, k_max = _resolve_range(args)
    report = sweep(points, k_min, k_max, truth=truth, strategy=args.strategy, mode=args.mode,
                   policy=args.noise_policy, n_jobs=args.threads)
    w = _writer(out)
    w.writerow(SweepRow.FIELDS)
    for row in report.rows:
        w.writerow([_fmt(getattr(row, f)) for f in SweepRow.FIELDS])
    best = report.best(args.metric)
    if best is not None:
        w.writerow(["best_k", best[0], args.metric, _fmt(best[1])])
    return 0


def cmd_stats(args, out):
    points = _load(args)
    k_min, k_max = _resolve_range(args)
    report = sweep(points, k_min, k_max, truth=None, strategy=args.strategy, mode=args.mode,
                   n_jobs=args.threads)
    w = _writer(out)
    w.writerow(["K", "strong", "weak", "noise1", "noise2"])
    for row in report.rows:
        w.writerow([row.k, row.n_strong, row.n_weak_assigned, row.n_noise1, row.n_noise2])
    return 0


def cmd_metrics(args, out):
    pred = load_labels(args.pred)
    truth = load_labels(args.truth, densify=True)
    report = evaluate(pred, truth, args.noise_policy)
    w = _writer(out)
    w.writerow(report.FIELDS)
    w.writerow([_fmt(v) for v in report.as_row()])
    return 0


def cmd_plot(args, out):
    points = _load(args)
    labels = load_labels(args.labels)
    write_svg(args.output, points.coords, labels, title=args.title or "")
    return 0


def cmd_bench(args, out):
    points = _load(args)
    sizes = args.sizes or [points.n]
    w = _writer(out)
    w.writerow(["k", "n", "phase", "seconds"])
    for n in sizes:
        if not 1 <= n <= points.n:
            raise InvalidParameterError(f"size {n} outside [1, {points.n}]")
        subset = points.subset(range(n))
        for row in bench(subset, args.k, repeats=args.repeats, strategy=args.strategy,
                         mode=args.mode, n_jobs=args.threads):
            w.writerow([row[0], row[1], row[2], f"{row[3]:.6f}"])
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="denmune",
        description="Mutual-nearest-neighbor density clustering with automatic noise detection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster a dataset and write labels")
    _add_dataset_args(p)
    _add_algo_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--output", help="label file: one integer per line, -1/-2 for noise")
    p.add_argument("--noise-policy", choices=NOISE_POLICIES, default="noise_as_singletons")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("sweep", help="run every K in a range and score it")
    _add_dataset_args(p)
    _add_algo_args(p)
    p.add_argument("--k", type=int, default=None, help="single K (shorthand for k-min = k-max)")
    p.add_argument("--k-min", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--truth", help="ground-truth label file (overrides --label-col)")
    p.add_argument("--metric", choices=SCORES, default="f1")
    p.add_argument("--noise-policy", choices=NOISE_POLICIES, default="noise_as_singletons")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stats", help="strong / weak / noise counts per K")
    _add_dataset_args(p)
    _add_algo_args(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--k-min", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("metrics", help="compare a label file with ground truth")
    p.add_argument("--pred", required=True, help="predicted labels (integers)")
    p.add_argument("--truth", required=True, help="true labels (any tokens)")
    p.add_argument("--noise-policy", choices=NOISE_POLICIES, default="noise_as_singletons")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("plot", help="SVG scatter of a 2-D clustering")
    _add_dataset_args(p)
    p.add_argument("--labels", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--title", default=None)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("bench", help="time neighbor search and both phases")
    _add_dataset_args(p)
    _add_algo_args(p)
    p.add_argument("--k", type=_k_list, required=True, help="comma-separated K values")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--sizes", type=_k_list, default=None,
                   help="comma-separated prefix sizes to time on nested subsets")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (DenMuneError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
