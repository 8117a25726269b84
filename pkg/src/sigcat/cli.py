"""Command-line front end and benchmark harness.

Every command prints line-oriented JSON records with stable field names to
stdout; label files are plain text, one integer per line. Exit codes:
0 success, 1 runtime failure, 2 usage error. All commands are deterministic
given --seed (the runtime_s fields aside).
"""

import argparse
import csv
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .baselines import entropy_search_run, kmodes_run
from .dataset import Dataset, discretize_numeric, load_csv, load_labels
from .metrics import acc, contingency, nmi
from .model_selection import estimate_clusters
from .objective import srs_full
from .randomize import generate_group
from .search import SearchConfig, ksigcat_run, ksigcat_run_many
from .significance import empirical_pvalue


class UsageError(Exception):
    pass


def _emit(record):
    sys.stdout.write(json.dumps(record) + "\n")


def _default_threads(value):
    if value is not None:
        return value
    return os.cpu_count() or 1


def _add_loader_flags(sub):
    sub.add_argument("--delimiter", default=",")
    sub.add_argument("--header", action="store_true",
                     help="input file has a header row")
    sub.add_argument("--label-column", type=int, default=None,
                     help="column with ground-truth labels (excluded from "
                          "the attributes); negative counts from the end")
    sub.add_argument("--missing-token", default="?")


def _load(args):
    return load_csv(args.input, delimiter=args.delimiter,
                    has_header=args.header, label_column=args.label_column,
                    missing_token=args.missing_token)


def _write_labels(path, assignments):
    with open(path, "w") as fh:
        for a in assignments:
            fh.write(f"{int(a)}\n")


def _run_algorithm(dataset, algorithm, objective, k, seed, failure_budget,
                   max_iters):
    if algorithm == "ksigcat":
        cfg = SearchConfig(k=k, seed=seed, objective=objective,
                           failure_budget=failure_budget)
        return ksigcat_run(dataset, cfg)
    if algorithm == "entropy":
        return entropy_search_run(dataset, k, seed,
                                  failure_budget=failure_budget)
    if algorithm == "kmodes":
        return kmodes_run(dataset, k, seed, max_iters=max_iters)
    raise UsageError(f"unknown algorithm {algorithm!r}")


def cmd_cluster(args):
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    dataset, _ = _load(args)
    start = time.perf_counter()
    part = _run_algorithm(dataset, args.algorithm, args.objective, args.k,
                          args.seed, args.failure_budget, args.max_iters)
    runtime = time.perf_counter() - start
    _write_labels(args.output, part.assignments)
    _emit({
        "command": "cluster",
        "input": args.input,
        "algorithm": args.algorithm,
        "objective": part.objective,
        "k": args.k,
        "seed": args.seed,
        "srs": srs_full(dataset, part),
        "objective_value": part.objective_value,
        "n_objects": dataset.n_objects,
        "output": args.output,
        "runtime_s": runtime,
    })
    return 0


def cmd_pvalue(args):
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    if args.r < 1:
        raise UsageError(f"--r must be >= 1, got {args.r}")
    dataset, _ = _load(args)
    threads = _default_threads(args.threads)
    start = time.perf_counter()
    cfg = SearchConfig(k=args.k, seed=args.seed,
                       failure_budget=args.failure_budget)
    observed = ksigcat_run(dataset, cfg)
    group = generate_group(dataset, args.r, args.method, args.seed,
                           n_swaps=args.swaps)
    result = empirical_pvalue(dataset, observed.objective_value, group,
                              args.k, cfg, threads=threads)
    runtime = time.perf_counter() - start
    nulls = result.null_srs
    _emit({
        "command": "pvalue",
        "input": args.input,
        "k": args.k,
        "r": args.r,
        "method": args.method,
        "seed": args.seed,
        "srs": result.observed_srs,
        "p_value": result.p_value,
        "p_value_smoothed": result.p_value_smoothed,
        "null_srs_summary": {
            "mean": float(nulls.mean()),
            "sd": float(nulls.std(ddof=1)) if len(nulls) > 1 else None,
            "min": float(nulls.min()),
            "max": float(nulls.max()),
        },
        "runtime_s": runtime,
    })
    return 0


def cmd_estimate_k(args):
    if args.kmax < 2:
        raise UsageError(f"--kmax must be >= 2, got {args.kmax}")
    if args.r < 1:
        raise UsageError(f"--r must be >= 1, got {args.r}")
    methods = ("gapstar", "bic", "bkplot") if args.method == "all" \
        else (args.method,)
    if "bkplot" in methods and args.kmax < 4:
        raise UsageError("--kmax must be >= 4 for bkplot")
    dataset, _ = _load(args)
    threads = _default_threads(args.threads)
    cfg = SearchConfig(k=2, seed=args.seed,
                       failure_budget=args.failure_budget)
    group = None
    if "gapstar" in methods:
        group = generate_group(dataset, args.r, args.null_method, args.seed,
                               n_swaps=args.swaps)
    report = estimate_clusters(dataset, args.kmax, cfg, group=group,
                               threads=threads, methods=methods)
    for rec in report.to_dict()["records"]:
        rec.update({"command": "estimate-k-record", "input": args.input})
        _emit(rec)
    _emit({
        "command": "estimate-k-selected",
        "input": args.input,
        "kmax": args.kmax,
        "r": args.r,
        "seed": args.seed,
        "selected": report.selected,
    })
    return 0


def cmd_eval(args):
    pred = load_labels(args.pred)
    truth = load_labels(args.truth)
    _emit({
        "command": "eval",
        "pred": args.pred,
        "truth": args.truth,
        "acc": acc(pred, truth),
        "nmi": nmi(pred, truth),
    })
    return 0


def _read_numeric_csv(path, delimiter, has_header, label_column):
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh, delimiter=delimiter) if row]
    if has_header and rows:
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    width = len(rows[0])
    labels = None
    cols = list(range(width))
    if label_column is not None:
        lc = label_column if label_column >= 0 else width + label_column
        if not 0 <= lc < width:
            raise UsageError(f"--label-column {label_column} out of range")
        labels = [row[lc].strip() for row in rows]
        cols.remove(lc)
    matrix = np.array([[float(row[c]) for c in cols] for row in rows])
    return matrix, labels


def cmd_discretize(args):
    if args.k < 2:
        raise UsageError(f"--k must be >= 2, got {args.k}")
    matrix, labels = _read_numeric_csv(args.input, args.delimiter,
                                       args.header, args.label_column)
    dataset = discretize_numeric(matrix, args.k, args.seed)
    with open(args.output, "w") as fh:
        writer = csv.writer(fh)
        for n in range(dataset.n_objects):
            row = [int(v) for v in dataset.values[n]]
            if labels is not None:
                row.append(labels[n])
            writer.writerow(row)
    _emit({
        "command": "discretize",
        "input": args.input,
        "output": args.output,
        "k": args.k,
        "seed": args.seed,
        "n_objects": dataset.n_objects,
        "n_attributes": dataset.n_attributes,
        "categories_per_attribute":
            [int(q) for q in dataset.categories_per_attribute],
    })
    return 0


def _pairwise_f(predicted, truth):
    """Pairwise F-measure: harmonic mean of pair precision and recall over
    co-clustered object pairs."""
    c = contingency(predicted, truth).astype(np.float64)
    pairs = lambda x: (x * (x - 1) / 2.0).sum()
    tp = pairs(c)
    pred_pairs = pairs(c.sum(axis=1))
    true_pairs = pairs(c.sum(axis=0))
    if pred_pairs == 0.0 or true_pairs == 0.0 or tp == 0.0:
        return 0.0
    precision = tp / pred_pairs
    recall = tp / true_pairs
    return float(2.0 * precision * recall / (precision + recall))


def cmd_benchmark(args):
    if args.runs < 1:
        raise UsageError(f"--runs must be >= 1, got {args.runs}")
    threads = _default_threads(args.threads)
    for d_idx, path in enumerate(args.inputs):
        dataset, labels = load_csv(
            path, delimiter=args.delimiter, has_header=args.header,
            label_column=args.label_column, missing_token=args.missing_token)
        if labels is None:
            raise UsageError(f"{path}: benchmark needs --label-column")
        k = args.k if args.k else len(set(labels))
        seeds = [np.random.SeedSequence(entropy=args.seed,
                                        spawn_key=(d_idx, run))
                 for run in range(args.runs)]
        start = time.perf_counter()
        if args.algorithm == "ksigcat":
            tasks = [(dataset, SearchConfig(k=k, seed=s)) for s in seeds]
            parts = ksigcat_run_many(tasks, threads=threads)
        elif args.algorithm == "entropy":
            tasks = [(dataset, SearchConfig(k=k, seed=s, objective="ee"))
                     for s in seeds]
            parts = ksigcat_run_many(tasks, threads=threads)
        else:
            parts = [kmodes_run(dataset, k, s) for s in seeds]
        runtime = time.perf_counter() - start
        accs = [acc(p.assignments, labels) for p in parts]
        nmis = [nmi(p.assignments, labels) for p in parts]
        fs = [_pairwise_f(p.assignments, labels) for p in parts]
        srss = [srs_full(dataset, p) for p in parts]
        _emit({
            "command": "benchmark",
            "dataset": path,
            "algorithm": args.algorithm,
            "k": k,
            "runs": args.runs,
            "seed": args.seed,
            "mean_acc": float(np.mean(accs)),
            "mean_nmi": float(np.mean(nmis)),
            "mean_pairwise_f": float(np.mean(fs)),
            "mean_srs": float(np.mean(srss)),
            "mean_runtime_s": runtime / args.runs,
        })
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sigcat",
        description="Categorical data clustering by likelihood-ratio "
                    "statistic minimization, with significance testing and "
                    "cluster-number estimation.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("cluster", help="cluster one dataset")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--objective", choices=["srs", "ee"], default="srs")
    p.add_argument("--algorithm", choices=["ksigcat", "kmodes", "entropy"],
                   default="ksigcat")
    p.add_argument("--output", required=True)
    p.add_argument("--failure-budget", type=int, default=None)
    p.add_argument("--max-iters", type=int, default=100,
                   help="iteration cap for kmodes")
    _add_loader_flags(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("pvalue", help="empirical p-value of a partition")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, default=100,
                   help="number of null datasets")
    p.add_argument("--method", choices=["swap", "randperm"], default="swap")
    p.add_argument("--swaps", type=int, default=1,
                   help="swaps per attribute for the swap method")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--failure-budget", type=int, default=None)
    _add_loader_flags(p)
    p.set_defaults(func=cmd_pvalue)

    p = sub.add_parser("estimate-k", help="estimate the number of clusters")
    p.add_argument("--input", required=True)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--r", type=int, default=20)
    p.add_argument("--method",
                   choices=["gapstar", "bic", "bkplot", "all"],
                   default="all")
    p.add_argument("--null-method", choices=["swap", "randperm"],
                   default="swap")
    p.add_argument("--swaps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--failure-budget", type=int, default=None)
    _add_loader_flags(p)
    p.set_defaults(func=cmd_estimate_k)

    p = sub.add_parser("eval", help="ACC/NMI between two label files")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("discretize",
                       help="make a numeric CSV categorical via per-column "
                            "1-D k-means")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--header", action="store_true")
    p.add_argument("--label-column", type=int, default=None,
                   help="column copied through to the output's last column")
    p.set_defaults(func=cmd_discretize)

    p = sub.add_parser("benchmark",
                       help="mean ACC/NMI/runtime over repeated runs")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--algorithm", choices=["ksigcat", "kmodes", "entropy"],
                   default="ksigcat")
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--k", type=int, default=None,
                   help="override the cluster count (default: number of "
                        "distinct ground-truth labels)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    _add_loader_flags(p)
    p.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
