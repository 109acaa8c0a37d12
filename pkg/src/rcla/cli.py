"""Command-line entry points.

Subcommands: synth, reduce, autoselect, ph, bottleneck, features,
certificate, experiment, obj-ingest.  Structured output is JSON; tabular
output is CSV with a header row.  On failure the process exits nonzero
after printing a machine-readable error JSON to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .autoselect import AutoSelectConfig, auto_select
from .bottleneck import bottleneck_distance
from .features import diagram_features
from .harness import (
    CIRCLE_CENTER,
    CIRCLE_RADIUS,
    ExperimentSpec,
    emit_curve_csv,
    report_to_json,
    run_comparison,
)
from .persistence import vr_persistence_points
from .poisson import ShapeOccupancy, stability_certificate
from .reduction import ReductionParams, rcla_reduce
from .synth import UNIT_SQUARE, derive_rng, make_noisy_dataset, sample_circle, sample_two_circles


def _out_path(args, name: str) -> Path:
    base = Path(args.out_dir) if args.out_dir else Path(".")
    path = Path(name)
    return path if path.is_absolute() else base / path


def _cmd_synth(args) -> int:
    rng = derive_rng(args.seed, 0)
    if args.kind == "circle":
        shape = sample_circle(args.n, CIRCLE_CENTER, CIRCLE_RADIUS, rng)
    else:
        shape = sample_two_circles(args.n, rng)
    if args.r > 0:
        points, labels = make_noisy_dataset(shape, args.r, UNIT_SQUARE, derive_rng(args.seed, 1))
    else:
        points, labels = shape, np.zeros(shape.shape[0], dtype=bool)
    io.save_points_csv(_out_path(args, args.out), points)
    if args.labels:
        io.save_labels_csv(_out_path(args, args.labels), labels)
    return 0


def _cmd_reduce(args) -> int:
    points = io.load_points_csv(args.infile)
    reduced = rcla_reduce(points, ReductionParams(delta=args.delta, k=args.k, mode=args.mode))
    out = _out_path(args, args.out)
    io.save_points_csv(out, reduced.points) if reduced.n_points else Path(out).write_text("")
    sidecar = Path(out).with_suffix(".json")
    sidecar.write_text(
        json.dumps(
            {
                "schema_version": io.SCHEMA_VERSION,
                "kept_cells": [list(key) for key in reduced.kept_cells],
                "dropped_count": reduced.dropped_count,
            },
            indent=2,
        )
    )
    return 0


def _autoselect_config(args) -> AutoSelectConfig:
    kwargs = {}
    if args.alpha_fp is not None:
        kwargs["alpha_fp"] = args.alpha_fp
    if args.eta is not None:
        kwargs["eta"] = args.eta
    if args.cr is not None:
        kwargs["c_r"] = args.cr
    if args.n_min is not None:
        kwargs["n_min"] = args.n_min
    return AutoSelectConfig(**kwargs)


def _cmd_autoselect(args) -> int:
    points = io.load_points_csv(args.infile)
    result = auto_select(points, _autoselect_config(args))
    payload = {
        "schema_version": io.SCHEMA_VERSION,
        "delta_star": result.delta_star,
        "k_star": result.k_star,
        "reports": [dataclasses.asdict(rep) for rep in result.reports],
    }
    text = json.dumps(payload, indent=2)
    if args.out:
        _out_path(args, args.out).write_text(text)
    else:
        print(text)
    return 0


def _cmd_ph(args) -> int:
    points = io.load_points_csv(args.infile)
    diagrams = vr_persistence_points(points, max_degree=args.max_dim, max_scale=args.max_scale)
    if args.scale == "dist":
        for d in diagrams:
            d.pairs = d.pairs * 2.0
    io.save_diagrams_json(_out_path(args, args.out), diagrams)
    return 0


def _cmd_bottleneck(args) -> int:
    d1 = {d.degree: d for d in io.load_diagrams_json(args.a)}
    d2 = {d.degree: d for d in io.load_diagrams_json(args.b)}
    if args.degree not in d1 or args.degree not in d2:
        raise ValueError(f"degree {args.degree} missing from input diagrams")
    dist = bottleneck_distance(d1[args.degree], d2[args.degree])
    print("inf" if np.isinf(dist) else repr(float(dist)))
    return 0


def _cmd_features(args) -> int:
    diagrams = io.load_diagrams_json(args.infile)
    fv = diagram_features(diagrams, cap=args.cap, drop_stats=tuple(args.drop_stat))
    io.save_features_csv(_out_path(args, args.out), fv)
    return 0


def _cmd_certificate(args) -> int:
    counts = np.loadtxt(args.shape_counts, delimiter=",", dtype=np.int64).ravel()
    occ = ShapeOccupancy.from_counts(counts)
    cert = stability_certificate(occ, args.lam, args.delta, args.k, args.dim)
    print(
        json.dumps(
            {
                "alpha": cert.alpha,
                "beta": cert.beta,
                "confidence": cert.confidence,
                "bound": cert.bound,
            },
            indent=2,
        )
    )
    return 0


def _cmd_experiment(args) -> int:
    spec = ExperimentSpec(
        dataset=args.dataset,
        n_shape=args.n_shape,
        ratios=tuple(float(r) for r in args.ratios.split(",")),
        trials=args.trials,
        seed=args.seed,
        variants=tuple(args.variants.split(",")),
        fixed_delta=args.fixed_delta,
        fixed_k=args.fixed_k,
        clean_delta=args.clean_delta,
    )
    report = run_comparison(spec)
    text = json.dumps(report_to_json(report), indent=2)
    if args.out:
        _out_path(args, args.out).write_text(text)
    else:
        print(text)
    if args.plot_csv:
        emit_curve_csv(report, _out_path(args, args.plot_csv))
    return 0


def _cmd_obj_ingest(args) -> int:
    points = io.read_obj_vertices(
        args.infile, sample=args.sample, seed=args.seed, center_unit=args.center_unit
    )
    io.save_points_csv(_out_path(args, args.out), points)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rcla", description=__doc__)
    parser.add_argument("--seed", type=int, default=0, help="master random seed")
    parser.add_argument("--threads", type=int, default=None, help="worker thread cap (reserved)")
    parser.add_argument("--out-dir", default=None, help="directory for output files")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic dataset")
    p.add_argument("--kind", choices=["circle", "two-circles"], required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--r", type=float, default=0.0, help="noise ratio")
    p.add_argument("--out", required=True)
    p.add_argument("--labels", default=None)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("reduce", help="lattice reduction with occupancy threshold")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mode", choices=["center", "sample"], default="center")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("autoselect", help="automatic (delta, k) selection")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--alpha-fp", type=float, default=None)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--cr", type=float, default=None)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_autoselect)

    p = sub.add_parser("ph", help="Rips persistence diagrams")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--max-dim", type=int, choices=[0, 1], default=1)
    p.add_argument("--max-scale", type=float, default=None)
    p.add_argument("--scale", choices=["eps", "dist"], default="eps")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ph)

    p = sub.add_parser("bottleneck", help="bottleneck distance between diagram files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--degree", type=int, default=1)
    p.set_defaults(func=_cmd_bottleneck)

    p = sub.add_parser("features", help="diagram descriptive-statistics vector")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--cap", type=float, required=True)
    p.add_argument("--drop-stat", action="append", default=[])
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_features)

    p = sub.add_parser("certificate", help="stability certificate for a configuration")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--shape-counts", required=True)
    p.set_defaults(func=_cmd_certificate)

    p = sub.add_parser("experiment", help="seeded variant comparison")
    p.add_argument("--dataset", choices=["circle", "two-circles"], required=True)
    p.add_argument("--n-shape", type=int, default=1000)
    p.add_argument("--ratios", default="0.10")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--variants", default="cla-auto,rcla-auto")
    p.add_argument("--fixed-delta", type=float, default=None)
    p.add_argument("--fixed-k", type=int, default=1)
    p.add_argument("--clean-delta", type=float, default=0.02)
    p.add_argument("--out", default=None)
    p.add_argument("--plot-csv", default=None)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("obj-ingest", help="extract OBJ vertices as a point cloud")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--center-unit", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_obj_ingest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
