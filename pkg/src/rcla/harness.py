"""Seeded experiment driver: reduction variants versus the clean shape.

For each (noise ratio, trial) a shape sample and its noise are generated
from seeds derived as (master seed, ratio index, trial index), the
degree-1 diagram of the clean shape is computed, each requested variant is
run on the noisy cloud, and the bottleneck distance of its diagram to the
clean one is recorded.  Failed trials are excluded from the aggregates but
always reported.

Computing the Rips diagram of the full 1000-point clean shape is far
beyond desk scale, so the clean shape is first collapsed on a fine lattice
(side ``clean_delta``); by the reduction stability bound this perturbs the
clean diagram by at most sqrt(m) * clean_delta / 2, which is an order of
magnitude below the evaluation tolerances.  Set ``clean_delta=None`` to
compare against the raw shape diagram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .autoselect import AutoSelectConfig, auto_select
from .bottleneck import bottleneck_distance
from .persistence import PersistenceDiagram, vr_persistence_points
from .reduction import ReductionParams, cla_reduce, rcla_reduce
from .synth import UNIT_SQUARE, Box, derive_rng, make_noisy_dataset, sample_circle, sample_two_circles

VARIANTS = ("cla-auto", "rcla-auto", "cla-fixed", "rcla-fixed")

CIRCLE_CENTER = (0.5, 0.5)
CIRCLE_RADIUS = 0.28


@dataclass(frozen=True)
class ExperimentSpec:
    dataset: str = "two-circles"  # "circle" or "two-circles"
    n_shape: int = 1000
    ratios: tuple[float, ...] = (0.10,)
    trials: int = 20
    seed: int = 0
    variants: tuple[str, ...] = ("cla-auto", "rcla-auto")
    fixed_delta: float | None = None
    fixed_k: int = 1
    clean_delta: float | None = 0.02
    autoselect: AutoSelectConfig = field(default_factory=AutoSelectConfig)

    def __post_init__(self):
        if self.dataset not in ("circle", "two-circles"):
            raise ValueError("dataset must be 'circle' or 'two-circles'")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for r in self.ratios:
            if not 0.0 < r <= 1.0:
                raise ValueError("ratios must lie in (0, 1]")
        for v in self.variants:
            if v not in VARIANTS:
                raise ValueError(f"unknown variant {v!r}")
        if any(v.endswith("fixed") for v in self.variants) and self.fixed_delta is None:
            raise ValueError("fixed variants require fixed_delta")


@dataclass
class TrialResult:
    trial: int
    delta: float = math.nan
    k: int = 0
    distance: float = math.nan
    failed: bool = False
    error: str = ""


@dataclass
class VariantRatioResult:
    variant: str
    ratio: float
    trials: list[TrialResult] = field(default_factory=list)
    mean: float = math.nan
    sd: float = math.nan
    sd_degenerate: bool = False  # single successful trial; sd reported as 0
    n_failed: int = 0

    def distances(self) -> list[float]:
        return [t.distance for t in self.trials if not t.failed]

    def finalize(self):
        ds = self.distances()
        self.n_failed = sum(t.failed for t in self.trials)
        if not ds:
            self.mean = math.nan
            self.sd = math.nan
            return
        self.mean = float(np.mean(ds))
        if len(ds) == 1:
            self.sd = 0.0
            self.sd_degenerate = True
        else:
            self.sd = float(np.std(ds, ddof=1))


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    results: list[VariantRatioResult] = field(default_factory=list)

    def get(self, variant: str, ratio: float) -> VariantRatioResult:
        for res in self.results:
            if res.variant == variant and abs(res.ratio - ratio) < 1e-12:
                return res
        raise KeyError((variant, ratio))


def _shape_sample(spec: ExperimentSpec, rng) -> np.ndarray:
    if spec.dataset == "circle":
        return sample_circle(spec.n_shape, CIRCLE_CENTER, CIRCLE_RADIUS, rng)
    return sample_two_circles(spec.n_shape, rng)


def clean_shape_diagram(shape: np.ndarray, clean_delta: float | None) -> PersistenceDiagram:
    """Degree-1 diagram of the shape, computed on its fine-lattice
    collapse when clean_delta is given."""
    pts = shape
    if clean_delta is not None:
        pts = cla_reduce(shape, clean_delta, mode="center").points
    return vr_persistence_points(pts, max_degree=1)[1]


def _variant_params(variant: str, spec: ExperimentSpec, auto_result) -> tuple[float, int]:
    if variant == "rcla-auto":
        return auto_result.delta_star, auto_result.k_star
    if variant == "cla-auto":
        return auto_result.delta_star, 1
    if variant == "rcla-fixed":
        return spec.fixed_delta, spec.fixed_k
    return spec.fixed_delta, 1


def run_comparison(spec: ExperimentSpec, box: Box = UNIT_SQUARE) -> ExperimentReport:
    """Run every (variant, ratio) cell of the experiment grid."""
    report = ExperimentReport(spec=spec)
    cells = {
        (v, r): VariantRatioResult(variant=v, ratio=r)
        for r in spec.ratios
        for v in spec.variants
    }
    needs_auto = any(v.endswith("auto") for v in spec.variants)

    for ratio_idx, ratio in enumerate(spec.ratios):
        for trial in range(spec.trials):
            shape = _shape_sample(spec, derive_rng(spec.seed, ratio_idx, trial, 0))
            points, _ = make_noisy_dataset(
                shape, ratio, box, derive_rng(spec.seed, ratio_idx, trial, 1)
            )
            try:
                clean_pd1 = clean_shape_diagram(shape, spec.clean_delta)
                auto_result = auto_select(points, spec.autoselect) if needs_auto else None
            except Exception as exc:  # trial-level failure hits every variant
                for v in spec.variants:
                    cells[(v, ratio)].trials.append(
                        TrialResult(trial=trial, failed=True, error=str(exc))
                    )
                continue
            for variant in spec.variants:
                result = TrialResult(trial=trial)
                try:
                    delta, k = _variant_params(variant, spec, auto_result)
                    result.delta, result.k = float(delta), int(k)
                    reduced = rcla_reduce(
                        points, ReductionParams(delta=delta, k=k, mode="center")
                    )
                    pd1 = vr_persistence_points(reduced.points, max_degree=1)[1]
                    result.distance = float(bottleneck_distance(clean_pd1, pd1))
                except Exception as exc:
                    result.failed = True
                    result.error = str(exc)
                cells[(variant, ratio)].trials.append(result)

    for r in spec.ratios:
        for v in spec.variants:
            cell = cells[(v, r)]
            cell.finalize()
            report.results.append(cell)
    return report


def report_to_json(report: ExperimentReport) -> dict:
    spec = report.spec
    return {
        "schema_version": 1,
        "spec": {
            "dataset": spec.dataset,
            "n_shape": spec.n_shape,
            "ratios": list(spec.ratios),
            "trials": spec.trials,
            "seed": spec.seed,
            "variants": list(spec.variants),
            "fixed_delta": spec.fixed_delta,
            "fixed_k": spec.fixed_k,
            "clean_delta": spec.clean_delta,
        },
        "results": [
            {
                "variant": res.variant,
                "ratio": res.ratio,
                "mean": res.mean,
                "sd": res.sd,
                "sd_degenerate": res.sd_degenerate,
                "n_failed": res.n_failed,
                "trials": [
                    {
                        "trial": t.trial,
                        "delta": t.delta,
                        "k": t.k,
                        "distance": t.distance,
                        "failed": t.failed,
                        "error": t.error,
                    }
                    for t in res.trials
                ],
            }
            for res in report.results
        ],
    }


def emit_curve_csv(report: ExperimentReport, path) -> None:
    """Experiment curves as (ratio, variant, mean, sd) rows with a header."""
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["ratio", "variant", "mean", "sd"])
        for res in report.results:
            writer.writerow([res.ratio, res.variant, repr(res.mean), repr(res.sd)])
