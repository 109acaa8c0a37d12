"""Lattice-based point cloud reduction with occupancy thresholding.

One representative is kept per cube whose occupancy reaches the threshold
``k`` (survive iff count >= k).  ``k = 1`` recovers plain lattice reduction,
which keeps every non-empty cube.  Representatives are either the cube
center or the first input point that landed in the cube; output order is
lexicographic by cell key so downstream computations are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import CellKey, GridSpec, as_cloud, build_grid, cell_center, histogram

MODES = ("center", "sample")


@dataclass(frozen=True)
class ReductionParams:
    delta: float
    k: int = 1
    mode: str = "center"

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")


@dataclass
class ReducedCloud:
    """Reduction output: one representative per surviving cell plus the
    surviving keys and the number of input points that were dropped."""

    points: np.ndarray
    kept_cells: list[CellKey] = field(default_factory=list)
    dropped_count: int = 0
    grid: GridSpec | None = None

    @property
    def n_points(self) -> int:
        return int(self.points.shape[0])


def rcla_reduce(cloud, params: ReductionParams, grid: GridSpec | None = None) -> ReducedCloud:
    """Keep one representative per cube with occupancy >= params.k.

    A grid anchored at the data minimum is built from the cloud unless an
    explicit grid is supplied (e.g. to fix the partition of a known ambient
    domain).  No surviving cell yields an empty output, not an error.
    """
    pts = as_cloud(cloud)
    if grid is None:
        grid = build_grid(pts, params.delta)
    elif abs(grid.delta - params.delta) > 1e-12 * max(1.0, params.delta):
        raise ValueError("grid.delta does not match params.delta")
    hist = histogram(pts, grid)

    kept = sorted(key for key, cnt in hist.counts.items() if cnt >= params.k)
    dropped = pts.shape[0] - sum(hist.counts[key] for key in kept)

    if not kept:
        reps = np.empty((0, grid.dim), dtype=float)
    elif params.mode == "center":
        reps = np.array([cell_center(key, grid) for key in kept])
    else:
        reps = pts[[hist.first_index[key] for key in kept]].copy()
    return ReducedCloud(points=reps, kept_cells=kept, dropped_count=int(dropped), grid=grid)


def cla_reduce(cloud, delta: float, mode: str = "center", grid: GridSpec | None = None) -> ReducedCloud:
    """Plain lattice reduction: identical to rcla_reduce with k = 1."""
    return rcla_reduce(cloud, ReductionParams(delta=delta, k=1, mode=mode), grid=grid)
