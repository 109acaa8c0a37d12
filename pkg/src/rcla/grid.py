"""Half-open axis-aligned cube partitions of a point cloud's bounding region.

A grid is an anchored lattice of half-open cubes of side length ``delta``.
The anchor (``origin``) is the coordinate-wise minimum of the data, so the
cell decomposition is reproducible and independent of any ambient-domain
convention.  Cells are addressed by integer index vectors; a point belongs
to cell ``j`` iff ``origin + j*delta <= p < origin + (j+1)*delta``
componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

CellKey = tuple[int, ...]


def as_cloud(points) -> np.ndarray:
    """Coerce input to an (n, m) float array and validate it.

    1-D input is treated as n points on the real line.  Raises ValueError
    for empty input or non-finite coordinates.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2:
        raise ValueError("point cloud must be a 2-D array of shape (n, m)")
    if pts.shape[0] == 0:
        raise ValueError("empty input")
    if pts.shape[1] < 1:
        raise ValueError("ambient dimension must be at least 1")
    if not np.all(np.isfinite(pts)):
        raise ValueError("point coordinates must be finite")
    return pts


@dataclass(frozen=True)
class GridSpec:
    """Anchored cube partition: origin of cell (0, ..., 0), side length, and
    number of cells along each axis."""

    origin: np.ndarray
    delta: float
    extent: np.ndarray  # positive integers, cells per axis

    def __post_init__(self):
        object.__setattr__(self, "origin", np.asarray(self.origin, dtype=float))
        object.__setattr__(self, "extent", np.asarray(self.extent, dtype=np.int64))
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.origin.ndim != 1 or self.extent.shape != self.origin.shape:
            raise ValueError("origin and extent must be 1-D vectors of equal length")
        if np.any(self.extent < 1):
            raise ValueError("extent entries must be >= 1")

    @property
    def dim(self) -> int:
        return self.origin.shape[0]

    @property
    def n_cells(self) -> int:
        """Total cell count M of the bounding box."""
        return int(np.prod(self.extent.astype(object)))


@dataclass
class CellHistogram:
    """Per-cell occupancy of a cloud: point counts and, for each occupied
    cell, the input index of the first point that landed in it."""

    counts: dict[CellKey, int]
    first_index: dict[CellKey, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def cell_of(p, grid: GridSpec) -> CellKey:
    """Cell index of a single point: floor((p - origin) / delta) per axis.

    Keys outside the grid extent are permitted here; only histogram
    construction rejects them.
    """
    p = np.asarray(p, dtype=float)
    idx = np.floor((p - grid.origin) / grid.delta).astype(np.int64)
    return tuple(int(j) for j in idx)


def cell_center(key: CellKey, grid: GridSpec) -> np.ndarray:
    """Center of the cube with the given index: origin + (j + 1/2)*delta."""
    idx = np.asarray(key, dtype=float)
    return grid.origin + (idx + 0.5) * grid.delta


def build_grid(cloud, delta: float) -> GridSpec:
    """Anchor a grid at the coordinate-wise data minimum.

    The extent gets a +1 margin per axis so that every point of the cloud,
    including those exactly on the upper data bound, maps to a key inside
    the extent.
    """
    pts = as_cloud(cloud)
    if delta <= 0:
        raise ValueError("delta must be positive")
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    extent = np.floor((hi - lo) / delta).astype(np.int64) + 1
    return GridSpec(origin=lo, delta=float(delta), extent=extent)


def cell_keys(cloud, grid: GridSpec, clamp_boundary: bool = True) -> np.ndarray:
    """Vectorized cell indices for a whole cloud, shape (n, m) int64.

    With ``clamp_boundary`` a key exactly equal to the extent (a point
    sitting on the closing face of the last cell due to floating-point
    arithmetic) is clamped into the last cell.
    """
    pts = as_cloud(cloud)
    keys = np.floor((pts - grid.origin) / grid.delta).astype(np.int64)
    if clamp_boundary:
        at_bound = keys == grid.extent
        keys[at_bound] -= 1
    return keys


def histogram(cloud, grid: GridSpec) -> CellHistogram:
    """Count points per cell; rejects points outside the grid extent.

    Conservation: the counts sum to the cloud size.
    """
    keys = cell_keys(cloud, grid)
    if np.any(keys < 0) or np.any(keys >= grid.extent):
        raise ValueError("point outside grid")
    uniq, first, counts = np.unique(
        keys, axis=0, return_index=True, return_counts=True
    )
    counts_map: dict[CellKey, int] = {}
    first_map: dict[CellKey, int] = {}
    for row, idx, cnt in zip(uniq, first, counts):
        key = tuple(int(j) for j in row)
        counts_map[key] = int(cnt)
        first_map[key] = int(idx)
    return CellHistogram(counts=counts_map, first_index=first_map)
