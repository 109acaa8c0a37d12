import numpy as np
import pytest

from rcla.grid import build_grid, cell_keys, histogram
from rcla.reduction import ReductionParams, ReducedCloud, cla_reduce, rcla_reduce


def naive_reduce(pts, delta, k, mode):
    """Reference reduction: group by floor key against the data-min anchor,
    threshold, then emit representatives in lexicographic key order."""
    pts = np.asarray(pts, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    lo = pts.min(axis=0)
    extent = np.floor((pts.max(axis=0) - lo) / delta).astype(int) + 1
    groups = {}
    for idx, p in enumerate(pts):
        key = np.floor((p - lo) / delta).astype(int)
        key = tuple(int(min(j, e - 1)) for j, e in zip(key, extent))
        groups.setdefault(key, []).append(idx)
    reps = []
    kept = []
    for key in sorted(groups):
        if len(groups[key]) < k:
            continue
        kept.append(key)
        if mode == "center":
            reps.append(lo + (np.array(key) + 0.5) * delta)
        else:
            reps.append(pts[groups[key][0]])
    reps = np.array(reps).reshape(-1, pts.shape[1])
    dropped = len(pts) - sum(len(groups[key]) for key in kept)
    return reps, kept, dropped


def test_params_validation():
    with pytest.raises(ValueError):
        ReductionParams(delta=-1.0)
    with pytest.raises(ValueError):
        ReductionParams(delta=0.1, k=0)
    with pytest.raises(ValueError):
        ReductionParams(delta=0.1, mode="median")


def test_matches_naive_reduction_random_clouds():
    rng = np.random.default_rng(42)
    for trial in range(60):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(2, 40))
        pts = rng.random((n, m)) * rng.uniform(0.5, 3.0)
        delta = float(rng.uniform(0.05, 0.6))
        k = int(rng.integers(1, 4))
        mode = ("center", "sample")[trial % 2]
        got = rcla_reduce(pts, ReductionParams(delta=delta, k=k, mode=mode))
        want_pts, want_keys, want_dropped = naive_reduce(pts, delta, k, mode)
        assert got.kept_cells == want_keys
        assert got.dropped_count == want_dropped
        assert np.allclose(got.points, want_pts, atol=1e-12)


def test_kept_cells_sorted_and_consistent():
    rng = np.random.default_rng(3)
    pts = rng.random((300, 2))
    out = rcla_reduce(pts, ReductionParams(delta=0.1, k=2))
    assert out.kept_cells == sorted(out.kept_cells)
    assert out.n_points == len(out.kept_cells)
    hist = histogram(pts, out.grid)
    for key in out.kept_cells:
        assert hist.counts[key] >= 2


def test_center_mode_reps_are_cell_centers():
    rng = np.random.default_rng(4)
    pts = rng.random((100, 2))
    out = rcla_reduce(pts, ReductionParams(delta=0.25, k=1, mode="center"))
    keys = cell_keys(out.points, out.grid)
    assert [tuple(row) for row in keys] == out.kept_cells
    # each center is within half a cell diagonal of the cell's points
    offsets = (out.points - out.grid.origin) / out.grid.delta - 0.5
    assert np.allclose(offsets, np.round(offsets))


def test_sample_mode_reps_are_input_points():
    rng = np.random.default_rng(5)
    pts = rng.random((80, 3))
    out = rcla_reduce(pts, ReductionParams(delta=0.3, k=1, mode="sample"))
    seen = {tuple(p) for p in pts}
    assert all(tuple(p) in seen for p in out.points)


def test_empty_output_is_not_an_error():
    pts = np.array([[0.0, 0.0], [1.0, 1.0]])
    out = rcla_reduce(pts, ReductionParams(delta=0.4, k=5))
    assert out.n_points == 0
    assert out.dropped_count == 2
    assert out.points.shape == (0, 2)


def test_explicit_grid_fixes_the_partition():
    pts = np.array([[0.31, 0.07], [0.32, 0.08], [0.77, 0.74]])
    grid = build_grid(np.array([[0.0, 0.0], [1.0, 1.0]]), 0.1)
    out = rcla_reduce(pts, ReductionParams(delta=0.1, k=1), grid=grid)
    assert out.kept_cells == [(3, 0), (7, 7)]
    with pytest.raises(ValueError, match="does not match"):
        rcla_reduce(pts, ReductionParams(delta=0.2), grid=grid)


def test_cla_is_rcla_with_k1():
    rng = np.random.default_rng(6)
    pts = rng.random((60, 2))
    a = cla_reduce(pts, 0.15, mode="sample")
    b = rcla_reduce(pts, ReductionParams(delta=0.15, k=1, mode="sample"))
    assert np.array_equal(a.points, b.points)
    assert a.kept_cells == b.kept_cells


def test_monotone_in_k():
    rng = np.random.default_rng(7)
    pts = rng.random((400, 2))
    prev = None
    for k in range(1, 6):
        kept = set(rcla_reduce(pts, ReductionParams(delta=0.1, k=k)).kept_cells)
        if prev is not None:
            assert kept <= prev
        prev = kept
