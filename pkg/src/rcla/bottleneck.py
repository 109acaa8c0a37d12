"""Exact bottleneck distance between persistence diagrams.

Finite and infinite bars are matched in separate sub-problems: infinite
bars pair by sorted birth (a count mismatch makes the distance +inf),
finite bars by a binary search over the finite set of candidate costs
(all pairwise sup-distances and all half-persistences) with a bipartite
perfect-matching feasibility test at each step, so the result is exact
with no tolerance parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .persistence import PersistenceDiagram


@dataclass
class Matching:
    """Partial bijection realizing the bottleneck cost: index pairs between
    the two diagrams plus the indices matched to the diagonal."""

    pairs: list[tuple[int, int]] = field(default_factory=list)
    unmatched_1: list[int] = field(default_factory=list)
    unmatched_2: list[int] = field(default_factory=list)


def interval_inf_dist(i1, i2=None) -> float:
    """Sup-distance between two bars, or half the persistence against the
    diagonal when the second argument is None."""
    b1, d1 = float(i1[0]), float(i1[1])
    if not d1 > b1:
        raise ValueError("interval must satisfy birth < death")
    if i2 is None:
        return np.inf if np.isinf(d1) else (d1 - b1) / 2.0
    b2, d2 = float(i2[0]), float(i2[1])
    if not d2 > b2:
        raise ValueError("interval must satisfy birth < death")
    if np.isinf(d1) and np.isinf(d2):
        return abs(b1 - b2)
    if np.isinf(d1) or np.isinf(d2):
        return np.inf
    return max(abs(b1 - b2), abs(d1 - d2))


def _as_pairs(diagram) -> np.ndarray:
    if isinstance(diagram, PersistenceDiagram):
        return diagram.pairs
    return np.asarray(diagram, dtype=float).reshape(-1, 2)


def _feasible(A: np.ndarray, p1: np.ndarray, p2: np.ndarray, c: float):
    """Perfect matching test at cost threshold c.

    Left side: diagram-1 points then diagonal copies of diagram-2 points;
    right side: diagram-2 points then diagonal copies of diagram-1 points.
    A real point may take its own diagonal copy at half its persistence;
    diagonal copies pair with each other for free.
    """
    n1, n2 = A.shape
    N = n1 + n2
    rows = []
    cols = []
    rr, cc = np.nonzero(A <= c)
    rows.append(rr)
    cols.append(cc)
    idx = np.nonzero(p1 <= c)[0]
    rows.append(idx)
    cols.append(n2 + idx)
    jdx = np.nonzero(p2 <= c)[0]
    rows.append(n1 + jdx)
    cols.append(jdx)
    if n1 and n2:
        lj, rk = np.meshgrid(np.arange(n2), np.arange(n1), indexing="ij")
        rows.append(n1 + lj.ravel())
        cols.append(n2 + rk.ravel())
    rows = np.concatenate(rows) if rows else np.empty(0, dtype=int)
    cols = np.concatenate(cols) if cols else np.empty(0, dtype=int)
    graph = csr_matrix(
        (np.ones(rows.shape[0], dtype=np.int8), (rows, cols)), shape=(N, N)
    )
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0)), match


def _finite_bottleneck(f1: np.ndarray, f2: np.ndarray):
    n1, n2 = f1.shape[0], f2.shape[0]
    p1 = (f1[:, 1] - f1[:, 0]) / 2.0 if n1 else np.empty(0)
    p2 = (f2[:, 1] - f2[:, 0]) / 2.0 if n2 else np.empty(0)
    if n1 == 0 and n2 == 0:
        return 0.0, None
    if n1 and n2:
        A = np.maximum(
            np.abs(f1[:, 0][:, None] - f2[:, 0][None, :]),
            np.abs(f1[:, 1][:, None] - f2[:, 1][None, :]),
        )
    else:
        A = np.empty((n1, n2))
    candidates = np.unique(np.concatenate([A.ravel(), p1, p2, [0.0]]))
    lo, hi = 0, candidates.shape[0] - 1
    ok, match = _feasible(A, p1, p2, candidates[hi])
    assert ok, "matching at the maximal candidate cost must exist"
    best_match = match
    while lo < hi:
        mid = (lo + hi) // 2
        ok, match = _feasible(A, p1, p2, candidates[mid])
        if ok:
            hi = mid
            best_match = match
        else:
            lo = mid + 1
    return float(candidates[hi]), best_match


def bottleneck_distance(d1, d2, return_matching: bool = False):
    """Exact bottleneck distance; +inf iff the diagrams carry different
    numbers of infinite bars.  Raises on a degree mismatch when both
    arguments are PersistenceDiagram objects."""
    if isinstance(d1, PersistenceDiagram) and isinstance(d2, PersistenceDiagram):
        if d1.degree != d2.degree:
            raise ValueError("diagrams must have the same degree")
    P1 = _as_pairs(d1)
    P2 = _as_pairs(d2)
    fin1 = P1[np.isfinite(P1[:, 1])] if P1.size else P1.reshape(0, 2)
    fin2 = P2[np.isfinite(P2[:, 1])] if P2.size else P2.reshape(0, 2)
    inf1 = P1[~np.isfinite(P1[:, 1])] if P1.size else P1.reshape(0, 2)
    inf2 = P2[~np.isfinite(P2[:, 1])] if P2.size else P2.reshape(0, 2)

    if inf1.shape[0] != inf2.shape[0]:
        if return_matching:
            return np.inf, Matching(
                unmatched_1=list(range(P1.shape[0])),
                unmatched_2=list(range(P2.shape[0])),
            )
        return np.inf
    if inf1.shape[0]:
        cost_inf = float(
            np.max(np.abs(np.sort(inf1[:, 0]) - np.sort(inf2[:, 0])))
        )
    else:
        cost_inf = 0.0

    cost_fin, match = _finite_bottleneck(fin1, fin2)
    dist = max(cost_fin, cost_inf)
    if not return_matching:
        return dist

    matching = Matching()
    idx1 = np.nonzero(np.isfinite(P1[:, 1]))[0]
    idx2 = np.nonzero(np.isfinite(P2[:, 1]))[0]
    n1, n2 = fin1.shape[0], fin2.shape[0]
    if match is not None:
        for i in range(n1):
            j = match[i]
            if 0 <= j < n2:
                matching.pairs.append((int(idx1[i]), int(idx2[j])))
            else:
                matching.unmatched_1.append(int(idx1[i]))
        paired2 = {j for _, j in matching.pairs}
        matching.unmatched_2.extend(int(j) for j in idx2 if int(j) not in paired2)
    # infinite bars pair in sorted birth order
    o1 = np.nonzero(~np.isfinite(P1[:, 1]))[0]
    o2 = np.nonzero(~np.isfinite(P2[:, 1]))[0]
    for a, b in zip(o1[np.argsort(P1[o1, 0])], o2[np.argsort(P2[o2, 0])]):
        matching.pairs.append((int(a), int(b)))
    return dist, matching
