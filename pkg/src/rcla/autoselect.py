"""Automatic selection of the lattice size delta and occupancy threshold k.

Candidate deltas come from quantiles of pooled q-nearest-neighbor
distances.  For each candidate, the number of empty grid cells gives a
Jeffreys-posterior upper bound on the per-cell noise mean, which in turn
fixes the smallest threshold k whose expected number of surviving
noise-only cells stays within a false-positive budget.  Candidates are
scored by a spacing-uniformity objective with a connectivity penalty and
the minimizer wins (ties broken toward the smaller delta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .grid import as_cloud, build_grid, histogram
from .poisson import pois_tail
from .reduction import ReductionParams, rcla_reduce
from .special import beta_quantile


@dataclass(frozen=True)
class AutoSelectConfig:
    neighbor_orders: tuple[int, ...] = (5, 8, 16)
    q_lo: float = 0.01
    q_hi: float = 0.70
    n_candidates: int = 20
    gamma: float = 0.05
    alpha_fp: float = 1.0
    eta: float = 1.0
    c_r: float = 1.5
    n_min: int = 50

    def __post_init__(self):
        if not 0.0 < self.q_lo < self.q_hi <= 1.0:
            raise ValueError("require 0 < q_lo < q_hi <= 1")
        if self.n_candidates < 2:
            raise ValueError("need at least 2 candidates")
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")
        if self.alpha_fp <= 0:
            raise ValueError("alpha_fp must be positive")
        if self.eta < 0:
            raise ValueError("eta must be nonnegative")
        if self.c_r <= 0:
            raise ValueError("c_r must be positive")
        if self.n_min < 1:
            raise ValueError("n_min must be >= 1")


@dataclass
class CandidateReport:
    delta: float
    n_cells: int  # M
    n_empty: int  # Z0
    p_lower: float
    mu_upper: float
    k: int
    n_reps: int
    nn_mean: float = math.nan
    nn_sd: float = math.nan
    beta0: int = 0
    J: float = math.nan
    rejected: bool = False
    reason: str = ""


@dataclass
class AutoSelectResult:
    delta_star: float
    k_star: int
    reports: list[CandidateReport] = field(default_factory=list)


class NoFeasibleCandidateError(RuntimeError):
    """Every candidate delta was rejected; carries all candidate reports."""

    def __init__(self, reports: list[CandidateReport]):
        super().__init__("no feasible candidate")
        self.reports = reports


def knn_distance(cloud, q: int) -> np.ndarray:
    """Distance from each point to its q-th nearest other point (Euclidean,
    self excluded), aligned with input order."""
    pts = as_cloud(cloud)
    if q < 1:
        raise ValueError("q must be a positive integer")
    if pts.shape[0] <= q:
        raise ValueError("not enough points")
    tree = cKDTree(pts)
    dist, _ = tree.query(pts, k=q + 1)
    return dist[:, q]


def delta_candidates(cloud, config: AutoSelectConfig | None = None) -> np.ndarray:
    """Geometric grid of candidate deltas between the q_lo and q_hi
    quantiles of the pooled q-NN distances."""
    config = config or AutoSelectConfig()
    pts = as_cloud(cloud)
    pooled = np.concatenate([knn_distance(pts, q) for q in config.neighbor_orders])
    if not np.any(pooled > 0):
        raise ValueError("degenerate cloud")
    a = float(np.quantile(pooled, config.q_lo))
    b = float(np.quantile(pooled, config.q_hi))
    if a <= 0:
        a = float(pooled[pooled > 0].min())
        b = max(a, b)
    if b <= a:
        return np.full(config.n_candidates, a)
    return np.geomspace(a, b, config.n_candidates)


def mu_upper(Z0: int, M: int, gamma: float) -> float:
    """Credible upper bound on the per-cell noise mean from the empty-cell
    count: -ln of the gamma-quantile of Beta(Z0 + 1/2, M - Z0 + 1/2)."""
    if M < 1 or not 0 <= Z0 <= M:
        raise ValueError("require 0 <= Z0 <= M with M >= 1")
    p_lower = beta_quantile(Z0 + 0.5, M - Z0 + 0.5, gamma)
    return -math.log(p_lower)


def select_k(M: int, mu_U: float, alpha_fp: float) -> int:
    """Smallest k >= 1 with M * P(Pois(mu_U) >= k) <= alpha_fp."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if mu_U < 0:
        raise ValueError("mu_U must be nonnegative")
    if alpha_fp <= 0:
        raise ValueError("alpha_fp must be positive")
    k = 1
    while M * pois_tail(mu_U, k) > alpha_fp:
        k += 1
    return k


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.n_components = n

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.n_components -= 1


def betti0_radius_graph(points, radius: float) -> int:
    """Connected components of the graph joining points at Euclidean
    distance <= radius (inclusive)."""
    pts = as_cloud(points)
    if radius <= 0:
        raise ValueError("radius must be positive")
    tree = cKDTree(pts)
    uf = _UnionFind(pts.shape[0])
    for i, j in tree.query_pairs(radius):
        uf.union(i, j)
    return uf.n_components


def quality_J(reps, delta: float, config: AutoSelectConfig | None = None) -> float:
    """Spacing objective sd * mean of 1-NN distances among representatives
    plus eta * (component count - 1) at radius c_r * delta."""
    config = config or AutoSelectConfig()
    pts = as_cloud(reps)
    if pts.shape[0] < 2:
        raise ValueError("need at least 2 representatives")
    nn = knn_distance(pts, 1)
    mean = float(np.mean(nn))
    sd = float(np.std(nn))  # population standard deviation
    beta0 = betti0_radius_graph(pts, config.c_r * delta)
    return sd * mean + config.eta * (beta0 - 1)


def auto_select(cloud, config: AutoSelectConfig | None = None) -> AutoSelectResult:
    """Evaluate every candidate delta and return the objective minimizer.

    Each report records the grid size, empty-cell count, noise bound,
    chosen k, representative statistics, and the objective value, whether
    the candidate was rejected or not.
    """
    config = config or AutoSelectConfig()
    pts = as_cloud(cloud)
    reports: list[CandidateReport] = []
    best: CandidateReport | None = None

    for delta in delta_candidates(pts, config):
        delta = float(delta)
        grid = build_grid(pts, delta)
        M = grid.n_cells
        Z0 = M - len(histogram(pts, grid).counts)
        p_lower = beta_quantile(Z0 + 0.5, M - Z0 + 0.5, config.gamma)
        mu_U = -math.log(p_lower)
        k = select_k(M, mu_U, config.alpha_fp)
        reduced = rcla_reduce(pts, ReductionParams(delta=delta, k=k, mode="center"), grid=grid)
        report = CandidateReport(
            delta=delta, n_cells=M, n_empty=Z0, p_lower=p_lower,
            mu_upper=mu_U, k=k, n_reps=reduced.n_points,
        )
        if reduced.n_points < max(config.n_min, 2):
            report.rejected = True
            report.reason = "too few representatives"
            reports.append(report)
            continue
        nn = knn_distance(reduced.points, 1)
        report.nn_mean = float(np.mean(nn))
        report.nn_sd = float(np.std(nn))
        report.beta0 = betti0_radius_graph(reduced.points, config.c_r * delta)
        report.J = report.nn_sd * report.nn_mean + config.eta * (report.beta0 - 1)
        reports.append(report)
        if best is None or report.J < best.J:  # strict: ties keep smaller delta
            best = report

    if best is None:
        raise NoFeasibleCandidateError(reports)
    return AutoSelectResult(delta_star=best.delta, k_star=best.k, reports=reports)
