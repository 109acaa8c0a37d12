"""Closed-form cell-occupancy probabilities under homogeneous Poisson noise.

With noise intensity ``lambda`` per unit volume, the noise count of a cube
of side ``delta`` in dimension ``m`` is Poisson with mean
``mu = lambda * delta**m``, independently across cubes.  From the per-cube
CDF we derive the probability that no pure-noise cube survives the
occupancy threshold (alpha) and that no shape-occupied cube falls below it
(beta), which together give the high-probability bottleneck bound
``sqrt(m) * delta`` on the reduced output.

Products over many cells are accumulated in log space; Poisson terms use
the recurrence term_{j+1} = term_j * mu / (j + 1) with a log-space fallback
when exp(-mu) underflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NoiseModel:
    """Noise intensity and the induced per-cell mean mu = lambda * delta**m."""

    lam: float
    mu: float

    def __post_init__(self):
        if self.lam < 0 or self.mu < 0:
            raise ValueError("intensity and per-cell mean must be nonnegative")

    @classmethod
    def from_grid(cls, lam: float, delta: float, m: int) -> "NoiseModel":
        if delta <= 0:
            raise ValueError("delta must be positive")
        return cls(lam=float(lam), mu=float(lam) * float(delta) ** m)


@dataclass
class ShapeOccupancy:
    """Shape point counts for every cell of a grid (zeros included)."""

    shape_counts: np.ndarray
    num_zero: int

    def __post_init__(self):
        self.shape_counts = np.asarray(self.shape_counts, dtype=np.int64)
        if np.any(self.shape_counts < 0):
            raise ValueError("shape counts must be nonnegative")
        if self.num_zero != int(np.sum(self.shape_counts == 0)):
            raise ValueError("num_zero inconsistent with shape_counts")

    @classmethod
    def from_counts(cls, counts) -> "ShapeOccupancy":
        counts = np.asarray(counts, dtype=np.int64)
        return cls(shape_counts=counts, num_zero=int(np.sum(counts == 0)))

    @property
    def n_cells(self) -> int:
        return int(self.shape_counts.shape[0])


@dataclass(frozen=True)
class StabilityCertificate:
    """(alpha, beta) failure probabilities, the implied confidence
    1 - (alpha + beta) (reported as-is, possibly negative), and the
    bottleneck bound sqrt(m) * delta."""

    alpha: float
    beta: float
    confidence: float
    bound: float


def _log_pois_cdf(mu: float, r: int) -> float:
    """log P(Pois(mu) <= r), log-space term summation (r >= 0, mu > 0)."""
    logs = [j * math.log(mu) - math.lgamma(j + 1) for j in range(r + 1)]
    peak = max(logs)
    return peak + math.log(math.fsum(math.exp(v - peak) for v in logs)) - mu


def pois_cdf(mu: float, r: int) -> float:
    """Poisson CDF F(r) = exp(-mu) * sum_{j<=r} mu^j / j!.

    Returns 0 for r < 0 (the standard convention, so that tail formulas
    with shifted arguments remain valid) and 1 at mu = 0 for r >= 0.
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if r < 0:
        return 0.0
    if mu == 0:
        return 1.0
    base = math.exp(-mu)
    if base == 0.0:
        return min(1.0, math.exp(_log_pois_cdf(mu, r)))
    term = base
    acc = term
    for j in range(1, r + 1):
        term *= mu / j
        acc += term
    return min(1.0, acc)


def pois_tail(mu: float, k: int) -> float:
    """P(Pois(mu) >= k); equals 1 for k = 0.

    Computed by direct upper-tail summation, which is more accurate than
    1 - cdf(k-1) when the tail is small.
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1.0
    if mu == 0:
        return 0.0
    log_term = k * math.log(mu) - math.lgamma(k + 1) - mu
    if log_term < -700:
        return 0.0
    term = math.exp(log_term)
    acc = 0.0
    j = k
    while term > acc * 1e-18 or j == k:
        acc += term
        j += 1
        term *= mu / j
        if term == 0.0:
            break
    return min(1.0, acc)


def prob_no_noise_cubes(mu: float, k: int, num_zero_shape_cells: int) -> float:
    """P(no pure-noise cube survives) = F(k-1) ** #{cells with no shape point}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if num_zero_shape_cells < 0:
        raise ValueError("cell count must be nonnegative")
    if num_zero_shape_cells == 0:
        return 1.0
    if mu == 0:
        return 1.0
    log_f = _log_pois_cdf(mu, k - 1)
    return math.exp(num_zero_shape_cells * log_f)


def prob_no_outshape_cubes(mu: float, k: int, shape_counts) -> float:
    """P(every shape-occupied cube survives the threshold).

    Product over cells of 1 - F(max(0, k - N_shape) - 1); cells with
    N_shape >= k contribute a factor of 1 (F(-1) = 0 convention).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    counts = np.asarray(shape_counts, dtype=np.int64)
    if counts.size and np.any(counts <= 0):
        raise ValueError("shape counts must be positive")
    log_acc = 0.0
    uniq, mult = np.unique(counts, return_counts=True)
    for cnt, n_cells in zip(uniq, mult):
        r = max(0, k - int(cnt))
        if r == 0:
            continue
        factor = 1.0 - pois_cdf(mu, r - 1)
        if factor <= 0.0:
            return 0.0
        log_acc += int(n_cells) * math.log(factor)
    return math.exp(log_acc)


def stability_certificate(
    occ: ShapeOccupancy, lam: float, delta: float, k: int, m: int
) -> StabilityCertificate:
    """Certificate for a given configuration: with probability at least
    1 - (alpha + beta) the reduced output is within bottleneck distance
    sqrt(m) * delta of the underlying shape in every degree."""
    model = NoiseModel.from_grid(lam, delta, m)
    alpha = 1.0 - prob_no_noise_cubes(model.mu, k, occ.num_zero)
    positive = occ.shape_counts[occ.shape_counts > 0]
    beta = 1.0 - prob_no_outshape_cubes(model.mu, k, positive)
    return StabilityCertificate(
        alpha=alpha,
        beta=beta,
        confidence=1.0 - (alpha + beta),
        bound=math.sqrt(m) * delta,
    )
