"""Seeded generators for the synthetic evaluation datasets.

Circle and two-circle shape samples plus background noise, either as a
homogeneous Poisson point process (random count) or as a fixed-count
uniform sample tied to a noise ratio.  All generators are deterministic
functions of a (seed, stream) pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# two-circle geometry defaults: disjoint circles inside the unit square
# with roughly a 3:1 radius ratio
TWO_CIRCLES_LARGE_CENTER = (0.5, 0.55)
TWO_CIRCLES_LARGE_RADIUS = 0.3
TWO_CIRCLES_SMALL_CENTER = (0.25, 0.2)
TWO_CIRCLES_SMALL_RADIUS = 0.1
TWO_CIRCLES_LARGE_FRACTION = 0.85


@dataclass(frozen=True)
class Box:
    """Axis-aligned box with positive volume."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lo", np.asarray(self.lo, dtype=float))
        object.__setattr__(self, "hi", np.asarray(self.hi, dtype=float))
        if self.lo.shape != self.hi.shape or self.lo.ndim != 1:
            raise ValueError("lo and hi must be 1-D vectors of equal length")
        if np.any(self.lo >= self.hi):
            raise ValueError("box must have positive extent along every axis")

    @property
    def dim(self) -> int:
        return self.lo.shape[0]

    @property
    def volume(self) -> float:
        return float(np.prod(self.hi - self.lo))


UNIT_SQUARE = Box(lo=np.zeros(2), hi=np.ones(2))


def derive_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for (seed, stream): identical arguments give
    an identical byte stream."""
    return np.random.default_rng(np.random.SeedSequence((int(seed),) + tuple(int(s) for s in stream)))


def sample_circle(n: int, center, radius: float, rng: np.random.Generator) -> np.ndarray:
    """n points exactly on the circle, angles uniform in [0, 2*pi)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if radius <= 0:
        raise ValueError("radius must be positive")
    center = np.asarray(center, dtype=float)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return center + radius * np.column_stack([np.cos(theta), np.sin(theta)])


def sample_two_circles(
    n: int,
    rng: np.random.Generator,
    large_center=TWO_CIRCLES_LARGE_CENTER,
    large_radius: float = TWO_CIRCLES_LARGE_RADIUS,
    small_center=TWO_CIRCLES_SMALL_CENTER,
    small_radius: float = TWO_CIRCLES_SMALL_RADIUS,
) -> np.ndarray:
    """Two disjoint circles in the unit square; 85% of the points go to the
    larger circle, the rest to the smaller one."""
    n_large = int(round(TWO_CIRCLES_LARGE_FRACTION * n))
    big = sample_circle(n_large, large_center, large_radius, rng)
    small = sample_circle(n - n_large, small_center, small_radius, rng)
    return np.vstack([big, small])


def hppp_box(lam: float, box: Box, rng: np.random.Generator) -> np.ndarray:
    """Homogeneous Poisson point process: Poisson(lam * volume) points,
    each independently uniform in the box."""
    if lam < 0:
        raise ValueError("intensity must be nonnegative")
    count = int(rng.poisson(lam * box.volume)) if lam > 0 else 0
    return rng.uniform(box.lo, box.hi, size=(count, box.dim))


def uniform_box(n: int, box: Box, rng: np.random.Generator) -> np.ndarray:
    """Fixed-count uniform sample (a Poisson process conditioned on its
    count is i.i.d. uniform)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return rng.uniform(box.lo, box.hi, size=(n, box.dim))


def make_noisy_dataset(
    shape_points, r: float, box: Box, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Append round(r * |shape|) uniform noise points to a copy of the shape.

    Returns (points, labels); labels is a parallel boolean vector, True for
    noise, intended for evaluation only.
    """
    shape_points = np.asarray(shape_points, dtype=float)
    if shape_points.shape[0] == 0:
        raise ValueError("shape must be nonempty")
    if r < 0:
        raise ValueError("noise ratio must be nonnegative")
    n_noise = int(round(r * shape_points.shape[0]))
    noise = uniform_box(n_noise, box, rng)
    points = np.vstack([shape_points, noise])
    labels = np.zeros(points.shape[0], dtype=bool)
    labels[shape_points.shape[0]:] = True
    return points, labels
