"""Stability certificates under homogeneous Poisson background noise.

Given the grid occupancy of the clean shape, a noise intensity lambda, and
reduction parameters (delta, k), the certificate bounds two failure modes:
alpha, the chance that noise alone fills some empty cube to k points, and
beta, the chance that a shape cube fails to reach k.  When neither happens
the reduced output is within bottleneck distance sqrt(m)*delta of the
shape, so the bound holds with probability at least 1 - (alpha + beta).

Run: python3 demos/03_stability_certificate.py
"""

import math

import rcla

delta, m = 0.1, 2
shape = rcla.sample_circle(2000, (0.5, 0.5), 0.28, rcla.derive_rng(3, 0))
grid = rcla.build_grid(shape, delta)
hist = rcla.histogram(shape, grid)

counts = [0] * int(grid.extent.prod())
keys = sorted(hist.counts)
for i, key in enumerate(keys):
    counts[i] = hist.counts[key]
occ = rcla.ShapeOccupancy.from_counts(counts)
print(f"grid: {occ.n_cells} cells, {occ.n_cells - occ.num_zero} occupied "
      f"by the shape, min occupancy {min(hist.counts.values())}")

print(f"\n{'lambda':>7} {'k':>2} {'alpha':>9} {'beta':>9} {'confidence':>11}")
for lam, k in [(1.0, 2), (3.0, 2), (3.0, 3), (10.0, 3), (10.0, 5)]:
    cert = rcla.stability_certificate(occ, lam=lam, delta=delta, k=k, m=m)
    print(f"{lam:7.1f} {k:2d} {cert.alpha:9.5f} {cert.beta:9.5f} "
          f"{cert.confidence:11.5f}")

cert = rcla.stability_certificate(occ, lam=3.0, delta=delta, k=2, m=m)
print(f"\nat lambda=3, k=2: with probability >= {cert.confidence:.4f} the "
      f"reduced cloud is within\nbottleneck distance "
      f"sqrt({m})*{delta} = {cert.bound:.4f} of the shape "
      f"(= {math.sqrt(m) * delta:.4f})")
