"""Automatic (delta, k) selection on a noisy circle.

The selector scores a geometric ladder of candidate delta values: for each
one it bounds the per-cube noise mean from the empty-cell fraction, picks
the smallest k that controls expected false-positive cubes, and ranks the
survivors by a spacing-uniformity objective.

Run: python3 demos/02_autoselect_circle.py
"""

import rcla

shape = rcla.sample_circle(1000, (0.5, 0.5), 0.28, rcla.derive_rng(11, 0))
cloud, _ = rcla.make_noisy_dataset(
    shape, r=0.15, box=rcla.UNIT_SQUARE, rng=rcla.derive_rng(11, 1)
)

sel = rcla.auto_select(cloud)
print(f"selected delta = {sel.delta_star:.5f}, k = {sel.k_star}\n")

print(f"{'delta':>9} {'k':>2} {'reps':>5} {'mu_U':>8} {'J':>9}  status")
for rep in sel.reports:
    status = f"rejected ({rep.reason})" if rep.rejected else "ok"
    if rep.delta == sel.delta_star and not rep.rejected:
        status = "ok  <-- winner"
    print(f"{rep.delta:9.5f} {rep.k:2d} {rep.n_reps:5d} "
          f"{rep.mu_upper:8.4f} {rep.J:9.5f}  {status}")

out = rcla.rcla_reduce(cloud, rcla.ReductionParams(sel.delta_star, sel.k_star))
print(f"\nreduced cloud: {out.points.shape[0]} representatives "
      f"(from {cloud.shape[0]} input points)")
