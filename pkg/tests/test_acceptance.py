"""Acceptance gate: one printed pass/fail line per criterion.

Comparisons against published absolute distances are made in the distance
scale (twice the eps scale used internally), the convention under which
the reference values are reproducible; theorem-bound checks use the eps
scale in which the bounds are stated.  See the README for the scale
conventions.
"""

import math
import time

import numpy as np
import pytest

from oracles import (
    brute_bottleneck,
    naive_vr_diagrams,
    pois_cdf_highprec,
)
import rcla
from rcla.bottleneck import bottleneck_distance
from rcla.grid import GridSpec, histogram
from rcla.persistence import distance_matrix, vr_persistence, vr_persistence_points
from rcla.poisson import ShapeOccupancy, pois_cdf, stability_certificate
from rcla.reduction import ReductionParams, cla_reduce, rcla_reduce
from rcla.special import beta_quantile, betainc_reg
from rcla.synth import UNIT_SQUARE, derive_rng, hppp_box


def report(num, name, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"[ACCEPTANCE {num}] {name}: {status} ({detail})")
    assert ok, f"criterion {num} ({name}): {detail}"


def test_criterion_1_circle_direction():
    t0 = time.time()
    spec = rcla.ExperimentSpec(
        dataset="circle", ratios=(0.10,), trials=20, seed=0,
        variants=("cla-auto", "rcla-auto"),
    )
    rep = rcla.run_comparison(spec)
    # distance-scale means (twice the eps-scale bottleneck values)
    cla = 2.0 * rep.get("cla-auto", 0.10).mean
    rcl = 2.0 * rep.get("rcla-auto", 0.10).mean
    elapsed = time.time() - t0
    ok = (rcl < cla) and (rcl < 0.10) and (cla > 0.15) and (elapsed < 120.0)
    report(
        1, "circle n=1000 r=0.10, RCLA vs CLA at the auto delta", ok,
        f"rcla mean {rcl:.6f} < 0.10, cla mean {cla:.6f} > 0.15, "
        f"runtime {elapsed:.1f}s < 120s",
    )


TWO_CIRCLE_BANDS = {
    0.10: (0.051069, 0.016707),
    0.15: (0.052086, 0.012052),
    0.20: (0.055251, 0.012688),
    0.25: (0.051093, 0.012029),
    0.30: (0.057440, 0.013408),
}


def test_criterion_2_two_circle_bands():
    t0 = time.time()
    ratios = tuple(sorted(TWO_CIRCLE_BANDS))
    spec = rcla.ExperimentSpec(
        dataset="two-circles", ratios=ratios, trials=20, seed=0,
        variants=("rcla-auto",),
    )
    rep = rcla.run_comparison(spec)
    ok = True
    parts = []
    for r in ratios:
        mu, sd = TWO_CIRCLE_BANDS[r]
        lo, hi = mu - 3 * sd, mu + 3 * sd
        cell = rep.get("rcla-auto", r)
        mean_d = 2.0 * cell.mean
        sd_d = 2.0 * cell.sd
        in_band = lo <= mean_d <= hi and sd_d < 0.05 and cell.n_failed == 0
        ok = ok and in_band
        parts.append(f"r={r}: {mean_d:.4f} in [{lo:.4f},{hi:.4f}] sd {sd_d:.4f}")
    elapsed = time.time() - t0
    ok = ok and elapsed < 600.0
    report(2, "two-circle means inside published bands", ok,
           "; ".join(parts) + f"; runtime {elapsed:.1f}s < 600s")


def test_criterion_3_variant_distance_bound():
    rng = np.random.default_rng(33)
    worst = 0.0
    checked = 0
    for trial in range(100):
        m = trial % 3 + 1
        n = int(rng.integers(20, 201))
        pts = rng.random((n, m))
        delta = float(rng.uniform(0.05, 0.45))
        max_occ = max(
            histogram(pts, rcla.build_grid(pts, delta)).counts.values()
        )
        k = int(rng.integers(1, min(3, max_occ) + 1))
        center = rcla_reduce(pts, ReductionParams(delta, k, "center"))
        sample = rcla_reduce(pts, ReductionParams(delta, k, "sample"))
        bound = math.sqrt(m) * delta / 2.0 + 1e-9
        dc = vr_persistence_points(center.points)
        ds = vr_persistence_points(sample.points)
        for deg in (0, 1):
            d = bottleneck_distance(dc[deg], ds[deg])
            worst = max(worst, d / (bound - 1e-9))
            assert d <= bound, (trial, deg, d, bound)
        checked += 1
    report(3, "sample vs center variant within sqrt(m)*delta/2", True,
           f"{checked} clouds, worst ratio to bound {worst:.3f}")


def _ring_shape(grid, rng):
    """Five points in each cell of a square ring of the 10x10 grid."""
    cells = []
    for i in range(2, 8):
        for j in range(2, 8):
            if i in (2, 7) or j in (2, 7):
                cells.append((i, j))
    pts = []
    for key in cells:
        base = grid.origin + np.array(key) * grid.delta
        pts.append(base + rng.uniform(0.05, 0.95, size=(5, 2)) * grid.delta)
    return cells, np.vstack(pts)


def test_criterion_4_stability_monte_carlo():
    delta, k, lam, m = 0.1, 2, 3.0, 2
    grid = GridSpec(origin=np.zeros(2), delta=delta, extent=np.array([10, 10]))
    cells, shape = _ring_shape(grid, derive_rng(44, 0))

    counts = np.zeros(100, dtype=int)
    for pos, key in enumerate(cells):
        counts[key[0] * 10 + key[1]] = 5
    cert = stability_certificate(
        ShapeOccupancy.from_counts(counts), lam, delta, k, m
    )
    assert cert.confidence >= 0.9
    assert cert.beta == 0.0

    shape_dgms = vr_persistence_points(shape)
    bound = math.sqrt(m) * delta + 1e-9
    trials = 2000
    hits = 0
    worst = 0.0
    for t in range(trials):
        noise = hppp_box(lam, UNIT_SQUARE, derive_rng(44, 1, t))
        cloud = np.vstack([noise, shape]) if noise.size else shape
        hist = histogram(cloud, grid)
        shape_keys = set(cells)
        event = all(
            key in shape_keys or cnt < k for key, cnt in hist.counts.items()
        )
        if not event:
            continue
        hits += 1
        reduced = rcla_reduce(
            cloud, ReductionParams(delta, k, "sample"), grid=grid
        )
        out_dgms = vr_persistence_points(reduced.points)
        for deg in (0, 1):
            d = bottleneck_distance(shape_dgms[deg], out_dgms[deg])
            worst = max(worst, d)
            assert d <= bound, (t, deg, d)
    freq = hits / trials
    ok = freq >= cert.confidence - 0.03
    report(4, "stability certificate Monte Carlo", ok,
           f"event freq {freq:.4f} >= {cert.confidence:.4f} - 0.03, "
           f"worst d_B {worst:.4f} <= {bound:.4f}")


def test_criterion_5_bottleneck_oracle():
    rng = np.random.default_rng(55)
    worst = 0.0
    for _ in range(200):
        n1, n2 = int(rng.integers(0, 6)), int(rng.integers(0, 6))
        b1 = rng.uniform(0, 2, n1)
        b2 = rng.uniform(0, 2, n2)
        d1 = np.column_stack([b1, b1 + rng.uniform(1e-3, 2, n1)]) if n1 else np.empty((0, 2))
        d2 = np.column_stack([b2, b2 + rng.uniform(1e-3, 2, n2)]) if n2 else np.empty((0, 2))
        got = bottleneck_distance(d1, d2)
        want = brute_bottleneck(d1, d2)
        worst = max(worst, abs(got - want))
        assert abs(got - want) <= 1e-9
    report(5, "bottleneck agrees with exhaustive matching", True,
           f"200 pairs, max deviation {worst:.2e} <= 1e-9")


def test_criterion_6_persistence_oracle():
    rng = np.random.default_rng(66)
    for trial in range(100):
        n = int(rng.integers(2, 9))
        m = int(rng.integers(1, 4))
        pts = rng.random((n, m))
        dm = distance_matrix(pts)
        cap = [dm.max() / 2, float(np.min(dm.max(axis=1))) / 2][trial % 2]
        got = vr_persistence(dm, max_degree=1, max_scale=cap)
        want = naive_vr_diagrams(dm, cap)
        for deg in (0, 1):
            a = sorted(map(tuple, got[deg].pairs))
            b = sorted(map(tuple, want[deg]))
            assert a == b, (trial, deg)
    report(6, "diagrams identical to full-boundary-matrix reduction", True,
           "100 clouds, H0/H1 multisets equal")


def test_criterion_7_numerics():
    rng = np.random.default_rng(77)
    worst_p = 0.0
    for _ in range(300):
        mu = float(rng.uniform(1e-3, 30.0))
        r = int(rng.integers(0, 101))
        ref = pois_cdf_highprec(mu, r)
        rel = abs(pois_cdf(mu, r) - ref) / ref
        worst_p = max(worst_p, rel)
        assert rel <= 1e-12
    worst_q = 0.0
    for _ in range(100):
        a = float(rng.uniform(0.5, 50.0))
        b = float(rng.uniform(0.5, 50.0))
        gamma = float(rng.uniform(0.01, 0.99))
        x = beta_quantile(a, b, gamma)
        err = abs(betainc_reg(a, b, x) - gamma)
        worst_q = max(worst_q, err)
        assert err <= 1e-8
    worst_mc = 0.0
    for a, b, gamma in [(0.5, 5.0, 0.05), (10.0, 2.0, 0.5), (40.0, 40.0, 0.95)]:
        mc = float(np.quantile(rng.beta(a, b, size=10**6), gamma))
        dev = abs(beta_quantile(a, b, gamma) - mc)
        worst_mc = max(worst_mc, dev)
        assert dev <= 0.005
    report(7, "Poisson and Beta numerics", True,
           f"cdf rel err {worst_p:.2e} <= 1e-12, quantile residual "
           f"{worst_q:.2e} <= 1e-8, MC deviation {worst_mc:.2e} <= 0.005")


def test_criterion_8_autoselect_unit_behavior():
    ok_k = rcla.select_k(100, 0.01, 1.0) == 1 and rcla.select_k(100, 0.1, 1.0) == 2
    pts = rcla.make_noisy_dataset(
        rcla.sample_circle(600, (0.5, 0.5), 0.3, derive_rng(88, 0)),
        0.1, UNIT_SQUARE, derive_rng(88, 1),
    )[0]
    r1 = rcla.auto_select(pts)
    r2 = rcla.auto_select(pts)
    deterministic = (
        r1.delta_star == r2.delta_star
        and r1.k_star == r2.k_star
        and [c.J for c in r1.reports] == [c.J for c in r2.reports]
    )
    respects_min = all(
        c.n_reps >= rcla.AutoSelectConfig().n_min
        for c in r1.reports
        if not c.rejected
    )
    winner = next(c for c in r1.reports if c.delta == r1.delta_star)
    ok = ok_k and deterministic and respects_min and not winner.rejected
    report(8, "parameter selection unit behavior", ok,
           f"select_k examples {'ok' if ok_k else 'wrong'}, deterministic "
           f"{deterministic}, accepted candidates all have >= n_min reps "
           f"{respects_min}")


def test_criterion_9_reduction_identities():
    rng = np.random.default_rng(99)
    for trial in range(50):
        m = trial % 3 + 1
        n = int(rng.integers(5, 120))
        pts = rng.random((n, m)) * rng.uniform(0.5, 2.0)
        delta = float(rng.uniform(0.05, 0.5))
        mode = ("center", "sample")[trial % 2]
        a = cla_reduce(pts, delta, mode=mode)
        b = rcla_reduce(pts, ReductionParams(delta, 1, mode))
        assert np.array_equal(a.points, b.points)
        assert a.kept_cells == b.kept_cells
        prev = None
        for k in (1, 2, 3, 4):
            kept = set(rcla_reduce(pts, ReductionParams(delta, k, mode)).kept_cells)
            if prev is not None:
                assert kept <= prev
            prev = kept
    report(9, "reduction identities", True,
           "k=1 equals plain reduction on 50 clouds; kept cells shrink with k")
