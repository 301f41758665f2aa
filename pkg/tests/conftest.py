"""Shared fixtures: small hand-checkable instances used across test modules."""

import numpy as np
import pytest

from fairmsr import ConstraintSpec, Instance


def line_instance(coords, colors=None, k=2, eps=0.5, kind="none", **spec_kw):
    """Metric instance on the real line; distances are absolute differences."""
    arr = np.asarray(coords, dtype=float)[:, None]
    dist = np.abs(arr - arr.T)
    if colors is None:
        colors = [0] * len(coords)
    return Instance(
        dist=dist,
        colors=list(colors),
        k=k,
        epsilon=eps,
        constraint=ConstraintSpec(kind=kind, **spec_kw),
    )


def planar_instance(points, colors, k, eps=0.5, kind="none", **spec_kw):
    arr = np.asarray(points, dtype=float)
    diff = arr[:, None, :] - arr[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    np.fill_diagonal(dist, 0.0)
    return Instance(
        dist=dist,
        colors=list(colors),
        k=k,
        epsilon=eps,
        constraint=ConstraintSpec(kind=kind, **spec_kw),
        points=arr.tolist(),
    )


@pytest.fixture
def fair_line():
    """Four points on a line, alternating colors, exactly balanced.

    The cheapest fair 2-clustering keeps everything together: any split
    that separates the far point costs 9 or more, the single cluster
    centered at coordinate 2 costs 8.
    """
    return line_instance([0, 1, 2, 10], colors=[0, 1, 0, 1], k=2,
                         kind="exact_fairness")


# Nine points forming three planted clusters of three; one color appears
# once per planted cluster so exact 2:1 fairness holds cluster-wise.
PLANTED_POINTS = [
    [-1.0, -0.6],
    [-0.7, 0.0],
    [-1.2, 0.3],
    [3.0, 0.0],
    [2.8, 0.6],
    [3.9, 0.3],
    [2.5, -2.5],
    [2.4, -2.8],
    [2.75, -2.25],
]
PLANTED_COLORS = [0, 0, 1, 0, 0, 1, 0, 0, 1]


@pytest.fixture
def planted_nine():
    return planar_instance(PLANTED_POINTS, PLANTED_COLORS, k=3,
                           kind="exact_fairness")


def sample_mergeable_pair(kind, rng):
    """Draw an instance plus two disjoint feasible clusters for ``kind``.

    Proportional kinds are sampled constructively (uniformly random disjoint
    subsets almost never hit exact proportions); the window/size kinds use
    plain rejection.  Returns ``(inst, a, b)`` or ``None`` when the draw
    produced nothing usable, so callers can just retry.
    """
    if kind in ("exact_fairness", "exact_balance"):
        m = int(rng.integers(2, 4))
        if kind == "exact_balance":
            unit = [1] * m
        else:
            unit = [int(u) for u in rng.integers(1, 3, size=m)]
        g = int(rng.integers(2, 5))  # units available globally
        colors = [j for j in range(m) for _ in range(g * unit[j])]
        ta = int(rng.integers(1, g))
        tb = int(rng.integers(1, g - ta + 1))
        a, b = [], []
        offset = 0
        for j in range(m):
            pool = offset + rng.permutation(g * unit[j])
            a.extend(int(p) for p in pool[: ta * unit[j]])
            b.extend(int(p) for p in pool[ta * unit[j]: (ta + tb) * unit[j]])
            offset += g * unit[j]
        inst = line_instance(list(range(len(colors))), colors=colors, k=2,
                             kind=kind)
        return inst, sorted(a), sorted(b)

    n = int(rng.integers(6, 13))
    if kind == "ratio_balance":
        colors = [int(c) for c in rng.integers(0, 2, size=n)]
        if len(set(colors)) < 2:
            return None
        inst = line_instance(list(range(n)), colors=colors, k=2,
                             kind=kind, b=(1, 2))
    elif kind == "lu_fairness":
        colors = [int(c) for c in rng.integers(0, 3, size=n)]
        m = max(colors) + 1
        if set(colors) != set(range(m)):
            return None
        hist = [colors.count(j) for j in range(m)]
        inst = line_instance(
            list(range(n)), colors=colors, k=2, kind=kind,
            lower=tuple((hist[j], 2 * n) for j in range(m)),
            upper=tuple((min(2 * hist[j], n), n) for j in range(m)),
        )
    elif kind == "lower_bound":
        inst = line_instance(list(range(n)), colors=[0] * n, k=2,
                             kind=kind, ell=2)
    else:
        colors = [int(c) for c in rng.integers(0, 3, size=n)]
        m = max(colors) + 1
        if set(colors) != set(range(m)):
            return None
        inst = line_instance(list(range(n)), colors=colors, k=2, kind=kind)

    if kind == "lu_fairness":
        # stratified draw: pick per-color counts near the global proportions
        hist = [colors.count(j) for j in range(max(colors) + 1)]
        a, b = [], []
        for j, c in enumerate(hist):
            pool = [p for p in range(n) if colors[p] == j]
            pool = [pool[i] for i in rng.permutation(len(pool))]
            take_a = max(1, c // 2) if c else 0
            take_b = c - take_a
            a.extend(pool[:take_a])
            b.extend(pool[take_a: take_a + take_b])
        a, b = sorted(a), sorted(b)
    elif kind == "ratio_balance":
        # draw per-color counts inside the 1:2 window for each side
        pools = [[p for p in range(n) if colors[p] == j] for j in range(2)]
        pools = [[pool[i] for i in rng.permutation(len(pool))] for pool in pools]
        h0, h1 = len(pools[0]), len(pools[1])
        a0 = int(rng.integers(1, h0 + 1))
        lo1 = (a0 + 1) // 2
        hi1 = min(2 * a0, h1)
        if lo1 > hi1:
            return None
        a1 = int(rng.integers(lo1, hi1 + 1))
        r0, r1 = h0 - a0, h1 - a1
        if r0 == 0 or r1 == 0:
            b0 = b1 = 0
        else:
            b0 = int(rng.integers(1, r0 + 1))
            blo = (b0 + 1) // 2
            bhi = min(2 * b0, r1)
            if blo > bhi:
                return None
            b1 = int(rng.integers(blo, bhi + 1))
        if b0 == 0 or b1 == 0:
            return None
        a = sorted(pools[0][:a0] + pools[1][:a1])
        b = sorted(pools[0][a0: a0 + b0] + pools[1][a1: a1 + b1])
    else:
        picks = rng.permutation(n)
        cut1, cut2 = sorted(int(x) for x in rng.integers(1, n, size=2))
        a, b = sorted(picks[:cut1].tolist()), sorted(picks[cut1:cut2].tolist())
    if not a or not b:
        return None
    from fairmsr.constraints import cluster_feasible

    if not (cluster_feasible(inst, a) and cluster_feasible(inst, b)):
        return None
    return inst, a, b
