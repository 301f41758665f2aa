"""Brute-force exact solvers, used as ground truth in tests and benchmarks.

Everything here enumerates exhaustively and is guarded against accidental use
on instances large enough to hang: the guards raise :class:`OracleLimitError`
instead of silently grinding.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .constraints import _feasible_hist, color_histogram
from .instance import Clustering, Instance
from .kcenter import CompletionInput

__all__ = [
    "OracleLimitError",
    "ExactSolution",
    "set_partitions_up_to_k",
    "exact_msr",
    "exact_completion",
    "exact_matching",
]

EXACT_MSR_MAX_N = 12
EXACT_COMPLETION_MAX_N = 10
EXACT_COMPLETION_MAX_NEW = 3
EXACT_MATCHING_MAX_SIDE = 6


class OracleLimitError(ValueError):
    """The instance exceeds the brute-force enumeration guard."""


@dataclass(frozen=True)
class ExactSolution:
    """An optimal clustering with its cost and sorted radius profile.

    ``radius_profile`` is non-increasing and padded with zeros to length k,
    so it lines up index-by-index with candidate radius profiles.
    """

    clustering: Clustering
    opt_cost: float
    radius_profile: tuple[float, ...]


def set_partitions_up_to_k(n: int, k: int) -> Iterator[list[int]]:
    """All partitions of {0..n-1} into at most k blocks, as restricted-growth
    strings (``code[p]`` = block of point p), in lexicographic order.

    The count equals sum_{j<=k} S(n, j) (Stirling numbers, second kind).
    """
    code = [0] * n

    def rec(i: int, n_blocks: int) -> Iterator[list[int]]:
        if i == n:
            yield code[:]
            return
        # Restricted growth: next value is at most (current max block) + 1.
        top = min(n_blocks + 1, k)
        for b in range(top):
            code[i] = b
            yield from rec(i + 1, max(n_blocks, b + 1))

    yield from rec(1, 1) if n > 0 else iter(())


def _block_radius(rows: list[list[float]], block: list[int]) -> tuple[float, int]:
    """Best (radius, center) for a block: the member minimizing the maximum
    distance to the block, smallest index on ties."""
    best_r = float("inf")
    best_c = block[0]
    for c in block:
        row = rows[c]
        r = max(row[p] for p in block)
        if r < best_r:
            best_r = r
            best_c = c
    return best_r, best_c


def exact_msr(inst: Instance, max_n: int = EXACT_MSR_MAX_N) -> ExactSolution | None:
    """Optimal constrained min-sum-radii clustering by full partition search.

    Enumerates every partition into at most k non-empty blocks, keeps the
    cheapest feasible one (first found on cost ties, which by enumeration
    order is the lexicographically smallest restricted-growth string), and
    returns ``None`` when no partition is feasible at all.
    """
    n, k = inst.n, inst.k
    if n > max_n:
        raise OracleLimitError(f"exact_msr guard: n={n} exceeds {max_n}")
    rows = inst.rows
    n_colors = inst.n_colors
    global_hist = color_histogram(inst.colors, None, n_colors)
    spec = inst.constraint

    best_cost = float("inf")
    best_code: list[int] | None = None
    for code in set_partitions_up_to_k(n, k):
        n_blocks = max(code) + 1
        blocks: list[list[int]] = [[] for _ in range(n_blocks)]
        for p, b in enumerate(code):
            blocks[b].append(p)
        ok = True
        for block in blocks:
            hist = color_histogram(inst.colors, block, n_colors)
            if not _feasible_hist(hist, global_hist, spec):
                ok = False
                break
        if not ok:
            continue
        cost = 0.0
        for block in blocks:
            r, _ = _block_radius(rows, block)
            cost += r
            if cost >= best_cost:
                break
        if cost < best_cost:
            best_cost = cost
            best_code = list(code)

    if best_code is None:
        return None
    n_blocks = max(best_code) + 1
    blocks = [[] for _ in range(n_blocks)]
    for p, b in enumerate(best_code):
        blocks[b].append(p)
    centers: list[int] = []
    radii: list[float] = []
    for block in blocks:
        r, c = _block_radius(rows, block)
        centers.append(c)
        radii.append(r)
    clustering = Clustering(centers=centers, assignment=list(best_code), radii=radii)
    profile = tuple(sorted(radii, reverse=True)) + (0.0,) * (k - len(radii))
    return ExactSolution(clustering=clustering, opt_cost=clustering.cost, radius_profile=profile)


def exact_completion(
    inp: CompletionInput,
    max_n: int = EXACT_COMPLETION_MAX_N,
    max_new: int = EXACT_COMPLETION_MAX_NEW,
) -> float:
    """Optimal k-center completion value by trying every extension set."""
    inst = inp.inst
    n, k, ell = inst.n, inst.k, inp.ell
    if n > max_n:
        raise OracleLimitError(f"exact_completion guard: n={n} exceeds {max_n}")
    if k - ell > max_new:
        raise OracleLimitError(f"exact_completion guard: k-ell={k - ell} exceeds {max_new}")
    rows = inst.rows
    disc = inp.discounts()

    def adj(x: int, y: int) -> float:
        d = rows[x][y] - disc[x] - disc[y]
        return d if d > 0.0 else 0.0

    base = [float("inf")] * n
    for c in inp.fixed_centers:
        for p in range(n):
            d = adj(p, c)
            if d < base[p]:
                base[p] = d

    best = float("inf")
    for ext in combinations(range(n), k - ell):
        value = 0.0
        for p in range(n):
            m = base[p]
            for c in ext:
                d = adj(p, c)
                if d < m:
                    m = d
            if m > value:
                value = m
            if value >= best:
                break
        if value < best:
            best = value
    return best


def exact_matching(
    n_left: int,
    n_right: int,
    edges: list[tuple[int, int]],
    max_side: int = EXACT_MATCHING_MAX_SIDE,
) -> int:
    """Maximum bipartite matching size by exhaustive backtracking."""
    if n_left > max_side or n_right > max_side:
        raise OracleLimitError(
            f"exact_matching guard: sides {n_left}x{n_right} exceed {max_side}"
        )
    adj: list[list[int]] = [[] for _ in range(n_left)]
    for u, v in edges:
        if not 0 <= u < n_left or not 0 <= v < n_right:
            raise ValueError(f"edge ({u}, {v}) out of range")
        adj[u].append(v)

    used = [False] * n_right

    def rec(u: int) -> int:
        if u == n_left:
            return 0
        best = rec(u + 1)  # leave u unmatched
        for v in adj[u]:
            if not used[v]:
                used[v] = True
                best = max(best, 1 + rec(u + 1))
                used[v] = False
        return best

    return rec(0)
