"""Adjusted distances and the farthest-first k-center completion.

The completion problem: some centers are already fixed, each with a radius.
Distances to a fixed center are discounted by its radius (a point inside the
ball is effectively at distance zero), and the task is to add centers until
there are ``k`` so that the maximum discounted distance from any point to its
nearest center is minimized.  Farthest-first traversal on the discounted
distance is a 2-approximation for this, even though the discounted distance
violates the triangle inequality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instance import Instance

__all__ = [
    "CompletionInput",
    "CompletionOutput",
    "adjusted_distance",
    "fft_completion",
]


@dataclass(frozen=True)
class CompletionInput:
    """A k-center completion problem: instance plus fixed centers with radii.

    ``fixed_centers`` and ``fixed_radii`` are aligned; their common length
    ``ell`` satisfies ``0 <= ell <= inst.k <= inst.n``.
    """

    inst: Instance
    fixed_centers: tuple[int, ...]
    fixed_radii: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fixed_centers", tuple(self.fixed_centers))
        object.__setattr__(self, "fixed_radii", tuple(float(r) for r in self.fixed_radii))
        if len(self.fixed_centers) != len(self.fixed_radii):
            raise ValueError(
                f"{len(self.fixed_centers)} fixed centers but {len(self.fixed_radii)} radii"
            )
        if len(self.fixed_centers) > self.inst.k:
            raise ValueError(
                f"{len(self.fixed_centers)} fixed centers exceed the budget k={self.inst.k}"
            )
        if self.inst.k > self.inst.n:
            raise ValueError(f"k={self.inst.k} exceeds the number of points {self.inst.n}")
        n = self.inst.n
        for c in self.fixed_centers:
            if not 0 <= c < n:
                raise ValueError(f"fixed center {c} is not a point index")
        for r in self.fixed_radii:
            if r < 0:
                raise ValueError(f"negative fixed radius {r}")

    @property
    def ell(self) -> int:
        return len(self.fixed_centers)

    def discounts(self) -> list[float]:
        """Per-point discount: the largest fixed radius attached to the point."""
        disc = [0.0] * self.inst.n
        for c, r in zip(self.fixed_centers, self.fixed_radii):
            if r > disc[c]:
                disc[c] = r
        return disc


@dataclass(frozen=True)
class CompletionOutput:
    """Result of a completion run.

    ``centers[0:ell]`` are the fixed centers, the rest were chosen by the
    traversal.  ``alpha[p]`` is the index (into ``centers``) of the center
    with minimal adjusted distance from ``p``; ``value`` is the largest such
    minimal distance over all points.
    """

    centers: tuple[int, ...]
    alpha: tuple[int, ...]
    value: float


def adjusted_distance(inp: CompletionInput, x: int, y: int) -> float:
    """Distance discounted by the fixed-center radii at both endpoints.

    d'(x, y) = max(d(x, y) - disc(x) - disc(y), 0), where disc(p) is the
    largest radius among fixed centers located at p (0 if p hosts none).
    Symmetric; can violate the triangle inequality.
    """
    disc = inp.discounts()
    d = float(inp.inst.dist[x][y]) - disc[x] - disc[y]
    return d if d > 0.0 else 0.0


def fft_completion(inp: CompletionInput) -> CompletionOutput:
    """Complete the fixed centers to ``k`` by farthest-first traversal.

    Each new center is the point maximizing the minimal adjusted distance to
    everything chosen so far (smallest index on ties; point 0 seeds the
    traversal when there are no fixed centers).  The final assignment maps
    every point to its adjusted-nearest center, earliest slot on ties.
    """
    inst = inp.inst
    n, k, ell = inst.n, inst.k, inp.ell
    rows = inst.rows
    disc = inp.discounts()

    centers = list(inp.fixed_centers)
    # minadj[p] = min over chosen centers c of d'(p, c); inf while none chosen.
    minadj = [float("inf")] * n
    for s in range(ell):
        c = centers[s]
        row = rows[c]
        dc = disc[c]
        for p in range(n):
            d = row[p] - dc - disc[p]
            if d < 0.0:
                d = 0.0
            if d < minadj[p]:
                minadj[p] = d

    for _ in range(ell, k):
        if not centers:
            c = 0
        else:
            best = -1.0
            c = 0
            for p in range(n):
                if minadj[p] > best:
                    best = minadj[p]
                    c = p
        centers.append(c)
        row = rows[c]
        dc = disc[c]
        for p in range(n):
            d = row[p] - dc - disc[p]
            if d < 0.0:
                d = 0.0
            if d < minadj[p]:
                minadj[p] = d

    # Nearest-center assignment, first slot wins ties.
    alpha = [0] * n
    value = 0.0
    for p in range(n):
        dp = disc[p]
        row_p = rows[p]
        best = float("inf")
        slot = 0
        for s, c in enumerate(centers):
            d = row_p[c] - dp - disc[c]
            if d < 0.0:
                d = 0.0
            if d < best:
                best = d
                slot = s
        alpha[p] = slot
        if best > value:
            value = best
    return CompletionOutput(tuple(centers), tuple(alpha), value)
