"""Candidate radius profiles: geometric grids guaranteed to contain a
near-optimal guess.

A radius profile is a non-increasing k-tuple (r1, ..., rk) of guessed cluster
radii.  The search needs, among all emitted profiles, one whose entries sit
within a (1+eps) factor above the optimal solution's sorted radii (entries
below the (eps/k)-floor are covered with bounded total excess instead).  The
construction brackets the largest optimal radius self-containedly:

* lower anchor: half the unconstrained farthest-first k-center value (that
  value is a 2-approximation, and constraints only increase the optimum);
* upper anchor: the best single-cluster radius (the all-points cluster is
  feasible for every mergeable constraint whenever anything is).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator

from .constraints import cluster_feasible
from .instance import Instance
from .kcenter import CompletionInput, fft_completion

__all__ = [
    "NoAnchorError",
    "RadiusInterval",
    "radius_interval",
    "candidate_largest",
    "enumerate_profiles",
]


class NoAnchorError(ValueError):
    """The all-points cluster is infeasible, so no feasible clustering exists
    (mergeable constraints are closed under union) and no radius bracket can
    be anchored."""


@dataclass(frozen=True)
class RadiusInterval:
    """Bracket [lo, hi] guaranteed to contain the largest optimal radius."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lo <= self.hi:
            raise ValueError(f"invalid radius interval [{self.lo}, {self.hi}]")


def radius_interval(inst: Instance) -> RadiusInterval:
    """Bracket the largest optimal radius; raises NoAnchorError when the
    instance admits no feasible clustering at all."""
    if not cluster_feasible(inst, list(range(inst.n))):
        raise NoAnchorError(
            "the all-points cluster violates the constraint; no feasible clustering exists"
        )
    gonzalez = fft_completion(CompletionInput(inst, (), ()))
    lo = gonzalez.value / 2.0
    rows = inst.rows
    hi = min(max(rows[c][p] for p in range(inst.n)) for c in range(inst.n))
    if lo > hi:  # guard against float noise; mathematically lo <= hi
        lo = hi
    return RadiusInterval(lo=lo, hi=hi)


def _grid_steps(ratio: float, eps: float) -> int:
    """ceil(log_{1+eps}(ratio)) computed defensively (never undershoots)."""
    if ratio <= 1.0:
        return 0
    return max(0, math.ceil(math.log(ratio) / math.log1p(eps)))


def candidate_largest(interval: RadiusInterval, eps: float, k: int) -> list[float]:
    """Geometric candidates for the largest profile entry, ascending.

    Grid {lo * (1+eps)^j} up to hi (plus hi itself), so some candidate lands
    in [r, (1+eps)r] for every r in [lo, hi].  Degenerate lo = 0 falls back
    to hi*eps/k (radii below that floor are absorbed by the smaller-entry
    grid); lo = hi = 0 yields just {0}.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    lo, hi = interval.lo, interval.hi
    if lo == 0.0:
        if hi == 0.0:
            return [0.0]
        lo = hi * eps / k
    if lo >= hi:
        return [hi]
    steps = _grid_steps(hi / lo, eps)
    while lo * (1.0 + eps) ** steps < hi:  # float-noise guard: top must reach hi
        steps += 1
    vals = {lo * (1.0 + eps) ** j for j in range(steps + 1)}
    vals.add(hi)
    return sorted(vals)


def _smaller_entries(r1: float, eps: float, k: int) -> list[float]:
    """Allowed values for profile entries 2..k given largest entry r1.

    Geometric grid from the floor (eps/k)*r1 up to r1, with values that would
    overshoot clamped to r1 itself, plus 0 for genuinely empty slots.
    """
    if r1 == 0.0:
        return [0.0]
    floor = r1 * eps / k
    steps = _grid_steps(k / eps, eps)
    while floor * (1.0 + eps) ** steps < r1:
        steps += 1
    vals = {0.0, r1}
    for j in range(steps + 1):
        g = floor * (1.0 + eps) ** j
        vals.add(g if g < r1 else r1)
    return sorted(vals)


def enumerate_profiles(inst: Instance, eps: float) -> Iterator[tuple[float, ...]]:
    """All candidate radius profiles, in deterministic generation order.

    For each candidate largest entry r1 (ascending), the remaining k-1
    entries range over the smaller-entry grid, restricted to non-increasing
    tuples.  Among the emitted profiles is one dominating the optimal sorted
    radii coordinate-wise with per-coordinate excess at most a (1+eps) factor
    above max(optimal entry, (eps/k) * largest optimal entry).
    """
    k = inst.k
    for r1 in candidate_largest(radius_interval(inst), eps, k):
        if k == 1:
            yield (r1,)
            continue
        entries = _smaller_entries(r1, eps, k)
        # combinations_with_replacement on the ascending entry list gives
        # non-decreasing tails; reverse each for the non-increasing profile.
        for tail in combinations_with_replacement(entries, k - 1):
            yield (r1, *reversed(tail))
