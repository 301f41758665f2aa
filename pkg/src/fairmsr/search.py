"""The guessing search: build candidate covers for every (profile, tuple)
guess and keep the best feasible clustering any of them yields.

One guess = a radius profile (what the optimal radii roughly are) plus a
tuple a in {1..k}^k (where each optimal center hides: a_i points either at an
already-opened slot, meaning "the i-th optimal cluster is swallowed by that
ball, enlarge it", or at a center of the current k-center completion, meaning
"open a new ball there").  With the right guess, every optimal cluster ends
up inside some ball at a bounded radius blow-up; wrong guesses produce covers
that simply fail the assignment phase and are skipped.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from .assign import _active_balls, run_assignment, select_mode
from .constraints import cluster_feasible, clustering_feasible
from .instance import Clustering, Instance, SolutionMeta, cluster_members
from .kcenter import CompletionInput, CompletionOutput, fft_completion
from .profiles import enumerate_profiles

__all__ = [
    "CandidateCover",
    "SolveResult",
    "centers_and_radii",
    "covers_all_optimal",
    "solve",
]


@dataclass(frozen=True)
class CandidateCover:
    """k slots of (center point, radius).

    ``real[i]`` is False for filler slots created when a guess enlarged an
    earlier ball instead of opening a new one; those fillers sit at point 0
    with radius 0 and are invisible to the assignment phase.
    """

    centers: tuple[int, ...]
    radii: tuple[float, ...]
    real: tuple[bool, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", tuple(self.centers))
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        real = tuple(self.real) if self.real else (True,) * len(self.centers)
        object.__setattr__(self, "real", real)
        if not (len(self.centers) == len(self.radii) == len(self.real)):
            raise ValueError("centers, radii and real must have equal length")

    @property
    def total_radius(self) -> float:
        return float(sum(self.radii))


def centers_and_radii(
    inst: Instance,
    profile: tuple[float, ...],
    a: tuple[int, ...],
    _completion_cache: dict | None = None,
) -> CandidateCover:
    """Run the k guessing iterations for one (profile, tuple) pair.

    Iteration i completes the cover built so far to k centers; a_i < i
    enlarges slot a_i by 3*profile[i-1] and appends a filler, otherwise slot
    i opens at the a_i-th completion center with radius 3*profile[i-1].
    """
    k = inst.k
    if len(profile) != k or len(a) != k:
        raise ValueError(f"profile and tuple must have length k={k}")
    if any(profile[i] < profile[i + 1] for i in range(k - 1)):
        raise ValueError(f"profile must be non-increasing, got {profile}")
    if any(not 1 <= ai <= k for ai in a):
        raise ValueError(f"tuple entries must lie in 1..{k}, got {a}")
    cache = _completion_cache if _completion_cache is not None else {}

    centers: list[int] = []
    radii: list[float] = []
    real: list[bool] = []
    for i in range(1, k + 1):
        key = (tuple(centers), tuple(radii))
        comp: CompletionOutput | None = cache.get(key)
        if comp is None:
            comp = fft_completion(CompletionInput(inst, key[0], key[1]))
            cache[key] = comp
        ai = a[i - 1]
        if ai < i:
            radii[ai - 1] += 3.0 * profile[i - 1]
            centers.append(0)
            radii.append(0.0)
            real.append(False)
        else:
            centers.append(comp.centers[ai - 1])
            radii.append(3.0 * profile[i - 1])
            real.append(True)
    return CandidateCover(tuple(centers), tuple(radii), tuple(real))


def covers_all_optimal(
    inst: Instance, cover: CandidateCover, optimal_clusters: list[list[int]]
) -> bool:
    """Check the two-way correspondence between a cover and an optimal
    clustering: every optimal cluster lies inside some single ball, and every
    positive-radius ball contains some optimal cluster entirely."""
    rows = inst.rows
    balls = _active_balls(cover)

    def contains(c: int, r: float, cluster: list[int]) -> bool:
        row = rows[c]
        return all(row[p] <= r for p in cluster)

    for cluster in optimal_clusters:
        if not any(contains(c, r, cluster) for _, c, r in balls):
            return False
    for _, c, r in balls:
        if r > 0.0 and not any(contains(c, r, cluster) for cluster in optimal_clusters):
            return False
    return True


@dataclass
class SolveResult:
    clustering: Clustering | None
    feasible: bool
    meta: SolutionMeta


def solve(
    inst: Instance,
    *,
    eps: float | None = None,
    mode: str = "auto",
    timing: bool = False,
    seed: int = 0,
) -> SolveResult:
    """Exhaust all (profile, tuple) guesses and keep the cheapest feasible
    clustering found.

    Infeasible instances (the all-points cluster already violates the
    constraint — for mergeable constraints that means nothing is feasible)
    short-circuit to an infeasible result.  Enumeration order is
    deterministic, counters are exact (tuples_tried = #profiles * k^k), and
    elapsed_ms stays 0 unless ``timing`` is set so that reruns are
    byte-identical.
    """
    t0 = time.perf_counter()
    eff_eps = inst.epsilon if eps is None else float(eps)
    if eff_eps <= 0:
        raise ValueError(f"eps must be positive, got {eff_eps}")
    resolved = select_mode(inst, mode)
    n, k = inst.n, inst.k

    def meta(profiles_tried: int, tuples_tried: int) -> SolutionMeta:
        elapsed = int(round((time.perf_counter() - t0) * 1000.0)) if timing else 0
        return SolutionMeta(
            profiles_tried=profiles_tried,
            tuples_tried=tuples_tried,
            elapsed_ms=elapsed,
            seed=seed,
        )

    if not cluster_feasible(inst, list(range(n))):
        return SolveResult(clustering=None, feasible=False, meta=meta(0, 0))

    upper = (6.0 + eff_eps) * inst.diameter
    best: Clustering | None = None
    best_cost = 0.0
    profiles_tried = 0
    tuples_tried = 0
    completion_cache: dict = {}
    outcome_cache: dict = {}

    for profile in enumerate_profiles(inst, eff_eps):
        profiles_tried += 1
        for a in product(range(1, k + 1), repeat=k):
            tuples_tried += 1
            cover = centers_and_radii(inst, profile, a, completion_cache)
            key = (cover.centers, cover.radii, cover.real)
            if key in outcome_cache:
                result = outcome_cache[key]
            else:
                result = run_assignment(inst, cover, resolved)
                if result is not None and not clustering_feasible(
                    inst, cluster_members(result)
                ):
                    result = None
                outcome_cache[key] = result
            if result is None:
                continue
            cost = result.cost
            if best is None:
                if cost <= upper:
                    best, best_cost = result, cost
            elif cost < best_cost:
                best, best_cost = result, cost

    return SolveResult(
        clustering=best,
        feasible=best is not None,
        meta=meta(profiles_tried, tuples_tried),
    )
