"""Seeded random instance generation for tests and the benchmark sweep.

Two geometries:

* ``euclidean`` — distinct integer grid points in a small box (distinct so
  that multi-point clusters always have positive radius, keeping cost/OPT
  ratios well-defined);
* ``graph`` — shortest-path closure of a random complete weighted graph,
  which is a metric by construction.

Color counts are derived from an integer ratio and shuffled over the points;
each constraint kind gets parameters that make the whole point set feasible,
so generated instances always admit a solution.
"""

from __future__ import annotations

import numpy as np

from .instance import ConstraintSpec, Instance
from .kcenter import CompletionInput

__all__ = ["generate_instance", "generate_completion"]

_GRID = 21  # euclidean coordinates live on {0..20}^2


def _color_counts(n: int, ratio: tuple[int, ...]) -> list[int]:
    total = sum(ratio)
    if total <= 0 or any(r < 0 for r in ratio):
        raise ValueError(f"ratio parts must be non-negative with positive sum, got {ratio}")
    if n % total != 0:
        raise ValueError(f"ratio {':'.join(map(str, ratio))} does not divide n={n}")
    return [n * r // total for r in ratio]


def _grid_points(rng: np.random.Generator, n: int) -> list[list[float]]:
    if n > _GRID * _GRID:
        raise ValueError(f"n={n} exceeds the {_GRID}x{_GRID} coordinate grid")
    cells = rng.choice(_GRID * _GRID, size=n, replace=False)
    return [[float(c // _GRID), float(c % _GRID)] for c in cells]


def _graph_metric(rng: np.random.Generator, n: int) -> np.ndarray:
    w = rng.integers(1, 10, size=(n, n)).astype(float)
    w = np.minimum(w, w.T)
    np.fill_diagonal(w, 0.0)
    # Floyd-Warshall closure turns the weights into shortest-path distances.
    for h in range(n):
        w = np.minimum(w, w[:, h:h + 1] + w[h:h + 1, :])
    return w


def generate_instance(
    *,
    n: int,
    k: int,
    kind: str = "none",
    n_colors: int | None = None,
    ratio: tuple[int, ...] | None = None,
    b: tuple[int, int] | None = None,
    ell: int | None = None,
    eps: float = 0.5,
    geometry: str = "euclidean",
    seed: int = 0,
) -> Instance:
    """Build one seeded instance; identical arguments give identical output.

    ``ratio`` fixes the global color counts (it must divide n); when omitted,
    a kind-appropriate default is used.  Constraint parameters (``b`` for
    ratio_balance, ``ell`` for lower_bound, bounds for lu_fairness) are
    chosen so the full point set is feasible unless explicitly overridden.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")

    if ratio is not None:
        if n_colors is not None and len(ratio) != n_colors:
            raise ValueError(
                f"ratio has {len(ratio)} parts but {n_colors} colors were requested"
            )
        counts = _color_counts(n, ratio)
    elif kind in ("none", "lower_bound", "ratio_balance", "lu_fairness"):
        # No exact proportions required: spread points over the colors as
        # evenly as possible (works for every n).
        m = n_colors if n_colors is not None else (1 if kind == "none" else 2)
        counts = [n // m + (1 if j < n % m else 0) for j in range(m)]
    else:
        ratio = (1,) * (n_colors or 2)
        counts = _color_counts(n, ratio)
    if any(c <= 0 for c in counts):
        raise ValueError(f"every color needs at least one point, got counts {counts}")
    m = len(counts)

    if kind == "ratio_balance":
        if m != 2:
            raise ValueError(f"ratio_balance needs exactly 2 colors, got {m}")
        if b is None:
            b = (1, 2) if counts[0] != counts[1] else (1, 1)
        p, q = b
        lo_cnt, hi_cnt = min(counts), max(counts)
        if lo_cnt * q < hi_cnt * p:
            raise ValueError(
                f"global counts {counts} violate the requested balance {p}/{q}"
            )
        constraint = ConstraintSpec(kind="ratio_balance", b=b)
    elif kind == "lu_fairness":
        lower = tuple((counts[j], 2 * n) for j in range(m))
        upper = tuple((min(2 * counts[j], n), n) for j in range(m))
        constraint = ConstraintSpec(kind="lu_fairness", lower=lower, upper=upper)
    elif kind == "lower_bound":
        constraint = ConstraintSpec(kind="lower_bound", ell=2 if ell is None else ell)
    elif kind in ("none", "exact_fairness", "exact_balance"):
        if kind == "exact_balance" and any(c != counts[0] for c in counts):
            raise ValueError(f"exact_balance needs equal color counts, got {counts}")
        constraint = ConstraintSpec(kind=kind)
    else:
        raise ValueError(f"unknown constraint kind {kind!r}")

    rng = np.random.default_rng(seed)
    colors_pool = [j for j, c in enumerate(counts) for _ in range(c)]
    colors = [colors_pool[i] for i in rng.permutation(n)]

    if geometry == "euclidean":
        points = _grid_points(rng, n)
        diff = np.asarray(points)[:, None, :] - np.asarray(points)[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        np.fill_diagonal(dist, 0.0)
        return Instance(
            dist=dist, colors=colors, k=k, epsilon=eps, constraint=constraint, points=points
        )
    if geometry == "graph":
        dist = _graph_metric(rng, n)
        return Instance(dist=dist, colors=colors, k=k, epsilon=eps, constraint=constraint)
    raise ValueError(f"unknown geometry {geometry!r}; expected euclidean or graph")


def generate_completion(*, n: int, k: int, ell: int, seed: int = 0) -> CompletionInput:
    """Random completion problem: unconstrained instance, ``ell`` distinct
    fixed centers, radii uniform in [0, diameter]."""
    if not 0 <= ell <= k <= n:
        raise ValueError(f"need 0 <= ell <= k <= n, got ell={ell}, k={k}, n={n}")
    inst = generate_instance(n=n, k=k, kind="none", n_colors=1, seed=seed)
    rng = np.random.default_rng(seed + 0x5EED)
    centers = tuple(int(c) for c in rng.choice(n, size=ell, replace=False))
    radii = tuple(float(r) for r in rng.uniform(0.0, inst.diameter, size=ell))
    return CompletionInput(inst, centers, radii)
