"""Feasibility checks for mergeable cluster constraints.

Every constraint kind handled here is *mergeable*: if two disjoint point sets
both satisfy the constraint, so does their union.  That closure property is
what lets the search glue clusters together freely.  All fairness checks are
done by integer cross-multiplication, never with floating-point ratios.
"""

from __future__ import annotations

from .instance import ConstraintSpec, Instance

__all__ = [
    "color_histogram",
    "cluster_feasible",
    "clustering_feasible",
    "merge_clusters",
]


def color_histogram(colors: list[int], members: list[int] | None = None, n_colors: int | None = None) -> list[int]:
    """Count how many members carry each color.

    ``members`` defaults to all points.  ``n_colors`` fixes the histogram
    length; by default it is inferred from ``colors`` as ``max + 1``.
    """
    if n_colors is None:
        n_colors = max(colors) + 1 if colors else 0
    hist = [0] * n_colors
    if members is None:
        for c in colors:
            hist[c] += 1
    else:
        for p in members:
            hist[colors[p]] += 1
    return hist


def _feasible_hist(hist: list[int], global_hist: list[int], spec: ConstraintSpec) -> bool:
    size = sum(hist)
    if size == 0:
        # An empty cluster imposes nothing (it is simply not part of the
        # solution); lower_bound is the one kind where emptiness matters and
        # it is checked against actual clusters, which are non-empty.
        return True
    kind = spec.kind
    if kind == "none":
        return True
    if kind == "exact_fairness":
        # hist[j] / size == global_hist[j] / N for every color j.
        total = sum(global_hist)
        return all(hist[j] * total == global_hist[j] * size for j in range(len(hist)))
    if kind == "ratio_balance":
        assert spec.b is not None
        p, q = spec.b
        c0, c1 = hist[0], hist[1]
        # min(c0, c1) / max(c0, c1) >= p/q, written without division:
        return c0 * q >= c1 * p and c1 * q >= c0 * p
    if kind == "exact_balance":
        return all(hist[j] == hist[0] for j in range(1, len(hist)))
    if kind == "lu_fairness":
        assert spec.lower is not None and spec.upper is not None
        for j in range(len(hist)):
            ln, ld = spec.lower[j]
            un, ud = spec.upper[j]
            # l_j <= hist[j]/size <= u_j
            if ln * size > hist[j] * ld:
                return False
            if hist[j] * ud > un * size:
                return False
        return True
    if kind == "lower_bound":
        assert spec.ell is not None
        return size >= spec.ell
    raise ValueError(f"unknown constraint kind {kind!r}")


def cluster_feasible(inst: Instance, members: list[int]) -> bool:
    """True when the point set ``members`` satisfies the instance constraint.

    The empty set is vacuously feasible; non-empty sets are checked against
    the constraint with the instance's global color counts as reference.
    """
    n_colors = inst.n_colors
    hist = color_histogram(inst.colors, members, n_colors)
    global_hist = color_histogram(inst.colors, None, n_colors)
    return _feasible_hist(hist, global_hist, inst.constraint)


def clustering_feasible(inst: Instance, clusters: list[list[int]]) -> bool:
    """True when every non-empty cluster in the list is feasible."""
    n_colors = inst.n_colors
    global_hist = color_histogram(inst.colors, None, n_colors)
    for members in clusters:
        if not members:
            continue
        hist = color_histogram(inst.colors, members, n_colors)
        if not _feasible_hist(hist, global_hist, inst.constraint):
            return False
    return True


def merge_clusters(a: list[int], b: list[int]) -> list[int]:
    """Union of two disjoint clusters, kept sorted by point index."""
    overlap = set(a) & set(b)
    if overlap:
        raise ValueError(f"clusters overlap on points {sorted(overlap)}")
    return sorted(a + b)
