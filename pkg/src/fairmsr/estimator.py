"""Scikit-learn style wrapper around the solver.

``FairMinSumRadii`` accepts a coordinate array (or a precomputed distance
matrix) plus per-point colors and exposes the usual clustering surface:
``fit``, ``fit_predict``, ``labels_``, ``get_params``/``set_params``.  It is
a thin facade — all real work happens in :func:`fairmsr.search.solve`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_array

from .instance import ConstraintSpec, Instance
from .search import solve

__all__ = ["FairMinSumRadii"]


class FairMinSumRadii(ClusterMixin, BaseEstimator):
    """Min-sum-radii clustering with a mergeable fairness constraint.

    Parameters
    ----------
    k : cluster budget (at most k clusters are produced).
    epsilon : accuracy knob of the underlying approximation scheme; smaller
        values mean denser guessing grids and longer runtimes.
    constraint : one of "none", "exact_fairness", "ratio_balance",
        "exact_balance", "lu_fairness", "lower_bound".
    b, l, u, ell : constraint parameters (rationals as (num, den) pairs).
    mode : assignment strategy, normally "auto".
    metric : "euclidean" to treat X as coordinates, "precomputed" to treat X
        as a distance matrix.

    Attributes (after fit)
    ----------------------
    labels_ : cluster index per point.
    center_indices_ : point index serving as each cluster's center.
    radii_ : radius bound per cluster.
    cost_ : sum of radii.
    n_profiles_, n_tuples_ : search effort counters.
    """

    def __init__(
        self,
        k: int = 2,
        epsilon: float = 0.5,
        constraint: str = "none",
        b: tuple[int, int] | None = None,
        l: tuple[tuple[int, int], ...] | None = None,
        u: tuple[tuple[int, int], ...] | None = None,
        ell: int | None = None,
        mode: str = "auto",
        metric: str = "euclidean",
    ) -> None:
        self.k = k
        self.epsilon = epsilon
        self.constraint = constraint
        self.b = b
        self.l = l
        self.u = u
        self.ell = ell
        self.mode = mode
        self.metric = metric

    def _constraint_spec(self) -> ConstraintSpec:
        kind = self.constraint
        if kind == "ratio_balance":
            return ConstraintSpec(kind=kind, b=self.b)
        if kind == "lu_fairness":
            lower = tuple(tuple(r) for r in self.l) if self.l is not None else None
            upper = tuple(tuple(r) for r in self.u) if self.u is not None else None
            return ConstraintSpec(kind=kind, lower=lower, upper=upper)
        if kind == "lower_bound":
            return ConstraintSpec(kind=kind, ell=self.ell)
        return ConstraintSpec(kind=kind)

    def fit(self, X, y=None, colors=None):
        X = check_array(X, dtype=float)
        n = X.shape[0]
        if self.metric == "precomputed":
            if X.shape[0] != X.shape[1]:
                raise ValueError("precomputed metric requires a square distance matrix")
            dist = np.asarray(X, dtype=float)
        elif self.metric == "euclidean":
            diff = X[:, None, :] - X[None, :, :]
            dist = np.sqrt((diff * diff).sum(axis=2))
            np.fill_diagonal(dist, 0.0)
        else:
            raise ValueError(f"unknown metric {self.metric!r}")
        if colors is None:
            colors = [0] * n
        colors = [int(c) for c in np.asarray(colors).ravel()]
        inst = Instance(
            dist=dist,
            colors=colors,
            k=self.k,
            epsilon=float(self.epsilon),
            constraint=self._constraint_spec(),
        )
        result = solve(inst, mode=self.mode)
        if not result.feasible or result.clustering is None:
            raise ValueError(
                "no feasible clustering exists: the full point set already "
                f"violates the {inst.constraint.kind} constraint"
            )
        clustering = result.clustering
        self.labels_ = np.asarray(clustering.assignment, dtype=int)
        self.center_indices_ = np.asarray(clustering.centers, dtype=int)
        self.radii_ = np.asarray(clustering.radii, dtype=float)
        self.cost_ = clustering.cost
        self.n_profiles_ = result.meta.profiles_tried
        self.n_tuples_ = result.meta.tuples_tried
        return self
