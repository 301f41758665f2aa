"""Problem instances, clusterings, and their JSON wire formats.

An instance is a finite metric (given as an explicit distance matrix or as
Euclidean coordinates), one color per point, a cluster budget ``k``, an
accuracy parameter ``epsilon``, and a constraint specification.  A clustering
names up to ``k`` centers (point indices), assigns every point to one listed
center, and carries the per-center radii; its cost is the sum of radii.

All files are written in a canonical JSON form (fixed key order, two-space
indent, trailing newline) so that identical inputs always produce
byte-identical outputs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = [
    "CONSTRAINT_KINDS",
    "SchemaError",
    "InvalidSolutionError",
    "MetricViolation",
    "ConstraintSpec",
    "Instance",
    "Clustering",
    "SolutionMeta",
    "validate_metric",
    "msr_cost",
    "recompute_clustering",
    "cluster_members",
    "read_instance",
    "write_instance",
    "instance_to_json",
    "read_solution",
    "write_solution",
    "solution_to_json",
]

#: Constraint kinds understood by the solver.  All of them are closed under
#: merging two feasible clusters, which is what the search relies on.
CONSTRAINT_KINDS = (
    "none",
    "exact_fairness",
    "ratio_balance",
    "exact_balance",
    "lu_fairness",
    "lower_bound",
)

#: Default additive slack when checking the triangle inequality on float input.
METRIC_SLACK = 1e-9


class SchemaError(ValueError):
    """An input file does not match the expected schema.

    The message always names the offending key path (e.g. ``constraint.b``).
    """


class InvalidSolutionError(ValueError):
    """A clustering is structurally inconsistent with its instance."""


Rational = tuple[int, int]


def _check_rational(value: Any, path: str) -> Rational:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in value)
    ):
        raise SchemaError(f"{path}: expected a rational as an [int, int] pair, got {value!r}")
    num, den = int(value[0]), int(value[1])
    if den <= 0:
        raise SchemaError(f"{path}: rational denominator must be positive, got {den}")
    if num < 0:
        raise SchemaError(f"{path}: rational numerator must be non-negative, got {num}")
    if num > den:
        raise SchemaError(f"{path}: expected a value in [0, 1], got {num}/{den}")
    return (num, den)


@dataclass(frozen=True)
class ConstraintSpec:
    """Which constraint every cluster of a solution must satisfy.

    Exactly the fields relevant for ``kind`` are set:

    * ``none`` / ``exact_fairness`` / ``exact_balance`` — no parameters;
    * ``ratio_balance`` — ``b``, a rational in [0, 1] (requires 2 colors);
    * ``lu_fairness`` — ``lower`` / ``upper``, one rational pair per color;
    * ``lower_bound`` — ``ell``, a minimum cluster size >= 1.
    """

    kind: str
    b: Rational | None = None
    lower: tuple[Rational, ...] | None = None
    upper: tuple[Rational, ...] | None = None
    ell: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in CONSTRAINT_KINDS:
            raise SchemaError(
                f"constraint.kind: unknown kind {self.kind!r}; expected one of {CONSTRAINT_KINDS}"
            )
        if self.kind == "ratio_balance":
            if self.b is None:
                raise SchemaError("constraint.b: required for ratio_balance")
            object.__setattr__(self, "b", _check_rational(list(self.b), "constraint.b"))
        elif self.kind == "lu_fairness":
            if self.lower is None or self.upper is None:
                raise SchemaError("constraint.l/u: required for lu_fairness")
            object.__setattr__(
                self,
                "lower",
                tuple(
                    _check_rational(list(r), f"constraint.l[{j}]")
                    for j, r in enumerate(self.lower)
                ),
            )
            object.__setattr__(
                self,
                "upper",
                tuple(
                    _check_rational(list(r), f"constraint.u[{j}]")
                    for j, r in enumerate(self.upper)
                ),
            )
            if len(self.lower) != len(self.upper):
                raise SchemaError(
                    f"constraint.u: expected {len(self.lower)} bounds to match constraint.l,"
                    f" got {len(self.upper)}"
                )
            for j, ((ln, ld), (un, ud)) in enumerate(zip(self.lower, self.upper)):
                # l_j <= u_j by cross-multiplication.
                if ln * ud > un * ld:
                    raise SchemaError(f"constraint.l[{j}]: lower bound exceeds upper bound")
        elif self.kind == "lower_bound":
            if self.ell is None or self.ell < 1:
                raise SchemaError(f"constraint.ell: expected an integer >= 1, got {self.ell}")

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"kind": self.kind}
        if self.kind == "ratio_balance":
            assert self.b is not None
            doc["b"] = list(self.b)
        elif self.kind == "lu_fairness":
            assert self.lower is not None and self.upper is not None
            doc["l"] = [list(r) for r in self.lower]
            doc["u"] = [list(r) for r in self.upper]
        elif self.kind == "lower_bound":
            doc["ell"] = self.ell
        return doc

    @staticmethod
    def from_json(doc: Any) -> "ConstraintSpec":
        if not isinstance(doc, dict):
            raise SchemaError(f"constraint: expected an object, got {type(doc).__name__}")
        kind = doc.get("kind")
        if kind not in CONSTRAINT_KINDS:
            raise SchemaError(
                f"constraint.kind: unknown kind {kind!r}; expected one of {CONSTRAINT_KINDS}"
            )
        if kind == "ratio_balance":
            if "b" not in doc:
                raise SchemaError("constraint.b: required for ratio_balance")
            return ConstraintSpec(kind=kind, b=_check_rational(doc["b"], "constraint.b"))
        if kind == "lu_fairness":
            for key in ("l", "u"):
                if key not in doc or not isinstance(doc[key], list):
                    raise SchemaError(f"constraint.{key}: required list for lu_fairness")
            lower = tuple(
                _check_rational(r, f"constraint.l[{j}]") for j, r in enumerate(doc["l"])
            )
            upper = tuple(
                _check_rational(r, f"constraint.u[{j}]") for j, r in enumerate(doc["u"])
            )
            return ConstraintSpec(kind=kind, lower=lower, upper=upper)
        if kind == "lower_bound":
            ell = doc.get("ell")
            if not isinstance(ell, int) or isinstance(ell, bool):
                raise SchemaError(f"constraint.ell: expected an integer, got {ell!r}")
            return ConstraintSpec(kind=kind, ell=ell)
        return ConstraintSpec(kind=kind)


@dataclass(frozen=True)
class MetricViolation:
    """First defect found in a would-be distance matrix."""

    kind: str  # "shape" | "symmetry" | "diagonal" | "negative" | "triangle"
    indices: tuple[int, ...]
    message: str


def validate_metric(dist: np.ndarray, slack: float = METRIC_SLACK) -> MetricViolation | None:
    """Check that ``dist`` is a finite metric up to an additive ``slack``.

    Returns ``None`` when the matrix is square, symmetric, zero on the
    diagonal, non-negative, and satisfies ``d[i,j] <= d[i,h] + d[h,j] + slack``
    for all triples.  Otherwise returns the first violation in scan order
    (rows, then columns, then intermediate points).
    """
    dist = np.asarray(dist, dtype=float)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        return MetricViolation("shape", (), f"expected a square matrix, got shape {dist.shape}")
    n = dist.shape[0]
    if not np.all(np.isfinite(dist)):
        i, j = np.argwhere(~np.isfinite(dist))[0]
        return MetricViolation(
            "negative", (int(i), int(j)), f"non-finite entry at ({i}, {j}): {dist[i, j]}"
        )
    for i in range(n):
        if dist[i, i] != 0.0:
            return MetricViolation(
                "diagonal", (i,), f"diagonal entry ({i}, {i}) is {dist[i, i]!r}, expected 0"
            )
    for i in range(n):
        for j in range(n):
            if dist[i, j] < 0.0:
                return MetricViolation(
                    "negative", (i, j), f"negative distance at ({i}, {j}): {dist[i, j]!r}"
                )
            if dist[i, j] != dist[j, i]:
                return MetricViolation(
                    "symmetry",
                    (i, j),
                    f"asymmetry at ({i}, {j}): {dist[i, j]!r} != {dist[j, i]!r}",
                )
    # Vectorized happy path for the triangle inequality; fall back to a scan
    # only when some triple actually violates it, to report the first one.
    via = dist[:, :, None] + dist[None, :, :]  # via[i, h, j] = d(i,h) + d(h,j)
    if np.all(dist[:, None, :] <= via + slack):
        return None
    for i in range(n):
        for j in range(n):
            for h in range(n):
                if dist[i, j] > dist[i, h] + dist[h, j] + slack:
                    return MetricViolation(
                        "triangle",
                        (i, j, h),
                        f"triangle violated: d({i},{j})={dist[i, j]!r} > "
                        f"d({i},{h}) + d({h},{j}) = {dist[i, h] + dist[h, j]!r}",
                    )
    return None  # pragma: no cover - unreachable, kept for clarity


def _euclidean_matrix(points: list[list[float]]) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    diff = arr[:, None, :] - arr[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    np.fill_diagonal(dist, 0.0)
    return dist


@dataclass
class Instance:
    """One clustering problem: metric, colors, budget, accuracy, constraint."""

    dist: np.ndarray
    colors: list[int]
    k: int
    epsilon: float
    constraint: ConstraintSpec
    #: Original coordinates when the instance was specified as points; kept so
    #: writing the instance back reproduces the file it was read from.
    points: list[list[float]] | None = None

    def __post_init__(self) -> None:
        self.dist = np.asarray(self.dist, dtype=float)
        if self.dist.ndim != 2 or self.dist.shape[0] != self.dist.shape[1]:
            raise SchemaError(
                f"distance_matrix: expected a square matrix, got shape {self.dist.shape}"
            )
        n = self.dist.shape[0]
        if n < 1:
            raise SchemaError("n: expected at least one point")
        if len(self.colors) != n:
            raise SchemaError(f"colors: expected length {n}, got {len(self.colors)}")
        for i, c in enumerate(self.colors):
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                raise SchemaError(f"colors[{i}]: expected a non-negative integer, got {c!r}")
        present = set(self.colors)
        m = max(present) + 1
        if present != set(range(m)):
            missing = sorted(set(range(m)) - present)
            raise SchemaError(f"colors: color ids must be contiguous from 0; missing {missing}")
        if not isinstance(self.k, int) or isinstance(self.k, bool) or not (1 <= self.k <= n):
            raise SchemaError(f"k: expected an integer in [1, {n}], got {self.k!r}")
        if not (isinstance(self.epsilon, (int, float)) and self.epsilon > 0):
            raise SchemaError(f"epsilon: expected a positive number, got {self.epsilon!r}")
        self.epsilon = float(self.epsilon)
        if self.constraint.kind == "ratio_balance" and m != 2:
            raise SchemaError(f"constraint.kind: ratio_balance needs exactly 2 colors, got {m}")
        if self.constraint.kind == "lu_fairness":
            assert self.constraint.lower is not None
            if len(self.constraint.lower) != m:
                raise SchemaError(
                    f"constraint.l: expected one bound per color ({m}), "
                    f"got {len(self.constraint.lower)}"
                )

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def n_colors(self) -> int:
        return max(self.colors) + 1

    @property
    def rows(self) -> list[list[float]]:
        """Distance matrix as plain lists; cached (hot loops index this)."""
        rows = getattr(self, "_rows", None)
        if rows is None:
            rows = self.dist.tolist()
            object.__setattr__(self, "_rows", rows)
        return rows

    @property
    def diameter(self) -> float:
        return float(self.dist.max())


@dataclass
class Clustering:
    """Up to ``k`` centers, a total assignment, and per-center radii.

    ``assignment[p]`` is an index into ``centers``; ``radii[c]`` is the largest
    distance from ``centers[c]`` to a point assigned to it.
    """

    centers: list[int]
    assignment: list[int]
    radii: list[float]

    @property
    def cost(self) -> float:
        return float(sum(self.radii))


def cluster_members(clustering: Clustering) -> list[list[int]]:
    """Points per center, in center order."""
    members: list[list[int]] = [[] for _ in clustering.centers]
    for p, c in enumerate(clustering.assignment):
        if not 0 <= c < len(clustering.centers):
            raise InvalidSolutionError(
                f"assignment[{p}] = {c} does not reference a listed center"
            )
        members[c].append(p)
    return members


def msr_cost(dist: np.ndarray, centers: list[int], assignment: list[int]) -> float:
    """Sum of cluster radii under ``assignment``; empty centers contribute 0."""
    n = len(assignment)
    radii = [0.0] * len(centers)
    for p in range(n):
        c = assignment[p]
        if not 0 <= c < len(centers):
            raise InvalidSolutionError(
                f"assignment[{p}] = {c} does not reference a listed center"
            )
        d = float(dist[p][centers[c]])
        if d > radii[c]:
            radii[c] = d
    return float(sum(radii))


def recompute_clustering(
    dist: np.ndarray, centers: list[int], assignment: list[int]
) -> Clustering:
    """Build a :class:`Clustering` with recomputed radii, dropping empty centers."""
    n = len(assignment)
    used = sorted({assignment[p] for p in range(n)})
    for p in range(n):
        if not 0 <= assignment[p] < len(centers):
            raise InvalidSolutionError(
                f"assignment[{p}] = {assignment[p]} does not reference a listed center"
            )
    remap = {old: new for new, old in enumerate(used)}
    new_centers = [centers[old] for old in used]
    new_assignment = [remap[assignment[p]] for p in range(n)]
    radii = [0.0] * len(new_centers)
    for p in range(n):
        c = new_assignment[p]
        d = float(dist[p][new_centers[c]])
        if d > radii[c]:
            radii[c] = d
    return Clustering(centers=new_centers, assignment=new_assignment, radii=radii)


# --------------------------------------------------------------------------
# JSON wire formats
# --------------------------------------------------------------------------


def _canonical_dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def instance_to_json(inst: Instance) -> dict[str, Any]:
    doc: dict[str, Any] = {"n": inst.n}
    if inst.points is not None:
        doc["distance_matrix"] = None
        doc["points"] = [[float(x) for x in row] for row in inst.points]
    else:
        doc["distance_matrix"] = [[float(x) for x in row] for row in inst.dist]
        doc["points"] = None
    doc["colors"] = list(inst.colors)
    doc["k"] = inst.k
    doc["epsilon"] = inst.epsilon
    doc["constraint"] = inst.constraint.to_json()
    return doc


def _instance_from_json(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise SchemaError(f"instance: expected an object, got {type(doc).__name__}")
    for key in ("n", "distance_matrix", "points", "colors", "k", "epsilon", "constraint"):
        if key not in doc:
            raise SchemaError(f"{key}: missing required key")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError(f"n: expected a positive integer, got {n!r}")
    matrix, points = doc["distance_matrix"], doc["points"]
    if (matrix is None) == (points is None):
        raise SchemaError("distance_matrix: exactly one of distance_matrix/points must be non-null")
    if points is not None:
        if not isinstance(points, list) or len(points) != n:
            raise SchemaError(f"points: expected {n} coordinate rows")
        width = None
        for i, row in enumerate(points):
            if not isinstance(row, list) or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in row
            ):
                raise SchemaError(f"points[{i}]: expected a list of numbers")
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise SchemaError(f"points[{i}]: expected {width} coordinates, got {len(row)}")
        dist = _euclidean_matrix(points)
        kept_points: list[list[float]] | None = [[float(x) for x in row] for row in points]
    else:
        if not isinstance(matrix, list) or len(matrix) != n:
            raise SchemaError(f"distance_matrix: expected {n} rows, got {len(matrix) if isinstance(matrix, list) else type(matrix).__name__}")
        for i, row in enumerate(matrix):
            if not isinstance(row, list) or len(row) != n:
                raise SchemaError(f"distance_matrix[{i}]: expected {n} entries")
            if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in row):
                raise SchemaError(f"distance_matrix[{i}]: expected numbers")
        dist = np.asarray(matrix, dtype=float)
        kept_points = None
    colors = doc["colors"]
    if not isinstance(colors, list):
        raise SchemaError(f"colors: expected a list, got {type(colors).__name__}")
    constraint = ConstraintSpec.from_json(doc["constraint"])
    k = doc["k"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise SchemaError(f"k: expected a positive integer, got {k!r}")
    epsilon = doc["epsilon"]
    if not isinstance(epsilon, (int, float)) or isinstance(epsilon, bool) or epsilon <= 0:
        raise SchemaError(f"epsilon: expected a positive number, got {epsilon!r}")
    return Instance(
        dist=dist,
        colors=list(colors),
        k=k,
        epsilon=float(epsilon),
        constraint=constraint,
        points=kept_points,
    )


def read_instance(path: str) -> Instance:
    """Parse an instance file, raising :class:`SchemaError` on any defect."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"<file>: not valid JSON: {exc}") from exc
    return _instance_from_json(doc)


def write_instance(path: str, inst: Instance) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_canonical_dumps(instance_to_json(inst)))


@dataclass(frozen=True)
class SolutionMeta:
    """Bookkeeping attached to a written solution."""

    profiles_tried: int = 0
    tuples_tried: int = 0
    elapsed_ms: int = 0
    seed: int = 0


def solution_to_json(clustering: Clustering | None, feasible: bool, meta: SolutionMeta) -> dict[str, Any]:
    if clustering is None:
        centers: list[int] = []
        assignment: list[int] = []
        radii: list[float] = []
        cost = 0.0
    else:
        centers = list(clustering.centers)
        assignment = list(clustering.assignment)
        radii = [float(r) for r in clustering.radii]
        cost = clustering.cost
    return {
        "centers": centers,
        "assignment": assignment,
        "radii": radii,
        "cost": cost,
        "feasible": bool(feasible),
        "meta": {
            "profiles_tried": meta.profiles_tried,
            "tuples_tried": meta.tuples_tried,
            "elapsed_ms": meta.elapsed_ms,
            "seed": meta.seed,
        },
    }


def write_solution(path: str, clustering: Clustering | None, feasible: bool, meta: SolutionMeta) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_canonical_dumps(solution_to_json(clustering, feasible, meta)))


def read_solution(path: str) -> dict[str, Any]:
    """Parse a solution file back into its JSON document (schema-checked)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"<file>: not valid JSON: {exc}") from exc
    for key in ("centers", "assignment", "radii", "cost", "feasible", "meta"):
        if key not in doc:
            raise SchemaError(f"{key}: missing required key")
    for key in ("profiles_tried", "tuples_tried", "elapsed_ms", "seed"):
        if key not in doc["meta"]:
            raise SchemaError(f"meta.{key}: missing required key")
    return doc
