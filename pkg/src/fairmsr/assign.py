"""Turning a candidate cover (centers + radii) into a feasible clustering.

Three strategies, chosen by constraint:

* ``components`` — build the access graph (each ball's center connected to
  every point it covers) and make one cluster per connected component,
  centered at the component's largest ball.  Works for every mergeable
  constraint.
* ``one_one`` — two colors with equal counts: match points across colors via
  max-flow (a pair is matchable iff some ball contains both) and assign each
  pair to the smallest ball slot witnessing it.
* ``lower_bound`` — route ``ell`` units of flow to every ball so each opened
  center keeps at least ``ell`` points, then attach leftovers to the smallest
  covering slot.

A strategy returns ``None`` to reject a cover (uncovered point, deficient
flow); the search treats rejection as "wrong guess, move on".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .constraints import color_histogram
from .instance import Clustering, Instance

if TYPE_CHECKING:  # pragma: no cover - typing only, avoids an import cycle
    from .search import CandidateCover

__all__ = [
    "AccessGraph",
    "FlowNetwork",
    "build_access_graph",
    "components_assignment",
    "one_one_assignment",
    "lower_bound_assignment",
    "select_mode",
    "run_assignment",
    "MODES",
]

MODES = ("auto", "components", "one_one", "lower_bound")


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:  # keep the smallest index as root, for determinism
                ra, rb = rb, ra
            self.parent[rb] = ra


def _active_balls(cover: "CandidateCover") -> list[tuple[int, int, float]]:
    """Balls visible to assignment: real slots (any radius — a zero-radius
    real ball still covers coincident points) and enlarged placeholders
    (positive radius).  Pure zero-radius placeholders are skipped."""
    out = []
    for slot, (c, r) in enumerate(zip(cover.centers, cover.radii)):
        if cover.real[slot] or r > 0.0:
            out.append((slot, c, float(r)))
    return out


@dataclass
class AccessGraph:
    """Bipartite-ish coverage structure: per active ball, the points inside it.

    Edges of the underlying graph are (ball center, covered point); vertices
    are all points, so a point inside no ball shows up in ``uncovered``.
    """

    n: int
    balls: list[tuple[int, int, float]]  # (cover slot, center point, radius)
    members: list[list[int]]  # aligned with balls
    uncovered: list[int]


def build_access_graph(inst: Instance, cover: "CandidateCover") -> AccessGraph:
    rows = inst.rows
    n = inst.n
    balls = _active_balls(cover)
    members: list[list[int]] = []
    covered = [False] * n
    for _, c, r in balls:
        row = rows[c]
        mem = [p for p in range(n) if row[p] <= r]
        members.append(mem)
        for p in mem:
            covered[p] = True
    uncovered = [p for p in range(n) if not covered[p]]
    return AccessGraph(n=n, balls=balls, members=members, uncovered=uncovered)


def components_assignment(
    inst: Instance, cover: "CandidateCover", best_center: bool = False
) -> Clustering | None:
    """One cluster per connected component of the access graph.

    The cluster center is the component's maximum-radius ball center (ties:
    smallest point index); with ``best_center=True`` it is instead the
    component member minimizing the cluster radius (never worse).  Rejects
    covers leaving any point uncovered.
    """
    graph = build_access_graph(inst, cover)
    if graph.uncovered or not graph.balls:
        return None
    n = inst.n
    uf = _UnionFind(n)
    for (slot, c, r), mem in zip(graph.balls, graph.members):
        for p in mem:
            uf.union(c, p)

    comp_points: dict[int, list[int]] = {}
    for p in range(n):
        comp_points.setdefault(uf.find(p), []).append(p)
    roots = sorted(comp_points)  # roots are minimal members, so this orders
    # components by their smallest point index

    comp_ball: dict[int, tuple[float, int]] = {}  # root -> (radius, center)
    for slot, c, r in graph.balls:
        root = uf.find(c)
        cur = comp_ball.get(root)
        # Maximal radius wins; on radius ties the smallest center point.
        if cur is None or r > cur[0] or (r == cur[0] and c < cur[1]):
            comp_ball[root] = (r, c)

    rows = inst.rows
    centers: list[int] = []
    radii: list[float] = []
    assignment = [0] * n
    for idx, root in enumerate(roots):
        pts = comp_points[root]
        if best_center:
            center = min(pts, key=lambda c: (max(rows[c][p] for p in pts), c))
        else:
            center = comp_ball[root][1]
        row = rows[center]
        centers.append(center)
        radii.append(max(row[p] for p in pts))
        for p in pts:
            assignment[p] = idx
    return Clustering(centers=centers, assignment=assignment, radii=radii)


class FlowNetwork:
    """Integer max-flow (augmenting shortest paths), small and deterministic."""

    def __init__(self, n_nodes: int) -> None:
        self.n = n_nodes
        self.adj: list[list[list[int]]] = [[] for _ in range(n_nodes)]
        # each edge is [to, remaining_cap, index_of_reverse, original_cap]

    def add_edge(self, u: int, v: int, cap: int) -> tuple[int, int]:
        self.adj[u].append([v, cap, len(self.adj[v]), cap])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1, 0])
        return (u, len(self.adj[u]) - 1)

    def edge_flow(self, handle: tuple[int, int]) -> int:
        u, i = handle
        edge = self.adj[u][i]
        return edge[3] - edge[1]

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            prev: list[tuple[int, int] | None] = [None] * self.n
            prev[s] = (s, -1)
            queue = deque([s])
            while queue:
                u = queue.popleft()
                if u == t:
                    break
                for i, edge in enumerate(self.adj[u]):
                    if edge[1] > 0 and prev[edge[0]] is None:
                        prev[edge[0]] = (u, i)
                        queue.append(edge[0])
            if prev[t] is None:
                return total
            # bottleneck along the path
            push = None
            v = t
            while v != s:
                u, i = prev[v]  # type: ignore[misc]
                cap = self.adj[u][i][1]
                push = cap if push is None else min(push, cap)
                v = u
            v = t
            while v != s:
                u, i = prev[v]  # type: ignore[misc]
                edge = self.adj[u][i]
                edge[1] -= push
                self.adj[edge[0]][edge[2]][1] += push
                v = u
            total += push  # type: ignore[operator]


def _is_one_one(inst: Instance) -> bool:
    if inst.n_colors != 2:
        return False
    hist = color_histogram(inst.colors, None, 2)
    return hist[0] == hist[1]


def one_one_assignment(inst: Instance, cover: "CandidateCover") -> Clustering | None:
    """Pair each color-0 point with a color-1 point sharing a ball.

    Matching via max-flow on the unit bipartite network; a full matching of
    size n/2 is required, otherwise the cover is rejected.  Each pair lands
    in the smallest ball slot containing both; the reported radius of a used
    slot is the ball radius itself.
    """
    if not _is_one_one(inst):
        raise ValueError("one_one assignment requires exactly 2 colors with equal counts")
    n = inst.n
    graph = build_access_graph(inst, cover)
    if graph.uncovered or not graph.balls:
        return None
    left = [p for p in range(n) if inst.colors[p] == 0]
    right = [p for p in range(n) if inst.colors[p] == 1]
    lpos = {p: i for i, p in enumerate(left)}
    rpos = {p: i for i, p in enumerate(right)}

    # smallest slot whose ball contains both endpoints
    witness: dict[tuple[int, int], int] = {}
    for (slot, _, _), mem in zip(graph.balls, graph.members):
        mem0 = [p for p in mem if inst.colors[p] == 0]
        mem1 = [p for p in mem if inst.colors[p] == 1]
        for p0 in mem0:
            for p1 in mem1:
                witness.setdefault((p0, p1), slot)

    half = n // 2
    s, t = 0, 1 + 2 * half
    net = FlowNetwork(2 + 2 * half)
    for i in range(half):
        net.add_edge(s, 1 + i, 1)
        net.add_edge(1 + half + i, t, 1)
    pair_handles: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for (p0, p1) in sorted(witness):
        handle = net.add_edge(1 + lpos[p0], 1 + half + rpos[p1], 1)
        pair_handles.append(((p0, p1), handle))
    if net.max_flow(s, t) != half:
        return None

    slot_pairs: dict[int, list[tuple[int, int]]] = {}
    for (p0, p1), handle in pair_handles:
        if net.edge_flow(handle) > 0:
            slot_pairs.setdefault(witness[(p0, p1)], []).append((p0, p1))

    slot_radius = {slot: r for slot, _, r in graph.balls}
    slot_center = {slot: c for slot, c, _ in graph.balls}
    centers: list[int] = []
    radii: list[float] = []
    assignment = [0] * n
    for idx, slot in enumerate(sorted(slot_pairs)):
        centers.append(slot_center[slot])
        radii.append(slot_radius[slot])
        for p0, p1 in slot_pairs[slot]:
            assignment[p0] = idx
            assignment[p1] = idx
    return Clustering(centers=centers, assignment=assignment, radii=radii)


def lower_bound_assignment(inst: Instance, cover: "CandidateCover", ell: int) -> Clustering | None:
    """Assign points so every active ball keeps at least ``ell`` of them.

    Flow network: source -> each ball (capacity ell) -> covered points
    (capacity 1) -> sink (capacity 1).  The cover is rejected unless the flow
    saturates all ball edges; remaining points join the smallest covering
    slot.
    """
    n = inst.n
    graph = build_access_graph(inst, cover)
    if graph.uncovered or not graph.balls:
        return None
    n_balls = len(graph.balls)
    if ell * n_balls > n:
        return None

    s, t = 0, 1 + n_balls + n
    net = FlowNetwork(2 + n_balls + n)
    for b in range(n_balls):
        net.add_edge(s, 1 + b, ell)
    point_node = [1 + n_balls + p for p in range(n)]
    for p in range(n):
        net.add_edge(point_node[p], t, 1)
    handles: list[tuple[int, int, tuple[int, int]]] = []  # (ball idx, point, handle)
    for b, mem in enumerate(graph.members):
        for p in mem:
            handles.append((b, p, net.add_edge(1 + b, point_node[p], 1)))
    if net.max_flow(s, t) != ell * n_balls:
        return None

    assigned = [-1] * n
    for b, p, handle in handles:
        if net.edge_flow(handle) > 0:
            assigned[p] = b
    # Leftovers: smallest covering slot (balls are already in slot order).
    for b, mem in enumerate(graph.members):
        for p in mem:
            if assigned[p] == -1:
                assigned[p] = b

    rows = inst.rows
    centers = [c for _, c, _ in graph.balls]
    radii = [0.0] * n_balls
    assignment = [0] * n
    for p in range(n):
        b = assigned[p]
        assignment[p] = b
        d = rows[centers[b]][p]
        if d > radii[b]:
            radii[b] = d
    return Clustering(centers=centers, assignment=assignment, radii=radii)


def select_mode(inst: Instance, mode: str = "auto") -> str:
    """Resolve the assignment strategy for an instance.

    ``auto`` picks one_one for exact fairness with two equally-sized colors,
    the lower-bound flow for lower_bound constraints, and components
    otherwise.  Forcing ``one_one`` on an instance without two equal colors
    is a usage error.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "auto":
        if inst.constraint.kind == "exact_fairness" and _is_one_one(inst):
            return "one_one"
        if inst.constraint.kind == "lower_bound":
            return "lower_bound"
        return "components"
    if mode == "one_one" and not _is_one_one(inst):
        raise ValueError("mode one_one requires exactly 2 colors with equal counts")
    return mode


def run_assignment(inst: Instance, cover: "CandidateCover", mode: str) -> Clustering | None:
    """Dispatch a resolved (non-auto) mode; see :func:`select_mode`."""
    if mode == "components":
        return components_assignment(inst, cover)
    if mode == "one_one":
        return one_one_assignment(inst, cover)
    if mode == "lower_bound":
        ell = inst.constraint.ell if inst.constraint.kind == "lower_bound" else 1
        assert ell is not None
        return lower_bound_assignment(inst, cover, ell)
    raise ValueError(f"unresolved mode {mode!r}")
