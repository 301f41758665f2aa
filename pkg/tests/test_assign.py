"""Turning candidate covers into clusters: components, pairing, capacities."""

import numpy as np
import pytest

from fairmsr.assign import (
    FlowNetwork,
    build_access_graph,
    components_assignment,
    lower_bound_assignment,
    one_one_assignment,
    run_assignment,
    select_mode,
)
from fairmsr.constraints import clustering_feasible
from fairmsr.instance import cluster_members
from fairmsr.oracle import exact_matching
from fairmsr.search import CandidateCover

from conftest import line_instance


# --------------------------------------------------------------- components

def test_overlapping_balls_merge_into_one_component():
    # balls at 1, 3, 4 chain together through shared points; the ball at
    # coordinate 10 stays its own cluster
    inst = line_instance([0, 1, 2, 3, 4, 10, 11], k=4)
    cover = CandidateCover(centers=(1, 3, 4, 5), radii=(1.2, 1.0, 0.5, 1.0))
    g = build_access_graph(inst, cover)
    assert g.members == [[0, 1, 2], [2, 3, 4], [4], [5, 6]]
    assert g.uncovered == []
    cl = components_assignment(inst, cover)
    assert cl.centers == [1, 5]
    assert cluster_members(cl) == [[0, 1, 2, 3, 4], [5, 6]]
    assert cl.radii == [3.0, 1.0]


def test_component_center_is_largest_ball():
    inst = line_instance([0.0, 2.0, 3.0], k=2)
    cl = components_assignment(
        inst, CandidateCover(centers=(0, 2), radii=(2.0, 1.0)))
    assert cl.centers == [0]
    assert cl.assignment == [0, 0, 0]
    assert cl.radii == [3.0]
    # radius grows beyond the ball's own 2.0, but stays within the chain bound
    assert cl.cost <= 2 * (2.0 + 1.0) - 2.0


def test_component_radii_are_recomputed_from_members():
    inst = line_instance([0, 1, 2], k=1)
    cl = components_assignment(
        inst, CandidateCover(centers=(1,), radii=(5.0,)))
    assert cl.radii == [1.0]  # actual reach, not the inflated ball radius


def test_best_center_flag_reoptimizes_each_component():
    inst = line_instance([0.0, 2.0, 3.0], k=2)
    cover = CandidateCover(centers=(0, 2), radii=(2.0, 1.0))
    cl = components_assignment(inst, cover, best_center=True)
    assert cl.centers == [1]   # coordinate 2 reaches everything within 2
    assert cl.radii == [2.0]
    assert cl.cost <= components_assignment(inst, cover).cost


def test_uncovered_point_rejects_cover():
    inst = line_instance([0, 1, 5], k=1)
    cover = CandidateCover(centers=(0,), radii=(1.0,))
    assert components_assignment(inst, cover) is None


def test_zero_radius_placeholders_are_ignored():
    inst = line_instance([0, 1], k=2)
    cover = CandidateCover(centers=(0, 0), radii=(1.0, 0.0),
                           real=(True, False))
    cl = components_assignment(inst, cover)
    assert cl.centers == [0]
    assert cl.assignment == [0, 0]


def test_real_zero_radius_ball_covers_coincident_points():
    inst = line_instance([0, 0, 9], k=2)
    cover = CandidateCover(centers=(0, 2), radii=(0.0, 0.0),
                           real=(True, True))
    cl = components_assignment(inst, cover)
    assert cl is not None
    assert cl.cost == 0.0
    assert cluster_members(cl) == [[0, 1], [2]]


# ------------------------------------------------------------------ pairing

def five_per_color_line():
    # three groups along a line, five points of each color in total
    coords = [0.0, 0.2, 5.0, 10.0, 10.2, 0.1, 0.3, 5.1, 10.1, 10.3]
    colors = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1]
    inst = line_instance(coords, colors=colors, k=3, kind="exact_fairness")
    cover = CandidateCover(centers=(0, 2, 3), radii=(0.5, 0.5, 0.5))
    return inst, cover


def test_one_one_pairs_within_balls():
    inst, cover = five_per_color_line()
    cl = one_one_assignment(inst, cover)
    assert cluster_members(cl) == [[0, 1, 5, 6], [2, 7], [3, 4, 8, 9]]
    assert cl.radii == [0.5, 0.5, 0.5]
    assert cl.cost == 1.5
    assert clustering_feasible(inst, cluster_members(cl))


def test_one_one_reports_ball_radii_not_recomputed():
    # the pairing keeps the guessed ball radii: the cost is the sum over
    # opened balls, matching the flow argument, not the tight member radii
    inst = line_instance([0.0, 0.1], colors=[0, 1], k=1,
                         kind="exact_fairness")
    cl = one_one_assignment(
        inst, CandidateCover(centers=(0,), radii=(0.5,)))
    assert cl.radii == [0.5]


def test_one_one_requires_two_equal_colors():
    inst = line_instance([0, 1, 2], colors=[0, 0, 1], k=1,
                         kind="exact_fairness")
    with pytest.raises(ValueError):
        one_one_assignment(
            inst, CandidateCover(centers=(0,), radii=(5.0,)))


def test_one_one_rejects_unpairable_cover():
    # two isolated balls each holding a single color: no fair pair fits
    inst = line_instance([0.0, 9.0], colors=[0, 1], k=2,
                         kind="exact_fairness")
    cover = CandidateCover(centers=(0, 1), radii=(0.1, 0.1))
    assert one_one_assignment(inst, cover) is None


def test_one_one_rejects_uncovered_point():
    inst = line_instance([0.0, 0.1, 7.0, 7.1], colors=[0, 1, 0, 1], k=2,
                         kind="exact_fairness")
    cover = CandidateCover(centers=(0, 2), radii=(0.5, 0.0),
                           real=(True, False))
    assert one_one_assignment(inst, cover) is None


def test_one_one_empty_ball_is_dropped():
    inst = line_instance([0.0, 0.1, 7.0, 7.1], colors=[0, 1, 0, 1], k=2,
                         kind="exact_fairness")
    cover = CandidateCover(centers=(0, 2), radii=(9.0, 0.5))
    cl = one_one_assignment(inst, cover)
    assert cl is not None
    assert clustering_feasible(inst, cluster_members(cl))


# ----------------------------------------------------------------- capacity

def test_lower_bound_splits_between_disjoint_balls():
    inst = line_instance([0, 1, 2, 10, 11, 12], k=2,
                         kind="lower_bound", ell=2)
    cover = CandidateCover(centers=(1, 4), radii=(1.0, 1.0))
    cl = lower_bound_assignment(inst, cover, 2)
    assert cluster_members(cl) == [[0, 1, 2], [3, 4, 5]]
    assert cl.radii == [1.0, 1.0]


def test_lower_bound_rebalances_overlapping_balls():
    # one ball sees everything; the flow still routes two points to each
    inst = line_instance([0, 1, 2, 3], k=2, kind="lower_bound", ell=2)
    cover = CandidateCover(centers=(1, 2), radii=(3.0, 1.5))
    cl = lower_bound_assignment(inst, cover, 2)
    members = cluster_members(cl)
    assert sorted(len(m) for m in members) == [2, 2]
    assert clustering_feasible(inst, members)


def test_lower_bound_rejects_too_many_balls():
    inst = line_instance([0, 1, 2, 3], k=3, kind="lower_bound", ell=2)
    cover = CandidateCover(centers=(0, 1, 2), radii=(4.0, 4.0, 4.0))
    assert lower_bound_assignment(inst, cover, 2) is None  # 3*2 > 4 points


def test_lower_bound_rejects_starved_ball():
    # the second ball covers only one point, so it cannot reach ell=2
    inst = line_instance([0, 1, 2, 9], k=2, kind="lower_bound", ell=2)
    cover = CandidateCover(centers=(1, 3), radii=(1.5, 0.5))
    assert lower_bound_assignment(inst, cover, 2) is None


def test_lower_bound_rejects_uncovered_point():
    inst = line_instance([0, 1, 9], k=1, kind="lower_bound", ell=2)
    cover = CandidateCover(centers=(0,), radii=(2.0,))
    assert lower_bound_assignment(inst, cover, 2) is None


def test_lower_bound_leftovers_join_smallest_covering_ball():
    inst = line_instance([0, 1, 2, 3, 4], k=2, kind="lower_bound", ell=2)
    cover = CandidateCover(centers=(1, 3), radii=(4.0, 4.0))
    cl = lower_bound_assignment(inst, cover, 2)
    members = cluster_members(cl)
    assert sorted(len(m) for m in members) == [2, 3]
    assert all(len(m) >= 2 for m in members)


# --------------------------------------------------------------------- flow

def test_max_flow_diamond():
    net = FlowNetwork(4)
    net.add_edge(0, 1, 1)
    net.add_edge(0, 2, 1)
    net.add_edge(1, 3, 1)
    net.add_edge(2, 3, 1)
    assert net.max_flow(0, 3) == 2


def test_max_flow_respects_capacity():
    net = FlowNetwork(3)
    net.add_edge(0, 1, 5)
    net.add_edge(1, 2, 2)
    assert net.max_flow(0, 2) == 2


def test_edge_flow_readback():
    net = FlowNetwork(3)
    h = net.add_edge(0, 1, 3)
    net.add_edge(1, 2, 2)
    net.max_flow(0, 2)
    assert net.edge_flow(h) == 2


def test_bipartite_flow_agrees_with_matching_oracle():
    rng = np.random.default_rng(11)
    for _ in range(40):
        nl = int(rng.integers(1, 6))
        nr = int(rng.integers(1, 6))
        edges = {(i, j) for i in range(nl) for j in range(nr)
                 if rng.random() < 0.45}
        net = FlowNetwork(nl + nr + 2)
        s, t = nl + nr, nl + nr + 1
        for i in range(nl):
            net.add_edge(s, i, 1)
        for j in range(nr):
            net.add_edge(nl + j, t, 1)
        for i, j in sorted(edges):
            net.add_edge(i, nl + j, 1)
        assert net.max_flow(s, t) == exact_matching(nl, nr, edges)


# ----------------------------------------------------------------- dispatch

def test_select_mode_auto():
    one = line_instance([0.0, 0.1], colors=[0, 1], k=1, kind="exact_fairness")
    lb = line_instance([0, 1], k=1, kind="lower_bound", ell=1)
    plain = line_instance([0, 1], k=1)
    skew = line_instance([0, 1, 2], colors=[0, 0, 1], k=1,
                         kind="exact_fairness")
    assert select_mode(one) == "one_one"
    assert select_mode(lb) == "lower_bound"
    assert select_mode(plain) == "components"
    assert select_mode(skew) == "components"  # unequal counts: general route


def test_select_mode_rejects_bad_force():
    plain = line_instance([0, 1], k=1)
    with pytest.raises(ValueError):
        select_mode(plain, "one_one")  # not two equal colors
    with pytest.raises(ValueError):
        select_mode(plain, "banana")


def test_run_assignment_dispatches():
    inst, cover = five_per_color_line()
    cl = run_assignment(inst, cover, "one_one")
    assert cl.cost == 1.5
    cl2 = run_assignment(inst, cover, "components")
    assert cl2 is not None
    lb = line_instance([0, 1, 2, 10, 11, 12], k=2, kind="lower_bound", ell=2)
    cl3 = run_assignment(lb, CandidateCover(centers=(1, 4), radii=(1.0, 1.0)),
                         "lower_bound")
    assert all(len(m) >= 2 for m in cluster_members(cl3))


def test_forced_lower_bound_on_other_kind_uses_ell_one():
    inst = line_instance([0, 1, 8, 9], k=2)
    cover = CandidateCover(centers=(0, 2), radii=(1.0, 1.0))
    cl = run_assignment(inst, cover, "lower_bound")
    assert cl is not None
    assert all(len(m) >= 1 for m in cluster_members(cl))
