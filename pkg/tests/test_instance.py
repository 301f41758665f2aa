"""Instance model, schema validation, and canonical serialization."""

import json

import numpy as np
import pytest

from fairmsr import (
    ConstraintSpec,
    Instance,
    InvalidSolutionError,
    SchemaError,
    read_instance,
    write_instance,
)
from fairmsr.instance import (
    Clustering,
    SolutionMeta,
    _canonical_dumps,
    _instance_from_json,
    cluster_members,
    instance_to_json,
    msr_cost,
    read_solution,
    recompute_clustering,
    solution_to_json,
    validate_metric,
    write_solution,
)

from conftest import line_instance


# ------------------------------------------------------------- construction

def test_basic_properties(fair_line):
    assert fair_line.n == 4
    assert fair_line.n_colors == 2
    assert fair_line.diameter == 10.0


def test_colors_must_be_contiguous_from_zero():
    with pytest.raises(SchemaError, match="colors"):
        line_instance([0, 1, 2], colors=[0, 2, 2])


def test_k_bounds():
    with pytest.raises(SchemaError):
        line_instance([0, 1], k=0)
    with pytest.raises(SchemaError):
        line_instance([0, 1], k=3)


def test_epsilon_must_be_positive():
    with pytest.raises(SchemaError, match="epsilon"):
        line_instance([0, 1], eps=0.0)


def test_ratio_balance_needs_two_colors():
    with pytest.raises(SchemaError):
        line_instance([0, 1, 2], colors=[0, 0, 0], kind="ratio_balance",
                      b=(1, 2))


def test_lu_bounds_length_must_match_colors():
    with pytest.raises(SchemaError):
        line_instance([0, 1], colors=[0, 1], kind="lu_fairness",
                      lower=[(1, 4)], upper=[(1, 2), (1, 1)])


def test_constraint_spec_validation():
    with pytest.raises(SchemaError):
        ConstraintSpec(kind="ratio_balance", b=(1, 0))  # zero denominator
    with pytest.raises(SchemaError):
        ConstraintSpec(kind="ratio_balance", b=(3, 2))  # > 1
    with pytest.raises(SchemaError):
        ConstraintSpec(kind="lu_fairness",
                       lower=((1, 2),), upper=((1, 4),))  # l > u
    with pytest.raises(SchemaError):
        ConstraintSpec(kind="lower_bound", ell=0)
    with pytest.raises(SchemaError):
        ConstraintSpec(kind="nonsense")


def test_constraint_spec_normalizes_rationals_to_tuples():
    spec = ConstraintSpec(kind="ratio_balance", b=[1, 2])
    assert spec.b == (1, 2)


# ------------------------------------------------------------------- metric

def test_validate_metric_accepts_valid(fair_line):
    assert validate_metric(fair_line.dist) is None


def test_validate_metric_rejects_asymmetry():
    d = np.array([[0.0, 1.0], [2.0, 0.0]])
    v = validate_metric(d)
    assert v is not None and v.kind == "symmetry"


def test_validate_metric_rejects_nonzero_diagonal():
    d = np.array([[0.5, 1.0], [1.0, 0.0]])
    assert validate_metric(d).kind == "diagonal"


def test_validate_metric_rejects_negative():
    d = np.array([[0.0, -1.0], [-1.0, 0.0]])
    assert validate_metric(d).kind == "negative"


def test_validate_metric_rejects_triangle_violation():
    d = np.array([[0.0, 1.0, 3.0],
                  [1.0, 0.0, 1.0],
                  [3.0, 1.0, 0.0]])
    v = validate_metric(d)
    assert v.kind == "triangle"
    i, j, h = v.indices
    assert d[i, j] > d[i, h] + d[h, j] + 1e-9


def test_validate_metric_triangle_slack_tolerates_float_noise():
    d = np.array([[0.0, 1.0, 2.0],
                  [1.0, 0.0, 1.0 + 1e-12],
                  [2.0, 1.0 + 1e-12, 0.0]])
    assert validate_metric(d) is None


def test_validate_metric_rejects_non_square():
    assert validate_metric(np.zeros((2, 3))).kind == "shape"


# ------------------------------------------------------------ cost helpers

def test_msr_cost_and_members(fair_line):
    cl = Clustering(centers=[2], assignment=[0, 0, 0, 0], radii=[8.0])
    assert msr_cost(fair_line.dist, cl.centers, cl.assignment) == 8.0
    assert cluster_members(cl) == [[0, 1, 2, 3]]
    assert cl.cost == 8.0


def test_msr_cost_rejects_bad_assignment(fair_line):
    with pytest.raises(InvalidSolutionError):
        msr_cost(fair_line.dist, [2], [0, 0, 0, 5])


def test_empty_center_contributes_zero(fair_line):
    assert msr_cost(fair_line.dist, [0, 2], [1, 1, 1, 1]) == 8.0


def test_recompute_drops_empty_clusters(fair_line):
    fixed = recompute_clustering(fair_line.dist, [0, 2], [1, 1, 1, 1])
    assert fixed.centers == [2]
    assert fixed.assignment == [0, 0, 0, 0]
    assert fixed.radii == [8.0]
    assert fixed.cost == 8.0


# ----------------------------------------------------------- serialization

def test_instance_round_trip(tmp_path, fair_line):
    path = tmp_path / "inst.json"
    write_instance(str(path), fair_line)
    back = read_instance(str(path))
    assert np.array_equal(back.dist, fair_line.dist)
    assert back.colors == fair_line.colors
    assert back.k == fair_line.k
    assert back.constraint == fair_line.constraint
    # writing the reloaded instance reproduces identical bytes
    path2 = tmp_path / "inst2.json"
    write_instance(str(path2), back)
    assert path.read_bytes() == path2.read_bytes()


def test_points_are_preserved(tmp_path, planted_nine):
    path = tmp_path / "planted.json"
    write_instance(str(path), planted_nine)
    doc = json.loads(path.read_text())
    assert doc["points"] is not None
    assert doc["distance_matrix"] is None
    back = read_instance(str(path))
    assert back.points == planted_nine.points
    assert np.allclose(back.dist, planted_nine.dist)


def test_exactly_one_of_matrix_or_points():
    doc = instance_to_json(line_instance([0, 1]))
    doc["points"] = [[0.0], [1.0]]
    with pytest.raises(SchemaError):
        _instance_from_json(doc)


@pytest.mark.parametrize("missing", ["n", "colors", "k", "epsilon", "constraint"])
def test_missing_keys_are_reported_by_name(missing):
    doc = instance_to_json(line_instance([0, 1]))
    del doc[missing]
    with pytest.raises(SchemaError, match=missing):
        _instance_from_json(doc)


def test_n_mismatch_is_rejected():
    doc = instance_to_json(line_instance([0, 1, 2]))
    doc["n"] = 2
    with pytest.raises(SchemaError):
        _instance_from_json(doc)


def test_constraint_spec_round_trip():
    specs = [
        ConstraintSpec(kind="none"),
        ConstraintSpec(kind="exact_fairness"),
        ConstraintSpec(kind="ratio_balance", b=(1, 2)),
        ConstraintSpec(kind="exact_balance"),
        ConstraintSpec(kind="lu_fairness", lower=((1, 4), (1, 4)),
                       upper=((1, 2), (3, 4))),
        ConstraintSpec(kind="lower_bound", ell=3),
    ]
    for spec in specs:
        assert ConstraintSpec.from_json(spec.to_json()) == spec


def test_solution_round_trip(tmp_path, fair_line):
    cl = Clustering(centers=[2], assignment=[0, 0, 0, 0], radii=[8.0])
    meta = SolutionMeta(profiles_tried=3, tuples_tried=12, seed=5)
    path = tmp_path / "sol.json"
    write_solution(str(path), cl, True, meta)
    doc = read_solution(str(path))
    assert doc["centers"] == [2]
    assert doc["cost"] == 8.0
    assert doc["feasible"] is True
    assert doc["meta"]["tuples_tried"] == 12


def test_infeasible_solution_serializes_empty():
    doc = solution_to_json(None, False, SolutionMeta())
    assert doc["centers"] == []
    assert doc["assignment"] == []
    assert doc["cost"] == 0.0
    assert doc["feasible"] is False


def test_canonical_json_is_stable(fair_line):
    text = _canonical_dumps(instance_to_json(fair_line))
    assert text == _canonical_dumps(instance_to_json(fair_line))
    assert text.endswith("\n")
    # construction rejects NaN rather than serializing it
    with pytest.raises(ValueError):
        _canonical_dumps({"x": float("nan")})
