import json

import pytest

from conftest import unit_controls, vehicle_instance
from safepart.model import (
    DimensionMismatch,
    DuplicateControl,
    MTooLarge,
    SafeSet,
    ValidationError,
    X0NotSafe,
    instance_from_json,
    instance_to_json,
    labeling_from_json,
    labeling_to_json,
    labeling_to_partition,
    make_instance,
    partition_to_labeling,
    parse_vec_key,
    vec_key,
)


def test_vehicle_instance_is_valid():
    inst = vehicle_instance(2, 1, 2)
    assert inst.n == 2
    assert len(inst.controls) == 5
    assert len(inst.safe) == 9


def test_x0_outside_safe_set_rejected():
    with pytest.raises(X0NotSafe):
        make_instance(2, (2, 0), unit_controls(2), 2, SafeSet.inf_ball(2, 1))


def test_duplicate_control_rejected():
    controls = unit_controls(2) + [(1, 0)]
    with pytest.raises(DuplicateControl):
        make_instance(2, (0, 0), controls, 2, SafeSet.inf_ball(2, 1))


def test_dimension_mismatch_rejected():
    with pytest.raises(DimensionMismatch):
        make_instance(2, (0, 0), [(1, 0), (0, 1, 1)], 1, SafeSet.inf_ball(2, 1))
    with pytest.raises(DimensionMismatch):
        make_instance(2, (0,), unit_controls(2), 2, SafeSet.inf_ball(2, 1))


def test_m_larger_than_control_count_rejected():
    with pytest.raises(MTooLarge):
        make_instance(2, (0, 0), [(1, 0), (-1, 0)], 3, SafeSet.inf_ball(2, 1))


def test_safe_set_sizes():
    # a max-norm ball has (2k+1)^n points; the 1-norm unit ball in 2-d has 5
    for n in (1, 2, 3):
        for k in (0, 1, 2):
            assert len(SafeSet.inf_ball(n, k)) == (2 * k + 1) ** n
    assert len(SafeSet.one_ball(2, 1)) == 5
    assert sorted(SafeSet.one_ball(2, 1).points) == [
        (-1, 0), (0, -1), (0, 0), (0, 1), (1, 0),
    ]


def test_explicit_safe_set_rejects_duplicates():
    with pytest.raises(ValidationError):
        SafeSet.explicit([(0, 0), (0, 0)])


def test_labeling_to_partition_groups_by_label():
    labels = {(1, 0): 1, (-1, 0): 1, (0, 1): 2, (0, -1): 2, (0, 0): 2}
    cells = labeling_to_partition(labels, 2, unit_controls(2))
    assert set(cells[0]) == {(1, 0), (-1, 0)}
    assert set(cells[1]) == {(0, 1), (0, -1), (0, 0)}


def test_labeling_to_partition_single_cell():
    controls = unit_controls(2)
    cells = labeling_to_partition({u: 1 for u in controls}, 1, controls)
    assert len(cells) == 1
    assert set(cells[0]) == set(controls)


def test_unlabeled_controls_fall_into_last_cell():
    controls = unit_controls(2)
    cells = labeling_to_partition({(1, 0): 1}, 2, controls)
    assert cells[0] == ((1, 0),)
    assert set(cells[1]) == set(controls) - {(1, 0)}


def test_diagonal_labeling_partitions_the_step_alphabet():
    controls = [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    labels = {(-1, -1): 1, (1, 1): 1, (-1, 1): 2, (1, -1): 2}
    cells = labeling_to_partition(labels, 2, controls)
    assert set(cells[0]) == {(-1, -1), (1, 1)}
    assert set(cells[1]) == {(-1, 1), (1, -1)}


def test_partition_labeling_round_trip():
    labels = {(1, 0): 1, (-1, 0): 1, (0, 1): 2, (0, -1): 2, (0, 0): 2}
    cells = labeling_to_partition(labels, 2, unit_controls(2))
    assert partition_to_labeling(cells) == labels
    assert labeling_to_partition(partition_to_labeling(cells), 2, unit_controls(2)) == cells


def test_vec_key_round_trip():
    for v in [(0,), (1, -1), (-3, 0, 7)]:
        assert parse_vec_key(vec_key(v)) == v


def test_instance_json_round_trip():
    inst = vehicle_instance(2, 1, 2)
    blob = json.dumps(instance_to_json(inst))
    again = instance_from_json(json.loads(blob))
    assert again == inst


def test_explicit_instance_json_round_trip():
    inst = make_instance(
        2, (0, 0), [(1, 1), (-1, -1)], 2, SafeSet.explicit([(0, 0), (1, 1)])
    )
    again = instance_from_json(instance_to_json(inst))
    assert again.safe.points == inst.safe.points


def test_labeling_json_round_trip():
    labels = {(1, 0): 1, (-1, 0): 2}
    assert labeling_from_json(labeling_to_json(labels)) == labels


def test_malformed_instance_rejected():
    with pytest.raises(ValidationError):
        instance_from_json({"n": 2})
    with pytest.raises(ValidationError):
        instance_from_json({"n": 2, "x0": [0, 0], "controls": [[1, 0]], "m": 1,
                            "safe_set": {"type": "cube", "k": 1}})
