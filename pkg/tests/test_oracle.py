import random

import pytest

from conftest import (
    bad_vehicle_labeling,
    diamond_instance,
    good_vehicle_labeling,
    random_instance,
    random_partition,
    vehicle_instance,
)
from safepart.game import solve_attractor, solve_fixpoint
from safepart.model import labeling_to_partition, make_instance, SafeSet
from safepart.oracle import (
    CapExceeded,
    enumerate_labelings,
    exhaustive_search,
    game_tree_solvable,
)


def test_enumeration_counts():
    assert len(list(enumerate_labelings(3, 2))) == 8
    assert len(list(enumerate_labelings(3, 2, fix_first=True))) == 4
    assert all(lab[0] == 0 for lab in enumerate_labelings(3, 3, fix_first=True))


def test_exhaustive_finds_vehicle_partition():
    inst = vehicle_instance(2, 1, 2)
    verdict = exhaustive_search(inst)
    assert verdict.solvable
    part = labeling_to_partition(verdict.labeling, 2, inst.controls)
    assert solve_fixpoint(inst, part).solvable


def test_exhaustive_infeasible_for_m_equal_four():
    inst = vehicle_instance(2, 1, 4)
    verdict = exhaustive_search(inst)
    assert not verdict.solvable
    # the pruning shortcuts must not change the verdict
    full = exhaustive_search(inst, prune=False)
    assert not full.solvable
    assert full.checked == 4**4  # first control pinned by symmetry


def test_pruning_preserves_verdicts_on_random_instances():
    rng = random.Random(123)
    for _ in range(30):
        inst = random_instance(rng)
        if inst.m ** len(inst.controls) > 100_000:
            continue
        pruned = exhaustive_search(inst)
        full = exhaustive_search(inst, prune=False)
        assert pruned.solvable == full.solvable


def test_cap_exceeded():
    inst = vehicle_instance(2, 1, 4)
    with pytest.raises(CapExceeded):
        exhaustive_search(inst, cap=100)


def test_diamond_has_no_partition_at_all():
    # stronger than the labeling check on the full vertex set: no labeling of
    # the eight moves wins the game from the center under any retained subset
    verdict = exhaustive_search(diamond_instance())
    assert not verdict.solvable


def test_game_tree_agrees_on_vehicle_partitions():
    inst = vehicle_instance(2, 1, 2)
    depth = len(inst.safe) + 1
    good = labeling_to_partition(good_vehicle_labeling(), 2, inst.controls)
    bad = labeling_to_partition(bad_vehicle_labeling(), 2, inst.controls)
    assert game_tree_solvable(inst, good, depth)
    assert not game_tree_solvable(inst, bad, depth)


def test_game_tree_depth_zero_only_checks_membership():
    inst = vehicle_instance(2, 1, 2)
    bad = labeling_to_partition(bad_vehicle_labeling(), 2, inst.controls)
    assert game_tree_solvable(inst, bad, 0)


def test_game_tree_counterexample_horizon():
    # with the north+east cell pinned, the vehicle survives two steps but not
    # three
    inst = vehicle_instance(2, 1, 2)
    bad = labeling_to_partition(bad_vehicle_labeling(), 2, inst.controls)
    assert game_tree_solvable(inst, bad, 2)
    assert not game_tree_solvable(inst, bad, 3)


def test_game_tree_matches_solvers_on_random_instances():
    rng = random.Random(321)
    for _ in range(60):
        inst = random_instance(rng)
        part = random_partition(rng, inst)
        depth = len(inst.safe) + 1
        memo = {}
        by_tree = game_tree_solvable(inst, part, depth, memo=memo)
        by_attractor = solve_attractor(inst, part).solvable
        assert by_tree == by_attractor
        assert len(memo) <= len(inst.safe) * depth


def test_losing_states_have_forcing_strategies():
    # completeness: from every state outside the winning set the game tree
    # finds an adversary win within |S|+1 rounds
    rng = random.Random(55)
    checked = 0
    while checked < 10:
        inst = random_instance(rng)
        part = random_partition(rng, inst)
        result = solve_attractor(inst, part)
        losing = sorted(inst.safe.points - result.winning_set)
        if not losing:
            continue
        checked += 1
        depth = len(inst.safe) + 1
        for x in losing:
            shifted = make_instance(inst.n, x, inst.controls, inst.m, inst.safe)
            assert not game_tree_solvable(shifted, part, depth)


def test_exhaustive_search_with_unreachable_start():
    inst = make_instance(1, (0,), [(1,), (-1,)], 2, SafeSet.explicit([(0,)]))
    verdict = exhaustive_search(inst)
    assert not verdict.solvable
