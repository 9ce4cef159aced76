"""Brute-force ground truth for small instances.

Two independent engines: exhaustive enumeration of all control labelings
(deciding whether *any* partition admits a safe policy), and a memoized
game-tree search (deciding a *fixed* partition without fixpoint machinery).
Both exist to cross-check the solvers and to prove infeasibility at desk
scale; neither is meant to scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .game import attractor_alive
from .graph import build_induced
from .model import Instance, Labeling, Partition, Vec, add

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    pass


@dataclass
class OracleVerdict:
    solvable: bool
    labeling: Labeling | None  # a witness when solvable
    checked: int  # labelings actually run through the game solver


def enumerate_labelings(count: int, m: int, fix_first: bool = False) -> Iterator[tuple[int, ...]]:
    """Yield 0-based label tuples for ``count`` controls, lexicographically.

    With ``fix_first`` the first control is pinned to label 0: any labeling
    can be turned into one of this form by renaming labels, and renaming does
    not change solvability, so the restricted enumeration is still complete.
    """
    if fix_first and count > 0:
        for rest in product(range(m), repeat=count - 1):
            yield (0, *rest)
    else:
        yield from product(range(m), repeat=count)


def exhaustive_search(
    inst: Instance, cap: int = DEFAULT_CAP, prune: bool = True
) -> OracleVerdict:
    """Try every labeling of the controls against the full safety game.

    Returns the first labeling (in enumeration order) whose partition is
    winnable from the start state, or a negative verdict after exhausting the
    space.  Raises :class:`CapExceeded` when m**|controls| exceeds ``cap``.

    With ``prune``, labelings are skipped without a game solve when they
    provably lose: a cell left empty strands the controller outright, and a
    cell holding a single nonzero control lets the adversary repeat it and
    push the state out of any finite safe set.
    """
    m = inst.m
    controls = inst.controls
    total = m ** len(controls)
    if total > cap:
        raise CapExceeded(f"{m}**{len(controls)} = {total} labelings exceed cap {cap}")

    g = build_induced(inst.safe.points, controls)
    if inst.x0 not in g:
        return OracleVerdict(False, None, 0)
    x0_idx = g.index[inst.x0]
    zero = tuple([0] * inst.n)
    checked = 0
    for labels0 in enumerate_labelings(len(controls), m, fix_first=m > 1):
        if prune:
            sizes = [0] * m
            for d0 in labels0:
                sizes[d0] += 1
            if 0 in sizes:
                continue
            doomed = any(
                sizes[labels0[k]] == 1 and u != zero for k, u in enumerate(controls)
            )
            if doomed:
                continue
        checked += 1
        alive = attractor_alive(g, list(labels0), m)
        if alive[x0_idx]:
            witness = {u: labels0[k] + 1 for k, u in enumerate(controls)}
            return OracleVerdict(True, witness, checked)
    return OracleVerdict(False, None, checked)


def game_tree_solvable(
    inst: Instance, partition: Partition, depth: int,
    memo: dict[tuple[Vec, int], bool] | None = None,
) -> bool:
    """Minimax the safety game to a fixed horizon with memoization.

    ``can(x, t)`` holds when the controller can survive t more steps from x.
    Safety games stabilize within |S| rounds, so any depth >= |S| + 1 gives
    the exact infinite-horizon answer; depth 0 asks only that x be safe now.
    Pass ``memo`` to observe how many (state, horizon) pairs were explored.
    """
    safe = inst.safe.points
    memo = {} if memo is None else memo

    def can(x: Vec, t: int) -> bool:
        if x not in safe:
            return False
        if t == 0:
            return True
        key = (x, t)
        cached = memo.get(key)
        if cached is not None:
            return cached
        ok = all(any(can(add(x, u), t - 1) for u in cell) for cell in partition)
        memo[key] = ok
        return ok

    return can(inst.x0, depth)
