"""Safety-game solving for a fixed partition of the control set.

The game: the adversary announces a cell index d, the controller must apply
some control from cell d, and the state has to stay inside the safe set
forever.  A state is winning iff it survives the greatest fixed point of

    W <- { x in W : for every d there is u in cell d with x+u in W }.

Two implementations are provided: a direct fixpoint iteration used as the
reference, and a counter-based attractor that does O(|S|*|U|) total work.
Both extract the same memoryless policy (lexicographically smallest
qualifying control), so their results are comparable bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import InducedSubgraph, build_induced
from .model import Instance, Partition, Vec, add, check_partition


@dataclass
class GameResult:
    """Winning states, a memoryless policy on them, and the x0 verdict.

    ``policy`` maps ``(state, d)`` to a control index and is defined exactly
    on ``winning_set x {1..m}``; every chosen control lands back in the
    winning set.
    """

    winning_set: frozenset[Vec]
    policy: dict[tuple[Vec, int], int]
    solvable: bool


def fixpoint_sets(inst: Instance, partition: Partition) -> Iterator[set[Vec]]:
    """Yield the decreasing sequence W_0 = S, W_1, ... down to the fixpoint."""
    w = set(inst.safe.points)
    yield set(w)
    while True:
        keep = {
            x
            for x in w
            if all(any(add(x, u) in w for u in cell) for cell in partition)
        }
        if keep == w:
            return
        w = keep
        yield set(w)


def extract_policy(
    winning: frozenset[Vec], partition: Partition, control_index: dict[Vec, int]
) -> dict[tuple[Vec, int], int]:
    """Pick, per (state, d), the lexicographically smallest control that stays
    in the winning set.  Deterministic by construction."""
    policy: dict[tuple[Vec, int], int] = {}
    for x in sorted(winning):
        for d, cell in enumerate(partition, start=1):
            best: Vec | None = None
            for u in cell:
                if add(x, u) in winning and (best is None or u < best):
                    best = u
            if best is None:
                raise AssertionError(f"winning state {x} has no move for label {d}")
            policy[(x, d)] = control_index[best]
    return policy


def solve_fixpoint(inst: Instance, partition: Partition) -> GameResult:
    """Reference solver: iterate the fixpoint directly on point sets."""
    check_partition(partition, inst.controls, inst.m)
    w: set[Vec] = set()
    for w in fixpoint_sets(inst, partition):
        pass
    winning = frozenset(w)
    policy = extract_policy(winning, partition, inst.control_index)
    return GameResult(winning, policy, inst.x0 in winning)


def partition_control_labels(partition: Partition, controls: tuple[Vec, ...]) -> list[int]:
    """0-based cell index per control, in control order."""
    where = {}
    for d0, cell in enumerate(partition):
        for u in cell:
            where[u] = d0
    return [where[u] for u in controls]


def attractor_alive(g: InducedSubgraph, labels0: list[int], m: int) -> list[bool]:
    """Counter-based safety attractor on a prebuilt induced subgraph.

    Maintains, per (vertex, cell), how many successors are still alive; a
    vertex dies as soon as some cell runs out of surviving moves, and each
    edge is charged O(1) work via the predecessor worklist.
    """
    nv = len(g.vertices)
    counts = [[0] * m for _ in range(nv)]
    preds: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for v, row in enumerate(g.out_adj):
        cv = counts[v]
        for k, w in row:
            cv[labels0[k]] += 1
            preds[w].append((v, k))
    alive = [True] * nv
    stack = [v for v in range(nv) if 0 in counts[v]]
    for v in stack:
        alive[v] = False
    while stack:
        w = stack.pop()
        for v, k in preds[w]:
            if alive[v]:
                cv = counts[v]
                d0 = labels0[k]
                cv[d0] -= 1
                if cv[d0] == 0:
                    alive[v] = False
                    stack.append(v)
    return alive


def solve_attractor(inst: Instance, partition: Partition) -> GameResult:
    """Worklist solver with the same contract as :func:`solve_fixpoint`."""
    check_partition(partition, inst.controls, inst.m)
    g = build_induced(inst.safe.points, inst.controls)
    labels0 = partition_control_labels(partition, inst.controls)
    alive = attractor_alive(g, labels0, inst.m)
    winning = frozenset(v for v, a in zip(g.vertices, alive) if a)
    policy = extract_policy(winning, partition, inst.control_index)
    return GameResult(winning, policy, inst.x0 in winning)


# Default solver for callers that do not care which implementation runs.
solve = solve_attractor


# ---------------------------------------------------------------------------
# Policy wire format: {"winning_set": [[int]], "policy": {"<state>|<d>": k}}
# ---------------------------------------------------------------------------


def policy_to_json(result: GameResult) -> dict:
    from .model import vec_key

    return {
        "winning_set": [list(x) for x in sorted(result.winning_set)],
        "policy": {
            f"{vec_key(x)}|{d}": k for (x, d), k in sorted(result.policy.items())
        },
    }


def policy_from_json(obj, x0: Vec | None = None) -> GameResult:
    from .model import ValidationError, parse_vec_key

    if not isinstance(obj, dict) or "winning_set" not in obj or "policy" not in obj:
        raise ValidationError('policy file must have "winning_set" and "policy"')
    winning = frozenset(tuple(int(c) for c in p) for p in obj["winning_set"])
    policy: dict[tuple[Vec, int], int] = {}
    for key, k in obj["policy"].items():
        try:
            state_part, d_part = key.rsplit("|", 1)
        except ValueError as exc:
            raise ValidationError(f"bad policy key {key!r}") from exc
        policy[(parse_vec_key(state_part), int(d_part))] = int(k)
    solvable = (x0 in winning) if x0 is not None else bool(winning)
    return GameResult(winning, policy, solvable)
