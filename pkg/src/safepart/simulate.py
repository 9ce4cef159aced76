"""Closed-loop replay of a policy against adversary strategies.

The adversary picks a cell label each step, the policy answers with a
control, and the trajectory is recorded until the horizon, a safety
violation, or a state where the policy has no answer (which counts as a
violation: the controller must always be able to move).
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .model import Instance, Partition, Vec, add

# A policy is either the mapping produced by the solvers ((state, label) ->
# control index) or any callable (state, label) -> control vector / None.
PolicyLike = Mapping[tuple[Vec, int], int] | Callable[[Vec, int], Vec | None]


@dataclass
class Trajectory:
    states: list[Vec]
    inputs: list[tuple[int, Vec]]  # (adversary label, applied control)
    safe: bool
    first_violation: int | None  # index into states of the failing state

    def __len__(self) -> int:
        return len(self.states)


def resolve_policy(policy: PolicyLike, controls: tuple[Vec, ...]) -> Callable[[Vec, int], Vec | None]:
    if callable(policy):
        return policy

    def lookup(x: Vec, d: int) -> Vec | None:
        k = policy.get((x, d))
        return None if k is None else controls[k]

    return lookup


class ConstantAdversary:
    def __init__(self, d: int):
        self.d = d

    def choose(self, t: int, x: Vec) -> int:
        return self.d


class RandomAdversary:
    def __init__(self, m: int, seed: int = 0):
        self.m = m
        self.rng = random.Random(seed)

    def choose(self, t: int, x: Vec) -> int:
        return self.rng.randint(1, self.m)


class ScriptedAdversary:
    """Replays a fixed label sequence, cycling when the horizon is longer."""

    def __init__(self, script: Sequence[int]):
        if not script:
            raise ValueError("script must be nonempty")
        self.script = list(script)

    def choose(self, t: int, x: Vec) -> int:
        return self.script[t % len(self.script)]


class GreedyEscapeAdversary:
    """Pressure heuristic: steer toward states where the policy runs thin.

    For each candidate label, looks one step ahead at the state the policy
    would reach and counts how many labels the policy can still answer safely
    from there; picks the label minimizing that count (an undefined policy
    entry wins immediately).  Ties go to the smallest label.
    """

    def __init__(self, m: int, policy: PolicyLike, inst: Instance):
        self.m = m
        self.lookup = resolve_policy(policy, inst.controls)
        self.safe = inst.safe.points

    def choose(self, t: int, x: Vec) -> int:
        best_d = 1
        best_score = None
        for d in range(1, self.m + 1):
            u = self.lookup(x, d)
            if u is None:
                return d
            y = add(x, u)
            score = 0
            for d2 in range(1, self.m + 1):
                u2 = self.lookup(y, d2)
                if u2 is not None and add(y, u2) in self.safe:
                    score += 1
            if best_score is None or score < best_score:
                best_d, best_score = d, score
        return best_d


class InteractiveAdversary:
    """Reads labels from a stream; debugging aid for up to two dimensions."""

    def __init__(self, m: int, inst: Instance, infile=None, outfile=None):
        self.m = m
        self.inst = inst
        self.infile = infile or sys.stdin
        self.outfile = outfile or sys.stdout

    def _render(self, x: Vec) -> None:
        pts = self.inst.safe.points
        if self.inst.n == 1:
            lo = min(p[0] for p in pts)
            hi = max(p[0] for p in pts)
            row = "".join(
                "X" if (c,) == x else ("." if (c,) in pts else " ")
                for c in range(lo, hi + 1)
            )
            print(row, file=self.outfile)
        elif self.inst.n == 2:
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            for b in range(max(ys), min(ys) - 1, -1):
                row = "".join(
                    "X" if (a, b) == x else ("." if (a, b) in pts else " ")
                    for a in range(min(xs), max(xs) + 1)
                )
                print(row, file=self.outfile)
        print(f"state {x}", file=self.outfile)

    def choose(self, t: int, x: Vec) -> int:
        if self.inst.n <= 2:
            self._render(x)
        while True:
            print(f"label 1..{self.m}? ", end="", file=self.outfile, flush=True)
            line = self.infile.readline()
            if not line:
                raise EOFError("no more adversary input")
            try:
                d = int(line.strip())
            except ValueError:
                continue
            if 1 <= d <= self.m:
                return d


def make_adversary(spec: str, m: int, inst: Instance, policy: PolicyLike | None = None,
                   seed: int = 0):
    """Build an adversary from a CLI-style description.

    Accepted forms: ``constant:<d>``, ``uniform``, ``greedy``,
    ``scripted:<d,d,...>``, ``interactive``.
    """
    kind, _, arg = spec.partition(":")
    if kind == "constant":
        return ConstantAdversary(int(arg or 1))
    if kind == "uniform":
        return RandomAdversary(m, seed)
    if kind == "greedy":
        if policy is None:
            raise ValueError("greedy adversary needs a policy to probe")
        return GreedyEscapeAdversary(m, policy, inst)
    if kind == "scripted":
        return ScriptedAdversary([int(s) for s in arg.split(",") if s])
    if kind == "interactive":
        return InteractiveAdversary(m, inst)
    raise ValueError(f"unknown adversary {spec!r}")


def run_policy(
    inst: Instance,
    partition: Partition | None,
    policy: PolicyLike,
    adversary,
    steps: int,
) -> Trajectory:
    """Replay the exact dynamics for up to ``steps`` steps.

    Stops early when a state leaves the safe set, the policy has no move for
    the announced label, or (when a partition is given) the policy answers
    with a control outside the announced cell; all count as violations.
    """
    lookup = resolve_policy(policy, inst.controls)
    cells = [set(cell) for cell in partition] if partition is not None else None
    x = inst.x0
    states = [x]
    inputs: list[tuple[int, Vec]] = []
    if x not in inst.safe:
        return Trajectory(states, inputs, False, 0)
    for t in range(steps):
        d = adversary.choose(t, x)
        u = lookup(x, d)
        if u is None or (cells is not None and u not in cells[d - 1]):
            return Trajectory(states, inputs, False, len(states) - 1)
        x = add(x, u)
        states.append(x)
        inputs.append((d, u))
        if x not in inst.safe:
            return Trajectory(states, inputs, False, len(states) - 1)
    return Trajectory(states, inputs, True, None)


def forced_move_policy(inst: Instance, partition: Partition) -> Callable[[Vec, int], Vec | None]:
    """Policy stub for unsolvable setups: prefer any safe move from the cell,
    otherwise take the lexicographically smallest control in the cell."""

    def choose(x: Vec, d: int) -> Vec | None:
        cell = partition[d - 1]
        if not cell:
            return None
        safe_moves = sorted(u for u in cell if add(x, u) in inst.safe)
        if safe_moves:
            return safe_moves[0]
        return min(cell)

    return choose
