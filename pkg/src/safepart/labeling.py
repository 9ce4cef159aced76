"""Finding control labelings whose induced edge labeling is safe.

A labeling assigns each control a label in 1..m; edges inherit the label of
their displacement, so translation invariance holds by construction.  The
labeling is *good* for a vertex set when every vertex can follow every label
without leaving the set.  This module provides:

* degree-based feasibility checks (a min-out-degree of at least m is
  necessary; ``m * ln(m * |V|)`` is sufficient),
* uniformly random labelings, which succeed with probability at least
  ``1 - m|V|(1-1/m)^mindeg``,
* a deterministic greedy labeling that derandomizes the random construction
  by keeping a pessimistic estimator (the sum of conditional failure
  probabilities) from increasing at every assignment.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .graph import InducedSubgraph
from .model import Labeling, Vec


@dataclass(frozen=True)
class ConditionReport:
    """Degree-based feasibility summary for a vertex set and label count."""

    min_out_degree: int
    necessary_ok: bool  # min out-degree >= m
    sufficient_bound: float  # m * ln(m * |V|)
    sufficient_ok: bool  # min out-degree strictly above the bound
    failure_probability_bound: float  # m * |V| * (1 - 1/m) ** min out-degree

    def to_json(self) -> dict:
        return {
            "min_out_degree": self.min_out_degree,
            "necessary_ok": self.necessary_ok,
            "sufficient_bound": self.sufficient_bound,
            "sufficient_ok": self.sufficient_ok,
            "failure_probability_bound": self.failure_probability_bound,
        }


@dataclass(frozen=True)
class LabelingCheck:
    """Outcome of verifying a labeling against a vertex set.

    ``first_missing`` is the smallest (vertex, label) pair, in vertex sort
    order, whose label has no surviving out-edge.  Translation invariance
    needs no check: labels live on controls, not on individual edges.
    """

    ok: bool
    start_in_set: bool
    first_missing: tuple[Vec, int] | None


@dataclass
class Estimator:
    """Snapshot of the pessimistic estimator driving the greedy labeling.

    ``terms[(x, j)]`` is the conditional probability, given the labels fixed
    so far, that label j never reaches a surviving out-edge of x when the
    remaining controls are labeled uniformly at random.  A term is 0 as soon
    as some already-labeled control takes x to a vertex inside the set with
    label j; otherwise it equals ``(1 - 1/m) ** r`` with r the number of
    unassigned controls that keep x inside the set.
    """

    terms: dict[tuple[Vec, int], float]
    total: float


def check_degree_conditions(g: InducedSubgraph, m: int) -> ConditionReport:
    """Evaluate the necessary and sufficient degree conditions for ``g``."""
    if len(g) == 0:
        raise ValueError("empty vertex set")
    mindeg = g.min_out_degree
    nv = len(g)
    bound = m * math.log(m * nv)
    # Strict comparison: a boundary tie gives no slack in the probabilistic
    # argument, so it is resolved conservatively.
    sufficient = mindeg > bound
    p_fail = m * nv * (1.0 - 1.0 / m) ** mindeg
    return ConditionReport(
        min_out_degree=mindeg,
        necessary_ok=mindeg >= m,
        sufficient_bound=bound,
        sufficient_ok=sufficient,
        failure_probability_bound=p_fail,
    )


def random_labeling(controls: Sequence[Vec], m: int, seed: int) -> Labeling:
    """Label every control independently and uniformly in 1..m."""
    if m < 1:
        raise ValueError(f"label count must be >= 1, got {m}")
    rng = random.Random(seed)
    return {u: rng.randint(1, m) for u in controls}


def verify_labeling(g: InducedSubgraph, labels: Labeling, x0: Vec, m: int) -> LabelingCheck:
    """Check that x0 is in the set and every vertex covers all m labels."""
    start_ok = x0 in g
    if not start_ok:
        return LabelingCheck(False, False, None)
    controls = g.controls
    for i, row in enumerate(g.out_adj):
        seen = {labels[controls[k]] for k, _ in row}
        if len(seen) < m:
            missing = min(d for d in range(1, m + 1) if d not in seen)
            return LabelingCheck(False, True, (g.vertices[i], missing))
    return LabelingCheck(True, True, None)


@dataclass
class GreedyLabelingResult:
    labeling: Labeling
    estimator: Estimator
    totals: list[float]  # estimator total before any assignment, then after each


def greedy_labeling(g: InducedSubgraph, m: int) -> GreedyLabelingResult:
    """Assign labels to controls one at a time, minimizing the estimator.

    Controls are processed in their stored order.  For each control the label
    is chosen to minimize the resulting estimator total, with ties broken
    toward the smallest label, which makes the output a pure function of the
    vertex set and control order.  Since the estimator total starts below
    ``m|V|(1-1/m)^mindeg`` and never increases, a start value below 1 forces
    every final term to 0, i.e. a verified-good labeling.

    Work is O(edges * m + |controls| * m * |V|): per control only the vertices
    it keeps inside the set are touched, plus one full-table total.
    """
    if len(g) == 0:
        raise ValueError("empty vertex set")
    controls = g.controls
    nv = len(g)
    q = 1.0 - 1.0 / m
    max_deg = max(len(row) for row in g.out_adj)
    qpow = [q**e for e in range(max_deg + 1)]

    # in_vertices[k]: vertices whose successor under control k stays inside.
    in_vertices: list[list[int]] = [[] for _ in controls]
    for v, row in enumerate(g.out_adj):
        for k, _ in row:
            in_vertices[k].append(v)

    remaining = [len(row) for row in g.out_adj]  # unassigned controls keeping v inside
    alive = [[True] * m for _ in range(nv)]  # labels not yet realized at v
    alive_count = [m] * nv

    def table_total() -> float:
        return sum(qpow[remaining[v]] * alive_count[v] for v in range(nv))

    totals = [table_total()]
    assigned: list[int] = []
    for k in range(len(controls)):
        scores = [0.0] * m
        for v in in_vertices[k]:
            w = qpow[remaining[v] - 1]
            av = alive[v]
            for j in range(m):
                if av[j]:
                    scores[j] += w
        best = 0
        for j in range(1, m):
            if scores[j] > scores[best]:
                best = j
        assigned.append(best)
        for v in in_vertices[k]:
            remaining[v] -= 1
            if alive[v][best]:
                alive[v][best] = False
                alive_count[v] -= 1
        totals.append(table_total())

    labeling = {u: assigned[k] + 1 for k, u in enumerate(controls)}
    terms = {
        (g.vertices[v], j + 1): (qpow[remaining[v]] if alive[v][j] else 0.0)
        for v in range(nv)
        for j in range(m)
    }
    return GreedyLabelingResult(labeling, Estimator(terms, totals[-1]), totals)
