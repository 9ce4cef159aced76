"""End-to-end partition synthesis.

Given an instance, find a partition of the controls under which the safety
game is winnable from the start state, together with a certified policy.
Stages run cheapest first and every candidate is certified by an independent
game solve, so a bug in any stage cannot produce a false SOLVED:

1. peel the safe set to a high-degree core (strong threshold first, then the
   bare necessary threshold m),
2. label the controls greedily; accept if the labeling verifies,
3. retry with uniformly random labelings over a seed range,
4. exhaustively enumerate labelings when the search space is small enough.

UNKNOWN is an honest outcome: stages 2-3 are incomplete without the degree
margin, and stage 4 only runs within its cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .game import GameResult, solve_fixpoint
from .graph import InducedSubgraph, Infeasible, build_induced, peel_to_min_degree
from .labeling import (
    ConditionReport,
    check_degree_conditions,
    greedy_labeling,
    random_labeling,
    verify_labeling,
)
from .model import (
    Instance,
    Labeling,
    Partition,
    SafeSet,
    Vec,
    add,
    labeling_to_partition,
    make_instance,
)

SOLVED = "SOLVED"
INFEASIBLE_PROVEN = "INFEASIBLE_PROVEN"
UNKNOWN = "UNKNOWN"

# Above this many state-control pairs the certification game is solved on the
# retained vertex set instead of the full safe set (still sound: a winning
# strategy there wins the full game, the sets only differ in maximality).
FULL_CERTIFY_WORK_CAP = 1_500_000


class ConfigError(ValueError):
    pass


class PreconditionViolated(RuntimeError):
    """A labeling missing some label at some vertex was used to build a policy."""


@dataclass
class SynthesisConfig:
    seeds: int = 32  # number of random-labeling retries
    seed_base: int = 0
    oracle_cap: int = 10**6  # enumerate labelings only if m**|U| fits
    shat: frozenset[Vec] | None = None  # bypass peeling with a fixed vertex set

    def __post_init__(self) -> None:
        if self.seeds < 0:
            raise ConfigError(f"seeds must be >= 0, got {self.seeds}")
        if self.oracle_cap <= 0:
            raise ConfigError(f"oracle cap must be positive, got {self.oracle_cap}")


@dataclass
class SynthesisOutcome:
    status: str  # SOLVED | INFEASIBLE_PROVEN | UNKNOWN
    partition: Partition | None = None
    policy: GameResult | None = None  # witness policy closed on shat
    shat: frozenset[Vec] | None = None
    report: ConditionReport | None = None
    method: str | None = None  # sufficient-bound | verified-greedy | randomized | oracle
    labeling: Labeling | None = None
    certificate: GameResult | None = None  # independent solve: maximal winning set
    certificate_restricted: bool = False  # True when certified on shat only
    estimator_totals: list[float] = field(default_factory=list)


def policy_from_labeling(
    g: InducedSubgraph, labels: Labeling, m: int
) -> dict[tuple[Vec, int], int]:
    """Memoryless policy that follows the labeling while staying inside ``g``.

    For each vertex and label, picks the lexicographically smallest control
    with that label whose successor remains in the vertex set.  Requires the
    labeling to cover every label at every vertex.
    """
    controls = g.controls
    policy: dict[tuple[Vec, int], int] = {}
    for i, row in enumerate(g.out_adj):
        x = g.vertices[i]
        best: dict[int, int] = {}
        for k, _ in row:
            d = labels[controls[k]]
            if d not in best or controls[k] < controls[best[d]]:
                best[d] = k
        if len(best) < m:
            missing = min(d for d in range(1, m + 1) if d not in best)
            raise PreconditionViolated(f"no move with label {missing} keeps {x} inside")
        for d in range(1, m + 1):
            policy[(x, d)] = best[d]
    return policy


def reachable_states(
    inst: Instance, policy: dict[tuple[Vec, int], int], start: Vec | None = None
) -> frozenset[Vec]:
    """All states a policy can visit from the start under any label sequence."""
    start = inst.x0 if start is None else start
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for d in range(1, inst.m + 1):
            k = policy.get((x, d))
            if k is None:
                raise PreconditionViolated(f"policy undefined at ({x}, {d})")
            y = add(x, inst.controls[k])
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def _certify(
    inst: Instance, labels: Labeling, shat: frozenset[Vec] | None
) -> tuple[Partition, GameResult, bool] | None:
    """Independent check that a labeling's partition wins the safety game.

    Runs the reference fixpoint solver on the full safe set when that is
    affordable; otherwise on the retained vertex set, which is sound (it is a
    sub-game) but reports a possibly non-maximal winning set.
    """
    partition = labeling_to_partition(labels, inst.m, inst.controls)
    restricted = (
        shat is not None
        and len(inst.safe) * len(inst.controls) > FULL_CERTIFY_WORK_CAP
    )
    target = (
        make_instance(inst.n, inst.x0, inst.controls, inst.m, SafeSet.explicit(shat))
        if restricted
        else inst
    )
    certificate = solve_fixpoint(target, partition)
    if not certificate.solvable:
        return None
    return partition, certificate, restricted


def _witness_from_graph(inst: Instance, g: InducedSubgraph, labels: Labeling) -> GameResult:
    shat = frozenset(g.vertices)
    policy = policy_from_labeling(g, labels, inst.m)
    return GameResult(shat, policy, inst.x0 in shat)


def synthesize(inst: Instance, config: SynthesisConfig | None = None) -> SynthesisOutcome:
    """Run the staged pipeline; see the module docstring for the stages."""
    config = config or SynthesisConfig()
    m = inst.m

    g: InducedSubgraph | None = None
    if config.shat is not None:
        if not config.shat <= inst.safe.points:
            raise ConfigError("provided vertex set is not inside the safe set")
        if inst.x0 not in config.shat:
            raise ConfigError("provided vertex set does not contain the start state")
        g = build_induced(config.shat, inst.controls)
    else:
        strong_t = math.ceil(m * math.log(m * len(inst.safe.points)))
        for t in (strong_t, m):
            try:
                g = peel_to_min_degree(inst.safe.points, inst.controls, t, inst.x0)
                break
            except Infeasible:
                g = None

    report: ConditionReport | None = None
    outcome_shat: frozenset[Vec] | None = None
    estimator_totals: list[float] = []
    if g is not None:
        outcome_shat = frozenset(g.vertices)
        report = check_degree_conditions(g, m)

        greedy = greedy_labeling(g, m)
        estimator_totals = greedy.totals
        if verify_labeling(g, greedy.labeling, inst.x0, m).ok:
            certified = _certify(inst, greedy.labeling, outcome_shat)
            if certified is not None:
                partition, certificate, restricted = certified
                method = "sufficient-bound" if report.sufficient_ok else "verified-greedy"
                return SynthesisOutcome(
                    SOLVED,
                    partition,
                    _witness_from_graph(inst, g, greedy.labeling),
                    outcome_shat,
                    report,
                    method,
                    greedy.labeling,
                    certificate,
                    restricted,
                    estimator_totals,
                )

        for seed in range(config.seed_base, config.seed_base + config.seeds):
            labels = random_labeling(inst.controls, m, seed)
            if not verify_labeling(g, labels, inst.x0, m).ok:
                continue
            certified = _certify(inst, labels, outcome_shat)
            if certified is None:
                continue
            partition, certificate, restricted = certified
            return SynthesisOutcome(
                SOLVED,
                partition,
                _witness_from_graph(inst, g, labels),
                outcome_shat,
                report,
                "randomized",
                labels,
                certificate,
                restricted,
                estimator_totals,
            )

    # Exhaustive stage: enumerate labelings against the full game, which also
    # covers vertex sets other than the peeled core.
    if m ** len(inst.controls) <= config.oracle_cap:
        from .oracle import exhaustive_search

        verdict = exhaustive_search(inst, cap=config.oracle_cap)
        if verdict.labeling is None:
            return SynthesisOutcome(
                INFEASIBLE_PROVEN, shat=outcome_shat, report=report, method="oracle",
                estimator_totals=estimator_totals,
            )
        certified = _certify(inst, verdict.labeling, None)
        if certified is None:
            raise AssertionError("enumeration returned a labeling that fails certification")
        partition, certificate, restricted = certified
        shat = reachable_states(inst, certificate.policy)
        g2 = build_induced(shat, inst.controls)
        return SynthesisOutcome(
            SOLVED,
            partition,
            _witness_from_graph(inst, g2, verdict.labeling),
            shat,
            report,
            "oracle",
            verdict.labeling,
            certificate,
            restricted,
            estimator_totals,
        )

    return SynthesisOutcome(UNKNOWN, shat=outcome_shat, report=report,
                            estimator_totals=estimator_totals)
