"""Safety-game synthesis of resilient control-set partitions.

The state walks on the integer lattice by adding one control per step; an
adversary restricts the available controls to one cell of a partition.  This
package decides whether a given partition admits an always-safe policy,
searches for partitions that do, and applies the machinery to design line
codes with bounded running digital sum.
"""

from .game import GameResult, solve, solve_attractor, solve_fixpoint
from .graph import InducedSubgraph, Infeasible, build_induced, peel_to_min_degree
from .labeling import (
    ConditionReport,
    Estimator,
    LabelingCheck,
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
    ValidationError,
    Vec,
    labeling_to_partition,
    load_instance,
    make_instance,
    partition_to_labeling,
    save_instance,
    validate_instance,
)
from .oracle import CapExceeded, OracleVerdict, exhaustive_search, game_tree_solvable
from .rds import CodeDesign, DecodeError, DesignNotFound, core_states, design_code
from .simulate import Trajectory, run_policy
from .synthesis import (
    INFEASIBLE_PROVEN,
    SOLVED,
    UNKNOWN,
    SynthesisConfig,
    SynthesisOutcome,
    policy_from_labeling,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CodeDesign",
    "ConditionReport",
    "DecodeError",
    "DesignNotFound",
    "Estimator",
    "GameResult",
    "INFEASIBLE_PROVEN",
    "InducedSubgraph",
    "Infeasible",
    "Instance",
    "Labeling",
    "LabelingCheck",
    "OracleVerdict",
    "Partition",
    "SOLVED",
    "SafeSet",
    "SynthesisConfig",
    "SynthesisOutcome",
    "Trajectory",
    "UNKNOWN",
    "ValidationError",
    "Vec",
    "build_induced",
    "check_degree_conditions",
    "core_states",
    "design_code",
    "exhaustive_search",
    "game_tree_solvable",
    "greedy_labeling",
    "labeling_to_partition",
    "load_instance",
    "make_instance",
    "partition_to_labeling",
    "peel_to_min_degree",
    "policy_from_labeling",
    "random_labeling",
    "run_policy",
    "save_instance",
    "solve",
    "solve_attractor",
    "solve_fixpoint",
    "synthesize",
    "validate_instance",
    "verify_labeling",
]
