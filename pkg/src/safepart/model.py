"""Domain types and instance I/O.

A problem instance lives on the integer lattice: the state moves by adding
one control vector per step, the controls are split into ``m`` cells, and an
adversary picks which cell is available at each step.  Everything here is
exact integer data; all containers are immutable after validation so they can
be shared freely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterable, Mapping

Vec = tuple[int, ...]

# A partition is a tuple of m cells; cell d-1 holds the controls available
# when the adversary picks label d.  Labels are 1-based throughout.
Partition = tuple[tuple[Vec, ...], ...]
Labeling = dict[Vec, int]


class ValidationError(ValueError):
    """Base class for malformed instances or artifact files."""


class DimensionMismatch(ValidationError):
    pass


class DuplicateControl(ValidationError):
    pass


class X0NotSafe(ValidationError):
    pass


class MTooLarge(ValidationError):
    pass


def vec(coords: Iterable[int]) -> Vec:
    return tuple(int(c) for c in coords)


def add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_key(v: Vec) -> str:
    """Serialize a lattice vector as comma-joined integers, e.g. ``"1,-1"``."""
    return ",".join(str(c) for c in v)


def parse_vec_key(key: str) -> Vec:
    try:
        return tuple(int(part) for part in key.split(","))
    except ValueError as exc:
        raise ValidationError(f"bad vector key {key!r}") from exc


@dataclass(frozen=True)
class SafeSet:
    """Finite safe region, materialized eagerly as a point set.

    ``kind`` records how the set was described (a max-norm ball, a 1-norm
    ball, or an explicit list); membership always goes through ``points``.
    """

    kind: str
    n: int
    k: int | None
    points: frozenset[Vec]

    @classmethod
    def inf_ball(cls, n: int, k: int) -> "SafeSet":
        if n < 1 or k < 0:
            raise ValidationError(f"inf_ball needs n >= 1 and k >= 0, got n={n}, k={k}")
        pts = frozenset(product(range(-k, k + 1), repeat=n))
        return cls("inf_ball", n, k, pts)

    @classmethod
    def one_ball(cls, n: int, k: int) -> "SafeSet":
        if n < 1 or k < 0:
            raise ValidationError(f"one_ball needs n >= 1 and k >= 0, got n={n}, k={k}")
        pts = frozenset(
            p for p in product(range(-k, k + 1), repeat=n) if sum(abs(c) for c in p) <= k
        )
        return cls("one_ball", n, k, pts)

    @classmethod
    def explicit(cls, points: Iterable[Iterable[int]]) -> "SafeSet":
        pts = [vec(p) for p in points]
        if not pts:
            raise ValidationError("explicit safe set must be nonempty")
        if len(set(pts)) != len(pts):
            raise ValidationError("explicit safe set contains duplicate points")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise DimensionMismatch("explicit safe set mixes dimensions")
        return cls("explicit", n, None, frozenset(pts))

    def __contains__(self, x: Vec) -> bool:
        return x in self.points

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Instance:
    """A validated problem instance.

    ``controls`` keeps the user-supplied order: the greedy labeling algorithm
    and the enumeration oracle both depend on it, so the order is part of the
    instance for reproducibility.
    """

    n: int
    x0: Vec
    controls: tuple[Vec, ...]
    m: int
    safe: SafeSet

    @property
    def control_index(self) -> dict[Vec, int]:
        return {u: k for k, u in enumerate(self.controls)}


def validate_instance(inst: Instance) -> Instance:
    """Check all instance invariants; return the instance unchanged if valid."""
    if inst.n < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {inst.n}")
    if len(inst.x0) != inst.n:
        raise DimensionMismatch(f"x0 has length {len(inst.x0)}, expected {inst.n}")
    if not inst.controls:
        raise ValidationError("control set must be nonempty")
    for u in inst.controls:
        if len(u) != inst.n:
            raise DimensionMismatch(f"control {u} has length {len(u)}, expected {inst.n}")
    if len(set(inst.controls)) != len(inst.controls):
        seen: set[Vec] = set()
        for u in inst.controls:
            if u in seen:
                raise DuplicateControl(f"control {u} listed more than once")
            seen.add(u)
    if inst.safe.n != inst.n:
        raise DimensionMismatch(
            f"safe set dimension {inst.safe.n} differs from instance dimension {inst.n}"
        )
    if inst.x0 not in inst.safe:
        raise X0NotSafe(f"initial state {inst.x0} lies outside the safe set")
    if inst.m < 1:
        raise ValidationError(f"label count must be >= 1, got {inst.m}")
    if inst.m > len(inst.controls):
        raise MTooLarge(
            f"m={inst.m} exceeds |controls|={len(inst.controls)}; "
            "no partition into m nonempty cells exists"
        )
    return inst


def make_instance(n, x0, controls, m, safe: SafeSet) -> Instance:
    return validate_instance(
        Instance(n=int(n), x0=vec(x0), controls=tuple(vec(u) for u in controls), m=int(m), safe=safe)
    )


def labeling_to_partition(
    labels: Mapping[Vec, int], m: int, controls: Iterable[Vec] | None = None
) -> Partition:
    """Group controls by label into an m-cell partition.

    When ``controls`` is given, cells keep that order and any control missing
    from ``labels`` is dumped into the last cell (so a labeling defined only
    on the controls that matter still yields a complete partition).  With a
    total labeling the completion does nothing.
    """
    if m < 1:
        raise ValidationError(f"label count must be >= 1, got {m}")
    order = list(controls) if controls is not None else sorted(labels)
    cells: list[list[Vec]] = [[] for _ in range(m)]
    for u in order:
        d = labels.get(u, m)
        if not 1 <= d <= m:
            raise ValidationError(f"label {d} for control {u} outside 1..{m}")
        cells[d - 1].append(u)
    return tuple(tuple(cell) for cell in cells)


def partition_to_labeling(partition: Partition) -> Labeling:
    labels: Labeling = {}
    for d, cell in enumerate(partition, start=1):
        for u in cell:
            if u in labels:
                raise ValidationError(f"control {u} appears in two cells")
            labels[u] = d
    return labels


def check_partition(partition: Partition, controls: tuple[Vec, ...], m: int) -> None:
    """Verify that ``partition`` is an m-cell disjoint cover of ``controls``."""
    if len(partition) != m:
        raise ValidationError(f"expected {m} cells, got {len(partition)}")
    labels = partition_to_labeling(partition)
    missing = set(controls) - set(labels)
    extra = set(labels) - set(controls)
    if missing:
        raise ValidationError(f"partition misses controls: {sorted(missing)}")
    if extra:
        raise ValidationError(f"partition contains unknown controls: {sorted(extra)}")


# ---------------------------------------------------------------------------
# JSON wire formats
# ---------------------------------------------------------------------------
#
# Instance files:
#   {"n": int, "x0": [int], "controls": [[int]], "m": int,
#    "safe_set": {"type": "inf_ball"|"one_ball"|"explicit",
#                 "k": int | "points": [[int]]}}
# Labeling / partition files:
#   {"labels": {"<control as comma-joined ints>": int}}


def instance_to_json(inst: Instance) -> dict:
    safe: dict = {"type": inst.safe.kind}
    if inst.safe.kind == "explicit":
        safe["points"] = [list(p) for p in sorted(inst.safe.points)]
    else:
        safe["k"] = inst.safe.k
    return {
        "n": inst.n,
        "x0": list(inst.x0),
        "controls": [list(u) for u in inst.controls],
        "m": inst.m,
        "safe_set": safe,
    }


def instance_from_json(obj) -> Instance:
    if not isinstance(obj, dict):
        raise ValidationError("instance file must contain a JSON object")
    try:
        n = int(obj["n"])
        x0 = obj["x0"]
        controls = obj["controls"]
        m = int(obj["m"])
        safe_obj = obj["safe_set"]
        kind = safe_obj["type"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"instance file missing field: {exc}") from exc
    if kind == "inf_ball":
        safe = SafeSet.inf_ball(n, int(safe_obj["k"]))
    elif kind == "one_ball":
        safe = SafeSet.one_ball(n, int(safe_obj["k"]))
    elif kind == "explicit":
        safe = SafeSet.explicit(safe_obj["points"])
    else:
        raise ValidationError(f"unknown safe_set type {kind!r}")
    return make_instance(n, x0, controls, m, safe)


def labeling_to_json(labels: Mapping[Vec, int]) -> dict:
    return {"labels": {vec_key(u): int(d) for u, d in labels.items()}}


def labeling_from_json(obj) -> Labeling:
    if not isinstance(obj, dict) or "labels" not in obj or not isinstance(obj["labels"], dict):
        raise ValidationError('labeling file must look like {"labels": {...}}')
    return {parse_vec_key(key): int(d) for key, d in obj["labels"].items()}


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def dump_json(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def load_instance(path) -> Instance:
    return instance_from_json(load_json(path))


def save_instance(inst: Instance, path) -> None:
    dump_json(instance_to_json(inst), path)


def load_labeling(path) -> Labeling:
    return labeling_from_json(load_json(path))


def save_labeling(labels: Mapping[Vec, int], path) -> None:
    dump_json(labeling_to_json(labels), path)
