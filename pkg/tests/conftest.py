"""Shared instance builders and brute-force reference helpers.

The reference helpers deliberately re-derive quantities from first principles
(set comprehensions over points and controls) so tests never trust the code
path they are checking.
"""

from __future__ import annotations

import random
from itertools import product

from safepart.model import Instance, SafeSet, Vec, add, make_instance


def unit_controls(n: int) -> list[Vec]:
    """Axis moves e1, -e1, ..., en, -en plus the stay-put move, in that order."""
    controls: list[Vec] = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        controls.append(tuple(e))
        controls.append(tuple(-c for c in e))
    controls.append(tuple([0] * n))
    return controls


def vehicle_instance(n: int, k: int, m: int) -> Instance:
    return make_instance(n, (0,) * n, unit_controls(n), m, SafeSet.inf_ball(n, k))


def diamond_instance(m: int = 3) -> Instance:
    """1-norm unit ball with the eight king moves; the classic case where the
    necessary degree condition holds but no labeling works."""
    controls = sorted(p for p in product((-1, 0, 1), repeat=2) if max(map(abs, p)) == 1)
    return make_instance(2, (0, 0), controls, m, SafeSet.one_ball(2, 1))


def dense_line_instance(k: int, m: int, r: int | None = None) -> Instance:
    r = k if r is None else r
    controls = [(c,) for c in range(-r, r + 1)]
    return make_instance(1, (0,), controls, m, SafeSet.inf_ball(1, k))


def dense_box_instance(k: int, r: int, m: int) -> Instance:
    controls = sorted(product(range(-r, r + 1), repeat=2))
    return make_instance(2, (0, 0), controls, m, SafeSet.inf_ball(2, k))


def good_vehicle_labeling() -> dict[Vec, int]:
    """Axis-paired split for the 2-d vehicle: east/west in one cell."""
    return {(1, 0): 1, (-1, 0): 1, (0, 1): 2, (0, -1): 2, (0, 0): 2}


def bad_vehicle_labeling() -> dict[Vec, int]:
    """North+east in one cell: the adversary can push the vehicle out."""
    return {(1, 0): 1, (0, 1): 1, (-1, 0): 2, (0, -1): 2, (0, 0): 2}


def random_instance(rng: random.Random) -> Instance:
    """Small planar instance for solver cross-validation."""
    kind = rng.randrange(4)
    if kind == 0:
        safe = SafeSet.inf_ball(2, 1)
    elif kind == 1:
        safe = SafeSet.inf_ball(2, 2)
    elif kind == 2:
        safe = SafeSet.one_ball(2, 2)
    else:
        box = list(product(range(-2, 3), repeat=2))
        pts = {p for p in box if rng.random() < 0.6} | {(0, 0)}
        safe = SafeSet.explicit(pts)
    x0 = rng.choice(sorted(safe.points))
    pool = [p for p in product(range(-2, 3), repeat=2)]
    rng.shuffle(pool)
    m = rng.randint(1, 3)
    size = rng.randint(max(2, m), 9)
    controls = pool[:size]
    return make_instance(2, x0, controls, m, safe)


def random_partition(rng: random.Random, inst: Instance):
    """Random labeling-induced partition; cells may legitimately be empty."""
    from safepart.model import labeling_to_partition

    labels = {u: rng.randint(1, inst.m) for u in inst.controls}
    return labeling_to_partition(labels, inst.m, inst.controls)


# ---------------------------------------------------------------------------
# brute-force references
# ---------------------------------------------------------------------------


def brute_out_degrees(points, controls) -> dict[Vec, int]:
    pts = set(points)
    return {x: sum(1 for u in controls if add(x, u) in pts) for x in pts}


def brute_label_cover_ok(points, controls, labels, m) -> bool:
    """Does every point see every label among moves that stay inside?"""
    pts = set(points)
    for x in pts:
        seen = {labels[u] for u in controls if add(x, u) in pts}
        if len(seen) < m:
            return False
    return True


def brute_peel(points, controls, t: int, rng: random.Random | None = None):
    """Peel by repeatedly deleting any below-threshold point, in a shuffled
    order when ``rng`` is given; returns the surviving point set."""
    pts = set(points)
    while True:
        low = [x for x in pts if sum(1 for u in controls if add(x, u) in pts) < t]
        if not low:
            return pts
        if rng is not None:
            rng.shuffle(low)
            del low[1:]  # remove one at a time in random order
        pts -= set(low)


def reference_estimator_total(vertices, controls, m: int, assigned: list[int]) -> float:
    """Definitional conditional-failure total given a 1-based label prefix.

    A (point, label) term is zero once an assigned control carries that label
    into the set from that point; otherwise it is (1-1/m) to the number of
    unassigned controls that stay inside.
    """
    pts = set(vertices)
    q = 1.0 - 1.0 / m
    total = 0.0
    for x in sorted(pts):
        inside = [add(x, u) in pts for u in controls]
        rest = sum(1 for k in range(len(assigned), len(controls)) if inside[k])
        for j in range(1, m + 1):
            if any(assigned[k] == j and inside[k] for k in range(len(assigned))):
                continue
            total += q**rest
    return total
