"""Motion graph restricted to a finite vertex set, plus degree peeling.

Vertices are lattice points; there is an edge ``x -> x+u`` for every control
``u`` that keeps the successor inside the vertex set.  A zero control yields a
self-loop, which counts toward the out-degree (staying put is a legal move).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .model import Vec, add


class Infeasible(RuntimeError):
    """Raised when peeling wipes out the start state (or everything)."""


@dataclass
class InducedSubgraph:
    """Immutable adjacency of the motion graph over a finite vertex set.

    ``out_adj[i]`` lists ``(control index, successor vertex index)`` pairs for
    ``vertices[i]`` and is complete: every control whose successor stays in
    the vertex set appears.  Treat instances as read-only after construction.
    """

    vertices: tuple[Vec, ...]
    controls: tuple[Vec, ...]
    out_adj: tuple[tuple[tuple[int, int], ...], ...]
    min_out_degree: int
    _index: dict[Vec, int] = field(default_factory=dict, repr=False)

    @property
    def index(self) -> dict[Vec, int]:
        if not self._index and self.vertices:
            self._index.update({v: i for i, v in enumerate(self.vertices)})
        return self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, x: Vec) -> bool:
        return x in self.index

    def out_degree(self, x: Vec) -> int:
        return len(self.out_adj[self.index[x]])

    def edge_count(self) -> int:
        return sum(len(adj) for adj in self.out_adj)


def build_induced(points: Iterable[Vec], controls: tuple[Vec, ...]) -> InducedSubgraph:
    """Construct the complete induced out-adjacency over ``points``."""
    vertices = tuple(sorted(set(points)))
    index = {v: i for i, v in enumerate(vertices)}
    out_adj = []
    for x in vertices:
        row = []
        for k, u in enumerate(controls):
            j = index.get(add(x, u))
            if j is not None:
                row.append((k, j))
        out_adj.append(tuple(row))
    min_deg = min((len(row) for row in out_adj), default=0)
    return InducedSubgraph(vertices, tuple(controls), tuple(out_adj), min_deg, index)


def peel_to_min_degree(
    points: Iterable[Vec], controls: tuple[Vec, ...], t: int, x0: Vec
) -> InducedSubgraph:
    """Extract the maximal induced subgraph with every out-degree >= ``t``.

    Iteratively deletes any vertex whose current out-degree falls below the
    threshold until stable; the result is unique regardless of deletion order,
    so it contains every induced subgraph meeting the bound.  Raises
    :class:`Infeasible` if ``x0`` does not survive or nothing remains.
    """
    if t < 0:
        raise ValueError(f"threshold must be >= 0, got {t}")
    alive = set(points)
    if t == 0:
        if x0 not in alive:
            raise Infeasible(f"start state {x0} not among the given points")
        return build_induced(alive, controls)
    deg = {x: sum(1 for u in controls if add(x, u) in alive) for x in alive}
    stack = [x for x, d in deg.items() if d < t]
    removed = set(stack)
    while stack:
        y = stack.pop()
        alive.discard(y)
        for u in controls:
            p = tuple(a - b for a, b in zip(y, u))
            if p in alive and p not in removed:
                deg[p] -= 1
                if deg[p] < t:
                    removed.add(p)
                    stack.append(p)
    if not alive or x0 not in alive:
        raise Infeasible(
            f"no induced subgraph of min out-degree {t} contains the start state"
        )
    return build_induced(alive, controls)


def to_dot(g: InducedSubgraph, labels: dict[Vec, int] | None = None) -> str:
    """Render the subgraph in DOT format, optionally labeling edges."""
    lines = ["digraph motion {"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for i, row in enumerate(g.out_adj):
        x = g.vertices[i]
        for k, j in row:
            y = g.vertices[j]
            u = g.controls[k]
            tag = labels.get(u) if labels else None
            attr = f' [label="{tag}"]' if tag is not None else ""
            lines.append(f'  "{x}" -> "{y}"{attr};')
    lines.append("}")
    return "\n".join(lines)
