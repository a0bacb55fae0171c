"""Simple cycles, their invariance under automorphisms, and orientation signs.

The homological criteria for restriction reduce, on graphs, to a statement
about cycles: an automorphism that survives into a subgraph of a
cycle-stable graph maps each cycle of the subgraph onto itself, either
preserving its cyclic order (+1) or reversing it (-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .autgroup import automorphism_group
from .errors import InputError, ResourceLimitError
from .graph import Graph
from .perm import Permutation, PermutationGroup
from .search import DEFAULT_NODE_CAP

DEFAULT_CYCLE_CAP = 100_000


def canonical_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    """Rotation anchored at the smallest vertex, oriented so that the second
    vertex is smaller than the last."""
    vs = list(vertices)
    k = vs.index(min(vs))
    vs = vs[k:] + vs[:k]
    if vs[1] > vs[-1]:
        vs = [vs[0]] + vs[:0:-1]
    return tuple(vs)


@dataclass(frozen=True)
class CyclePath:
    """Simple cycle ``v_0 v_1 ... v_m v_0`` (m >= 2) in canonical form."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise InputError(f"a cycle needs at least 3 distinct vertices, got {vs}")
        object.__setattr__(self, "vertices", canonical_cycle(vs))

    @classmethod
    def in_graph(cls, g: Graph, vertices: Sequence[int]) -> "CyclePath":
        c = cls(tuple(vertices))
        if not all(g.has_edge(u, v) for u, v in c.edges()):
            raise InputError(f"{tuple(vertices)} is not a cycle of the graph")
        return c

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def image(self, eta: Permutation) -> "CyclePath":
        return CyclePath(tuple(eta(v) for v in self.vertices))


def enumerate_cycles(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> list[CyclePath]:
    """Every simple cycle once, sorted by length then vertex sequence."""
    adj = [sorted(a) for a in g.adjacency]
    out: list[CyclePath] = []
    for s in range(g.n):
        # cycles whose smallest vertex is s; record one orientation only
        path = [s]
        on_path = {s}
        stack = [iter([w for w in adj[s] if w > s])]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            if len(path) >= 3 and s in adj[w] and path[1] < w:
                out.append(CyclePath(tuple(path)))
                if len(out) > cap:
                    raise ResourceLimitError(f"cycle enumeration exceeded cap {cap}", cap=cap)
            stack.append(iter([x for x in adj[w] if x > s]))
    out.sort(key=lambda c: (len(c), c.vertices))
    return out


def automorphism_invariant(cycle: CyclePath, grp: PermutationGroup) -> bool:
    """Whether every element of ``grp`` maps the cycle onto itself.

    Checking the generators suffices: the setwise stabiliser of the cycle
    is a subgroup.
    """
    return all(cycle.image(g) == cycle for g in grp.generators)


def is_cycle_stable(g: Graph, cycle_cap: int = DEFAULT_CYCLE_CAP,
                    node_cap: int = DEFAULT_NODE_CAP) -> bool:
    grp = automorphism_group(g, node_cap)
    return all(automorphism_invariant(c, grp) for c in enumerate_cycles(g, cycle_cap))


def cycle_restriction_sign(eta: Permutation, cycle: CyclePath) -> int | None:
    """+1 if ``eta`` maps the cycle to itself keeping its cyclic order,
    -1 if it reverses it, None if it maps the cycle elsewhere."""
    vs = cycle.vertices
    if max(vs) >= eta.degree:
        raise InputError("permutation degree too small for this cycle")
    img = [eta(v) for v in vs]
    if set(img) != set(vs):
        return None
    pos = {v: k for k, v in enumerate(vs)}
    m = len(vs)
    start = pos[img[0]]
    if all(img[k] == vs[(start + k) % m] for k in range(m)):
        return 1
    if all(img[k] == vs[(start - k) % m] for k in range(m)):
        return -1
    return None
