"""Automorphism groups of graphs, element orders and the symmetry degree."""

from __future__ import annotations

from typing import Sequence

from .errors import CapExceeded, ConsistencyError, InputError
from .graph import Graph
from .perm import Permutation, PermutationGroup, element_order
from .search import DEFAULT_NODE_CAP, search_automorphisms

DEFAULT_ENUM_CAP = 1_000_000

__all__ = [
    "DEFAULT_ENUM_CAP",
    "automorphism_group",
    "colored_automorphism_group",
    "contains",
    "element_order",
    "enumerate_elements",
    "is_automorphism",
    "log2_order",
    "order",
    "symmetry_degree",
]


def is_automorphism(p: Permutation, g: Graph) -> bool:
    if p.degree != g.n:
        raise InputError(f"permutation degree {p.degree} does not match graph order {g.n}")
    es = g.edge_set
    img = p.images
    for u, v in g.edges:
        a, b = img[u], img[v]
        if (a, b) not in es and (b, a) not in es:
            return False
    return True


def colored_automorphism_group(adj: Sequence[Sequence[int]], colors: Sequence[int] | None,
                               degree: int | None = None,
                               node_cap: int = DEFAULT_NODE_CAP) -> PermutationGroup:
    """Group of colour-preserving automorphisms, restricted to the first ``degree`` vertices.

    Vertices at indices ``>= degree`` must be fixed by every automorphism
    (typically because their colours are unique); they are dropped from
    the returned permutations.
    """
    n = len(adj)
    degree = n if degree is None else degree
    base, _, gens = search_automorphisms(adj, colors, node_cap)
    perms = []
    for g in gens:
        if any(g[v] != v for v in range(degree, n)):
            raise ConsistencyError("auxiliary vertex moved by an automorphism")
        perms.append(Permutation(g[:degree]))
    if any(b >= degree for b in base):
        raise ConsistencyError("auxiliary vertex in base")
    return PermutationGroup(degree, perms, base)


def automorphism_group(g: Graph, node_cap: int = DEFAULT_NODE_CAP) -> PermutationGroup:
    """Aut(g) with a strong generating set and exact order.

    Raises ResourceLimitError if the search visits more than ``node_cap`` nodes.
    """
    grp = colored_automorphism_group(g.adjacency, None, g.n, node_cap)
    for p in grp.generators:
        if not is_automorphism(p, g):
            raise ConsistencyError(f"search produced a non-automorphism {p}")
    return grp


def order(grp: PermutationGroup) -> int:
    return grp.order


def log2_order(grp: PermutationGroup) -> float:
    """log2 |grp| as a sum over the fundamental orbit sizes."""
    return grp.log2_order()


def contains(grp: PermutationGroup, p: Permutation) -> bool:
    return grp.contains(p)


def enumerate_elements(grp: PermutationGroup, cap: int) -> list[Permutation] | CapExceeded:
    return grp.enumerate(cap)


def _connected_symmetry_degree(g: Graph, cap: int, node_cap: int):
    elems = automorphism_group(g, node_cap).enumerate(cap)
    if isinstance(elems, CapExceeded):
        return elems
    return sum(element_order(p) for p in elems)


def symmetry_degree(g: Graph, cap: int = DEFAULT_ENUM_CAP,
                    node_cap: int = DEFAULT_NODE_CAP) -> int | CapExceeded:
    """Sum of element orders over Aut, taken per path-component.

    Single-vertex components contribute nothing. Returns CapExceeded when
    some component's group is larger than ``cap``.
    """
    total = 0
    for comp in g.components():
        if len(comp) == 1:
            continue
        sub = g if len(comp) == g.n else g.induced_subgraph(comp)
        val = _connected_symmetry_degree(sub, cap, node_cap)
        if isinstance(val, CapExceeded):
            return val
        total += val
    return total
