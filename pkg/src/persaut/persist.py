"""Graph filtrations, survival of automorphisms, rank tables and barcodes.

For an inclusion ``G_i -> G_j`` of graphs on the same vertex set, an
automorphism ``eta`` of ``G_j`` is sent to its restriction when that
restriction is an automorphism of *every* intermediate graph
``G_i <= G <= G_j``, and to zero otherwise. For vertex-equal inclusions
this is equivalent to a local test:

    eta survives  <=>  eta in Aut(G_j) and eta fixes every added edge
                       (an edge of E_j - E_i) setwise.

Necessity: the intermediate graph (V, E_i) forces eta(E_i) = E_i, and
(V, E_i + {e}) then forces eta(e) = e for each added edge e, because the
edges of E_i are already accounted for. Sufficiency: if eta preserves E_i
and fixes each added edge, it preserves E_i + S for every set S of added
edges. Applying the same test across consecutive steps composes to the
test across the whole range, which is the functoriality of restriction.

Surviving permutations map basis elements of F Aut(G_j) to basis elements
of F Aut(G_i) injectively (the vertex sets agree, so restriction does not
change the permutation). The rank of the persistence map is therefore the
number of survivors, and no field arithmetic is ever needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .autgroup import DEFAULT_ENUM_CAP, automorphism_group, colored_automorphism_group, is_automorphism
from .errors import CapExceeded, ConsistencyError, InputError, ResourceLimitError
from .graph import DEFAULT_TOL, Graph, PointCloud, critical_distances, merge_close, pairwise_distances, proximity_graph
from .perm import Permutation, PermutationGroup
from .search import DEFAULT_NODE_CAP

BRUTEFORCE_MAX_ADDED = 12


@dataclass(frozen=True)
class Filtration:
    """Nested graphs ``G_0 <= ... <= G_T`` on a common vertex set.

    ``thresholds[k]`` is the parameter value at which ``G_k`` appears;
    ``merged[k]`` lists every input threshold that collapsed onto step k
    because it added no edges.
    """

    thresholds: tuple[float, ...]
    graphs: tuple[Graph, ...]
    merged: tuple[tuple[float, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        ths = tuple(float(t) for t in self.thresholds)
        gs = tuple(self.graphs)
        if not gs or len(ths) != len(gs):
            raise InputError("a filtration needs one threshold per graph and at least one step")
        for a, b in zip(ths, ths[1:]):
            if not a < b:
                raise InputError("filtration thresholds must be strictly increasing")
        for g, h in zip(gs, gs[1:]):
            if g.n != h.n:
                raise InputError("all graphs in a filtration must share the vertex set")
            if not g.edge_set < h.edge_set:
                raise InputError("consecutive graphs must be strictly nested")
        object.__setattr__(self, "thresholds", ths)
        object.__setattr__(self, "graphs", gs)
        if not self.merged:
            object.__setattr__(self, "merged", tuple((t,) for t in ths))

    @classmethod
    def from_steps(cls, thresholds: Sequence[float], graphs: Sequence[Graph]) -> "Filtration":
        """Build from a possibly redundant tower, dropping steps that add no edge."""
        if not graphs or len(thresholds) != len(graphs):
            raise InputError("a filtration needs one threshold per graph and at least one step")
        ths, gs, merged = [], [], []
        for t, g in zip(thresholds, graphs):
            if gs and g.edge_set == gs[-1].edge_set:
                merged[-1].append(float(t))
                continue
            if gs and not gs[-1].is_subgraph_of(g):
                raise InputError("graphs are not nested")
            ths.append(float(t))
            gs.append(g)
            merged.append([float(t)])
        return cls(tuple(ths), tuple(gs), tuple(tuple(m) for m in merged))

    @property
    def n(self) -> int:
        return self.graphs[0].n

    @property
    def T(self) -> int:
        return len(self.graphs) - 1

    def __len__(self) -> int:
        return len(self.graphs)

    def added_edges(self, i: int, j: int) -> list[tuple[int, int]]:
        self._check_pair(i, j)
        old = self.graphs[i].edge_set
        return [e for e in self.graphs[j].edges if e not in old]

    def _check_pair(self, i: int, j: int):
        if not 0 <= i <= j <= self.T:
            raise InputError(f"need 0 <= i <= j <= {self.T}, got ({i}, {j})")


def build_filtration(cloud: PointCloud, eps_max: float, tol: float = DEFAULT_TOL) -> Filtration:
    """Proximity-graph filtration at every critical distance up to ``eps_max``.

    Step 0 sits at threshold 0 (the empty graph unless points coincide).
    """
    if not eps_max > 0:
        raise InputError("eps_max must be positive")
    d = pairwise_distances(cloud)
    steps = [0.0] + [c for c in critical_distances(d, tol) if c <= eps_max]
    return Filtration.from_steps(steps, [proximity_graph(d, t) for t in steps])


def filtration_from_weights(n: int, edges: Sequence[Sequence[int]], weights: Sequence[float],
                            tol: float = DEFAULT_TOL) -> Filtration:
    """Sublevel filtration ``E_a = {e : w(e) <= a}`` of an edge-weighted graph.

    A step below the smallest weight (carrying the edgeless graph) comes first.
    """
    if len(edges) != len(weights):
        raise InputError("need exactly one weight per edge")
    if not all(math.isfinite(w) for w in weights):
        raise InputError("edge weights must be finite")
    g = Graph.from_edges(n, edges)
    if g.m != len(edges):
        raise InputError("duplicate edges in weighted graph")
    canon = [(min(u, v), max(u, v)) for u, v in edges]
    levels = merge_close(weights, tol)
    lowest = min(levels) if levels else 0.0
    start = 0.0 if lowest > 0 else lowest - 1.0
    steps = [start] + levels
    graphs = [Graph.from_edges(n, [e for e, w in zip(canon, weights) if w <= a]) for a in steps]
    return Filtration.from_steps(steps, graphs)


def _check_degree(eta: Permutation, n: int):
    if eta.degree != n:
        raise InputError(f"permutation degree {eta.degree} does not match {n} vertices")


def survives(eta: Permutation, i: int, j: int, filt: Filtration) -> bool:
    """Whether ``eta`` in Aut(G_j) restricts to ``G_i`` through every intermediate graph."""
    _check_degree(eta, filt.n)
    filt._check_pair(i, j)
    if not is_automorphism(eta, filt.graphs[j]):
        return False
    img = eta.images
    for u, v in filt.added_edges(i, j):
        a, b = img[u], img[v]
        if not ((a == u and b == v) or (a == v and b == u)):
            return False
    return True


def survives_bruteforce(eta: Permutation, g_i: Graph, g_j: Graph,
                        max_added: int = BRUTEFORCE_MAX_ADDED) -> bool:
    """Literal check over all intermediate edge sets ``E_i <= E <= E_j``."""
    if not g_i.is_subgraph_of(g_j):
        raise InputError("g_i must be a vertex-equal subgraph of g_j")
    _check_degree(eta, g_j.n)
    added = [e for e in g_j.edges if e not in g_i.edge_set]
    if len(added) > max_added:
        raise ResourceLimitError(f"{len(added)} added edges exceeds brute-force limit {max_added}",
                                 cap=max_added)
    for r in range(len(added) + 1):
        for extra in combinations(added, r):
            mid = Graph.from_edges(g_i.n, list(g_i.edges) + list(extra))
            if not is_automorphism(eta, mid):
                return False
    return True


@dataclass(frozen=True)
class SurvivorGroup:
    """Image of the persistence map from step ``source`` back to step ``target``."""

    source: int
    target: int
    group: PermutationGroup

    @property
    def order(self) -> int:
        return self.group.order


def _survivor_search(filt: Filtration, i: int, j: int, node_cap: int) -> PermutationGroup:
    # Each added edge becomes a path through a uniquely coloured midpoint,
    # so colour-preserving automorphisms are exactly the survivors.
    n = filt.n
    added = filt.added_edges(i, j)
    adj = [set(a) for a in filt.graphs[i].adjacency] + [set() for _ in added]
    colors = [0] * n + list(range(1, len(added) + 1))
    for k, (u, v) in enumerate(added):
        mid = n + k
        adj[mid] = {u, v}
        adj[u].add(mid)
        adj[v].add(mid)
    return colored_automorphism_group(adj, colors, n, node_cap)


def _survivors_by_enumeration(filt: Filtration, i: int, j: int, elems) -> PermutationGroup:
    grp = PermutationGroup.trivial(filt.n)
    for eta in elems:
        if survives(eta, i, j, filt) and eta not in grp:
            grp = PermutationGroup.from_generators(filt.n, list(grp.generators) + [eta])
    return grp


def persistent_image(filt: Filtration, i: int, j: int, cap: int = DEFAULT_ENUM_CAP,
                     node_cap: int = DEFAULT_NODE_CAP) -> SurvivorGroup:
    filt._check_pair(i, j)
    if i == j:
        return SurvivorGroup(j, i, automorphism_group(filt.graphs[j], node_cap))
    try:
        grp = _survivor_search(filt, i, j, node_cap)
    except ResourceLimitError:
        full = automorphism_group(filt.graphs[j], node_cap)
        elems = full.enumerate(cap)
        if isinstance(elems, CapExceeded):
            raise ResourceLimitError(
                f"survivors of step {j} in step {i}: search exceeded node cap {node_cap} "
                f"and |Aut(G_{j})| = {elems.order} exceeds enumeration cap {cap}",
                cap=cap, where=(i, j)) from None
        grp = _survivors_by_enumeration(filt, i, j, elems)
    return SurvivorGroup(j, i, grp)


@dataclass(frozen=True)
class RankTable:
    """``r(i, j)`` = number of automorphisms of ``G_j`` surviving to ``G_i``, for i <= j."""

    size: int
    values: dict = field(hash=False)
    thresholds: tuple[float, ...] = ()

    def __call__(self, i: int, j: int) -> int:
        if i < 0:
            return 0
        if not 0 <= i <= j < self.size:
            raise InputError(f"rank index ({i}, {j}) out of range")
        return self.values[(i, j)]

    @property
    def T(self) -> int:
        return self.size - 1

    def pairs(self) -> Iterator[tuple[int, int]]:
        for i in range(self.size):
            for j in range(i, self.size):
                yield i, j


def rank_table(filt: Filtration, cap: int = DEFAULT_ENUM_CAP,
               node_cap: int = DEFAULT_NODE_CAP) -> RankTable:
    values = {}
    for i in range(len(filt)):
        for j in range(i, len(filt)):
            try:
                values[(i, j)] = persistent_image(filt, i, j, cap, node_cap).order
            except ResourceLimitError as exc:
                exc.where = (i, j)
                raise
    return RankTable(len(filt), values, filt.thresholds)


@dataclass(frozen=True, order=True)
class PInterval:
    """Bar alive on steps ``birth .. death - 1``; ``death is None`` means +infinity."""

    birth: int
    death: int | None
    multiplicity: int = 1

    def __post_init__(self):
        if self.birth < 0 or (self.death is not None and not self.birth < self.death):
            raise InputError(f"invalid interval [{self.birth}, {self.death})")
        if self.multiplicity < 1:
            raise InputError("multiplicity must be positive")

    @property
    def infinite(self) -> bool:
        return self.death is None

    def contains(self, k: int) -> bool:
        return self.birth <= k and (self.death is None or k < self.death)

    def spans(self, i: int, j: int) -> bool:
        return self.contains(i) and self.contains(j)


@dataclass(frozen=True)
class Barcode:
    intervals: tuple[PInterval, ...]
    thresholds: tuple[float, ...] = ()

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def total(self) -> int:
        return sum(b.multiplicity for b in self.intervals)

    def count_spanning(self, i: int, j: int) -> int:
        return sum(b.multiplicity for b in self.intervals if b.spans(i, j))

    def as_multiset(self) -> dict[tuple[int, int | None], int]:
        return {(b.birth, b.death): b.multiplicity for b in self.intervals}


def _sort_key(b: PInterval):
    return (b.birth, math.inf if b.death is None else b.death)


def barcode(rt: RankTable) -> Barcode:
    """Interval decomposition by inclusion-exclusion on the rank table.

    With ``r(-1, .) = 0``, the bar [i, j) has multiplicity
    ``r(i, j-1) - r(i, j) - r(i-1, j-1) + r(i-1, j)`` and the bar [i, inf)
    has ``r(i, T) - r(i-1, T)``.
    """
    r, T = rt, rt.T
    bars = []
    for i in range(T + 1):
        for j in range(i + 1, T + 1):
            m = r(i, j - 1) - r(i, j) - r(i - 1, j - 1) + r(i - 1, j)
            if m < 0:
                raise ConsistencyError(f"negative multiplicity {m} for [{i}, {j})")
            if m:
                bars.append(PInterval(i, j, m))
        m = r(i, T) - r(i - 1, T)
        if m < 0:
            raise ConsistencyError(f"negative multiplicity {m} for [{i}, inf)")
        if m:
            bars.append(PInterval(i, None, m))
    bars.sort(key=_sort_key)
    return Barcode(tuple(bars), rt.thresholds)


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def qmodule_description(bc: Barcode) -> str:
    """Direct sum of graded F[x]-modules matching the barcode, one summand per bar."""
    parts = []
    for b in bc:
        shift = str(b.birth).translate(_SUP)
        if b.death is None:
            term = f"Σ{shift}𝔽[x]"
        else:
            term = f"Σ{shift}(𝔽[x]/(x{str(b.death - b.birth).translate(_SUP)}))"
        parts.extend([term] * b.multiplicity)
    return " ⊕ ".join(parts) if parts else "0"
