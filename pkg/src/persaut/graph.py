"""Point clouds, distance matrices, proximity graphs and clique enumeration.

Vertex ``i`` of every graph built here is point ``i`` of the cloud it came
from; nothing in the pipeline relabels vertices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, ResourceLimitError

DEFAULT_TOL = 1e-9
DEFAULT_CLIQUE_CAP = 1_000_000

Edge = tuple[int, int]
Simplex = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Finite set of points in R^3 (coordinates in Angstrom)."""

    points: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] != 3:
            raise InputError(f"expected an (n, 3) coordinate array with n >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise InputError("point cloud contains non-finite coordinates")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != pts.shape[0]:
                raise InputError("labels and points differ in length")
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.points.shape[0]

    def scaled(self, factor: float) -> "PointCloud":
        return PointCloud(self.points * factor, self.labels)

    def __eq__(self, other):
        if not isinstance(other, PointCloud):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.points, other.points)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric matrix of pairwise Euclidean distances with zero diagonal."""

    values: np.ndarray

    def __post_init__(self):
        d = np.array(self.values, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise InputError("distance matrix must be square")
        if not np.array_equal(d, d.T) or np.any(d < 0) or np.any(np.diag(d) != 0):
            raise InputError("distance matrix must be symmetric, non-negative, zero on the diagonal")
        d.setflags(write=False)
        object.__setattr__(self, "values", d)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, ij):
        return self.values[ij]


@dataclass(frozen=True)
class Graph:
    """Finite simple graph on vertices ``0..n-1`` in canonical form.

    ``edges`` is strictly increasing and every pair has ``u < v``, so two
    graphs are equal exactly when their fields are equal. Use
    :meth:`from_edges` to build one from an arbitrary edge iterable.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    _adj: tuple[frozenset, ...] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        prev = None
        for u, v in edges:
            if not 0 <= u < v < self.n:
                raise InputError(f"edge {(u, v)} is not a canonical pair on {self.n} vertices")
            if prev is not None and (u, v) <= prev:
                raise InputError("edge list must be strictly increasing")
            prev = (u, v)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        canon = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InputError(f"loop at vertex {u}")
            canon.add((u, v) if u < v else (v, u))
        return cls(n, tuple(sorted(canon)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @property
    def adjacency(self) -> tuple[frozenset, ...]:
        if self._adj is None:
            nbrs = [set() for _ in range(self.n)]
            for u, v in self.edges:
                nbrs[u].add(v)
                nbrs[v].add(u)
            object.__setattr__(self, "_adj", tuple(frozenset(s) for s in nbrs))
        return self._adj

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set if u < v else (v, u) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def complement(self) -> "Graph":
        es = self.edge_set
        return Graph(self.n, tuple(e for e in combinations(range(self.n), 2) if e not in es))

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and self.edge_set <= other.edge_set

    def components(self) -> list[list[int]]:
        """Path-components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        adj = self.adjacency
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
                        comp.append(w)
            comps.append(sorted(comp))
        return comps

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph on ``vertices``, relabelled ``0..k-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(vertices), es)

    def to_edgelist(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def pairwise_distances(cloud: PointCloud) -> DistanceMatrix:
    pts = cloud.points
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    # exact symmetry: both triangles from the same arithmetic.
    iu = np.triu_indices(len(pts), 1)
    d[(iu[1], iu[0])] = d[iu]
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


def merge_close(values: Iterable[float], tol: float = DEFAULT_TOL) -> list[float]:
    """Sort and merge runs whose consecutive gaps are <= tol.

    Each run is represented by its largest member so that thresholding at the
    representative with ``<=`` admits every member of the run.
    """
    out: list[float] = []
    for x in sorted(values):
        if out and x - out[-1] <= tol:
            out[-1] = x
        else:
            out.append(x)
    return out


def critical_distances(d: DistanceMatrix, tol: float = DEFAULT_TOL) -> list[float]:
    iu = np.triu_indices(d.n, 1)
    vals = d.values[iu]
    return merge_close((float(x) for x in vals[vals > 0]), tol)


def proximity_graph(d: DistanceMatrix, eps: float) -> Graph:
    """Graph joining every pair at distance <= eps."""
    if eps < 0 or math.isnan(eps):
        raise InputError("eps must be non-negative")
    iu, ju = np.triu_indices(d.n, 1)
    vals = d.values[iu, ju]
    if np.any(vals == 0):
        warnings.warn("duplicate points present; they are adjacent at every scale", stacklevel=2)
    mask = vals <= eps
    return Graph(d.n, tuple(zip(iu[mask].tolist(), ju[mask].tolist())))


def threshold_subgraph(g: Graph, weights: Sequence[float], a: float) -> Graph:
    """Edges of ``g`` whose weight (aligned with ``g.edges``) is <= a."""
    if len(weights) != g.m:
        raise InputError("need exactly one weight per edge")
    if not all(math.isfinite(w) for w in weights):
        raise InputError("edge weights must be finite")
    return Graph(g.n, tuple(e for e, w in zip(g.edges, weights) if w <= a))


def cliques(g: Graph, max_dim: int, cap: int = DEFAULT_CLIQUE_CAP) -> list[Simplex]:
    """All cliques with at most ``max_dim + 1`` vertices, sorted.

    Exponential in general; intended for validation on small graphs.
    """
    adj = g.adjacency
    out: list[Simplex] = []

    def expand(clique: list[int], cand: list[int]):
        out.append(tuple(clique))
        if len(out) > cap:
            raise ResourceLimitError(f"clique enumeration exceeded cap {cap}", cap=cap)
        if len(clique) > max_dim:
            return
        for k, v in enumerate(cand):
            expand(clique + [v], [w for w in cand[k + 1:] if w in adj[v]])

    if max_dim >= 0:
        for v in range(g.n):
            expand([v], [w for w in range(v + 1, g.n) if w in adj[v]])
    out.sort(key=lambda s: (len(s), s))
    return out
