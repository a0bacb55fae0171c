"""Individualization-refinement search for automorphisms of vertex-coloured graphs.

Ordered partitions are stored nauty-style: ``lab`` lists the vertices,
cells are contiguous slices of ``lab`` identified by their start position,
``cellof[v]`` is the start of the cell holding ``v`` and ``clen[s]`` the
length of the cell starting at ``s``. Refinement is the usual equitable
(neighbour-count) refinement driven by a splitter queue; every split is
recorded in a trace so that nodes which cannot be images of each other are
pruned before their subtrees are expanded.

The search walks the leftmost path (target cell = first smallest
non-singleton cell, branch vertex = smallest label in it) and then, level
by level from the bottom, finds for every vertex of the target cell either
an automorphism carrying the base point to it or a proof that none exists.
Orbits of automorphisms already found prune both levels of the search.
The orbit sizes at the base points multiply to the exact group order, and
the automorphisms found form a strong generating set relative to the base.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import ResourceLimitError

DEFAULT_NODE_CAP = 200_000


class _Node:
    __slots__ = ("lab", "cellof", "clen", "trace", "fixed")

    def __init__(self, lab, cellof, clen, trace, fixed):
        self.lab = lab
        self.cellof = cellof
        self.clen = clen
        self.trace = trace
        self.fixed = fixed


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


class AutomorphismSearch:
    """Search state for one coloured graph.

    ``adj`` is a list of neighbour collections, ``colors`` an integer colour
    per vertex; automorphisms must preserve both adjacency and colour.
    """

    def __init__(self, adj: Sequence[Sequence[int]], colors: Sequence[int] | None = None,
                 node_cap: int = DEFAULT_NODE_CAP):
        n = len(adj)
        self.n = n
        self.colors = list(colors) if colors is not None else [0] * n
        adj_sets = [frozenset(a) for a in adj]
        m2 = sum(len(a) for a in adj_sets)
        # Aut(G) = Aut(complement); refine on the sparser of the two.
        if m2 > n * (n - 1) // 2:
            everything = frozenset(range(n))
            adj_sets = [everything - a - {v} for v, a in enumerate(adj_sets)]
        self.adj_sets = adj_sets
        self.adj = [sorted(a) for a in adj_sets]
        self.node_cap = node_cap
        self.nodes = 0
        self.generators: list[tuple[int, ...]] = []

    # -- partition refinement ------------------------------------------------

    def _refine(self, lab, cellof, clen, queue, trace):
        adj = self.adj
        inq = set(queue)
        qi = 0
        while qi < len(queue):
            s = queue[qi]
            qi += 1
            inq.discard(s)
            cnt: dict[int, int] = {}
            for w in lab[s:s + clen[s]]:
                for u in adj[w]:
                    cnt[u] = cnt.get(u, 0) + 1
            touched = sorted({cellof[u] for u in cnt})
            for c in touched:
                cl = clen[c]
                if cl == 1:
                    trace.append((s, c, cnt[lab[c]]))
                    continue
                groups: dict[int, list[int]] = {}
                for v in lab[c:c + cl]:
                    groups.setdefault(cnt.get(v, 0), []).append(v)
                if len(groups) == 1:
                    trace.append((s, c, next(iter(groups))))
                    continue
                frags = []
                pos = c
                for k in sorted(groups):
                    g = groups[k]
                    lab[pos:pos + len(g)] = g
                    frags.append((pos, len(g), k))
                    for v in g:
                        cellof[v] = pos
                    clen[pos] = len(g)
                    pos += len(g)
                trace.append((s, c, tuple((k, ln) for _, ln, k in frags)))
                if c in inq:
                    for p, _, _ in frags[1:]:
                        queue.append(p)
                        inq.add(p)
                else:
                    big = max(range(len(frags)), key=lambda t: (frags[t][1], -t))
                    for t, (p, _, _) in enumerate(frags):
                        if t != big:
                            queue.append(p)
                            inq.add(p)

    def _root(self) -> _Node:
        n = self.n
        order = sorted(range(n), key=lambda v: (self.colors[v], v))
        lab = order
        cellof = [0] * n
        clen = [0] * n
        queue = []
        start = 0
        trace = []
        while start < n:
            end = start
            col = self.colors[lab[start]]
            while end < n and self.colors[lab[end]] == col:
                cellof[lab[end]] = start
                end += 1
            clen[start] = end - start
            queue.append(start)
            trace.append(("color", start, col))
            start = end
        self._refine(lab, cellof, clen, queue, trace)
        return _Node(lab, cellof, clen, trace, ())

    def _individualize(self, node: _Node, v: int) -> _Node:
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise ResourceLimitError(f"automorphism search exceeded node cap {self.node_cap}",
                                     cap=self.node_cap)
        lab = list(node.lab)
        cellof = list(node.cellof)
        clen = list(node.clen)
        c = cellof[v]
        cl = clen[c]
        rest = [x for x in lab[c:c + cl] if x != v]
        lab[c] = v
        lab[c + 1:c + cl] = rest
        clen[c] = 1
        clen[c + 1] = cl - 1
        for x in rest:
            cellof[x] = c + 1
        trace = [("ind", c)]
        self._refine(lab, cellof, clen, [c], trace)
        return _Node(lab, cellof, clen, trace, node.fixed + (v,))

    def _target(self, node: _Node):
        """(start, length) of the first smallest non-singleton cell, or None."""
        best = None
        p = 0
        clen = node.clen
        while p < self.n:
            ln = clen[p]
            if ln > 1 and (best is None or ln < best[1]):
                best = (p, ln)
            p += ln
        return best

    # -- automorphisms ----------------------------------------------------------

    def _is_automorphism(self, perm) -> bool:
        colors = self.colors
        adj_sets = self.adj_sets
        for v in range(self.n):
            w = perm[v]
            if colors[v] != colors[w]:
                return False
        for u in range(self.n):
            au = adj_sets[perm[u]]
            for v in self.adj[u]:
                if v > u and perm[v] not in au:
                    return False
        return True

    def _leaf_perm(self, leaf: _Node):
        perm = [0] * self.n
        for a, b in zip(self.first_leaf, leaf.lab):
            perm[a] = b
        return tuple(perm)

    def _orbits(self, fixed) -> _UnionFind:
        uf = _UnionFind(self.n)
        for g in self.generators:
            if all(g[x] == x for x in fixed):
                for v, w in enumerate(g):
                    if v != w:
                        uf.union(v, w)
        return uf

    def _seed_twins(self):
        """Transpositions of twin vertices are automorphisms; found without search."""
        for closed in (False, True):
            classes: dict = {}
            for v in range(self.n):
                key = self.adj_sets[v] | {v} if closed else self.adj_sets[v]
                classes.setdefault((self.colors[v], key), []).append(v)
            for members in classes.values():
                for a, b in zip(members, members[1:]):
                    perm = list(range(self.n))
                    perm[a], perm[b] = b, a
                    perm = tuple(perm)
                    if perm not in self._genset and self._is_automorphism(perm):
                        self._genset.add(perm)
                        self.generators.append(perm)

    def _explore(self, node: _Node, depth: int):
        """Look below ``node`` for a leaf equivalent to the first leaf."""
        target = self.first_targets[depth]
        if target is None:
            perm = self._leaf_perm(node)
            return perm if self._is_automorphism(perm) else None
        c, ln = target
        if node.cellof[node.lab[c]] != c or node.clen[c] != ln:
            return None
        uf = self._orbits(node.fixed)
        failed = set()
        for x in sorted(node.lab[c:c + ln]):
            if uf.find(x) in failed:
                continue
            child = self._individualize(node, x)
            if child.trace == self.first_traces[depth + 1]:
                found = self._explore(child, depth + 1)
                if found is not None:
                    return found
            failed.add(uf.find(x))
        return None

    def run(self):
        """Returns (base, orbit_sizes, generators as image tuples)."""
        self._genset = set()
        root = self._root()
        path = [root]
        self.first_traces = [root.trace]
        self.first_targets = []
        base = []
        node = root
        while True:
            t = self._target(node)
            self.first_targets.append(t)
            if t is None:
                break
            c, ln = t
            b = min(node.lab[c:c + ln])
            base.append(b)
            node = self._individualize(node, b)
            path.append(node)
            self.first_traces.append(node.trace)
        self.first_leaf = node.lab
        self._seed_twins()

        orbit_sizes = [0] * len(base)
        for level in range(len(base) - 1, -1, -1):
            parent = path[level]
            b = base[level]
            c, ln = self.first_targets[level]
            fixed = tuple(base[:level])
            uf = self._orbits(fixed)
            failed = set()
            for w in sorted(parent.lab[c:c + ln]):
                rw = uf.find(w)
                if rw == uf.find(b) or rw in failed:
                    continue
                child = self._individualize(parent, w)
                found = None
                if child.trace == self.first_traces[level + 1]:
                    found = self._explore(child, level + 1)
                if found is None:
                    failed.add(rw)
                    continue
                if found not in self._genset:
                    self._genset.add(found)
                    self.generators.append(found)
                for v, x in enumerate(found):
                    uf.union(v, x)
                # failed classes may have merged with each other, never with b's
                failed = {uf.find(f) for f in failed}
            rb = uf.find(b)
            orbit_sizes[level] = sum(1 for w in parent.lab[c:c + ln] if uf.find(w) == rb)
        return base, orbit_sizes, self.generators


def search_automorphisms(adj, colors=None, node_cap: int = DEFAULT_NODE_CAP):
    return AutomorphismSearch(adj, colors, node_cap).run()


def complete_adjacency(n: int):
    adj = [[] for _ in range(n)]
    for u, v in combinations(range(n), 2):
        adj[u].append(v)
        adj[v].append(u)
    return adj
