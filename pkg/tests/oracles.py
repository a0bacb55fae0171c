"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here calls into the package's algorithms; inputs and outputs are
plain tuples so the two routes stay independent.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations


def edge_key(u, v):
    return (u, v) if u < v else (v, u)


def brute_automorphisms(n, edges):
    """Every vertex permutation (as an image tuple) mapping the edge set onto itself."""
    es = {edge_key(u, v) for u, v in edges}
    out = []
    for p in permutations(range(n)):
        if all(edge_key(p[u], p[v]) in es for u, v in es):
            out.append(p)
    return out


def perm_order(p):
    seen, lengths = set(), []
    for s in range(len(p)):
        if s in seen:
            continue
        k, v = 0, s
        while v not in seen:
            seen.add(v)
            v = p[v]
            k += 1
        lengths.append(k)
    return math.lcm(*lengths)


def brute_symmetry_degree(n, edges):
    """Sum of element orders over each non-singleton component's automorphism group."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, total = set(), 0
    for s in range(n):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        if len(comp) == 1:
            continue
        idx = {v: k for k, v in enumerate(sorted(comp))}
        sub = [(idx[u], idx[v]) for u, v in edges if u in comp]
        total += sum(perm_order(p) for p in brute_automorphisms(len(comp), sub))
    return total


def rips_simplices(points, eps, max_size):
    """Subsets of points with every pairwise distance <= eps, straight from the definition."""
    n = len(points)
    out = []
    for k in range(1, max_size + 1):
        for s in combinations(range(n), k):
            if all(math.dist(points[a], points[b]) <= eps for a, b in combinations(s, 2)):
                out.append(s)
    return sorted(out, key=lambda s: (len(s), s))


def brute_cliques(n, edges):
    es = {edge_key(u, v) for u, v in edges}
    out = []
    for k in range(1, n + 1):
        for s in combinations(range(n), k):
            if all(edge_key(a, b) in es for a, b in combinations(s, 2)):
                out.append(s)
    return out


def clique_preserving_permutations(n, cliques):
    cs = set(cliques)
    return [p for p in permutations(range(n)) if all(tuple(sorted(p[v] for v in c)) in cs for c in cs)]


def literal_survives(p, n, edges_small, edges_big):
    """The restriction condition read literally: p preserves every edge set between the two."""
    small = {edge_key(u, v) for u, v in edges_small}
    big = {edge_key(u, v) for u, v in edges_big}
    added = sorted(big - small)
    for r in range(len(added) + 1):
        for extra in combinations(added, r):
            es = small | set(extra)
            if {edge_key(p[u], p[v]) for u, v in es} != es:
                return False
    return True


def brute_cycles(n, edges):
    """Simple cycles as frozensets of edges: connected 2-regular edge subsets."""
    es = sorted({edge_key(u, v) for u, v in edges})
    out = []
    for k in range(3, len(es) + 1):
        for sub in combinations(es, k):
            deg = {}
            for u, v in sub:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            start = sub[0][0]
            nbr = {}
            for u, v in sub:
                nbr.setdefault(u, []).append(v)
                nbr.setdefault(v, []).append(u)
            seen, stack = {start}, [start]
            while stack:
                for w in nbr[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == len(deg):
                out.append(frozenset(sub))
    return out


def rank_fraction(rows):
    """Rank of a matrix over the rationals by Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    rank, cols = 0, len(m[0])
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def restriction_matrix(n, edges_small, edges_big):
    """0/1 matrix of the linear map from F Aut(big) to F Aut(small): survivors go to themselves."""
    rows = brute_automorphisms(n, edges_small)
    cols = brute_automorphisms(n, edges_big)
    index = {p: k for k, p in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, p in enumerate(cols):
        if literal_survives(p, n, edges_small, edges_big):
            mat[index[p]][j] = 1
    return mat


def rational_rank_table(n, edge_sets):
    """r(i, j) as the rank of the composite of consecutive restriction matrices."""
    steps = [restriction_matrix(n, edge_sets[k], edge_sets[k + 1]) for k in range(len(edge_sets) - 1)]
    table = {}
    for i in range(len(edge_sets)):
        table[(i, i)] = len(brute_automorphisms(n, edge_sets[i]))
        acc = None
        for j in range(i + 1, len(edge_sets)):
            acc = steps[j - 1] if acc is None else matmul(acc, steps[j - 1])
            table[(i, j)] = rank_fraction(acc)
    return table


def barcode_from_ranks(table, size):
    """Greedy peeling of bars: independent of the inclusion-exclusion formula.

    Starting from the multiplicity function r(i, j) (bars spanning [i, j]),
    repeatedly take the earliest birth with spare rank and extend each bar as
    far as the rank function allows.
    """
    rem = dict(table)
    bars = {}
    for i in range(size):
        while rem[(i, i)] > 0:
            j = i
            while j + 1 < size and rem[(i, j + 1)] > 0:
                j += 1
            death = None if j == size - 1 else j + 1
            bars[(i, death)] = bars.get((i, death), 0) + 1
            for a in range(i, j + 1):
                for b in range(a, j + 1):
                    rem[(a, b)] -= 1
    return bars
