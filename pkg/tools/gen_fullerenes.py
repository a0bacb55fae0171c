"""Generate the bundled fullerene reference geometries.

For each atom count the script enumerates face spirals (pentagon positions in
a sequence of n/2 + 2 faces), winds them up into dual triangulations, and keeps
the isomer with the fewest pentagon-pentagon adjacencies; ties go to the
isomer with the largest automorphism group, then to the earliest spiral.
Coordinates come from an adjacency-eigenvector embedding relaxed under a
bond-stretch plus angle-bend force field with two reference bond lengths.

    python tools/gen_fullerenes.py [n ...]

Writes ``<name>.xyz`` files, ``manifest.tsv`` and ``PROVENANCE`` into
``src/persaut/data/fullerenes``.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from itertools import combinations
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

from persaut.autgroup import automorphism_group
from persaut.graph import Graph

OUT = Path(__file__).resolve().parents[1] / "src" / "persaut" / "data" / "fullerenes"

BOND_56 = 1.458   # bonds on a pentagon
BOND_66 = 1.401   # bonds shared by two hexagons
K_BOND = 1.0
K_ANGLE = 0.25
DECIMALS = 4


class _Fail(Exception):
    pass


def windup(sizes):
    """Dual adjacency of the face spiral ``sizes`` or None if it does not close."""
    f = len(sizes)
    rem = list(sizes)
    adj = [set() for _ in range(f)]

    def link(a, b):
        if b in adj[a]:
            raise _Fail
        adj[a].add(b)
        adj[b].add(a)
        rem[a] -= 1
        rem[b] -= 1
        if rem[a] < 0 or rem[b] < 0:
            raise _Fail

    try:
        link(0, 1)
        ring = [0, 1]
        for k in range(2, f):
            link(k, ring[-1])
            if ring[0] not in adj[k]:
                link(k, ring[0])
            while len(ring) > 1 and rem[ring[0]] == 0:
                ring.pop(0)
                if ring[0] not in adj[k]:
                    link(k, ring[0])
            while len(ring) > 1 and rem[ring[-1]] == 0:
                ring.pop()
                if ring[-1] not in adj[k]:
                    link(k, ring[-1])
            ring = [x for x in ring if rem[x] > 0]
            if rem[k] > 0:
                ring.append(k)
            elif k < f - 1:
                raise _Fail
    except _Fail:
        return None
    if any(rem):
        return None
    return adj


def pentagon_adjacency(adj, sizes) -> int:
    return sum(1 for a in range(len(adj)) for b in adj[a]
               if a < b and sizes[a] == 5 and sizes[b] == 5)


def primal(adj):
    """Cubic graph whose vertices are the dual triangles; None if not a sphere."""
    f = len(adj)
    tris = sorted(t for t in combinations(range(f), 3)
                  if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]])
    if len(tris) != 2 * f - 4:
        return None
    index = {t: k for k, t in enumerate(tris)}
    by_edge = {}
    for t in tris:
        for e in combinations(t, 2):
            by_edge.setdefault(e, []).append(index[t])
    if any(len(v) != 2 for v in by_edge.values()):
        return None
    edges = []
    kinds = []
    for (a, b), (u, v) in sorted(by_edge.items()):
        edges.append((min(u, v), max(u, v)))
        kinds.append((len(adj[a]), len(adj[b])))
    g = Graph.from_edges(len(tris), edges)
    if any(g.degree(v) != 3 for v in range(g.n)) or len(g.components()) != 1:
        return None
    faces = [[index[t] for t in tris if a in t] for a in range(f)]
    kind = {e: k for e, k in zip(edges, kinds)}
    return g, faces, kind


def search_spirals(n: int):
    """Face spirals of minimal pentagon adjacency for C_n, in lexicographic order.

    Only spirals that start on a pentagon are searched; this keeps the search
    small and still reaches every isomer used here. Branch and bound on the
    adjacency count: each pass starts from a ceiling (0, 1, 3, 7, ...) that
    tightens whenever a better complete spiral turns up, and the first pass
    that finds anything has seen every spiral at the minimum.
    """
    f = n // 2 + 2
    ceiling = 0
    while True:
        best = [ceiling]
        found = []

        def rec(sizes, start, placed):
            if placed == 12:
                full = sizes + [6] * (f - len(sizes))
                adj = windup(full)
                if adj is None:
                    return
                count = pentagon_adjacency(adj, full)
                if count < best[0]:
                    best[0] = count
                    found.clear()
                if count <= best[0]:
                    found.append(tuple(full))
                return
            for pos in range(start, f - (11 - placed)):
                trial = sizes + [6] * (pos - len(sizes)) + [5]
                if _prefix_ok(trial, f, best[0]):
                    rec(trial, pos + 1, placed + 1)

        rec([5], 1, 1)
        if found:
            return best[0], found
        ceiling = 2 * ceiling + 1


def _prefix_ok(prefix, f, bound) -> bool:
    """Wind up the prefix padded with hexagons; reject impossible or worse prefixes.

    Padding with hexagons is always the most permissive completion for the
    adjacency count, so a prefix whose pentagon-pentagon count already exceeds
    the bound can be pruned.
    """
    rem = list(prefix)
    adj = [set() for _ in prefix]
    count = 0

    def link(a, b):
        nonlocal count
        if b in adj[a]:
            raise _Fail
        adj[a].add(b)
        adj[b].add(a)
        rem[a] -= 1
        rem[b] -= 1
        if rem[a] < 0 or rem[b] < 0:
            raise _Fail
        if prefix[a] == 5 and prefix[b] == 5:
            count += 1

    try:
        if len(prefix) >= 2:
            link(0, 1)
        ring = [0, 1][:len(prefix)]
        for k in range(2, len(prefix)):
            link(k, ring[-1])
            if ring[0] not in adj[k]:
                link(k, ring[0])
            while len(ring) > 1 and rem[ring[0]] == 0:
                ring.pop(0)
                if ring[0] not in adj[k]:
                    link(k, ring[0])
            while len(ring) > 1 and rem[ring[-1]] == 0:
                ring.pop()
                if ring[-1] not in adj[k]:
                    link(k, ring[-1])
            ring = [x for x in ring if rem[x] > 0]
            if rem[k] > 0:
                ring.append(k)
            elif k < f - 1:
                raise _Fail
    except _Fail:
        return False
    return count <= bound


def choose_isomer(n: int):
    np_min, spirals = search_spirals(n)
    best = None
    for sp in spirals:
        res = primal(windup(sp))
        if res is None:
            continue
        g, faces, kind = res
        order = automorphism_group(g).order
        if best is None or order > best[1]:
            best = (sp, order, g, faces, kind)
    sp, order, g, faces, kind = best
    return np_min, sp, order, g, faces, kind


def embed(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    w, vec = np.linalg.eigh(a)
    # eigenvectors 2..4 from the top give a sphere-like drawing
    x = vec[:, -4:-1]
    x = x / np.linalg.norm(x, axis=1).mean()
    radius = np.sqrt(g.n * 0.62) / 2.0
    return x * radius


def relax(g: Graph, faces, kind, x0: np.ndarray) -> np.ndarray:
    edges = np.array(g.edges)
    r0 = np.array([BOND_66 if kind[e] == (6, 6) else BOND_56 for e in g.edges])
    triples = []
    theta0 = []
    for fc in faces:
        ring = _face_cycle(g, fc)
        ang = np.deg2rad(108.0 if len(fc) == 5 else 120.0)
        for k in range(len(ring)):
            triples.append((ring[k - 1], ring[k], ring[(k + 1) % len(ring)]))
            theta0.append(ang)
    triples = np.array(triples)
    theta0 = np.array(theta0)

    def energy(flat):
        x = flat.reshape(-1, 3)
        d = x[edges[:, 0]] - x[edges[:, 1]]
        r = np.linalg.norm(d, axis=1)
        e = K_BOND * np.sum((r - r0) ** 2)
        grad = np.zeros_like(x)
        gb = (2 * K_BOND * (r - r0) / r)[:, None] * d
        np.add.at(grad, edges[:, 0], gb)
        np.add.at(grad, edges[:, 1], -gb)
        a = x[triples[:, 0]] - x[triples[:, 1]]
        b = x[triples[:, 2]] - x[triples[:, 1]]
        la = np.linalg.norm(a, axis=1)
        lb = np.linalg.norm(b, axis=1)
        c = np.clip(np.sum(a * b, axis=1) / (la * lb), -1 + 1e-12, 1 - 1e-12)
        th = np.arccos(c)
        e += K_ANGLE * np.sum((th - theta0) ** 2)
        dth = -1.0 / np.sqrt(1 - c * c)
        coef = (2 * K_ANGLE * (th - theta0) * dth)[:, None]
        ga = coef * (b / (la * lb)[:, None] - (c / la ** 2)[:, None] * a)
        gc = coef * (a / (la * lb)[:, None] - (c / lb ** 2)[:, None] * b)
        np.add.at(grad, triples[:, 0], ga)
        np.add.at(grad, triples[:, 2], gc)
        np.add.at(grad, triples[:, 1], -ga - gc)
        return e, grad.ravel()

    res = minimize(energy, x0.ravel(), jac=True, method="L-BFGS-B",
                   options={"maxiter": 20000, "gtol": 1e-12, "ftol": 1e-16})
    return res.x.reshape(-1, 3)


def _face_cycle(g: Graph, face):
    fs = set(face)
    ring = [face[0]]
    prev = None
    while len(ring) < len(face):
        cur = ring[-1]
        nxt = min(w for w in g.adjacency[cur] if w in fs and w != prev and w not in ring)
        prev = cur
        ring.append(nxt)
    return ring


def canonical_frame(x: np.ndarray) -> np.ndarray:
    x = x - x.mean(axis=0)
    w, vec = np.linalg.eigh(x.T @ x)
    y = x @ vec
    # fix axis signs by the third moment, falling back to the first point
    for k in range(3):
        s = np.sum(y[:, k] ** 3)
        if abs(s) < 1e-6:
            s = y[np.argmax(np.abs(y[:, k])), k]
        if s < 0:
            y[:, k] = -y[:, k]
    return y


def write_xyz(path: Path, name: str, x: np.ndarray, comment: str):
    lines = [str(len(x)), f"{name} {comment}"]
    for p in x:
        lines.append("C " + " ".join(f"{c:.{DECIMALS}f}" for c in p))
    path.write_text("\n".join(lines) + "\n")


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("sizes", nargs="*", type=int)
    args = ap.parse_args(argv)
    from persaut.stability import FULLERENE_ENERGIES

    energies = {m.n: m.energy for m in FULLERENE_ENERGIES}
    counts = args.sizes or sorted(energies)
    OUT.mkdir(parents=True, exist_ok=True)
    prov = []
    rows = []
    for n in counts:
        np_min, sp, order, g, faces, kind = choose_isomer(n)
        x = canonical_frame(relax(g, faces, kind, embed(g)))
        x = np.round(x, DECIMALS) + 0.0
        pent = [k + 1 for k, s in enumerate(sp) if s == 5]
        name = f"C{n}"
        spiral = " ".join(map(str, pent))
        path = OUT / f"{name}.xyz"
        write_xyz(path, name, x, f"spiral {spiral} |Aut| {order}")
        digest = hashlib.sha256(path.read_bytes()).hexdigest()[:16]
        prov.append(f"{name}\tpentagon-adjacency {np_min}\tspiral {spiral}\tautomorphisms {order}\tsha256 {digest}")
        e = energies.get(n)
        rows.append(f"{name}\t{name}.xyz\t{'-' if e is None else f'{e:.3f}'}")
        print(prov[-1], file=sys.stderr, flush=True)
    (OUT / "manifest.tsv").write_text("# name\tgeometry\theat of formation (eV/atom)\n" + "\n".join(rows) + "\n")
    (OUT / "PROVENANCE").write_text(_provenance_header() + "\n".join(prov) + "\n")


def _provenance_header() -> str:
    return (
        "Generated by tools/gen_fullerenes.py.\n"
        "Isomer: fewest pentagon-pentagon adjacencies, then largest automorphism group,\n"
        "then earliest face spiral (pentagon positions, 1-based, listed below).\n"
        f"Geometry: adjacency-eigenvector embedding relaxed by bond stretch (r0 = {BOND_66} A for\n"
        f"hexagon-hexagon bonds, {BOND_56} A otherwise) and angle bend (108 / 120 degrees);\n"
        f"coordinates rounded to {DECIMALS} decimals, principal-axis frame.\n\n"
    )


if __name__ == "__main__":
    main()
