"""Permutations and permutation groups stored as stabilizer chains."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, InputError


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``0..n-1``; ``images[v]`` is the image of ``v``.

    Products compose right to left, as functions: ``(p * q)(v) == p(q(v))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for v in cyc:
                if v in seen or not 0 <= v < n:
                    raise InputError(f"bad cycle {tuple(cyc)} for degree {n}")
                seen.add(v)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """Parse cycle notation such as ``(0 2)(1 3)``; ``()`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+[\s,]*)*\))+", text):
            raise InputError(f"cannot parse permutation {text!r}")
        cycles = [[int(x) for x in re.split(r"[\s,]+", body.strip())]
                  for body in re.findall(r"\(([^)]*)\)", text) if body.strip()]
        return cls.from_cycles(n, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise InputError("degree mismatch")
        mine = self.images
        return Permutation._raw(tuple(mine[x] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for v, w in enumerate(self.images):
            inv[w] = v
        return Permutation._raw(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** -k
        result, base = Permutation.identity(self.degree), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for s in range(self.degree):
            if seen[s]:
                continue
            cyc = [s]
            seen[s] = True
            v = self.images[s]
            while v != s:
                seen[v] = True
                cyc.append(v)
                v = self.images[v]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()), 1)

    def support(self) -> list[int]:
        return [v for v, w in enumerate(self.images) if v != w]

    def cycle_notation(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def __str__(self) -> str:
        return self.cycle_notation()

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        # trusted constructor for products of valid permutations
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p


def element_order(p: Permutation) -> int:
    """Least k >= 1 with p**k the identity (lcm of the cycle lengths)."""
    return p.order()


class _Level:
    """Orbit of one base point, stored as a Schreier vector.

    Coset representatives are materialised lazily: building them all up front
    costs O(n^3) for symmetric groups of large degree, while the order only
    needs the orbit size.
    """

    __slots__ = ("point", "gens", "parent", "_reps", "degree")

    def __init__(self, degree: int, point: int, gens: Sequence[Permutation]):
        self.degree = degree
        self.point = point
        self.gens = list(gens)
        self.parent = {point: None}
        queue = [point]
        for x in queue:
            for k, g in enumerate(self.gens):
                y = g.images[x]
                if y not in self.parent:
                    self.parent[y] = (k, x)
                    queue.append(y)
        self._reps = {point: Permutation.identity(degree)}

    def __len__(self) -> int:
        return len(self.parent)

    def __contains__(self, y: int) -> bool:
        return y in self.parent

    def rep(self, y: int) -> Permutation:
        """An element of the level's group mapping the base point to ``y``."""
        target = y
        chain = []
        while y not in self._reps:
            k, x = self.parent[y]
            chain.append((y, k, x))
            y = x
        for z, k, x in reversed(chain):
            self._reps[z] = self.gens[k] * self._reps[x]
        return self._reps[target]


class PermutationGroup:
    """Group given by a base and strong generating set.

    ``levels[k]`` is the orbit of the k-th base point under the generators
    fixing the earlier base points. The group order is the product of the
    orbit sizes.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], base: Sequence[int]):
        self.degree = degree
        self.generators = tuple(generators)
        for g in self.generators:
            if g.degree != degree:
                raise InputError("generator degree mismatch")
        self.base = tuple(base)
        self.levels: list[_Level] = []
        for k, b in enumerate(self.base):
            gens = [g for g in self.generators if all(g.images[x] == x for x in self.base[:k])]
            self.levels.append(_Level(degree, b, gens))

    @classmethod
    def from_generators(cls, degree: int, generators: Sequence[Permutation]) -> "PermutationGroup":
        """Run deterministic Schreier-Sims on an arbitrary generating set."""
        base, strong = _schreier_sims(degree, [g for g in generators if not g.is_identity()])
        return cls(degree, strong, base)

    @classmethod
    def trivial(cls, degree: int) -> "PermutationGroup":
        return cls(degree, (), ())

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(t) for t in self.levels]

    @property
    def order(self) -> int:
        return math.prod(self.orbit_sizes)

    def log2_order(self) -> float:
        return math.fsum(math.log2(s) for s in self.orbit_sizes)

    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        """Strip ``p`` through the chain; returns (residue, level reached)."""
        h = p
        for k, level in enumerate(self.levels):
            x = h.images[level.point]
            if x not in level:
                return h, k
            h = level.rep(x).inverse() * h
        return h, len(self.levels)

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise InputError(f"degree mismatch: {p.degree} vs {self.degree}")
        h, k = self.sift(p)
        return k == len(self.levels) and h.is_identity()

    def contains(self, p: Permutation) -> bool:
        return p in self

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once, in a fixed order determined by the chain."""

        # element = u_0 * u_1 * ... * u_{r-1}, one representative per level
        def build(k: int, suffix: Permutation):
            if k < 0:
                yield suffix
                return
            level = self.levels[k]
            for x in sorted(level.parent):
                yield from build(k - 1, level.rep(x) * suffix)

        yield from build(len(self.levels) - 1, Permutation.identity(self.degree))

    def enumerate(self, cap: int) -> list[Permutation] | CapExceeded:
        if cap < 1:
            raise InputError("cap must be >= 1")
        if self.order > cap:
            return CapExceeded(self.order, cap)
        return list(self.elements())

    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, order={self.order}, generators={len(self.generators)})"


def _transversal(degree: int, point: int, gens: Sequence[Permutation]) -> dict[int, Permutation]:
    trans = {point: Permutation.identity(degree)}
    queue = [point]
    for x in queue:
        ux = trans[x]
        for g in gens:
            y = g.images[x]
            if y not in trans:
                trans[y] = g * ux
                queue.append(y)
    return trans


def _schreier_sims(degree: int, gens: list[Permutation]) -> tuple[list[int], list[Permutation]]:
    """Deterministic Schreier-Sims; returns (base, strong generators)."""
    base: list[int] = []
    strong: list[Permutation] = []
    if not gens:
        return base, strong

    def first_moved(p: Permutation) -> int:
        return next(v for v, w in enumerate(p.images) if v != w)

    def level_gens(k):
        return [g for g in strong if all(g.images[x] == x for x in base[:k])]

    def sift(h: Permutation, trans):
        for k, b in enumerate(base):
            x = h.images[b]
            if x not in trans[k]:
                return h, k
            h = trans[k][x].inverse() * h
        return h, len(base)

    for g in gens:
        if g not in strong:
            strong.append(g)
    for g in strong:
        if all(g.images[b] == b for b in base):
            base.append(first_moved(g))

    trans = [_transversal(degree, b, level_gens(k)) for k, b in enumerate(base)]
    k = len(base) - 1
    while k >= 0:
        restart = False
        sk = level_gens(k)
        for x in sorted(trans[k]):
            ux = trans[k][x]
            for s in sk:
                y = s.images[x]
                schreier = trans[k][y].inverse() * s * ux
                if schreier.is_identity():
                    continue
                h, j = sift(schreier, trans)
                if j < len(base) or not h.is_identity():
                    strong.append(h)
                    if j == len(base):
                        base.append(first_moved(h))
                        trans.append(None)
                    for m in range(j + 1):
                        trans[m] = _transversal(degree, base[m], level_gens(m))
                    k = j
                    restart = True
                    break
            if restart:
                break
        if not restart:
            k -= 1
    return base, strong
