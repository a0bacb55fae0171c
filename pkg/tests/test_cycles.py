import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_cycles, edge_key
from persaut.autgroup import automorphism_group
from persaut.cycles import (
    CyclePath, automorphism_invariant, canonical_cycle, cycle_restriction_sign, enumerate_cycles, is_cycle_stable,
)
from persaut.errors import InputError, ResourceLimitError
from persaut.graph import Graph
from persaut.perm import Permutation
from persaut.persist import Filtration, survives
from strategies import graphs, nested_pairs
from zoo import STABLE_CYCLES, HEXAGON, stable_example, unstable_example, reversing_example


def test_cycle_counts():
    assert len(enumerate_cycles(Graph.cycle(4))) == 1
    k4 = enumerate_cycles(Graph.complete(4))
    assert len(k4) == 7
    assert [len(c) for c in k4] == [3, 3, 3, 3, 4, 4, 4]
    assert enumerate_cycles(Graph.path(6)) == []
    assert enumerate_cycles(Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)])) == []


def test_cycle_cap():
    with pytest.raises(ResourceLimitError):
        enumerate_cycles(Graph.complete(7), cap=10)


def test_canonical_form():
    assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
    assert canonical_cycle((1, 3, 2)) == (1, 2, 3)
    assert CyclePath((4, 0, 2, 7)) == CyclePath((0, 4, 7, 2))
    with pytest.raises(InputError):
        CyclePath((0, 1))
    with pytest.raises(InputError):
        CyclePath((0, 1, 0))
    with pytest.raises(InputError):
        CyclePath.in_graph(Graph.path(3), (0, 1, 2))


def test_square_cycle_invariant():
    g = Graph.cycle(4)
    grp = automorphism_group(g)
    (c,) = enumerate_cycles(g)
    assert automorphism_invariant(c, grp)
    assert is_cycle_stable(g)
    assert all(is_cycle_stable(Graph.cycle(n)) for n in range(3, 9))


def test_stable_figure_graph():
    g = stable_example()
    grp = automorphism_group(g)
    assert is_cycle_stable(g)
    for vs in STABLE_CYCLES:
        assert automorphism_invariant(CyclePath.in_graph(g, vs), grp)


def test_unstable_figure_graph():
    h = unstable_example()
    assert not is_cycle_stable(h)
    grp = automorphism_group(h)
    c = CyclePath.in_graph(h, (0, 4, 3, 2, 1))
    assert not automorphism_invariant(c, grp)
    sigma = Permutation.from_cycles(8, [(3, 5), (4, 6), (0, 7)])
    assert sigma in grp
    assert c.image(sigma) == CyclePath.in_graph(h, (7, 6, 5, 2, 1))


def test_reversing_sign_on_hexagon():
    g, sub = reversing_example()
    eta = Permutation.from_cycles(6, [(0, 5), (3, 4)])
    assert eta in automorphism_group(g)
    assert is_cycle_stable(g)
    f = Filtration((0.0, 1.0), (sub, g))
    assert survives(eta, 0, 1, f)
    hexagon = CyclePath.in_graph(sub, HEXAGON)
    assert cycle_restriction_sign(eta, hexagon) == -1


def test_sign_examples():
    c = CyclePath((0, 1, 2, 3))
    assert cycle_restriction_sign(Permutation.identity(4), c) == 1
    assert cycle_restriction_sign(Permutation.from_cycles(4, [(0, 1, 2, 3)]), c) == 1
    assert cycle_restriction_sign(Permutation.from_cycles(4, [(1, 3)]), c) == -1
    assert cycle_restriction_sign(Permutation.from_cycles(4, [(0, 1)]), c) is None
    assert cycle_restriction_sign(Permutation.from_cycles(5, [(0, 4)]), c) is None
    with pytest.raises(InputError):
        cycle_restriction_sign(Permutation.identity(3), c)


@settings(max_examples=200)
@given(graphs(max_n=7))
def test_enumeration_matches_edge_subset_census(g):
    found = enumerate_cycles(g)
    as_edges = [frozenset(edge_key(u, v) for u, v in c.edges()) for c in found]
    assert len(set(as_edges)) == len(as_edges)
    assert set(as_edges) == set(brute_cycles(g.n, g.edges))


@given(graphs(min_n=3, max_n=7), st.data())
def test_canonical_form_ignores_representative(g, data):
    cycles = enumerate_cycles(g)
    if not cycles:
        return
    c = data.draw(st.sampled_from(cycles))
    vs = list(c.vertices)
    k = data.draw(st.integers(0, len(vs) - 1))
    rep = vs[k:] + vs[:k]
    if data.draw(st.booleans()):
        rep.reverse()
    assert CyclePath(tuple(rep)) == c
    p = Permutation(tuple(data.draw(st.permutations(list(range(g.n))))))
    assert CyclePath(tuple(p(v) for v in rep)) == c.image(p)


@settings(max_examples=200)
@given(nested_pairs(max_n=7, max_added=10))
def test_survivors_never_scramble_cycles_of_stable_graphs(pair):
    sub, g = pair
    if not is_cycle_stable(g):
        return
    f = Filtration.from_steps([0.0, 1.0], [sub, g])
    for eta in automorphism_group(g).enumerate(5040):
        if not survives(eta, 0, len(f) - 1, f):
            continue
        for c in enumerate_cycles(sub):
            assert cycle_restriction_sign(eta, c) in (1, -1)
