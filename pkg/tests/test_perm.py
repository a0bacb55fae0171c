import math
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from oracles import perm_order
from persaut.errors import CapExceeded, InputError
from persaut.perm import Permutation, PermutationGroup, element_order
from strategies import permutations_of

perms = st.integers(1, 9).flatmap(permutations_of)


def test_composition_is_right_to_left():
    p = Permutation.from_cycles(3, [(0, 1)])
    q = Permutation.from_cycles(3, [(1, 2)])
    assert (p * q)(1) == p(q(1)) == 2
    assert (p * q)(2) == p(q(2)) == 0


def test_parse_and_notation():
    p = Permutation.parse("(0 2)(1 3)", 5)
    assert p.images == (2, 3, 0, 1, 4)
    assert p.cycle_notation() == "(0 2)(1 3)"
    assert Permutation.parse("()", 3).is_identity()
    assert Permutation.identity(3).cycle_notation() == "()"
    with pytest.raises(InputError):
        Permutation.parse("(0 1", 3)
    with pytest.raises(InputError):
        Permutation.parse("(0 5)", 3)
    with pytest.raises(InputError):
        Permutation((0, 0, 1))


def test_element_order_examples():
    assert element_order(Permutation.identity(4)) == 1
    assert element_order(Permutation.from_cycles(5, [(0, 1), (2, 3, 4)])) == 6
    assert element_order(Permutation.from_cycles(4, [(0, 1, 2, 3)])) == 4


@given(perms)
def test_element_order_is_least_power(p):
    k = element_order(p)
    assert (p ** k).is_identity()
    assert all(not (p ** j).is_identity() for j in range(1, k))
    assert k == perm_order(p.images)


@given(perms)
def test_inverse(p):
    assert (p * p.inverse()).is_identity() and (p.inverse() * p).is_identity()
    assert p ** -1 == p.inverse()


@given(perms)
def test_cycles_partition_moved_points(p):
    cyc = p.cycles()
    flat = [v for c in cyc for v in c]
    assert len(flat) == len(set(flat))
    assert sorted(flat) == p.support()
    assert Permutation.parse(p.cycle_notation(), p.degree) == p


def test_symmetric_group_from_two_generators():
    n = 6
    g = PermutationGroup.from_generators(n, [Permutation.from_cycles(n, [(0, 1)]),
                                             Permutation.from_cycles(n, [tuple(range(n))])])
    assert g.order == math.factorial(n)
    assert g.log2_order() == pytest.approx(math.log2(720))


def test_trivial_group():
    g = PermutationGroup.trivial(4)
    assert g.order == 1 and g.log2_order() == 0.0 and g.is_trivial()
    assert list(g.elements()) == [Permutation.identity(4)]


def test_enumerate_cap():
    g = PermutationGroup.from_generators(4, [Permutation.from_cycles(4, [(0, 1)]),
                                             Permutation.from_cycles(4, [(0, 1, 2, 3)])])
    assert g.enumerate(5) == CapExceeded(24, 5)
    assert len(g.enumerate(24)) == 24
    with pytest.raises(InputError):
        g.enumerate(0)


def test_membership_degree_mismatch():
    g = PermutationGroup.trivial(3)
    with pytest.raises(InputError):
        Permutation.identity(4) in g


@given(st.integers(1, 7).flatmap(lambda n: st.lists(permutations_of(n), min_size=0, max_size=3)))
def test_chain_matches_closure(gens):
    n = gens[0].degree if gens else 1
    grp = PermutationGroup.from_generators(n, gens)
    # closure by breadth-first multiplication
    ident = Permutation.identity(n)
    closure, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in closure:
                    closure.add(y)
                    nxt.append(y)
        frontier = nxt
    elems = list(grp.elements())
    assert len(elems) == len(set(elems)) == grp.order == len(closure)
    assert set(elems) == closure
    assert math.factorial(n) % grp.order == 0
    for p in map(Permutation, permutations(range(n))):
        assert (p in grp) == (p in closure)
