"""Hypothesis strategies for small graphs, permutations and filtrations."""

from itertools import combinations

from hypothesis import strategies as st

from persaut.graph import Graph
from persaut.perm import Permutation


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def permutations_of(draw, n):
    return Permutation(tuple(draw(st.permutations(list(range(n))))))


@st.composite
def nested_pairs(draw, max_n=6, max_added=10):
    """(small, big) vertex-equal graphs with at most ``max_added`` extra edges in big."""
    big = draw(graphs(min_n=1, max_n=max_n))
    keep = draw(st.lists(st.booleans(), min_size=big.m, max_size=big.m))
    small_edges = [e for e, k in zip(big.edges, keep) if k]
    added = [e for e, k in zip(big.edges, keep) if not k]
    if len(added) > max_added:
        small_edges += added[max_added:]
    return Graph.from_edges(big.n, small_edges), big


@st.composite
def edge_towers(draw, min_n=1, max_n=6, max_steps=5):
    """Strictly growing edge sets on a common vertex set, starting empty."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    order = draw(st.permutations(pairs)) if pairs else []
    k = draw(st.integers(0, len(order)))
    order = order[:k]
    cuts = sorted(set(draw(st.lists(st.integers(1, max(k, 1)), max_size=max_steps - 1)))) if k else []
    cuts = [c for c in cuts if 0 < c <= k]
    if k and (not cuts or cuts[-1] != k):
        cuts.append(k)
    return n, [[]] + [order[:c] for c in cuts]
