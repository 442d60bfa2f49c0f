import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from homextremal.canon import automorphism_orbits, canonical_graph, certificate
from homextremal.graphs import (
    TargetGraph,
    build_simple,
    complete_bipartite,
    complete_graph,
    complete_looped,
    copies,
    cycle_graph,
    empty_graph,
    path_graph,
    turan,
    turan_minus_matching,
)

from conftest import random_simple, random_target

NAMED = [
    complete_graph(8), empty_graph(7), copies(2, complete_graph(4)), cycle_graph(9),
    complete_bipartite(3, 5), turan(3, 9), turan_minus_matching(4, 10, 2, 3),
    copies(3, cycle_graph(4)), build_simple(10, [(i, (i + 1) % 5) for i in range(5)]
                                            + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
                                            + [(i, i + 5) for i in range(5)]),  # Petersen
]


def to_nx(g):
    ng = nx.empty_graph(g.n)
    ng.add_edges_from(g.edges())
    if isinstance(g, TargetGraph):
        nx.set_node_attributes(ng, {v: v in g.loops for v in range(g.n)}, "loop")
    return ng


@pytest.mark.parametrize("g", NAMED, ids=range(len(NAMED)))
def test_invariant_under_50_relabelings(g):
    rng = random.Random(g.n * 7919 + g.num_edges)
    c = certificate(g)
    for _ in range(50):
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert certificate(g.relabel(perm)) == c


def test_examples():
    assert certificate(complete_bipartite(3, 3)) != certificate(cycle_graph(6))
    assert certificate(path_graph(4)) != certificate(complete_bipartite(1, 3))
    assert certificate(cycle_graph(6)) != certificate(copies(2, cycle_graph(3)))


def test_canonical_graph_is_isomorphic(rng):
    for _ in range(50):
        g = random_simple(rng, rng.randint(1, 9))
        assert nx.is_isomorphic(to_nx(g), to_nx(canonical_graph(g)))


def test_agrees_with_networkx_on_random_pairs(rng):
    for _ in range(400):
        n = rng.randint(1, 7)
        p = rng.random()
        a, b = random_simple(rng, n, p), random_simple(rng, n, p)
        if a.num_edges != b.num_edges:
            continue
        assert (certificate(a) == certificate(b)) == nx.is_isomorphic(to_nx(a), to_nx(b))


def test_targets_respect_loops(rng):
    match = nx.algorithms.isomorphism.categorical_node_match("loop", False)
    for _ in range(300):
        n = rng.randint(1, 5)
        a, b = random_target(rng, n), random_target(rng, n)
        same = nx.is_isomorphic(to_nx(a), to_nx(b), node_match=match)
        assert (certificate(a) == certificate(b)) == same
    assert certificate(complete_looped(2)) != certificate(TargetGraph.from_simple(complete_graph(2)))


def brute_orbits(g):
    n = g.n
    edges = set(map(frozenset, g.edges()))
    loops = set(g.loops) if isinstance(g, TargetGraph) else set()
    orbit = list(range(n))
    for perm in itertools.permutations(range(n)):
        if {frozenset((perm[u], perm[v])) for u, v in map(tuple, edges)} == edges and \
                {perm[v] for v in loops} == loops:
            for v in range(n):
                orbit[perm[v]] = min(orbit[perm[v]], v)
    # close under transitivity
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if orbit[orbit[v]] != orbit[v]:
                orbit[v] = orbit[orbit[v]]
                changed = True
    return orbit


def test_orbits_match_brute_force(rng):
    for _ in range(60):
        g = random_simple(rng, rng.randint(1, 6))
        assert automorphism_orbits(g) == brute_orbits(g)
    for _ in range(30):
        h = random_target(rng, rng.randint(1, 5))
        assert automorphism_orbits(h) == brute_orbits(h)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))),
                        st.permutations(range(n)))))
def test_relabel_property(data):
    n, pairs, perm = data
    g = build_simple(n, {(min(u, v), max(u, v)) for u, v in pairs if u != v})
    assert certificate(g.relabel(perm)) == certificate(g)
