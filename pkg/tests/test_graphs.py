import itertools

import pytest

from homextremal.graphs import (
    GraphError,
    TargetGraph,
    balanced_biclique,
    build_simple,
    classify_graph,
    complete_bipartite,
    complete_graph,
    complete_looped,
    complete_simple,
    components,
    copies,
    cycle_graph,
    disjoint_copies,
    empty_graph,
    independent_set_target,
    turan,
    turan_minus_matching,
    turan_sizes,
    validate,
)


def brute_edges_multipartite(sizes):
    return sum(a * b for a, b in itertools.combinations(sizes, 2))


def has_clique(g, size):
    return any(
        all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))
        for c in itertools.combinations(range(g.n), size)
    )


def test_build_simple_complete():
    g = build_simple(4, itertools.combinations(range(4), 2))
    assert g == complete_graph(4)
    assert g.degrees() == [3, 3, 3, 3]


def test_build_simple_empty():
    g = build_simple(3, [])
    assert g.min_degree() == 0 and g.num_edges == 0


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 2)], [(-1, 0)]])
def test_build_simple_rejects(edges):
    with pytest.raises(GraphError):
        build_simple(2, edges)


def test_complete_bipartite():
    g = complete_bipartite(3, 4)
    assert g.num_edges == 12
    assert g.degrees() == [4, 4, 4, 3, 3, 3, 3]
    assert complete_bipartite(1, 1).edges() == [(0, 1)]
    assert complete_bipartite(2, 0).num_edges == 0 and complete_bipartite(2, 0).n == 2


def test_turan_4_10():
    assert turan_sizes(4, 10) == [3, 3, 2, 2]
    assert turan(4, 10).num_edges == brute_edges_multipartite([3, 3, 2, 2]) == 37


def test_turan_small():
    assert turan(5, 5) == complete_graph(5)
    assert turan(3, 6).num_edges == brute_edges_multipartite([2, 2, 2]) == 12


@pytest.mark.parametrize("t", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("x", range(0, 13))
def test_turan_degree_and_clique_free(t, x):
    g = turan(t, x)
    validate(g)
    if x:
        assert g.min_degree() == x - -(-x // t)
    assert not has_clique(g, t + 1)
    sizes = turan_sizes(t, x)
    assert max(sizes) - min(sizes) <= 1 and sizes == sorted(sizes, reverse=True)


def test_turan_minus_matching():
    tp = turan_minus_matching(4, 10, 2, 3)
    assert tp.num_edges == 37 - 2
    assert not tp.has_edge(6, 8) and not tp.has_edge(7, 9)
    assert tp.has_edge(6, 9) and tp.has_edge(7, 8)
    with pytest.raises(GraphError):
        turan_minus_matching(4, 10, 0, 2)
    g = turan_minus_matching(3, 6, 0, 1)
    assert g.num_edges == 12 - 2


def test_target_families():
    h = complete_looped(2)
    assert h.loops == [0, 1] and h.edges() == [(0, 1)] and h.degrees() == [2, 2]
    h = disjoint_copies(3, complete_simple(3))
    assert h.n == 9 and len(h.edges()) == 9 and h.max_degree() == 2
    h = TargetGraph.from_parts(2, loops={0}, edges={(0, 1)})
    assert h == independent_set_target()
    assert balanced_biclique(2).degrees() == [2, 2, 2, 2]


def test_components():
    assert components(copies(2, complete_graph(4))) == [[0, 1, 2, 3], [4, 5, 6, 7]]
    assert components(cycle_graph(5)) == [[0, 1, 2, 3, 4]]
    assert components(empty_graph(0)) == []


def test_classify():
    c = classify_graph(complete_bipartite(3, 4))
    assert (c.is_connected, c.is_bipartite, c.min_degree, c.max_degree) == (True, True, 3, 4)
    c = classify_graph(cycle_graph(5))
    assert (c.is_connected, c.is_bipartite, c.min_degree, c.max_degree) == (True, False, 2, 2)
    assert classify_graph(complete_looped(3)).max_degree == 3


def test_target_json_roundtrip():
    h = TargetGraph.from_parts(4, [3, 1], [(2, 0), (1, 3)])
    obj = h.to_json_obj()
    assert obj == {"n": 4, "loops": [1, 3], "edges": [[0, 2], [1, 3]]}
    assert TargetGraph.from_json_obj(obj) == h


def test_constructor_outputs_validate():
    for g in [complete_graph(5), complete_bipartite(2, 3), turan(3, 7), cycle_graph(6),
              turan_minus_matching(4, 10, 2, 3), complete_looped(3), balanced_biclique(3),
              disjoint_copies(2, complete_looped(2)), independent_set_target()]:
        validate(g)
