import itertools
import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from nestgraphs import graph as gr
from nestgraphs import nest
from nestgraphs.aut import automorphism_group
from nestgraphs.graph import Graph, Partition

from oracles import brute_girth


def random_graph(n, p, seed):
    rng = random.Random(seed)
    return gr.build(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


graphs = st.builds(random_graph, st.integers(1, 9), st.floats(0.1, 0.9), st.integers(0, 10**6))


# -- build ----------------------------------------------------------------------

def test_triangle():
    g = gr.build(3, [(0, 1), (1, 2), (2, 0)])
    assert g.edge_count == 3
    assert g.adj == ((1, 2), (0, 2), (0, 1))


@pytest.mark.parametrize("edges", [[(0, 1), (0, 1)], [(0, 1), (1, 0)], [(2, 2)], [(0, 4)], [(-1, 0)]])
def test_build_rejects(edges):
    with pytest.raises(ValueError):
        gr.build(4, edges)


def test_build_nest_edge_list():
    g = gr.build(10, nest.edges((5, 1, 2, 3, 2)))
    assert g.edge_count == 30
    assert g.is_regular() and g.degree(0) == 6
    assert g == nest.build((5, 1, 2, 3, 2))


def test_asymmetric_adjacency_rejected():
    with pytest.raises(ValueError):
        Graph(2, [[1], []])


@settings(max_examples=50)
@given(graphs)
def test_edge_count_is_half_degree_sum(g):
    assert 2 * g.edge_count == sum(g.degrees())
    for u, v in g.edges():
        assert v in g.adj[u] and u in g.adj[v]


@settings(max_examples=30)
@given(graphs)
def test_json_roundtrip(g):
    text = g.to_json()
    assert Graph.from_json(text) == g
    doc = json.loads(text)
    assert doc["edges"] == sorted(doc["edges"])
    assert all(a < b for a, b in doc["edges"])
    assert text == Graph.from_json(text).to_json()


# -- common neighbours and the relation partition -------------------------------

def test_common_neighbors_triangle():
    assert gr.common_neighbors(gr.complete(3), 0, 1) == {2}


def test_common_neighbors_hamming_like_nest():
    g = nest.build((8, 1, 3, 4, 3))
    assert {gr.common_neighbor_count(g, u, v) for u, v in g.edges()} == {2}


def test_common_neighbors_26():
    g = nest.build((26, 2, 13, 15, 1))
    assert len(gr.common_neighbors(g, 0, 13)) == 4


def test_common_neighbors_out_of_range():
    with pytest.raises(ValueError):
        gr.common_neighbors(gr.complete(3), 0, 3)


def test_relation_partition_26():
    m = 13
    part = gr.relation_partition(nest.build((26, 2, 13, 15, 1)), 4)
    n = 2 * m
    expected = Partition([[i, i + m, n + i + 1, n + (i + 1 + m) % n] for i in range(m)], 2 * n)
    assert part == expected
    assert len(part) == 13


def test_relation_partition_large_s_gives_singletons():
    g = nest.build((7, 1, 2, 3, 1))
    assert gr.relation_partition(g, 99) == Partition.singletons(14)


def _intransitive(g, s):
    n = g.vertex_count
    rel = lambda u, v: u == v or gr.common_neighbor_count(g, u, v) == s
    return any(rel(x, y) and rel(y, z) and not rel(x, z)
               for x, y, z in itertools.permutations(range(n), 3))


def test_relation_partition_not_equivalence():
    # smallest witness from a search over paths: on P5, 0~2 and 2~4 but 0 and 4 share nothing
    g = gr.path(5)
    assert _intransitive(g, 1)
    with pytest.raises(ValueError, match="not an equivalence"):
        gr.relation_partition(g, 1)


@settings(max_examples=60)
@given(graphs, st.integers(0, 4))
def test_relation_partition_matches_definition(g, s):
    if _intransitive(g, s):
        with pytest.raises(ValueError):
            gr.relation_partition(g, s)
        return
    part = gr.relation_partition(g, s)
    for u, v in itertools.combinations(range(g.vertex_count), 2):
        same = part.class_of[u] == part.class_of[v]
        assert same == (gr.common_neighbor_count(g, u, v) == s)


# -- quotient and cover index ----------------------------------------------------

def _k33_system():
    g = nest.build((12, 2, 4, 8, 5))
    from nestgraphs.symmetry import minimal_block_systems
    infos = minimal_block_systems(automorphism_group(g), 0, nest_n=12)
    info = next(i for i in infos if i.block_size == 4 and not i.cyclic)
    return g, info.partition


def test_quotient_singletons_and_unit():
    g = gr.petersen()
    assert gr.quotient(g, Partition.singletons(10)) == g
    q = gr.quotient(g, Partition.unit(10))
    assert q.vertex_count == 1 and q.edge_count == 0


def test_quotient_k33_and_cover_index():
    g, part = _k33_system()
    q = gr.quotient(g, part)
    assert automorphism_group(q).order() == 72
    from nestgraphs.aut import are_isomorphic
    assert are_isomorphic(q, gr.complete_bipartite(3, 3)) is not None
    assert gr.cover_index(g, part) == 2


def test_cover_index_singletons():
    assert gr.cover_index(gr.shrikhande(), Partition.singletons(16)) == 1


def test_cover_index_intra_class_edge():
    assert gr.cover_index(gr.cycle(4), Partition([[0, 1], [2, 3]])) is None


def test_cover_index_nonconstant():
    # path 0-1-2 with classes {0,2},{1}: |N(1) in {0,2}| = 2 but |N(0) in {1}| = 1
    assert gr.cover_index(gr.path(3), Partition([[0, 2], [1]])) is None


def test_cover_regularity_relation():
    g, part = _k33_system()
    r = gr.cover_index(g, part)
    q = gr.quotient(g, part)
    assert q.is_regular() and q.degree(0) == g.degree(0) // r


# -- connectivity and girth --------------------------------------------------------

def test_cycle6():
    g = gr.cycle(6)
    assert gr.is_connected(g) and gr.girth(g) == 6


def test_nest5_girth():
    assert gr.girth(nest.build((5, 1, 2, 3, 2))) == 3


def test_edgeless():
    g = gr.empty(4)
    assert not gr.is_connected(g)
    assert gr.girth(g) == math.inf


def test_girth_from_adjacency_matches():
    p = nest.validate(13, 1, 5, 8, 3)
    assert gr.girth_from_adjacency(nest.adjacency_lists(p), (0, 13)) == gr.girth(nest.build(p))


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_girth_matches_cycle_enumeration(g):
    assert gr.girth(g) == brute_girth(g)


# -- named graphs --------------------------------------------------------------------

@pytest.mark.parametrize("make, nv, ne, deg, girth", [
    (gr.petersen, 10, 15, 3, 5),
    (gr.petersen_complement, 10, 30, 6, 3),
    (gr.hamming_2_4, 16, 48, 6, 3),
    (gr.shrikhande, 16, 48, 6, 3),
])
def test_named_counts(make, nv, ne, deg, girth):
    g = make()
    assert (g.vertex_count, g.edge_count, g.degree(0), gr.girth(g)) == (nv, ne, deg, girth)
    assert g.is_regular()


@pytest.mark.parametrize("make, order", [
    (gr.petersen_complement, 120), (gr.hamming_2_4, 1152), (gr.shrikhande, 192)])
def test_named_vertex_transitive(make, order):
    grp = automorphism_group(make())
    assert grp.is_transitive()
    assert grp.order() == order


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition([[0, 1], [1, 2]], 3)
    with pytest.raises(ValueError):
        Partition([[0, 1]], 3)
    p = Partition.from_labels([5, 5, 2, 2, 5])
    assert p.classes == ((0, 1, 4), (2, 3))
    assert p.class_of == (0, 0, 1, 1, 0)
