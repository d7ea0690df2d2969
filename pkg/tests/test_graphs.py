from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stiffblow.errors import InvalidArgument
from stiffblow.graphs import (
    BlowupIndex,
    Graph,
    as_weights,
    blow_up,
    blow_up_embedding,
    complete_bipartite,
    complete_graph,
    generalized_star,
)


def test_graph_canonicalises_edges():
    G = Graph(4, [(3, 1), (0, 2), (1, 0)])
    assert G.edges == ((0, 1), (0, 2), (1, 3))
    assert G.neighbors(1) == (0, 3)
    assert G.degree(2) == 1


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)]])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(InvalidArgument):
        Graph(3, edges)


def test_graph_json_round_trip():
    G = complete_bipartite(2, 3)
    assert Graph.from_json(G.to_json()) == G
    assert G.to_dict() == {"n": 5, "edges": [[0, 2], [0, 3], [0, 4], [1, 2], [1, 3], [1, 4]]}


def test_complete_graph():
    assert complete_graph(3).edges == ((0, 1), (0, 2), (1, 2))
    assert complete_graph(1).m == 0
    assert complete_graph(6).m == 15
    with pytest.raises(InvalidArgument):
        complete_graph(0)


def test_complete_bipartite():
    assert complete_bipartite(3, 3).m == 9
    assert complete_bipartite(1, 1) == complete_graph(2)
    G = complete_bipartite(5, 5)
    assert G.m == 25
    assert all(u < 5 <= v for u, v in G.edges)
    with pytest.raises(InvalidArgument):
        complete_bipartite(0, 3)


def test_generalized_star_examples():
    S = generalized_star(4, 1)
    assert S.edges == ((0, 1), (0, 2), (0, 3))
    assert generalized_star(5, 2).m == 7
    for d in range(1, 5):
        assert generalized_star(d + 1, d) == complete_graph(d + 1)
    with pytest.raises(InvalidArgument):
        generalized_star(3, 3)


@pytest.mark.parametrize("d", range(1, 6))
def test_generalized_star_edge_count(d):
    for n in range(d + 1, 13):
        assert generalized_star(n, d).m == d * n - comb(d + 1, 2)


def test_blow_up_k2_is_k23():
    H, idx = blow_up(complete_graph(2), [2, 3])
    assert H == complete_bipartite(2, 3)
    assert idx.counts == (2, 3)


def test_blow_up_identity():
    G = complete_bipartite(2, 2)
    H, idx = blow_up(G, [1, 1, 1, 1])
    assert H == G
    assert [idx.forward(v, 0) for v in range(4)] == [0, 1, 2, 3]


def test_blow_up_k3_uniform():
    H, _ = blow_up(complete_graph(3), [2, 2, 2])
    assert (H.n, H.m) == (6, 12)


@pytest.mark.parametrize("a", [[1, 0], [1, 1.5], [1, -2], [1, 2, 3]])
def test_blow_up_rejects_bad_multiplicities(a):
    with pytest.raises(InvalidArgument):
        blow_up(complete_graph(2), a)


def test_blowup_index_bijective():
    idx = BlowupIndex((2, 1, 3))
    ids = [idx.forward(v, i) for v in range(3) for i in range(idx.counts[v])]
    assert ids == list(range(6))
    assert [idx.inverse(k) for k in ids] == [(0, 0), (0, 1), (1, 0), (2, 0), (2, 1), (2, 2)]
    with pytest.raises(InvalidArgument):
        idx.forward(1, 1)
    with pytest.raises(InvalidArgument):
        idx.inverse(6)


@st.composite
def graphs_with_multiplicities(draw, nmax=8, amax=4):
    n = draw(st.integers(1, nmax))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    a = draw(st.lists(st.integers(1, amax), min_size=n, max_size=n))
    return Graph(n, edges), a


@given(graphs_with_multiplicities())
def test_blow_up_edge_count(case):
    G, a = case
    H, idx = blow_up(G, a)
    assert H.n == sum(a)
    assert H.m == sum(a[u] * a[v] for u, v in G.edges)
    orig = idx.origin()
    for x, y in H.edges:
        assert G.has_edge(orig[x], orig[y])


@given(graphs_with_multiplicities(nmax=5, amax=3), st.integers(1, 3))
def test_blow_up_composes(case, j):
    G, _ = case
    k = 2
    H1, idx1 = blow_up(G, [k] * G.n)
    H2, idx2 = blow_up(H1, [j] * H1.n)
    H3, idx3 = blow_up(G, [k * j] * G.n)
    # relabel the double blow-up through both indices back to G
    orig = idx1.origin()[idx2.origin()]
    assert H2.n == H3.n and H2.m == H3.m
    assert np.array_equal(np.bincount(orig, minlength=G.n), np.bincount(idx3.origin(), minlength=G.n))
    for x, y in H2.edges:
        assert G.has_edge(orig[x], orig[y])


def test_blow_up_embedding():
    p = np.array([[0.0], [1.0]])
    _, idx = blow_up(complete_graph(2), [2, 1])
    assert blow_up_embedding(p, [2, 1], idx).ravel().tolist() == [0.0, 0.0, 1.0]
    _, idx1 = blow_up(complete_graph(2), [1, 1])
    assert np.array_equal(blow_up_embedding(p, [1, 1], idx1), p)
    with pytest.raises(InvalidArgument):
        blow_up_embedding(p, [1, 1, 1], idx1)


def test_blow_up_embedding_triangle():
    p = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2]])
    _, idx = blow_up(complete_graph(3), [2, 2, 2])
    q = blow_up_embedding(p, [2, 2, 2], idx)
    assert q.shape == (6, 2)
    for v in range(3):
        assert np.array_equal(q[2 * v], q[2 * v + 1])


def test_as_weights():
    assert as_weights([1, 2], 2, integer=True).tolist() == [1.0, 2.0]
    with pytest.raises(InvalidArgument):
        as_weights([1, 0], 2)
    with pytest.raises(InvalidArgument):
        as_weights([1, np.nan], 2)
