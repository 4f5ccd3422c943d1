import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swcapacity.expectation import lattice_weights_graph
from swcapacity.generators import gen_ring_lattice
from swcapacity.graph import (
    ParameterError,
    WeightedGraph,
    brute_force_min_cut,
    cut_value,
    global_min_cut,
    grid_node,
    grid_point,
    lattice_distance,
    ring_distance,
)
from swcapacity.models import RingLatticeParams

PATH = WeightedGraph(3, [(0, 1), (1, 2)])
TRIANGLE = WeightedGraph(3, [(0, 1), (1, 2), (0, 2)])
K4 = WeightedGraph(4, list(itertools.combinations(range(4), 2)))


@pytest.mark.parametrize("i,j,n,want", [(0, 2, 10, 2), (0, 9, 10, 1), (1, 6, 10, 5)])
def test_ring_distance_examples(i, j, n, want):
    assert ring_distance(i, j, n) == want


def test_ring_distance_errors():
    with pytest.raises(ParameterError):
        ring_distance(0, 0, 1)
    with pytest.raises(ParameterError):
        ring_distance(0, 10, 10)


@pytest.mark.parametrize("u,v,want", [((1, 1), (1, 1), 0), ((1, 1), (3, 4), 5), ((2, 5), (5, 2), 6)])
def test_lattice_distance_examples(u, v, want):
    assert lattice_distance(u, v) == want


def test_lattice_distance_range_check():
    with pytest.raises(ParameterError):
        lattice_distance((0, 1), (1, 1), n=3)


def test_grid_node_roundtrip():
    n = 7
    ids = [grid_node(x, y, n) for x in range(1, n + 1) for y in range(1, n + 1)]
    assert ids == list(range(n * n))
    assert all(grid_point(grid_node(x, y, n), n) == (x, y) for x in range(1, 8) for y in range(1, 8))


def test_ring_distance_is_metric_exhaustive():
    for n in range(2, 51):
        d = np.array([[ring_distance(i, j, n) for j in range(n)] for i in range(n)])
        assert np.array_equal(d, d.T)
        assert np.all((d == 0) == np.eye(n, dtype=bool))
        assert d.max() <= n // 2
        # triangle inequality over all triples: d[i,k] <= d[i,j] + d[j,k]
        assert np.all(d[:, None, :] <= d[:, :, None] + d[None, :, :])


@pytest.mark.parametrize("g,want", [(PATH, 1.0), (TRIANGLE, 2.0), (K4, 3.0)])
def test_min_cut_small_examples(g, want):
    assert global_min_cut(g).value == want
    assert brute_force_min_cut(g).value == want


def test_ring_lattice_min_cut_oracle():
    g = gen_ring_lattice(RingLatticeParams(10, 4))
    assert brute_force_min_cut(g).value == 4.0
    assert global_min_cut(g).value == 4.0


def test_two_weight_graph_brute_force():
    g = lattice_weights_graph(10, 4, 1.0, 0.5)
    assert brute_force_min_cut(g).value == pytest.approx(6.5, abs=1e-12)


@pytest.mark.parametrize("g,s,want", [(TRIANGLE, {0}, 2.0), (PATH, {1}, 2.0), (PATH, {0}, 1.0)])
def test_cut_value_examples(g, s, want):
    assert cut_value(g, s) == want


@pytest.mark.parametrize("s", [set(), {0, 1, 2}])
def test_cut_value_rejects_trivial(s):
    with pytest.raises(ParameterError):
        cut_value(TRIANGLE, s)


def test_brute_force_refuses_large():
    g = WeightedGraph(21, [(i, i + 1) for i in range(20)])
    with pytest.raises(ParameterError):
        brute_force_min_cut(g)


def test_disconnected_graph_has_zero_cut():
    g = WeightedGraph(4, [(0, 1), (2, 3)])
    cut = global_min_cut(g)
    assert cut.value == 0.0
    assert cut.partition in (frozenset({0, 1}), frozenset({2, 3}))


@pytest.mark.parametrize(
    "n,edges",
    [(1, []), (3, [(0, 0)]), (3, [(0, 3)]), (3, [(0, 1), (1, 0)])],
)
def test_graph_validation(n, edges):
    with pytest.raises(ParameterError):
        WeightedGraph(n, edges)


def test_negative_weight_rejected():
    with pytest.raises(ParameterError):
        WeightedGraph(3, [(0, 1)], [-1.0])


def test_canonical_order_and_equality():
    a = WeightedGraph(4, [(3, 2), (1, 0), (2, 0)], [1.0, 2.0, 3.0])
    b = WeightedGraph(4, [(0, 1), (0, 2), (2, 3)], [2.0, 3.0, 1.0])
    assert a == b
    assert a.edges.tolist() == [[0, 1], [0, 2], [2, 3]]
    assert a.neighbors(0).tolist() == [1, 2]
    assert a.weighted_degrees().tolist() == [5.0, 2.0, 4.0, 1.0]


def test_json_roundtrip():
    g = WeightedGraph(5, [(0, 1), (1, 4), (2, 3)], [0.25, 1.0, 2.5])
    text = g.to_json()
    assert json.loads(text) == {"n": 5, "edges": [[0, 1, 0.25], [1, 4, 1.0], [2, 3, 2.5]]}
    assert WeightedGraph.from_json(text) == g


def test_from_json_rejects_unordered_pair():
    with pytest.raises(ParameterError):
        WeightedGraph.from_json('{"n": 3, "edges": [[1, 0, 1.0]]}')


@st.composite
def weighted_graphs(draw, max_nodes=12):
    n = draw(st.integers(2, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    weights = draw(
        st.lists(
            st.sampled_from([0.0, 0.25, 0.5, 1.0, 1.5, 3.0]) | st.floats(0, 10),
            min_size=len(pairs),
            max_size=len(pairs),
        )
    )
    chosen = [(e, w) for e, keep, w in zip(pairs, mask, weights) if keep]
    return WeightedGraph(n, [e for e, _ in chosen], [w for _, w in chosen])


@settings(max_examples=300, deadline=None)
@given(weighted_graphs())
def test_stoer_wagner_matches_brute_force(g):
    sw = global_min_cut(g)
    bf = brute_force_min_cut(g)
    assert abs(sw.value - bf.value) <= 1e-9
    # the witness partition is a real cut of that value
    assert 0 < len(sw.partition) < g.n
    assert cut_value(g, sw.partition) == sw.value
    # single-node cuts are feasible, so min cut never exceeds the min weighted degree
    assert sw.value <= g.weighted_degrees().min() + 1e-9


@settings(max_examples=100, deadline=None)
@given(weighted_graphs(max_nodes=10))
def test_json_roundtrip_property(g):
    assert WeightedGraph.from_json(g.to_json()) == g
