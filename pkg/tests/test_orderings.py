import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fvslab.graph_core import Digraph, Graph, GraphError
from fvslab.orderings import (EliminationOrdering, InvariantViolation, complete_to_ktree,
                              complete_to_maximal_kdegenerate, degeneracy, fill_in,
                              find_main_lemma_vertex, is_ktree, main_lemma_candidates,
                              rl_degeneracy, rl_graph, s_last_degeneracy, treewidth_exact,
                              treewidth_upper)
import oracles
from strategies import digraphs, graphs, random_kdegenerate, random_partial_ktree


def test_positions_are_one_based():
    e = EliminationOrdering.of(Graph.path(3), [2, 0, 1])
    assert e.positions() == [2, 3, 1] and e.position(2) == 1
    assert e.back_degrees == (0, 2, 0) and e.width == 2
    with pytest.raises(GraphError):
        EliminationOrdering.of(Graph.path(3), [0, 1])


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=10))
def test_degeneracy_matches_core_number(g):
    k, e = degeneracy(g)
    assert k == oracles.degeneracy(g)
    assert e.width == k


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8, min_n=1), st.data())
def test_s_last_degeneracy_matches_subset_dp(g, data):
    S = data.draw(st.sets(st.integers(0, g.n - 1), max_size=g.n))
    k, e = s_last_degeneracy(g, S)
    assert k == oracles.s_last_degeneracy(g.n, g.edges(), S)
    assert set(e.order[:len(S)]) == S and e.width == k


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=7, min_n=2), st.data())
def test_rl_degeneracy_matches_oracle(d, data):
    rp = data.draw(st.integers(0, d.n - 1))
    others = [v for v in range(d.n) if v != rp]
    R = data.draw(st.sets(st.sampled_from(others), min_size=1, max_size=min(3, len(others))))
    k, e = rl_degeneracy(d, R, rp)
    assert k == oracles.rl_degeneracy(d, R, rp)
    h, twins, _ = rl_graph(d, R, rp)
    assert twins == list(range(d.n - 1, d.n - 1 + len(R)))
    assert set(e.order[:len(R)]) == set(twins)


def test_rl_graph_rejects_bad_arguments():
    d = Digraph.directed_cycle(3)
    with pytest.raises(GraphError):
        rl_graph(d, [], 0)
    with pytest.raises(GraphError):
        rl_graph(d, [0], 0)


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_fill_in_is_chordal_and_bounds_treewidth(g, rnd):
    order = list(range(g.n))
    rnd.shuffle(order)
    h, w = fill_in(g, order)
    assert all(h.has_edge(a, b) for a, b in g.edges())
    assert nx.is_chordal(oracles.nx_of(h))
    e = EliminationOrdering.of(h, order)
    assert e.is_chordal and e.width == w
    if g.n <= 7:
        assert w >= oracles.treewidth_brute(g)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7))
def test_treewidth_exact_matches_brute_force(g):
    wit = treewidth_exact(g)
    assert wit.value == oracles.treewidth_brute(g)
    assert fill_in(g, wit.ordering.order)[1] == wit.value
    assert treewidth_upper(g).value >= wit.value


def test_treewidth_known_values():
    assert treewidth_exact(Graph.complete(6)).value == 5
    assert treewidth_exact(Graph.cycle(9)).value == 2
    grid = nx.convert_node_labels_to_integers(nx.grid_2d_graph(4, 4))
    g = Graph.from_edges(16, list(grid.edges()))
    assert treewidth_exact(g).value == 4
    with pytest.raises(ValueError):
        treewidth_exact(Graph.path(30))


@pytest.mark.parametrize("seed", range(25))
def test_complete_to_maximal_kdegenerate(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 5)
    n = rng.randint(1, 40)
    g = random_kdegenerate(n, k, rng, directed=False, p=0.6)
    h, e = complete_to_maximal_kdegenerate(g, k)
    assert all(h.has_edge(a, b) for a, b in g.edges())
    pos = e.positions()
    assert all(e.back_degrees[v] == min(k, pos[v] - 1) for v in range(n))
    assert h.num_edges == sum(min(k, i) for i in range(n))


@pytest.mark.parametrize("seed", range(25))
def test_complete_to_ktree_contains_input(seed):
    rng = random.Random(100 + seed)
    k = rng.randint(1, 5)
    n = rng.randint(k + 1, 45)
    d = random_partial_ktree(n, k, rng, p=0.7)
    h, e = complete_to_ktree(d, k, hint=range(n))
    assert is_ktree(h, k) and e.is_chordal and e.width == k
    assert all(h.has_edge(a, b) for a, b in d.arcs())


def test_complete_to_ktree_small_and_infeasible():
    h, _ = complete_to_ktree(Graph.path(3), 4)
    assert h == Graph.complete(3)
    with pytest.raises(GraphError):
        complete_to_ktree(Graph.complete(5), 3)


def test_is_ktree_recognition():
    assert is_ktree(Graph.complete(4), 3)
    assert is_ktree(Graph.path(5), 1)
    assert not is_ktree(Graph.cycle(5), 2)
    fan = Graph.from_edges(5, [(0, i) for i in range(1, 5)] + [(1, 2), (2, 3), (3, 4)])
    assert is_ktree(fan, 2)
    assert not is_ktree(Graph.complete(3), 3)


@pytest.mark.parametrize("seed", range(40))
def test_main_lemma_vertex_exists_in_k_degenerate_graphs(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 6)
    n = rng.randint(k + 2, 50)
    g = random_kdegenerate(n, k, rng, directed=False)
    v, l, small = find_main_lemma_vertex(g, k)
    assert g.degree(v) == k + l and l >= 1 and len(small) >= l
    assert all(g.degree(u) <= k and g.has_edge(u, v) for u in small)
    assert (v, l, small) in main_lemma_candidates(g, k)


def test_main_lemma_degenerate_and_failure_cases():
    assert find_main_lemma_vertex(Graph.complete(4), 3) is None
    with pytest.raises(InvariantViolation):
        find_main_lemma_vertex(Graph.complete(6), 3)
