"""Hypothesis strategies and seeded generators for graphs and digraphs."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from fvslab.graph_core import Digraph, Graph


@st.composite
def graphs(draw, max_n: int = 9, min_n: int = 0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def digraphs(draw, max_n: int = 8, min_n: int = 0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    states = draw(st.lists(st.integers(0, 2), min_size=len(pairs), max_size=len(pairs)))
    arcs = [(a, b) if s == 1 else (b, a) for (a, b), s in zip(pairs, states) if s]
    return Digraph.from_arcs(n, arcs)


@st.composite
def tournaments(draw, max_n: int = 7, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    flips = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph.from_arcs(n, [(a, b) if f else (b, a) for (a, b), f in zip(pairs, flips)])


def random_kdegenerate(n: int, k: int, rng: random.Random, directed: bool, p: float = 1.0):
    """Each new vertex joins at most k random earlier vertices."""
    pairs = []
    for v in range(1, n):
        for u in rng.sample(range(v), min(k, v)):
            if rng.random() < p:
                pairs.append((u, v) if rng.random() < 0.5 else (v, u))
    if directed:
        return Digraph.from_arcs(n, pairs)
    return Graph.from_edges(n, pairs)


def random_partial_ktree(n: int, k: int, rng: random.Random, p: float = 0.9) -> Digraph:
    """Random orientation of a random spanning subgraph of a random k-tree.

    The identity order is a width-k elimination ordering of the k-tree.
    """
    top = min(n, k + 1)
    cliques = [list(range(top))]
    edges = {(i, j) for i in range(top) for j in range(i + 1, top)}
    for v in range(top, n):
        c = rng.choice(cliques)
        drop = rng.randrange(len(c))
        base = [x for t, x in enumerate(c) if t != drop]
        edges.update((x, v) for x in base)
        cliques.append(base + [v])
    arcs = [(a, b) if rng.random() < 0.5 else (b, a) for a, b in sorted(edges) if rng.random() < p]
    return Digraph.from_arcs(n, arcs)
