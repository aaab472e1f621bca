import random

import networkx as nx
import pytest
from hypothesis import given, settings

from fvslab import codec
from fvslab.graph_core import Digraph, Graph
from oracles import digraph6_bits, nx_of
from strategies import digraphs, graphs

FIXTURE_STRINGS = ["IWWc?gbBAGET?W_@`O", "GDgJDW]@OI?o", "K]OL@DhAtH[ccOGGMtCw`B?_Q",
                 "IQ_lhcpGUiM[OWy@\\?", "JTc\\c\\_\\g\\g\\G\\G^GRGZG?"]


@pytest.mark.parametrize("s", FIXTURE_STRINGS)
def test_fixture_strings_round_trip_headerless(s):
    d = codec.decode(s, kind="digraph6")
    assert d.directed
    assert codec.encode(d, header=False) == s
    assert digraph6_bits(d.n, d.arcs()) == s


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_graph6_matches_networkx(g):
    ours = codec.encode(g)
    theirs = nx.to_graph6_bytes(nx_of(g), header=False).decode().strip()
    assert ours == theirs
    assert codec.decode(ours) == g


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=12))
def test_digraph6_matches_reference_packing(d):
    s = codec.encode(d)
    assert s == "&" + digraph6_bits(d.n, d.arcs())
    assert codec.decode(s) == d
    assert codec.decode(s[1:], kind="digraph6") == d


def test_order_tiers():
    assert codec.encode_n(62) == chr(62 + 63)
    assert codec.encode_n(63) == "~" + chr(63) + chr(63 + 0) + chr(63 + 63)
    g = Graph.path(100)
    s = codec.encode(g)
    assert s[0] == "~" and codec.decode(s) == g
    with pytest.raises(ValueError):
        codec.encode_n(258048)


def test_headers_are_stripped():
    assert codec.decode(">>graph6<<Bw") == Graph.complete(3)
    s = codec.encode(Digraph.directed_cycle(3))
    assert codec.decode(">>digraph6<<" + s) == Digraph.directed_cycle(3)


@pytest.mark.parametrize("text, where", [
    ("", 0), ("A!", 1), ("Bw?", 2), ("&Bo", None), ("&B_", None), ("Bx", None), ("&BW??", 4),
])
def test_malformed_input_is_rejected_with_a_position(text, where):
    with pytest.raises(codec.DecodeError) as info:
        codec.decode(text)
    if where is not None:
        assert info.value.position is not None


def test_loop_and_antiparallel_positions():
    # n=2, bits row-major: (0,0) set -> loop at bit 0
    with pytest.raises(codec.DecodeError, match="loop"):
        codec.decode("&A" + chr((0b100000) + 63))
    with pytest.raises(codec.DecodeError, match="antiparallel"):
        codec.decode("&A" + chr((0b011000) + 63))
    with pytest.raises(codec.DecodeError, match="padding"):
        codec.decode("&A" + chr((0b000001) + 63))


def test_graph6_rejects_digraph_header_and_vice_versa():
    with pytest.raises(codec.DecodeError):
        codec.decode("&Bw", kind="graph6")
    with pytest.raises(ValueError):
        codec.encode(Digraph.directed_cycle(3), kind="graph6")
    with pytest.raises(ValueError):
        codec.encode(Graph.path(2), kind="digraph6")


def test_random_round_trip_large():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(0, 70)
        if rng.random() < 0.5:
            g = Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < .3])
        else:
            g = Digraph.from_arcs(n, [(a, b) if rng.random() < .5 else (b, a)
                                      for a in range(n) for b in range(a + 1, n) if rng.random() < .3])
        assert codec.decode(codec.encode(g)) == g
