"""Immutable simple graphs and oriented digraphs on dense vertex ids.

Adjacency is stored as one Python ``int`` bitmask per vertex, which keeps the
solvers' set algebra cheap for small graphs and degrades gracefully for the
few-thousand-vertex family members the constructions produce.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

MAX_VERTICES = 4096


class GraphError(ValueError):
    """Raised for invalid graph input or invalid surgery arguments."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside supported range 0..{MAX_VERTICES}")


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    directed = False
    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Sequence[int]):
        _check_n(n)
        if len(adj) != n:
            raise GraphError("adjacency length does not match n")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
        for v, row in enumerate(adj):
            for u in iter_bits(row):
                if not adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        self.n = n
        self.adj = tuple(adj)
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        _check_n(n)
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << v) for v in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> list[int]:
        return bits_to_list(self.adj[v])

    def neighbor_mask(self, v: int) -> int:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.directed, self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


class Digraph:
    """Oriented digraph: no loops, no antiparallel arc pairs."""

    directed = True
    __slots__ = ("n", "out_adj", "in_adj", "_hash")

    def __init__(self, n: int, out_adj: Sequence[int]):
        _check_n(n)
        if len(out_adj) != n:
            raise GraphError("adjacency length does not match n")
        full = (1 << n) - 1
        in_adj = [0] * n
        for u, row in enumerate(out_adj):
            if row & ~full:
                raise GraphError(f"vertex {u} has an out-neighbour outside 0..{n - 1}")
            if row >> u & 1:
                raise GraphError(f"self-loop at vertex {u}")
            for v in iter_bits(row):
                in_adj[v] |= 1 << u
        for u in range(n):
            both = out_adj[u] & in_adj[u]
            if both:
                v = (both & -both).bit_length() - 1
                raise GraphError(f"antiparallel arcs between {u} and {v}")
        self.n = n
        self.out_adj = tuple(out_adj)
        self.in_adj = tuple(in_adj)
        self._hash = None

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        _check_n(n)
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            out[u] |= 1 << v
        return cls(n, out)

    @classmethod
    def empty(cls, n: int) -> "Digraph":
        return cls(n, [0] * n)

    @classmethod
    def directed_cycle(cls, n: int) -> "Digraph":
        if n < 3:
            raise GraphError("an oriented cycle needs at least 3 vertices")
        return cls.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def transitive_tournament(cls, n: int) -> "Digraph":
        full = (1 << n) - 1
        return cls(n, [full & ~((1 << (v + 1)) - 1) for v in range(n)])

    def vertices(self) -> range:
        return range(self.n)

    def out_neighbors(self, v: int) -> list[int]:
        return bits_to_list(self.out_adj[v])

    def in_neighbors(self, v: int) -> list[int]:
        return bits_to_list(self.in_adj[v])

    def neighbors(self, v: int) -> list[int]:
        return bits_to_list(self.out_adj[v] | self.in_adj[v])

    def neighbor_mask(self, v: int) -> int:
        return self.out_adj[v] | self.in_adj[v]

    def out_degree(self, v: int) -> int:
        return self.out_adj[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_adj[v].bit_count()

    def degree(self, v: int) -> int:
        return self.out_degree(v) + self.in_degree(v)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_adj[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.out_adj[u])]

    @property
    def num_arcs(self) -> int:
        return sum(row.bit_count() for row in self.out_adj)

    num_edges = num_arcs

    def is_tournament(self) -> bool:
        full = (1 << self.n) - 1
        return all((self.out_adj[v] | self.in_adj[v] | (1 << v)) == full for v in range(self.n))

    def underlying(self) -> Graph:
        return underlying(self)

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self.n == other.n and self.out_adj == other.out_adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.directed, self.n, self.out_adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.num_arcs})"


AnyGraph = Union[Graph, Digraph]


@dataclass(frozen=True)
class Acyclicity:
    """Outcome of :func:`is_acyclic`.

    For an acyclic input ``witness`` is a topological order (digraphs) or a
    parent array of a rooted spanning forest with ``-1`` at roots (graphs).
    Otherwise ``witness`` lists the vertices of one cycle in traversal order.
    """

    acyclic: bool
    witness: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.acyclic


def underlying(d: Digraph) -> Graph:
    return Graph(d.n, [d.out_adj[v] | d.in_adj[v] for v in range(d.n)])


def _check_subset(g: AnyGraph, vertices: Iterable[int]) -> list[int]:
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    return keep


def _remap_row(row: int, keep_mask: int, new_id: dict[int, int]) -> int:
    out = 0
    for u in iter_bits(row & keep_mask):
        out |= 1 << new_id[u]
    return out


def induced_subgraph(g: AnyGraph, vertices: Iterable[int]) -> tuple[AnyGraph, dict[int, int]]:
    """Subgraph induced on ``vertices``, re-indexed densely in increasing id order.

    Returns the subgraph and the old->new id map.
    """
    keep = _check_subset(g, vertices)
    new_id = {v: i for i, v in enumerate(keep)}
    keep_mask = to_mask(keep)
    if g.directed:
        rows = [_remap_row(g.out_adj[v], keep_mask, new_id) for v in keep]
        return Digraph(len(keep), rows), new_id
    rows = [_remap_row(g.adj[v], keep_mask, new_id) for v in keep]
    return Graph(len(keep), rows), new_id


def remove_vertices(g: AnyGraph, vertices: Iterable[int]) -> tuple[AnyGraph, dict[int, int]]:
    """``G - S``: the subgraph induced on the complement of ``vertices``."""
    drop = set(_check_subset(g, vertices))
    return induced_subgraph(g, [v for v in range(g.n) if v not in drop])


def _directed_acyclicity(d: Digraph, mask: int) -> Acyclicity:
    indeg = {v: (d.in_adj[v] & mask).bit_count() for v in iter_bits(mask)}
    ready = [v for v in sorted(indeg) if indeg[v] == 0]
    order: list[int] = []
    heapq.heapify(ready)
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in iter_bits(d.out_adj[v] & mask):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) == len(indeg):
        return Acyclicity(True, tuple(order))
    # every leftover vertex has an in-neighbour among the leftovers; walk back
    rest = mask & ~to_mask(order)
    v = (rest & -rest).bit_length() - 1
    seen: dict[int, int] = {}
    walk: list[int] = []
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        preds = d.in_adj[v] & rest
        v = (preds & -preds).bit_length() - 1
    cycle = walk[seen[v]:]
    cycle.reverse()
    return Acyclicity(False, tuple(cycle))


def _undirected_acyclicity(g: Graph, mask: int) -> Acyclicity:
    parent = [-1] * g.n
    seen = 0
    for root in iter_bits(mask):
        if seen >> root & 1:
            continue
        seen |= 1 << root
        stack = [root]
        while stack:
            v = stack.pop()
            for w in iter_bits(g.adj[v] & mask):
                if w == parent[v]:
                    continue
                if seen >> w & 1:
                    # back edge v-w closes a cycle through their common ancestor
                    path_v = [v]
                    while path_v[-1] != -1:
                        path_v.append(parent[path_v[-1]])
                    path_w = [w]
                    while path_w[-1] != -1:
                        path_w.append(parent[path_w[-1]])
                    anc = set(path_v)
                    meet = next(x for x in path_w if x in anc)
                    left = path_v[: path_v.index(meet) + 1]
                    right = path_w[: path_w.index(meet)]
                    return Acyclicity(False, tuple(left + right[::-1]))
                seen |= 1 << w
                parent[w] = v
                stack.append(w)
    return Acyclicity(True, tuple(parent))


def is_acyclic(g: AnyGraph, within: int | None = None) -> Acyclicity:
    """Forest test for graphs, DAG test for digraphs.

    ``within`` optionally restricts the test to the vertex bitmask given; the
    witness then keeps the original vertex ids.
    """
    mask = (1 << g.n) - 1 if within is None else within
    if g.directed:
        return _directed_acyclicity(g, mask)
    return _undirected_acyclicity(g, mask)


def add_apex(g: Graph) -> Graph:
    """Add vertex ``n`` adjacent to every existing vertex."""
    if g.directed:
        raise GraphError("add_apex is defined for undirected graphs")
    n = g.n
    rows = [row | (1 << n) for row in g.adj]
    rows.append((1 << n) - 1)
    return Graph(n + 1, rows)


def disjoint_union(graphs: Sequence[AnyGraph]) -> tuple[AnyGraph, list[int]]:
    """Disjoint union with cumulative id offsets; returns the union and offsets."""
    if not graphs:
        return Graph.empty(0), []
    kinds = {g.directed for g in graphs}
    if len(kinds) != 1:
        raise GraphError("cannot take a disjoint union of graphs and digraphs")
    offsets = []
    rows: list[int] = []
    total = 0
    for g in graphs:
        offsets.append(total)
        src = g.out_adj if g.directed else g.adj
        rows.extend(row << total for row in src)
        total += g.n
    if graphs[0].directed:
        return Digraph(total, rows), offsets
    return Graph(total, rows), offsets


def replace_vertex_by_set(g: AnyGraph, v: int, size: int, clique: bool = False
                          ) -> tuple[AnyGraph, list[int], dict[int, int]]:
    """Replace ``v`` by ``size`` twins wired to the rest exactly like ``v``.

    The twins form a stable set, or a transitively oriented clique (lower id
    first) when ``clique`` is set. Original vertices other than ``v`` keep
    their relative order and come first; the twins take the last ``size`` ids.
    Returns the new graph, the twin ids and the old->new map.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    if size < 1:
        raise GraphError("replacement set must be nonempty")
    rest = [u for u in range(g.n) if u != v]
    h, new_id = induced_subgraph(g, rest)
    m = h.n
    twins = list(range(m, m + size))
    if g.directed:
        outs = [new_id[u] for u in g.out_neighbors(v)]
        ins = [new_id[u] for u in g.in_neighbors(v)]
        arcs = h.arcs()
        for s in twins:
            arcs += [(s, w) for w in outs] + [(w, s) for w in ins]
        if clique:
            arcs += [(a, b) for i, a in enumerate(twins) for b in twins[i + 1:]]
        return Digraph.from_arcs(m + size, arcs), twins, new_id
    nbrs = [new_id[u] for u in g.neighbors(v)]
    edges = h.edges()
    for s in twins:
        edges += [(s, w) for w in nbrs]
    if clique:
        edges += [(a, b) for i, a in enumerate(twins) for b in twins[i + 1:]]
    return Graph.from_edges(m + size, edges), twins, new_id


def orient(g: Graph, order: Sequence[int] | None = None) -> Digraph:
    """Orient every edge from the earlier to the later vertex of ``order``."""
    pos = {v: i for i, v in enumerate(order if order is not None else range(g.n))}
    return Digraph.from_arcs(g.n, [(u, v) if pos[u] < pos[v] else (v, u) for u, v in g.edges()])


def to_dot(g: AnyGraph, name: str = "G") -> str:
    """Graphviz DOT text with vertices and edges in increasing id order."""
    if g.directed:
        head, sep, pairs = "digraph", "->", g.arcs()
    else:
        head, sep, pairs = "graph", "--", g.edges()
    lines = [f"{head} {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} {sep} {v};" for u, v in pairs]
    lines.append("}")
    return "\n".join(lines) + "\n"
