"""Elimination orderings, degeneracy, right-left degeneracy, k-trees, treewidth.

An ordering lists vertices by position: ``order[0]`` has phi-value 1. The
back-degree ``d_p(v)`` counts neighbours placed before ``v``, the forward
degree ``d_s(v)`` those placed after. Vertices are eliminated right to left,
so a greedy peel produces the ordering in reverse.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph_core import (AnyGraph, Graph, GraphError, iter_bits, replace_vertex_by_set,
                         to_mask)

TREEWIDTH_EXACT_LIMIT = 20


class InvariantViolation(RuntimeError):
    """An input promised to have a structure (e.g. a k-tree) did not."""


def _as_graph(g: AnyGraph) -> Graph:
    return g.underlying() if g.directed else g


@dataclass(frozen=True)
class EliminationOrdering:
    order: tuple[int, ...]
    back_degrees: tuple[int, ...]
    forward_degrees: tuple[int, ...]
    chordal: tuple[bool, ...]

    @classmethod
    def of(cls, g: AnyGraph, order: Sequence[int]) -> "EliminationOrdering":
        g = _as_graph(g)
        order = tuple(order)
        if sorted(order) != list(range(g.n)):
            raise GraphError("ordering is not a permutation of the vertices")
        back = [0] * g.n
        fwd = [0] * g.n
        chordal = [True] * g.n
        seen = 0
        for v in order:
            b = g.adj[v] & seen
            back[v] = b.bit_count()
            fwd[v] = g.degree(v) - back[v]
            for u in iter_bits(b):
                if (b & ~(1 << u)) & ~g.adj[u]:
                    chordal[v] = False
                    break
            seen |= 1 << v
        return cls(order, tuple(back), tuple(fwd), tuple(chordal))

    @property
    def width(self) -> int:
        return max(self.back_degrees, default=0)

    @property
    def is_chordal(self) -> bool:
        return all(self.chordal)

    def position(self, v: int) -> int:
        """phi(v), 1-based."""
        return self.order.index(v) + 1

    def positions(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i + 1
        return pos


@dataclass(frozen=True)
class TreewidthWitness:
    kind: str  # "exact" or "upper"
    value: int
    ordering: EliminationOrdering


def _peel(g: Graph, frozen: int = 0) -> tuple[int, list[int]]:
    """Greedy min-degree peel, lowest id on ties, never peeling ``frozen``
    until everything else is gone. Returns (max degree at peel time, peel order)."""
    n = g.n
    deg = [g.adj[v].bit_count() for v in range(n)]
    alive = (1 << n) - 1
    heap = [(deg[v], v) for v in range(n) if not frozen >> v & 1]
    heapq.heapify(heap)
    peel: list[int] = []
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if not alive >> v & 1 or d != deg[v]:
            continue
        k = max(k, d)
        peel.append(v)
        alive &= ~(1 << v)
        for w in iter_bits(g.adj[v] & alive):
            deg[w] -= 1
            if not frozen >> w & 1:
                heapq.heappush(heap, (deg[w], w))
    rest = list(iter_bits(alive))
    # frozen remainder: peel it too (min degree first) so the ordering is total
    if rest:
        sub = _peel_mask(g, alive)
        k = max(k, sub[0])
        peel.extend(sub[1])
    return k, peel


def _peel_mask(g: Graph, mask: int) -> tuple[int, list[int]]:
    alive = mask
    peel = []
    k = 0
    while alive:
        best = None
        for v in iter_bits(alive):
            d = (g.adj[v] & alive).bit_count()
            if best is None or d < best[0]:
                best = (d, v)
        k = max(k, best[0])
        peel.append(best[1])
        alive &= ~(1 << best[1])
    return k, peel


def degeneracy(g: AnyGraph) -> tuple[int, EliminationOrdering]:
    """Exact degeneracy with a witness ordering of that width."""
    g = _as_graph(g)
    k, peel = _peel(g)
    return k, EliminationOrdering.of(g, peel[::-1])


def rl_graph(d: AnyGraph, R: Iterable[int], r_prime: int, clique: bool = False
             ) -> tuple[AnyGraph, list[int], dict[int, int]]:
    """Replace ``r_prime`` by ``|R|`` twins; returns (graph, twin ids, old->new map)."""
    R = sorted(set(R))
    if not R:
        raise GraphError("R must be nonempty")
    if r_prime in R:
        raise GraphError(f"r' = {r_prime} must not belong to R")
    return replace_vertex_by_set(d, r_prime, len(R), clique=clique)


def s_last_degeneracy(g: AnyGraph, S: Iterable[int]) -> tuple[int, EliminationOrdering]:
    """Least k admitting a k-elimination ordering with ``S`` in the first positions."""
    g = _as_graph(g)
    S = list(S)
    k, peel = _peel(g, frozen=to_mask(S))
    return k, EliminationOrdering.of(g, peel[::-1])


def rl_degeneracy(d: AnyGraph, R: Iterable[int], r_prime: int) -> tuple[int, EliminationOrdering]:
    """Right-left degeneracy of the block ``(d, R, r_prime)``.

    The ordering is over the vertices of :func:`rl_graph` (twins last by id,
    first by position).
    """
    h, twins, _ = rl_graph(d, R, r_prime)
    return s_last_degeneracy(h, twins)


# ---------------------------------------------------------------- fill-in

def fill_in(g: AnyGraph, order: Sequence[int]) -> tuple[Graph, int]:
    """Chordal completion along ``order`` (eliminating right to left).

    Returns the filled graph and its width (max back-degree).
    """
    g = _as_graph(g)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    adj = list(g.adj)
    earlier = [0] * g.n
    acc = 0
    for v in order:
        earlier[v] = acc
        acc |= 1 << v
    width = 0
    for v in reversed(order):
        b = adj[v] & earlier[v]
        width = max(width, b.bit_count())
        for u in iter_bits(b):
            extra = b & ~(1 << u) & ~adj[u]
            if extra:
                adj[u] |= extra
                for w in iter_bits(extra):
                    adj[w] |= 1 << u
    return Graph(g.n, adj), width


def _greedy_elimination(g: Graph, rule: str) -> list[int]:
    """Elimination sequence (first eliminated first) by min-fill or min-degree."""
    adj = list(g.adj)
    alive = (1 << g.n) - 1
    seq = []
    for _ in range(g.n):
        best = None
        for v in iter_bits(alive):
            nb = adj[v] & alive
            if rule == "min-degree":
                score = nb.bit_count()
            else:
                score = 0
                for u in iter_bits(nb):
                    score += (nb & ~adj[u] & ~(1 << u)).bit_count()
                score //= 2
            if best is None or score < best[0]:
                best = (score, v)
                if score == 0 and rule != "min-degree":
                    break
        v = best[1]
        nb = adj[v] & alive
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
        seq.append(v)
    return seq


def treewidth_upper(g: AnyGraph, hint: EliminationOrdering | Sequence[int] | None = None
                    ) -> TreewidthWitness:
    """Upper bound witness: the hint's fill-in width, else greedy min-fill."""
    g = _as_graph(g)
    if hint is not None:
        order = hint.order if isinstance(hint, EliminationOrdering) else tuple(hint)
    else:
        rule = "min-fill" if g.n <= 300 else "min-degree"
        order = tuple(_greedy_elimination(g, rule)[::-1])
    filled, width = fill_in(g, order)
    return TreewidthWitness("upper", width, EliminationOrdering.of(filled, order))


def _minor_min_width(g: Graph) -> int:
    adj = list(g.adj)
    alive = (1 << g.n) - 1
    lb = 0
    while alive.bit_count() > 1:
        v = min(iter_bits(alive), key=lambda x: ((adj[x] & alive).bit_count(), x))
        nb = adj[v] & alive
        lb = max(lb, nb.bit_count())
        alive &= ~(1 << v)
        if nb:
            u = min(iter_bits(nb), key=lambda x: ((adj[x] & alive).bit_count(), x))
            # contract v into u
            for w in iter_bits(nb & ~(1 << u)):
                adj[w] |= 1 << u
                adj[u] |= 1 << w
    return lb


def _tw_decide(g: Graph, k: int) -> list[int] | None:
    """Elimination sequence of width <= k, or None. DFS over eliminated sets."""
    n = g.n
    full = (1 << n) - 1
    adj = g.adj
    dead: set[int] = set()

    def q(S: int, v: int) -> int:
        comp = 1 << v
        frontier = comp
        inner = S | comp
        while frontier:
            nxt = 0
            for x in iter_bits(frontier):
                nxt |= adj[x] & S
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        out = 0
        for x in iter_bits(comp):
            out |= adj[x]
        return (out & ~inner & ~comp).bit_count()

    path: list[int] = []

    def dfs(S: int) -> bool:
        if n - S.bit_count() <= k + 1:
            return True
        if S in dead:
            return False
        for v in iter_bits(full & ~S):
            if q(S, v) <= k:
                path.append(v)
                if dfs(S | (1 << v)):
                    return True
                path.pop()
        dead.add(S)
        return False

    if not dfs(0):
        return None
    eliminated = to_mask(path)
    path.extend(iter_bits(full & ~eliminated))
    return path


def treewidth_exact(g: AnyGraph, limit: int = TREEWIDTH_EXACT_LIMIT) -> TreewidthWitness:
    g = _as_graph(g)
    if g.n > limit:
        raise ValueError(f"n={g.n} exceeds the exact treewidth limit {limit}; use treewidth_upper")
    if g.n == 0:
        return TreewidthWitness("exact", 0, EliminationOrdering.of(g, ()))
    upper = treewidth_upper(g)
    lb = max(degeneracy(g)[0], _minor_min_width(g))
    best = upper
    for k in range(lb, upper.value):
        seq = _tw_decide(g, k)
        if seq is not None:
            order = seq[::-1]
            filled, width = fill_in(g, order)
            best = TreewidthWitness("exact", width, EliminationOrdering.of(filled, order))
            break
    return TreewidthWitness("exact", best.value, best.ordering)


# ---------------------------------------------------------------- completions

def complete_to_maximal_kdegenerate(g: AnyGraph, k: int, order: Sequence[int] | None = None
                                    ) -> tuple[Graph, EliminationOrdering]:
    """Add edges so that ``d_p(v) = min(k, phi(v) - 1)`` along a k-elimination ordering.

    Missing back-edges go to the earliest non-adjacent earlier vertices.
    """
    g = _as_graph(g)
    if order is None:
        d, ordering = degeneracy(g)
        if d > k:
            raise GraphError(f"degeneracy {d} exceeds k={k}")
        order = ordering.order
    else:
        order = tuple(order)
        if EliminationOrdering.of(g, order).width > k:
            raise GraphError(f"supplied ordering is not a {k}-elimination ordering")
    adj = list(g.adj)
    seen = 0
    for p, v in enumerate(order):
        need = min(k, p) - (adj[v] & seen).bit_count()
        for u in order[:p]:
            if need <= 0:
                break
            if not adj[v] >> u & 1:
                adj[v] |= 1 << u
                adj[u] |= 1 << v
                need -= 1
        seen |= 1 << v
    h = Graph(g.n, adj)
    return h, EliminationOrdering.of(h, order)


def complete_to_ktree(g: AnyGraph, k: int, hint: EliminationOrdering | Sequence[int] | None = None
                      ) -> tuple[Graph, EliminationOrdering]:
    """A k-tree containing ``g`` with its chordal construction ordering.

    Graphs on at most k+1 vertices are completed to a clique.
    """
    g = _as_graph(g)
    if hint is not None:
        wit = treewidth_upper(g, hint)
    elif g.n <= TREEWIDTH_EXACT_LIMIT:
        wit = treewidth_exact(g)
    else:
        wit = treewidth_upper(g)
    if wit.value > k:
        raise GraphError(f"no width-{k} ordering available (best found {wit.value})")
    order = wit.ordering.order
    filled, _ = fill_in(g, order)
    n = g.n
    adj = list(filled.adj)
    head = to_mask(order[:k + 1])
    for v in order[:k + 1]:
        adj[v] |= head & ~(1 << v)
    cliques: list[int] = [head]
    member: dict[int, list[int]] = {v: [0] for v in order[:k + 1]}
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    seen = head
    for v in order[k + 1:]:
        b = adj[v] & seen
        if b:
            latest = max(iter_bits(b), key=lambda x: pos[x])
            host = next((c for c in (cliques[i] for i in member[latest]) if b & ~c == 0), None)
        else:
            host = cliques[0]
        if host is None:
            raise InvariantViolation("back-neighbourhood not contained in a stored clique")
        spare = host & ~b
        drop = max(iter_bits(spare), key=lambda x: pos[x])
        target = host & ~(1 << drop)
        for u in iter_bits(target & ~b):
            adj[u] |= 1 << v
        adj[v] |= target
        cid = len(cliques)
        cliques.append(target | (1 << v))
        for u in iter_bits(target | (1 << v)):
            member.setdefault(u, []).append(cid)
        seen |= 1 << v
    h = Graph(n, adj)
    return h, EliminationOrdering.of(h, order)


def is_ktree(g: AnyGraph, k: int) -> bool:
    """Recognise k-trees by stripping simplicial k-vertices down to K_{k+1}."""
    g = _as_graph(g)
    n = g.n
    if n < k + 1:
        return False
    if g.num_edges != k * n - k * (k + 1) // 2:
        return False
    adj = list(g.adj)
    alive = (1 << n) - 1
    stack = [v for v in range(n)]
    count = n
    while count > k + 1:
        found = None
        while stack:
            v = stack.pop()
            if not alive >> v & 1:
                continue
            nb = adj[v] & alive
            if nb.bit_count() == k and all((nb & ~(1 << u)) & ~adj[u] == 0 for u in iter_bits(nb)):
                found = v
                break
        if found is None:
            return False
        nb = adj[found] & alive
        alive &= ~(1 << found)
        count -= 1
        stack.extend(iter_bits(nb))
    rest = list(iter_bits(alive))
    return all((alive & ~(1 << v)) & ~adj[v] == 0 for v in rest)


# ---------------------------------------------------------------- main lemma

def main_lemma_candidates(g: AnyGraph, k: int, within: int | None = None
                          ) -> list[tuple[int, int, list[int]]]:
    """Every ``(v, l, kneighbours)`` with ``d(v) = k + l``, ``l >= 1`` and at least
    ``l`` neighbours of degree at most k, degrees taken inside ``within``."""
    g = _as_graph(g)
    mask = (1 << g.n) - 1 if within is None else within
    deg = {v: (g.adj[v] & mask).bit_count() for v in iter_bits(mask)}
    out = []
    for v in iter_bits(mask):
        l = deg[v] - k
        if l < 1:
            continue
        small = [u for u in iter_bits(g.adj[v] & mask) if deg[u] <= k]
        if len(small) >= l:
            out.append((v, l, small))
    return out


def find_main_lemma_vertex(g: AnyGraph, k: int, within: int | None = None
                           ) -> tuple[int, int, list[int]] | None:
    """A ``(k+l)``-vertex with at least ``l`` neighbours of degree <= k.

    Exact-count candidates are preferred, then lowest id. Returns ``None`` for
    the degenerate case of at most k+1 vertices (a clique has no such vertex).
    """
    g = _as_graph(g)
    mask = (1 << g.n) - 1 if within is None else within
    if mask.bit_count() <= k + 1:
        return None
    cands = main_lemma_candidates(g, k, mask)
    if not cands:
        raise InvariantViolation(f"no main-lemma vertex: input is not {k}-degenerate")
    exact = [c for c in cands if len(c[2]) == c[1]]
    return (exact or cands)[0]
