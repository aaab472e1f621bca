"""Independent brute-force oracles. They share no code with the package."""

from __future__ import annotations

import itertools
from functools import lru_cache

import networkx as nx


def nx_of(g):
    if g.directed:
        h = nx.DiGraph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.arcs())
    else:
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
    return h


def acyclic_without(h, removed) -> bool:
    sub = h.subgraph(set(h.nodes) - set(removed))
    if h.is_directed():
        return nx.is_directed_acyclic_graph(sub)
    return nx.is_forest(sub) if sub.number_of_nodes() else True


def all_min_fvs(g) -> tuple[int, list[frozenset]]:
    """Size of a minimum FVS and every minimum FVS, by subset enumeration."""
    h = nx_of(g)
    for s in range(g.n + 1):
        sols = [frozenset(F) for F in itertools.combinations(range(g.n), s) if acyclic_without(h, F)]
        if sols:
            return s, sols
    raise AssertionError("unreachable")


def brute_fvs(g) -> int:
    return all_min_fvs(g)[0]


def is_bad(g, R) -> bool:
    _, sols = all_min_fvs(g)
    return not any(set(R) <= F for F in sols)


def degeneracy(g) -> int:
    h = nx_of(g).to_undirected()
    h.remove_edges_from(nx.selfloop_edges(h))
    return max(nx.core_number(h).values(), default=0)


def s_last_degeneracy(n: int, edges, S) -> int:
    """Least k with a removal sequence of V-S (S removed last) of max removal degree k."""
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    s_mask = sum(1 << v for v in S)
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def best(left: int) -> int:
        rest = left & ~s_mask
        if not rest:
            # remove what is left of S from the end, cheapest-degree first
            worst, cur = 0, left
            while cur:
                v = min((bin(adj[u] & cur).count("1"), u) for u in range(n) if cur >> u & 1)
                worst = max(worst, v[0])
                cur &= ~(1 << v[1])
            return worst
        out = None
        for v in range(n):
            if rest >> v & 1:
                d = bin(adj[v] & left).count("1")
                c = max(d, best(left & ~(1 << v)))
                out = c if out is None else min(out, c)
        return out

    return best(full)


def rl_degeneracy(d, R, r_prime) -> int:
    """Replace r' by |R| twins (stable) and take the S-last degeneracy."""
    n = d.n
    keep = [v for v in range(n) if v != r_prime]
    idx = {v: i for i, v in enumerate(keep)}
    undirected = set()
    pairs = d.arcs() if d.directed else d.edges()
    for a, b in pairs:
        if a != r_prime and b != r_prime:
            undirected.add((idx[a], idx[b]))
    nbrs = [idx[b] if a == r_prime else idx[a] for a, b in pairs if r_prime in (a, b)]
    twins = list(range(len(keep), len(keep) + len(R)))
    for s in twins:
        for w in nbrs:
            undirected.add((s, w))
    return s_last_degeneracy(len(keep) + len(R), sorted(undirected), twins)


def treewidth_brute(g) -> int:
    """Minimum over all elimination orders of the elimination-game width."""
    n = g.n
    if n == 0:
        return 0
    base = [set() for _ in range(n)]
    for a, b in (g.arcs() if g.directed else g.edges()):
        base[a].add(b)
        base[b].add(a)
    best = n - 1
    for perm in itertools.permutations(range(n)):
        adj = [set(s) for s in base]
        width = 0
        alive = set(range(n))
        for v in perm:
            nb = adj[v] & alive
            width = max(width, len(nb))
            if width >= best:
                break
            for x in nb:
                adj[x] |= nb - {x}
            alive.discard(v)
        best = min(best, width)
    return best


def max_transitive(out_sets, n: int) -> int:
    best = 1 if n else 0
    for s in range(2, n + 1):
        found = False
        for S in itertools.combinations(range(n), s):
            degs = sorted(sum(1 for b in S if b in out_sets[a]) for a in S)
            if degs == list(range(s)):
                found = True
                break
        if not found:
            break
        best = s
    return best


def a_brute(n: int) -> int:
    """a(n) over every labelled n-tournament."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    worst = n
    for bits in range(1 << len(pairs)):
        out_sets = [set() for _ in range(n)]
        for t, (i, j) in enumerate(pairs):
            if bits >> t & 1:
                out_sets[i].add(j)
            else:
                out_sets[j].add(i)
        worst = min(worst, max_transitive(out_sets, n))
    return worst


def digraph6_bits(n: int, arcs) -> str:
    """Reference digraph6 body (no header) built from a bit string."""
    arcset = set(arcs)
    bits = "".join("1" if (i, j) in arcset else "0" for i in range(n) for j in range(n))
    bits += "0" * (-len(bits) % 6)
    body = "".join(chr(int(bits[p:p + 6], 2) + 63) for p in range(0, len(bits), 6))
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return head + body
