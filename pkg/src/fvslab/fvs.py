"""Exact minimum feedback vertex sets, maximum acyclic sets, bad-set checks.

The solver is a memoised branch-and-bound over vertex bitmasks. Each call
first strips vertices that cannot lie on a cycle, splits into strongly
connected (or connected) pieces, and branches on the vertices of a shortest
cycle. Lower bounds come from greedy vertex-disjoint packings.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph_core import (AnyGraph, Digraph, GraphError, induced_subgraph, is_acyclic, iter_bits,
                         remove_vertices, to_mask)


class BudgetExceeded(Exception):
    """The minimum FVS is larger than the caller's size cap."""

    def __init__(self, budget: int, lower_bound: int):
        super().__init__(f"minimum feedback vertex set exceeds budget {budget} (lower bound {lower_bound})")
        self.budget = budget
        self.lower_bound = lower_bound


class _Timeout(Exception):
    pass


@dataclass(frozen=True)
class FvsCertificate:
    vertices: tuple[int, ...]
    size: int
    residual_witness: tuple[int, ...]
    optimal: bool

    def validate(self, g: AnyGraph) -> bool:
        keep = ((1 << g.n) - 1) & ~to_mask(self.vertices)
        return bool(is_acyclic(g, keep))


def certificate_for(g: AnyGraph, vertices: Iterable[int], optimal: bool) -> FvsCertificate:
    """Wrap a feedback vertex set, computing the residual witness (ids of ``g``)."""
    F = tuple(sorted(set(vertices)))
    keep = ((1 << g.n) - 1) & ~to_mask(F)
    res = is_acyclic(g, keep)
    if not res:
        raise GraphError(f"not a feedback vertex set: cycle {list(res.witness)} survives")
    return FvsCertificate(F, len(F), res.witness, optimal)


class _Solver:
    def __init__(self, g: AnyGraph, deadline: float | None = None):
        self.n = g.n
        self.directed = g.directed
        if g.directed:
            self.out = g.out_adj
            self.inn = g.in_adj
        else:
            self.out = self.inn = g.adj
        self.exact: dict[int, int] = {}
        self.lower: dict[int, int] = {}
        self.choice: dict[int, int] = {}
        self.deadline = deadline
        self.ticks = 0

    # ----- structure

    def reduce(self, mask: int) -> int:
        out, inn = self.out, self.inn
        changed = True
        while changed:
            changed = False
            for v in iter_bits(mask):
                if self.directed:
                    dead = not (out[v] & mask) or not (inn[v] & mask)
                else:
                    dead = (out[v] & mask).bit_count() <= 1
                if dead:
                    mask &= ~(1 << v)
                    changed = True
        return mask

    def components(self, mask: int) -> list[int]:
        if not self.directed:
            comps = []
            rest = mask
            while rest:
                seed = rest & -rest
                comp = seed
                frontier = seed
                while frontier:
                    nxt = 0
                    for v in iter_bits(frontier):
                        nxt |= self.out[v]
                    nxt &= mask & ~comp
                    comp |= nxt
                    frontier = nxt
                comps.append(comp)
                rest &= ~comp
            return comps
        return [c for c in self._sccs(mask) if c & (c - 1)]

    def _reach(self, start: int, mask: int, adj: Sequence[int]) -> int:
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def _sccs(self, mask: int) -> list[int]:
        out = []
        rest = mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            comp = self._reach(v, rest, self.out) & self._reach(v, rest, self.inn)
            out.append(comp)
            rest &= ~comp
        return out

    def shortest_cycle(self, mask: int) -> list[int] | None:
        """Vertices of a shortest cycle (closed walk in the undirected case) in ``mask``."""
        best: list[int] | None = None
        for s in iter_bits(mask):
            if best is not None and len(best) <= 3:
                break
            cyc = self._cycle_from(s, mask, best)
            if cyc is not None and (best is None or len(cyc) < len(best)):
                best = cyc
        return best

    def _cycle_from(self, s: int, mask: int, best: list[int] | None) -> list[int] | None:
        out = self.out
        limit = len(best) if best is not None else self.n + 1
        if self.directed:
            parent = {s: -1}
            frontier = [s]
            depth = 0
            while frontier and depth + 1 < limit:
                depth += 1
                nxt = []
                for v in frontier:
                    if out[v] >> s & 1:
                        path = [v]
                        while parent[path[-1]] != -1:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    for w in iter_bits(out[v] & mask):
                        if w not in parent:
                            parent[w] = v
                            nxt.append(w)
                frontier = nxt
            return None
        # undirected: BFS tree from s; the first non-tree edge between the
        # current level and a seen vertex closes a closed walk through s
        parent = {s: -1}
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for w in iter_bits(out[v] & mask):
                    if w == parent[v]:
                        continue
                    if w in dist:
                        if dist[v] + dist[w] + 1 >= limit:
                            continue
                        a = [v]
                        while parent[a[-1]] != -1:
                            a.append(parent[a[-1]])
                        b = [w]
                        while parent[b[-1]] != -1:
                            b.append(parent[b[-1]])
                        return sorted(set(a) | set(b))
                    parent[w] = v
                    dist[w] = dist[v] + 1
                    nxt.append(w)
            frontier = nxt
            if frontier and 2 * dist[frontier[0]] + 1 >= limit:
                return None
        return None

    # ----- bounds

    def lower_bound(self, mask: int) -> int:
        lb = 0
        rest = mask
        while True:
            rest = self.reduce(rest)
            if not rest:
                break
            cyc = self.shortest_cycle(rest)
            if cyc is None:
                break
            lb += 1
            rest &= ~to_mask(cyc)
        if not self.directed:
            verts = list(iter_bits(mask))
            degs = sorted(((self.out[v] & mask).bit_count() for v in verts), reverse=True)
            m = sum(degs) // 2
            need = m - len(verts) + 1
            t = 0
            acc = 0
            while acc < need and t < len(degs):
                acc += degs[t] - 1
                t += 1
            lb = max(lb, t)
        return lb

    def heuristic(self, mask: int) -> list[int]:
        """Greedy FVS: drop the highest-degree vertex, then prune redundant picks."""
        chosen = []
        rest = self.reduce(mask)
        while rest:
            if self.directed:
                v = max(iter_bits(rest), key=lambda x: ((self.out[x] & rest).bit_count()
                                                       * (self.inn[x] & rest).bit_count(), -x))
            else:
                v = max(iter_bits(rest), key=lambda x: ((self.out[x] & rest).bit_count(), -x))
            chosen.append(v)
            rest = self.reduce(rest & ~(1 << v))
        for v in sorted(chosen, reverse=True):
            trial = [u for u in chosen if u != v]
            if not self.reduce(mask & ~to_mask(trial)):
                chosen = trial
        return sorted(chosen)

    # ----- search

    def _tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks % 256 == 0 and time.monotonic() > self.deadline:
            raise _Timeout

    def solve(self, mask: int, b: int) -> int:
        """Exact f if it is at most ``b``, otherwise some lower bound exceeding ``b``."""
        mask = self.reduce(mask)
        if not mask:
            return 0
        if b < 0:
            return 1
        comps = self.components(mask)
        if len(comps) > 1:
            comps.sort(key=lambda c: (c.bit_count(), c))
            lbs = [self.lower.get(c, 0) or (1 if c else 0) for c in comps]
            total = 0
            for i, c in enumerate(comps):
                slack = b - total - sum(lbs[i + 1:])
                r = self._solve_one(c, slack)
                if r > slack:
                    return total + r + sum(lbs[i + 1:])
                total += r
            return total
        return self._solve_one(mask, b)

    def _solve_one(self, mask: int, b: int) -> int:
        hit = self.exact.get(mask)
        if hit is not None:
            return hit
        known = self.lower.get(mask, 0)
        if known > b:
            return known
        self._tick()
        lb = max(known, self.lower_bound(mask))
        if lb > b:
            self.lower[mask] = lb
            return lb
        cyc = self.shortest_cycle(mask)
        best = None
        bound = None
        for v in cyc:
            cap = b if best is None else best - 1
            if cap < 1:
                break
            r = 1 + self.solve(mask & ~(1 << v), cap - 1)
            if r <= cap:
                best = r
                self.choice[mask] = v
                if best == lb:
                    break
            else:
                bound = r if bound is None else min(bound, r)
        if best is not None:
            self.exact[mask] = best
            return best
        self.lower[mask] = max(known, lb, bound if bound is not None else b + 1)
        return self.lower[mask]

    def reconstruct(self, mask: int) -> list[int]:
        mask = self.reduce(mask)
        if not mask:
            return []
        out = []
        for c in self.components(mask):
            c = self.reduce(c)
            if not c:
                continue
            v = self.choice[c]
            out.append(v)
            out.extend(self.reconstruct(c & ~(1 << v)))
        return out


def min_fvs(g: AnyGraph, budget: int | None = None, deadline_ms: int | None = None
            ) -> FvsCertificate:
    """Minimum feedback vertex set with an acyclicity certificate.

    ``budget`` caps the size searched for (:class:`BudgetExceeded` beyond it).
    On ``deadline_ms`` expiry the best set found so far is returned with
    ``optimal=False``. Single-threaded, so the returned set is deterministic.
    """
    deadline = None if deadline_ms is None else time.monotonic() + deadline_ms / 1000
    s = _Solver(g, deadline)
    full = s.reduce((1 << g.n) - 1)
    if not full:
        return certificate_for(g, [], True)
    incumbent = s.heuristic(full)
    capped = budget is not None and budget < len(incumbent)
    limit = budget if capped else len(incumbent) - 1
    try:
        b = s.lower_bound(full)
        found = False
        while b <= limit:
            r = s.solve(full, b)
            if r <= b:
                found = True
                break
            b = max(b + 1, r)
        if not found:
            if capped:
                raise BudgetExceeded(budget, b)
            return certificate_for(g, incumbent, True)
        F = s.reconstruct(full)
    except _Timeout:
        if budget is not None and len(incumbent) > budget:
            raise BudgetExceeded(budget, 0) from None
        return certificate_for(g, incumbent, False)
    return certificate_for(g, F, True)


def fvs_size(g: AnyGraph, **kw) -> int:
    return min_fvs(g, **kw).size


def max_acyclic_set(g: AnyGraph, deadline_ms: int | None = None) -> tuple[int, ...]:
    cert = min_fvs(g, deadline_ms=deadline_ms)
    drop = set(cert.vertices)
    return tuple(v for v in range(g.n) if v not in drop)


# ---------------------------------------------------------------- tournaments

@dataclass(frozen=True)
class TournamentResult:
    n: int
    value: int
    tournament: Digraph
    exact: bool


def _transitive(out: Sequence[int], S: int) -> bool:
    degs = sorted((out[v] & S).bit_count() for v in iter_bits(S))
    return degs == list(range(len(degs)))


def _avoiding_tournament(n: int, m: int) -> list[int] | None:
    """Out-adjacency of an n-tournament with no transitive (m+1)-subset, or None.

    Complete backtracking search, one vertex at a time; the property is
    hereditary, so every partial tournament is checked as it grows.
    """
    out = [0] * n

    def extend(t: int) -> bool:
        if t == n:
            return True
        for pattern in range(1 << t):
            # bit j of pattern set: arc t -> j, else j -> t
            for j in range(t):
                if pattern >> j & 1:
                    out[j] &= ~(1 << t)
                else:
                    out[j] |= 1 << t
            out[t] = pattern
            ok = True
            if m <= t:
                for sub in itertools.combinations(range(t), m):
                    if _transitive(out, to_mask(sub) | (1 << t)):
                        ok = False
                        break
            if ok and extend(t + 1):
                return True
        for j in range(t):
            out[j] &= ~(1 << t)
        out[t] = 0
        return False

    return list(out) if extend(0) else None


def _max_transitive(d: Digraph) -> int:
    return d.n - min_fvs(d).size


def tournament_a(n: int, seed: int = 0, iterations: int = 2000) -> TournamentResult:
    """a(n) with an extremal witness: exact for n <= 7, an upper bound above."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 7:
        for m in range(1, n + 1):
            out = _avoiding_tournament(n, m)
            if out is not None:
                return TournamentResult(n, m, Digraph(n, out), True)
        return TournamentResult(n, n, Digraph.transitive_tournament(n), True)
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    arcs = [(i, j) if rng.random() < 0.5 else (j, i) for i, j in pairs]
    d = Digraph.from_arcs(n, arcs)
    best = _max_transitive(d)
    for _ in range(iterations):
        idx = rng.randrange(len(arcs))
        u, v = arcs[idx]
        arcs[idx] = (v, u)
        cand = Digraph.from_arcs(n, arcs)
        val = _max_transitive(cand)
        if val <= best:
            d, best = cand, val
        else:
            arcs[idx] = (u, v)
    return TournamentResult(n, best, d, False)


# ---------------------------------------------------------------- bad sets

@dataclass(frozen=True)
class BadSetReport:
    R: tuple[int, ...]
    is_bad: bool
    is_minimal_bad: bool
    f: int
    f_forced: int
    f_without: dict[int, int] = field(default_factory=dict)


def bad_set_report(g: AnyGraph, R: Iterable[int], deadline_ms: int | None = None) -> BadSetReport:
    """Badness of ``R``: whether no minimum FVS contains it, and minimality."""
    R = tuple(sorted(set(R)))
    for v in R:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")

    def f_of(drop: Sequence[int]) -> int:
        sub, _ = remove_vertices(g, drop)
        cert = min_fvs(sub, deadline_ms=deadline_ms)
        if not cert.optimal:
            raise TimeoutError("solver deadline expired during bad-set check")
        return cert.size

    f = f_of(())
    forced = len(R) + f_of(R)
    bad = forced > f
    without = {}
    minimal = False
    if bad:
        minimal = True
        for v in R:
            rest = [u for u in R if u != v]
            without[v] = len(rest) + f_of(rest)
            if without[v] != f:
                minimal = False
    return BadSetReport(R, bad, minimal, f, forced, without)


def find_minimal_bad_set(g: AnyGraph, max_size: int | None = None,
                         candidates: Iterable[int] | None = None) -> tuple[int, ...] | None:
    """A smallest bad set (hence minimal), lexicographically first among those."""
    verts = sorted(candidates) if candidates is not None else list(range(g.n))
    f = min_fvs(g).size
    top = len(verts) if max_size is None else min(max_size, len(verts))
    cache: dict[tuple[int, ...], int] = {}
    for s in range(1, top + 1):
        for R in itertools.combinations(verts, s):
            if R not in cache:
                cache[R] = min_fvs(remove_vertices(g, R)[0]).size
            if s + cache[R] > f:
                return R
    return None


def induced_fvs_size(g: AnyGraph, vertices: Iterable[int]) -> int:
    return min_fvs(induced_subgraph(g, vertices)[0]).size
