"""Generators for the gluing schemes and the concrete extremal families.

Every generator returns the graph together with its claimed parameters and
an elimination-ordering witness that is re-measured, never trusted.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Iterable, Mapping, Sequence

from . import codec
from .bounds import floor_log2
from .fvs import bad_set_report, find_minimal_bad_set, min_fvs, tournament_a
from .graph_core import AnyGraph, Digraph, Graph, GraphError, remove_vertices
from .orderings import EliminationOrdering, fill_in, rl_degeneracy, rl_graph


# ---------------------------------------------------------------- types

@dataclass
class BuildingBlock:
    """A triple (D, R, r') with cached measurements (None until computed)."""

    D: AnyGraph
    R: tuple[int, ...]
    r_prime: int
    name: str = ""
    f: int | None = None
    is_bad: bool | None = None
    is_minimal: bool | None = None
    deg_rl: int | None = None
    rl_ordering: EliminationOrdering | None = None
    claimed: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.R = tuple(sorted(set(self.R)))
        if not self.R:
            raise GraphError("R must be nonempty")
        if self.r_prime in self.R:
            raise GraphError(f"r' = {self.r_prime} must not belong to R")
        for v in (*self.R, self.r_prime):
            if not 0 <= v < self.D.n:
                raise GraphError(f"vertex {v} out of range for n={self.D.n}")

    def measure(self, deadline_ms: int | None = None) -> "BuildingBlock":
        """Fill f, badness, minimality and deg_RL from the solver and the peel."""
        rep = bad_set_report(self.D, self.R, deadline_ms=deadline_ms)
        self.f, self.is_bad, self.is_minimal = rep.f, rep.is_bad, rep.is_minimal_bad
        self.deg_rl, self.rl_ordering = rl_degeneracy(self.D, self.R, self.r_prime)
        return self


@dataclass
class FamilyReport:
    family: str
    index: int
    graph: AnyGraph
    n_formula: int
    f_formula: int
    f_claim: str  # "=" or ">="
    degeneracy_witness: EliminationOrdering
    treewidth_witness: EliminationOrdering | None = None
    bad_set: tuple[int, ...] = ()
    f_exact: int | None = None
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def ratio(self) -> Fraction:
        f = self.f_exact if self.f_exact is not None else self.f_formula
        return Fraction(f, self.graph.n)

    @property
    def treewidth_width(self) -> int | None:
        if self.treewidth_witness is None:
            return None
        return fill_in(self.graph, self.treewidth_witness.order)[1]

    def solve(self, deadline_ms: int | None = None) -> "FamilyReport":
        cert = min_fvs(self.graph, deadline_ms=deadline_ms)
        if not cert.optimal:
            raise TimeoutError(f"solver deadline expired on {self.family} i={self.index}")
        self.f_exact = cert.size
        return self

    def f_consistent(self) -> bool | None:
        if self.f_exact is None:
            return None
        if self.f_claim == "=":
            return self.f_exact == self.f_formula
        return self.f_exact >= self.f_formula


# ---------------------------------------------------------------- general gluing

@dataclass(frozen=True)
class GlueResult:
    graph: AnyGraph
    offsets: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]  # images[i] = R_i in result ids

    def image(self, part: int, v: int) -> int:
        return self.offsets[part] + v

    def bad_set(self, R0: Iterable[int]) -> tuple[int, ...]:
        """Union of R_i over the D0-vertices in ``R0``."""
        return tuple(sorted(v for i in R0 for v in self.images[i]))


def glue_substitution(D0: AnyGraph, parts: Sequence[tuple[AnyGraph, Iterable[int]]]) -> GlueResult:
    """Replace vertex i of ``D0`` by ``parts[i][0]``; join R_i to R_j along each arc."""
    if len(parts) != D0.n:
        raise GraphError(f"D0 has {D0.n} vertices but {len(parts)} parts were given")
    directed = D0.directed
    offsets, images = [], []
    total = 0
    for i, (g, R) in enumerate(parts):
        if g.directed != directed:
            raise GraphError(f"part {i} directedness differs from D0")
        R = sorted(set(R))
        if not R:
            raise GraphError(f"R_{i} must be nonempty")
        if not all(0 <= v < g.n for v in R):
            raise GraphError(f"R_{i} has a vertex outside part {i}")
        offsets.append(total)
        images.append(tuple(total + v for v in R))
        total += g.n
    pairs = []
    for i, (g, _) in enumerate(parts):
        off = offsets[i]
        pairs += [(a + off, b + off) for a, b in (g.arcs() if directed else g.edges())]
    glue = D0.arcs() if directed else D0.edges()
    for i, j in glue:
        pairs += [(a, b) for a in images[i] for b in images[j]]
    if directed:
        graph: AnyGraph = Digraph.from_arcs(total, pairs)
    else:
        graph = Graph.from_edges(total, pairs)
    return GlueResult(graph, tuple(offsets), tuple(images))


def _iterate_graph(block: BuildingBlock, i: int) -> tuple[AnyGraph, list[dict[int, int]]]:
    """D_i plus, per copy, the map from block ids to D_i ids (copy 0 is D itself)."""
    D, rp, n = block.D, block.r_prime, block.D.n
    maps = [{v: v for v in range(n)}]
    pairs = list(D.arcs() if D.directed else D.edges())
    rest = [v for v in range(n) if v != rp]
    total = n
    if D.directed:
        outs, ins = D.out_neighbors(rp), D.in_neighbors(rp)
    else:
        outs, ins = D.neighbors(rp), []
    for _ in range(i):
        prev = maps[-1]
        cur = {v: total + j for j, v in enumerate(rest)}
        total += len(rest)
        for a, b in (D.arcs() if D.directed else D.edges()):
            if a != rp and b != rp:
                pairs.append((cur[a], cur[b]))
        for r in block.R:
            pairs += [(prev[r], cur[w]) for w in outs]
            pairs += [(cur[w], prev[r]) for w in ins]
        maps.append(cur)
    g = Digraph.from_arcs(total, pairs) if D.directed else Graph.from_edges(total, pairs)
    return g, maps


def _compose_order(block: BuildingBlock, maps: list[dict[int, int]], h_order: Sequence[int],
                   h_map: Mapping[int, int], twins: Sequence[int]) -> list[int]:
    """Chain an S-first ordering of the replaced block across all copies."""
    back = {new: old for old, new in h_map.items()}
    body = [back[v] for v in h_order if v not in set(twins)]
    order = [block.r_prime] + body
    for cur in maps[1:]:
        order += [cur[v] for v in body]
    return order


def iterate_block(block: BuildingBlock, i: int, h_order: Sequence[int] | None = None,
                  tw_order: Sequence[int] | None = None, family: str = "gen") -> FamilyReport:
    """The i-th member of the family obtained by repeatedly gluing copies of a block.

    ``h_order`` is an S-first ordering of the block with r' replaced by a stable
    set; the greedy S-last peel is used when omitted. ``tw_order`` is the same
    for the clique replacement and yields a treewidth witness.
    """
    if i < 0:
        raise ValueError("i must be nonnegative")
    g, maps = _iterate_graph(block, i)
    h, twins, h_map = rl_graph(block.D, block.R, block.r_prime)
    if h_order is None:
        if block.rl_ordering is None:
            block.deg_rl, block.rl_ordering = rl_degeneracy(block.D, block.R, block.r_prime)
        h_order = block.rl_ordering.order
    deg_w = EliminationOrdering.of(g, _compose_order(block, maps, h_order, h_map, twins))
    tw_w = None
    if tw_order is not None:
        _, ctw, cmap = rl_graph(block.D, block.R, block.r_prime, clique=True)
        tw_w = EliminationOrdering.of(g, _compose_order(block, maps, tw_order, cmap, ctw))
    n = block.D.n
    f = block.f if block.f is not None else min_fvs(block.D).size
    exact = bool(block.is_minimal)
    last = maps[-1]
    return FamilyReport(family, i, g, n + i * (n - 1), (i + 1) * f, "=" if exact else ">=",
                        deg_w, tw_w, tuple(sorted(last[r] for r in block.R)),
                        params={"block": block.name, "n_block": n, "f_block": f})


# ---------------------------------------------------------------- undirected families

def even_deg_block(k: int) -> FamilyReport:
    """l = k/2 copies of K_{k+1} wired into one K_{l+1}; f = k^2/2."""
    if k < 2 or k % 2:
        raise GraphError("k must be even and at least 2")
    l = k // 2

    def c(a: int, i: int) -> int:  # clique vertex (a, i), both 1-based
        return (i - 1) * (k + 1) + a - 1

    def hub(j: int) -> int:
        return l * (k + 1) + j - 1

    edges = []
    for i in range(1, l + 1):
        edges += [(c(a, i), c(b, i)) for a in range(1, k + 2) for b in range(a + 1, k + 2)]
        edges += [(c(a, i), hub(i)) for a in range(1, k + 1)]
        edges += [(c(k + 1, i), hub(j)) for j in range(i + 1, l + 2)]
    edges += [(hub(a), hub(b)) for a in range(1, l + 2) for b in range(a + 1, l + 2)]
    n = l * (k + 1) + l + 1
    g = Graph.from_edges(n, edges)
    # peel: hub l+1, then per clique from the last: (k+1, i), the rest of the clique, hub i
    removal = [hub(l + 1)]
    for i in range(l, 0, -1):
        removal += [c(k + 1, i)] + [c(a, i) for a in range(1, k + 1)] + [hub(i)]
    witness = EliminationOrdering.of(g, removal[::-1])
    return FamilyReport("evendeg", 0, g, (k + 2) * k // 2 + 1, k * k // 2, "=", witness,
                        params={"k": k})


def lbdg_block(k: int) -> tuple[BuildingBlock, list[int]]:
    """G_0 with R and r' plus the explicit S-first witness over the replaced graph."""
    if k < 2 or k % 2:
        raise GraphError("k must be even and at least 2")
    top = (3 * k + 6) // 2
    v = lambda x: x - 1  # 1-based labels to ids
    edges = [(v(a), v(b)) for a in range(1, k + 2) for b in range(a + 1, k + 2)]
    edges += [(v(a), v(b)) for a in range(k + 2, top + 1) for b in range(a + 1, top + 1)]
    edges += [(v(a), v(k + 2)) for a in range(1, (k + 2) // 2 + 1)]
    edges += [(v(a), v(k + 3)) for a in range((k + 4) // 2, k + 2)]
    g = Graph.from_edges(top, edges)
    R = [v(x) for x in range(k + 4, top + 1)]
    block = BuildingBlock(g, R, v(k + 2), name=f"lbdg{k}")
    h, twins, h_map = rl_graph(g, R, v(k + 2))
    m = lambda x: h_map[v(x)]
    removal = [h_map[r] for r in R] + [m(k + 3)]
    removal += [m(a) for a in range((k + 4) // 2, k + 2)]
    removal += [m(a) for a in range(1, (k + 2) // 2 + 1)]
    removal += list(twins)
    return block, removal[::-1]


def lbdg_family(k: int, i: int, measure: bool = True) -> FamilyReport:
    block, order = lbdg_block(k)
    if measure:
        block.measure()
    else:
        block.f, block.is_minimal = (3 * k - 2) // 2, True
    rep = iterate_block(block, i, h_order=order, family="lbdg")
    rep.n_formula = (3 * k + 6) // 2 + i * (3 * k + 4) // 2
    rep.f_formula = (i + 1) * (3 * k - 2) // 2
    rep.f_claim = "="
    rep.params.update(k=k)
    return rep


# ---------------------------------------------------------------- directed families

def addedge_gadget(D: Digraph, R: Iterable[int], check: bool = True) -> tuple[Digraph, tuple[int, int]]:
    """Add r1 -> r2 with v -> r1 and r2 -> v for all v in R; {r1, r2} is the new bad set."""
    if not D.directed:
        raise GraphError("addedge_gadget expects a digraph")
    R = sorted(set(R))
    if check and not bad_set_report(D, R).is_minimal_bad:
        raise GraphError(f"R = {R} is not a minimal bad set")
    r1, r2 = D.n, D.n + 1
    arcs = D.arcs() + [(r1, r2)] + [(v, r1) for v in R] + [(r2, v) for v in R]
    return Digraph.from_arcs(D.n + 2, arcs), (r1, r2)


def extremal_tournament(n: int, seed: int = 0) -> Digraph:
    """Tournament with the smallest largest transitive subset found (exact for n <= 7)."""
    return tournament_a(n, seed=seed).tournament


def lbtw_family(k: int, i: int, D: Digraph | None = None, seed: int = 0) -> FamilyReport:
    """Tournament of order k plus the addedge gadget, iterated by gluing."""
    if D is None:
        D = extremal_tournament(k, seed)
    if not D.is_tournament() or D.n != k:
        raise GraphError(f"D must be a tournament of order k={k}")
    RD = find_minimal_bad_set(D)
    Dp, (r1, r2) = addedge_gadget(D, RD, check=False)
    rp = min(v for v in range(k) if v not in RD)
    block = BuildingBlock(Dp, (r1, r2), rp, name=f"lbtw{k}")
    block.f, block.is_bad, block.is_minimal = min_fvs(Dp).size, True, True
    h, twins, hmap = rl_graph(Dp, (r1, r2), rp, clique=True)
    rest = [v for v in range(k) if v not in RD and v != rp]
    order = list(twins) + [hmap[v] for v in RD] + [hmap[v] for v in rest] + [hmap[r1], hmap[r2]]
    rep = iterate_block(block, i, h_order=order, tw_order=order, family="lbtw")
    rep.n_formula = k + 2 + i * (k + 1)
    rep.f_formula = (i + 1) * (k - 2 * floor_log2(k))
    rep.f_claim = ">="
    rep.params.update(k=k, R_D=list(RD), f_D=min_fvs(D).size, f_gen=(i + 1) * block.f,
                      vacuous=rep.f_formula <= 0)
    return rep


@dataclass
class _Level:
    graph: Digraph
    bad: tuple[int, ...]
    order: list[int]  # chordal witness with ``bad`` in the first positions


def _lbtw2_level(prev: _Level, D0: Digraph, R0: Sequence[int], m: int, l: int) -> _Level:
    parts, orders = [], []
    for _ in range(m):
        g, (r1, r2) = addedge_gadget(prev.graph, prev.bad, check=False)
        parts.append((g, (r1, r2)))
        orders.append([r1, r2] + prev.order)
    parts += [(Digraph.empty(1), (0,))] * l
    glued = glue_substitution(D0, parts)
    bad = glued.bad_set(R0)
    quotient = [v for im in glued.images for v in im]
    order = sorted(quotient, key=lambda v: (v not in bad, v))
    for j in range(m):
        off = glued.offsets[j]
        order += [off + v for v in orders[j][2:]]
    return _Level(glued.graph, bad, order)


def _best_r0(D0: Digraph, m: int) -> tuple[int, ...]:
    """A minimal bad set of D0 preferring single-vertex parts (index >= m)."""
    f0 = min_fvs(D0).size
    best = None
    for s in range(1, D0.n + 1):
        for R in itertools.combinations(range(D0.n), s):
            if s + min_fvs(remove_vertices(D0, R)[0]).size <= f0:
                continue
            cost = sum(2 if v < m else 1 for v in R)
            if best is None or cost < best[0]:
                best = (cost, R)
        if best is not None:
            break
    if best is None:
        raise GraphError("D0 has no bad set")
    return best[1]


def lbtw2_family(k: int, l: int, m: int, i: int, D: Digraph | None = None, D0: Digraph | None = None,
                 R0: Sequence[int] | None = None, seed: int = 0) -> FamilyReport:
    """m gadgeted tournaments plus l single vertices glued over a tournament D0, iterated."""
    if m < 1 or l < 0:
        raise GraphError("need m >= 1 and l >= 0")
    if 2 * m + l != k + 1:
        raise GraphError("2m+l must equal k+1")
    if i < 1:
        raise GraphError("the family starts at i = 1")
    D = extremal_tournament(k + 1, seed) if D is None else D
    D0 = extremal_tournament(l + m, seed) if D0 is None else D0
    if not D.is_tournament() or D.n != k + 1:
        raise GraphError(f"D must be a tournament of order k+1={k + 1}")
    if not D0.is_tournament() or D0.n != l + m:
        raise GraphError(f"D0 must be a tournament of order l+m={l + m}")
    R0 = tuple(R0) if R0 is not None else _best_r0(D0, m)
    RD = find_minimal_bad_set(D)
    if RD is None:
        raise GraphError("D has no bad set")
    inner = [v for v in range(D.n) if v not in RD]
    level = _Level(D, tuple(RD), list(RD) + inner)
    fD, f0 = min_fvs(D).size, min_fvs(D0).size
    n_rec, f_rec = D.n, fD
    for _ in range(i):
        level = _lbtw2_level(level, D0, R0, m, l)
        n_rec, f_rec = m * (n_rec + 2) + l, m * (f_rec + 1) + f0
    g = level.graph
    deg_w = EliminationOrdering.of(g, level.order)
    if m == 1:
        n_closed, f_closed = Fraction((i + 1) * (k + 1)), Fraction(fD + i * (f0 + 1))
    else:
        a, b = Fraction(2 * m + l, m - 1), Fraction(m + f0, m - 1)
        n_closed, f_closed = m ** i * (k + 1 + a) - a, m ** i * (fD + b) - b
    return FamilyReport("lbtw2", i, g, n_rec, f_rec, ">=", deg_w, deg_w, level.bad,
                        params={"k": k, "l": l, "m": m, "f_D": fD, "f_D0": f0, "R0": list(R0),
                                "R_D": list(RD), "n_closed": str(n_closed),
                                "f_closed": str(f_closed)})


# ---------------------------------------------------------------- fixtures

def _fixture_data() -> dict[str, Any]:
    text = resources.files("fvslab").joinpath("fixtures/table1.json").read_text()
    return json.loads(text)


def _claims(entry: Mapping[str, Any]) -> dict[str, Any]:
    return {key: entry[key] for key in ("n", "f", "deg", "R", "R_repaired", "deg_rl",
                                        "family_degeneracy",
                                        "ratio_block", "ratio_limit", "upper_bound") if key in entry}


def triangle_block() -> BuildingBlock:
    e = _fixture_data()["triangle"]
    d = Digraph.from_arcs(e["n"], [tuple(a) for a in e["arcs"]])
    return BuildingBlock(d, e["R"], e["r_prime"], name=e["name"], claimed=_claims(e))


def builtin_blocks(verify: bool = False, repaired: bool = False) -> list[BuildingBlock]:
    """The five fixture blocks with their recorded reference data under ``claimed``.

    Two records list an R that is not bad in the encoded digraph; with
    ``repaired`` those blocks use the unique bad set of the same size instead
    (same r'), which gives the recorded deg_RL.
    """
    out = []
    for e in _fixture_data()["blocks"]:
        d = codec.decode(e["digraph6"], kind=codec.DIGRAPH6)
        R = e.get("R_repaired", e["R"]) if repaired else e["R"]
        b = BuildingBlock(d, R, e["r_prime"], name=e["name"], claimed=_claims(e))
        if verify:
            b.measure()
        out.append(b)
    return out


def block_by_name(name: str, repaired: bool = True) -> BuildingBlock:
    if name == "triangle":
        return triangle_block()
    for b in builtin_blocks(repaired=repaired):
        if b.name == name:
            return b
    raise GraphError(f"unknown block {name!r}")


# ---------------------------------------------------------------- block search

@dataclass
class SearchResult:
    block: BuildingBlock | None
    ratio: Fraction | None
    iterations: int
    budget_spent: bool  # stopped by the iteration budget, so the result is best-so-far
    state: dict[str, Any]


def _evaluate(d: Digraph, max_rldeg: int, max_r: int) -> tuple[tuple, BuildingBlock | None]:
    """Score a candidate: (feasible, f, -deg_RL) with its best block."""
    cert = min_fvs(d)
    f = cert.size
    if f == 0:
        return (0, 0, 0), None
    best: tuple | None = None
    for s in range(1, min(max_r, d.n - 1) + 1):
        for R in itertools.combinations(range(d.n), s):
            if s + min_fvs(remove_vertices(d, R)[0]).size <= f:
                continue
            for rp in range(d.n):
                if rp in R:
                    continue
                k, _ = rl_degeneracy(d, R, rp)
                key = (-k, -s, R, rp)
                if best is None or key > best:
                    best = key
    if best is None:
        return (0, -d.n, f), None
    k = -best[0]
    block = BuildingBlock(d, best[2], best[3], name="search")
    block.f, block.is_bad, block.deg_rl = f, True, k
    if k > max_rldeg:
        return (0, max_rldeg - k, f), block
    return (1, f, -k), block


def _random_oriented(n: int, rng: random.Random, p: float) -> Digraph:
    arcs = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                arcs.append((a, b) if rng.random() < 0.5 else (b, a))
    return Digraph.from_arcs(n, arcs)


def search_block(n: int, max_rldeg: int, seed: int = 0, iterations: int = 2000,
                 restart_every: int = 500, max_r: int = 3, state: Mapping[str, Any] | None = None
                 ) -> SearchResult:
    """Seeded hill climbing over oriented digraphs and (R, r') maximizing f/(n-1).

    ``iterations`` counts candidate evaluations in total, including those of a
    resumed ``state``; resuming gives the same outcome as an uninterrupted run.
    """
    if n < 3:
        raise GraphError("blocks need at least 3 vertices")
    base = {"schema": 1, "n": n, "max_rldeg": max_rldeg, "seed": seed, "restart_every": restart_every,
            "max_r": max_r}
    if max_rldeg < 2:
        # any block with f >= 1 contains a cycle, so deg_RL >= 2
        return SearchResult(None, None, 0, False, dict(base, iterations=0))
    rng = random.Random(seed)
    done = 0
    cur: Digraph | None = None
    cur_key = best_key = None
    best_d6 = None
    if state:
        if any(state.get(key) != val for key, val in base.items()):
            raise GraphError("state file belongs to a different search")
        rng.setstate(_tuplify(state["rng"]))
        done = state["iterations"]
        if state.get("current"):
            cur = codec.decode(state["current"], kind=codec.DIGRAPH6)
            cur_key = tuple(state["current_key"])
        best_d6 = state.get("best")
        best_key = tuple(state["best_key"]) if state.get("best_key") else None
    while done < iterations:
        if cur is None:
            cur = _random_oriented(n, rng, 0.5)
            cur_key = _evaluate(cur, max_rldeg, max_r)[0]
        else:
            a, b = rng.sample(range(n), 2)
            arcs = set(cur.arcs())
            arcs.discard((a, b))
            arcs.discard((b, a))
            choice = rng.random()
            if choice < 0.45:
                arcs.add((a, b))
            elif choice < 0.9:
                arcs.add((b, a))
            cand = Digraph.from_arcs(n, sorted(arcs))
            key = _evaluate(cand, max_rldeg, max_r)[0]
            if key >= cur_key:
                cur, cur_key = cand, key
        done += 1
        if cur_key[0] == 1 and (best_key is None or cur_key > best_key):
            best_key, best_d6 = cur_key, codec.encode(cur, header=False)
        if done % restart_every == 0:
            cur = cur_key = None
    state_out = dict(base, iterations=done, rng=_listify(rng.getstate()),
                     current=codec.encode(cur, header=False) if cur is not None else None,
                     current_key=list(cur_key) if cur_key is not None else None,
                     best=best_d6, best_key=list(best_key) if best_key else None)
    if best_d6 is None:
        return SearchResult(None, None, done, True, state_out)
    d = codec.decode(best_d6, kind=codec.DIGRAPH6)
    _, block = _evaluate(d, max_rldeg, max_r)
    block.measure()
    return SearchResult(block, Fraction(block.f, n - 1), done, True, state_out)


def _listify(x: Any) -> Any:
    return [_listify(y) for y in x] if isinstance(x, tuple) else x


def _tuplify(x: Any) -> Any:
    return tuple(_tuplify(y) for y in x) if isinstance(x, list) else x


# ---------------------------------------------------------------- JSON construction specs

@dataclass
class Built:
    graph: AnyGraph
    bad_set: tuple[int, ...] | None = None
    report: FamilyReport | None = None


def _leaf(spec: Mapping[str, Any]) -> Built:
    op = spec["op"]
    if op in ("graph6", "digraph6"):
        return Built(codec.decode(spec["data"], kind=op))
    if op == "single":
        return Built(Digraph.empty(1) if spec.get("directed", True) else Graph.empty(1), (0,))
    if op == "cycle":
        n = int(spec["n"])
        return Built(Digraph.directed_cycle(n) if spec.get("directed", True) else Graph.cycle(n))
    if op == "complete":
        return Built(Graph.complete(int(spec["n"])))
    if op == "transitive":
        return Built(Digraph.transitive_tournament(int(spec["n"])))
    if op == "tournament":
        return Built(extremal_tournament(int(spec["n"]), int(spec.get("seed", 0))))
    raise GraphError(f"unknown construction op {op!r}")


def _bad(built: Built, spec: Mapping[str, Any]) -> tuple[int, ...]:
    R = spec.get("R", "auto")
    if R == "auto":
        if built.bad_set is not None:
            return built.bad_set
        found = find_minimal_bad_set(built.graph)
        if found is None:
            raise GraphError("no bad set exists")
        return tuple(found)
    return tuple(int(v) for v in R)


def build(spec: Mapping[str, Any]) -> Built:
    """Evaluate a nested construction spec (op name plus parameters)."""
    op = spec.get("op")
    if op == "gen2":
        D0 = build(spec["D0"]).graph
        parts = []
        for p in spec["parts"]:
            b = build(p["graph"])
            parts.append((b.graph, _bad(b, p)))
        glued = glue_substitution(D0, parts)
        R0 = spec.get("R0")
        return Built(glued.graph, glued.bad_set(R0) if R0 is not None else None)
    if op == "gen":
        bspec = spec["block"]
        if isinstance(bspec, str):
            block = block_by_name(bspec)
        else:
            b = build(bspec["graph"])
            block = BuildingBlock(b.graph, _bad(b, bspec), int(bspec["r_prime"]), name="spec")
        block.measure()
        rep = iterate_block(block, int(spec.get("i", 0)))
        return Built(rep.graph, rep.bad_set, rep)
    if op == "addedge":
        b = build(spec["of"])
        g, pair = addedge_gadget(b.graph, _bad(b, spec))
        return Built(g, pair)
    if op == "evendeg":
        rep = even_deg_block(int(spec["k"]))
        return Built(rep.graph, None, rep)
    if op == "lbdg":
        rep = lbdg_family(int(spec["k"]), int(spec.get("i", 0)))
        return Built(rep.graph, rep.bad_set, rep)
    if op == "lbtw":
        rep = lbtw_family(int(spec["k"]), int(spec.get("i", 0)))
        return Built(rep.graph, rep.bad_set, rep)
    if op == "lbtw2":
        rep = lbtw2_family(int(spec["k"]), int(spec["l"]), int(spec["m"]), int(spec.get("i", 1)))
        return Built(rep.graph, rep.bad_set, rep)
    return _leaf(spec)


__all__ = [
    "BuildingBlock", "FamilyReport", "GlueResult", "SearchResult", "Built", "glue_substitution",
    "iterate_block", "even_deg_block", "lbdg_block", "lbdg_family", "addedge_gadget",
    "extremal_tournament", "lbtw_family", "lbtw2_family", "triangle_block", "builtin_blocks",
    "block_by_name", "search_block", "build",
]
