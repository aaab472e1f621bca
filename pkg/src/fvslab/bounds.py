"""Bound formulas, constant tables, and constructive FVS bound algorithms.

Ratios are :class:`fractions.Fraction`; every comparison against ``n`` is
done by integer cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import codec
from .fvs import FvsCertificate, certificate_for, min_fvs
from .graph_core import (AnyGraph, Digraph, Graph, GraphError, add_apex, induced_subgraph, is_acyclic,
                         iter_bits, to_mask)
from .orderings import (TREEWIDTH_EXACT_LIMIT, EliminationOrdering, complete_to_ktree,
                        complete_to_maximal_kdegenerate, degeneracy, fill_in, treewidth_exact,
                        treewidth_upper)


class DiagnosticError(RuntimeError):
    """A constructive algorithm found no applicable case; ``instance`` is digraph6."""

    def __init__(self, message: str, instance: str):
        super().__init__(f"{message} [instance {instance}]")
        self.instance = instance


def floor_log2(x: int) -> int:
    if x < 1:
        raise ValueError("log of a nonpositive integer")
    return x.bit_length() - 1


# ---------------------------------------------------------------- tables

# (lo, hi, a_min, a_max): a(n) for lo <= n <= hi
A_ROWS = ((4, 7, 3, 3), (8, 13, 4, 4), (14, 27, 5, 5), (28, 34, 6, 6), (34, 46, 6, 7), (47, 47, 7, 7))

# (lo, hi, offset, exact): f_k = k - offset (or <= when not exact); hi None means unbounded
F_ROWS = ((3, 6, 2, True), (7, 12, 3, True), (13, 26, 4, True), (27, 33, 5, True), (34, None, 6, False))


def a_rows(n: int) -> list[tuple[int, int]]:
    """All (a_min, a_max) table rows covering ``n``; more than one row means doubly specified."""
    return [(lo_a, hi_a) for lo, hi, lo_a, hi_a in A_ROWS if lo <= n <= hi]


def a_value(n: int) -> int | None:
    """Exact a(n) when every covering row pins it to the same single value."""
    rows = a_rows(n)
    vals = {lo for lo, hi in rows if lo == hi}
    if len(vals) == 1 and all(lo <= next(iter(vals)) <= hi for lo, hi in rows):
        return vals.pop()
    return None


def f_k(k: int) -> tuple[int, bool] | None:
    """(value, exact) for the tournament constant f_k; ``exact=False`` means an upper bound."""
    for lo, hi, off, exact in F_ROWS:
        if lo <= k and (hi is None or k <= hi):
            return k - off, exact
    return None


def cor2_lower(k: int) -> int:
    return k - 2 * floor_log2(k + 1)


@dataclass(frozen=True)
class ConsistencyFinding:
    k: int
    f_value: int
    f_exact: bool
    implied: str
    consistent: bool


def cross_consistency(k_max: int = 46) -> list[ConsistencyFinding]:
    """Check f_k against (k+1) - a(k+1) wherever both tables speak."""
    out = []
    for k in range(3, k_max + 1):
        fk = f_k(k)
        rows = a_rows(k + 1)
        if fk is None or not rows:
            continue
        value, exact = fk
        a_lo = max(lo for lo, _ in rows)
        a_hi = min(hi for _, hi in rows)
        # a in [a_lo, a_hi] gives (k+1) - a_hi <= f_k <= (k+1) - a_lo
        f_lo, f_hi = k + 1 - a_hi, k + 1 - a_lo
        if exact:
            ok = f_lo <= value <= f_hi and f_lo == f_hi
        else:
            ok = f_hi <= value
        implied = f"{f_lo}" if f_lo == f_hi else f"{f_lo}..{f_hi}"
        out.append(ConsistencyFinding(k, value, exact, implied, ok))
    return out


# ---------------------------------------------------------------- formulas

def ratio_un_tw(k: int) -> Fraction:
    return Fraction(k - 1, k + 1)


def ratio_un_dg(k: int) -> Fraction:
    return Fraction(k - 1, k + 1) if k % 2 else Fraction(k, k + 2)


def ratio_degdir(k: int) -> Fraction:
    return Fraction(k - 1, k + 1)


def ratio_ubtw(k: int) -> Fraction:
    return Fraction(k, k + 3)


def ratio_lbdg(k: int) -> Fraction:
    return Fraction(3 * k - 2, 3 * k + 4)


def ratio_cor2(k: int) -> Fraction:
    return Fraction(cor2_lower(k), k + 1)


def ratio_lbtw(k: int) -> Fraction:
    return Fraction(k - 2 * floor_log2(k), k + 1)


def floor_bound(ratio: Fraction, n: int) -> int:
    return ratio.numerator * n // ratio.denominator


# ---------------------------------------------------------------- table 2 recomputation

# k, n(D), f(D), n(D0), f(D0), l, m, cor1, lbtw2, ubtw
TABLE2 = (
    (4, 5, 2, 3, 1, 1, 2, "2/5", "1/2", "4/7"), (5, 6, 3, 3, 1, 0, 3, "1/2", "5/9", "5/8"),
    (6, 7, 4, 3, 1, 0, 3, "4/7", "3/5", "6/9"), (7, 7, 4, 7, 4, 6, 1, "4/7", "5/8", "7/10"),
    (8, 7, 4, 7, 4, 5, 2, "4/7", "5/8", "8/11"), (9, 10, 6, 7, 4, 4, 3, "6/10", "19/30", "9/12"),
    (10, 11, 7, 7, 4, 3, 4, "7/11", "29/44", "10/13"), (11, 12, 8, 7, 4, 2, 5, "8/12", "41/60", "11/14"),
    (12, 13, 9, 7, 4, 1, 6, "9/13", "55/78", "12/15"), (13, 13, 9, 13, 9, 12, 1, "9/13", "5/7", "13/16"),
    (14, 13, 9, 13, 9, 11, 2, "9/13", "5/7", "14/17"), (15, 13, 9, 13, 9, 10, 3, "9/13", "5/7", "15/18"),
    (16, 17, 12, 13, 9, 9, 4, "12/17", "49/68", "16/19"), (17, 18, 13, 13, 9, 8, 5, "13/18", "11/15", "17/20"),
    (18, 19, 14, 13, 9, 7, 6, "14/19", "85/114", "18/21"), (19, 20, 15, 13, 9, 6, 7, "15/20", "53/70", "19/22"),
    (20, 21, 16, 13, 9, 5, 8, "16/21", "43/56", "20/23"), (21, 22, 17, 13, 9, 4, 9, "17/22", "7/9", "21/24"),
    (22, 23, 18, 13, 9, 3, 10, "18/23", "181/230", "22/25"), (23, 24, 19, 13, 9, 2, 11, "19/24", "35/44", "23/26"),
    (24, 25, 20, 13, 9, 1, 12, "20/25", "241/300", "24/27"), (25, 26, 21, 13, 9, 0, 13, "21/26", "137/169", "25/28"),
    (26, 27, 22, 13, 9, 0, 13, "22/27", "143/175", "26/29"), (27, 27, 22, 27, 22, 26, 1, "22/27", "23/28", "27/30"),
    (28, 27, 22, 27, 22, 25, 2, "22/27", "23/28", "28/31"), (29, 27, 22, 27, 22, 24, 3, "22/27", "23/28", "29/32"),
    (30, 27, 22, 27, 22, 23, 4, "22/27", "23/28", "30/33"), (31, 27, 22, 27, 22, 22, 5, "22/27", "23/28", "31/34"),
    (32, 33, 27, 27, 22, 21, 6, "27/33", "163/198", "32/35"), (33, 34, 28, 27, 22, 20, 7, "28/34", "197/238", "33/36"),
)


@dataclass(frozen=True)
class Table2Row:
    k: int
    n_d: int
    f_d: int
    n_d0: int
    f_d0: int
    l: int
    m: int
    claimed: tuple[Fraction, Fraction, Fraction]
    measured: tuple[Fraction, Fraction, Fraction]
    notes: tuple[str, ...]

    @property
    def matches(self) -> bool:
        return self.claimed == self.measured


def lbtw2_limit(n_d: int, f_d: int, f_d0: int, l: int, m: int) -> Fraction:
    """Limit of f(D^i)/n(D^i) for the iterated tournament gluing."""
    if m == 1:
        return Fraction(1 + f_d0, 2 + l)
    return Fraction((m - 1) * f_d + m + f_d0, (m - 1) * n_d + 2 * m + l)


def table2(rows: Iterable[tuple] = TABLE2) -> list[Table2Row]:
    out = []
    for k, nd, fd, nd0, fd0, l, m, c1, c2, c3 in rows:
        claimed = (Fraction(c1), Fraction(c2), Fraction(c3))
        measured = (Fraction(fd, nd), lbtw2_limit(nd, fd, fd0, l, m), ratio_ubtw(k))
        notes = []
        if 2 * m + l != k + 1:
            notes.append(f"2m+l = {2 * m + l} differs from k+1 = {k + 1}")
        if nd != k + 1:
            notes.append(f"n(D) = {nd} differs from k+1 = {k + 1}")
        if nd0 != l + m:
            notes.append(f"n(D0) = {nd0} differs from l+m = {l + m}")
        if fd != nd - (a_value(nd) or 0) and a_value(nd) is not None:
            notes.append(f"f(D) = {fd} differs from n(D) - a(n(D)) = {nd - a_value(nd)}")
        out.append(Table2Row(k, nd, fd, nd0, fd0, l, m, claimed, measured, tuple(notes)))
    return out


# ---------------------------------------------------------------- forest partition

@dataclass(frozen=True)
class ForestPartition:
    classes: tuple[tuple[int, ...], ...]
    fvs: tuple[int, ...]


def forest_partition(g: AnyGraph, k: int, ordering: EliminationOrdering | None = None) -> ForestPartition:
    """Split V into ceil((k+1)/2) induced forests along a k-elimination ordering."""
    und = g.underlying() if g.directed else g
    if ordering is None:
        d, ordering = degeneracy(und)
        if d > k:
            raise GraphError(f"degeneracy {d} exceeds k={k}")
    elif ordering.width > k:
        raise GraphError(f"ordering width {ordering.width} exceeds k={k}")
    q = (k + 2) // 2
    colour = [-1] * und.n
    seen = 0
    masks = [0] * q
    for v in ordering.order:
        back = und.adj[v] & seen
        c = next(c for c in range(q) if (back & masks[c]).bit_count() <= 1)
        colour[v] = c
        masks[c] |= 1 << v
        seen |= 1 << v
    classes = tuple(tuple(iter_bits(m)) for m in masks)
    keep = max(range(q), key=lambda c: (len(classes[c]), -c))
    F = tuple(sorted(v for c in range(q) if c != keep for v in classes[c]))
    return ForestPartition(classes, F)


# ---------------------------------------------------------------- degeneracy, directed

class _Work:
    """Mutable digraph on original ids, restricted to ``alive``."""

    def __init__(self, d: Digraph):
        self.n = d.n
        self.out = list(d.out_adj)
        self.inn = list(d.in_adj)
        self.alive = (1 << d.n) - 1

    def sub(self) -> tuple[Digraph, list[int]]:
        verts = list(iter_bits(self.alive))
        idx = {v: i for i, v in enumerate(verts)}
        rows = []
        for v in verts:
            r = 0
            for w in iter_bits(self.out[v] & self.alive):
                r |= 1 << idx[w]
            rows.append(r)
        return Digraph(len(verts), rows), verts

    def add_arc(self, u: int, v: int) -> None:
        if self.out[v] >> u & 1:
            raise GraphError(f"antiparallel arc {u}->{v} during completion")
        self.out[u] |= 1 << v
        self.inn[v] |= 1 << u

    def dout(self, v: int) -> int:
        return self.out[v] & self.alive

    def din(self, v: int) -> int:
        return self.inn[v] & self.alive


def _complete_work(w: _Work, k: int) -> None:
    """Complete the live part to maximal k-degenerate; new arcs go later -> earlier."""
    sub, verts = w.sub()
    und = sub.underlying()
    _, ordering = degeneracy(und)
    full, ordering = complete_to_maximal_kdegenerate(und, k, ordering.order)
    pos = ordering.positions()
    for a in range(sub.n):
        for b in iter_bits(full.adj[a] & ~und.adj[a]):
            if a < b:
                x, y = (a, b) if pos[a] > pos[b] else (b, a)
                w.add_arc(verts[x], verts[y])


def degdir_fvs(d: Digraph, k: int) -> FvsCertificate:
    """FVS of size at most floor((k-1)/(k+1) n) for a k-degenerate oriented digraph."""
    if not d.directed:
        raise GraphError("degdir_fvs expects a digraph")
    dg, _ = degeneracy(d)
    if dg > k:
        raise GraphError(f"degeneracy {dg} exceeds k={k}")
    w = _Work(d)
    F: list[int] = []
    low = (k + 1) // 2 - 1  # ceil(k/2) - 1
    completed = False
    while w.alive:
        n = w.alive.bit_count()
        if n <= k + 1:
            sub, verts = w.sub()
            F.extend(verts[i] for i in min_fvs(sub).vertices)
            break
        pick = None
        for v in iter_bits(w.alive):
            if w.din(v).bit_count() <= low:
                pick = (v, w.din(v))
                break
            if w.dout(v).bit_count() <= low:
                pick = (v, w.dout(v))
                break
        if pick is not None:
            v, side = pick
            F.extend(iter_bits(side))
            w.alive &= ~(side | (1 << v))
            completed = False
            continue
        if k % 2:
            raise DiagnosticError("odd k but no low-degree peel", codec.encode(w.sub()[0]))
        if not completed:
            _complete_work(w, k)
            completed = True
            continue
        X = _degdir_case(w, k)
        if X is None:
            raise DiagnosticError("no case of the even-k analysis applies", codec.encode(w.sub()[0]))
        removed, kept = X
        add = removed & ~kept
        if (k + 1) * add.bit_count() > (k - 1) * removed.bit_count():
            raise DiagnosticError("case removal exceeds (k-1)/(k+1)", codec.encode(w.sub()[0]))
        F.extend(iter_bits(add))
        w.alive &= ~removed
        # the remainder is an induced subgraph of a maximal k-degenerate graph
        completed = False
    return certificate_for(d, F, False)


def _degdir_case(w: _Work, k: int) -> tuple[int, int] | None:
    half = k // 2
    deg = {v: (w.dout(v) | w.din(v)).bit_count() for v in iter_bits(w.alive)}
    kv = [v for v in sorted(deg) if deg[v] == k]
    # Case 1: two k-vertices with a common neighbour
    for i, u in enumerate(kv):
        nu = w.dout(u) | w.din(u)
        for v in kv[i + 1:]:
            nv = w.dout(v) | w.din(v)
            common = nu & nv
            if not common or nu >> v & 1:
                continue
            x = (common & -common).bit_length() - 1
            side_u = w.din(u) if w.din(u) >> x & 1 else w.dout(u)
            side_v = w.din(v) if w.din(v) >> x & 1 else w.dout(v)
            return side_u | side_v | (1 << u) | (1 << v), (1 << u) | (1 << v)
    # Case 2: a k-vertex next to a (k+1)-vertex
    for u in kv:
        for v in iter_bits(w.dout(u) | w.din(u)):
            if deg[v] != k + 1:
                continue
            if w.dout(v) >> u & 1:  # arc v -> u
                if w.din(v).bit_count() == half:
                    X = w.din(v) | w.din(u) | (1 << u)
                elif w.dout(v).bit_count() == half:
                    X = w.dout(v) | w.dout(u) | (1 << v)
                else:
                    continue
            else:  # arc u -> v: mirror image
                if w.dout(v).bit_count() == half:
                    X = w.dout(v) | w.dout(u) | (1 << u)
                elif w.din(v).bit_count() == half:
                    X = w.din(v) | w.din(u) | (1 << v)
                else:
                    continue
            return X | (1 << u) | (1 << v), (1 << u) | (1 << v)
    return None


# ---------------------------------------------------------------- treewidth, directed

@dataclass
class UbtwTrace:
    moves: list[str] = field(default_factory=list)


def _ik(adj: Sequence[int], mask: int, k: int) -> int:
    """k-vertices of G[mask] adjacent to a (k+1)-vertex."""
    deg = {v: (adj[v] & mask).bit_count() for v in iter_bits(mask)}
    out = 0
    for v in iter_bits(mask):
        if deg[v] == k and any(deg[u] == k + 1 for u in iter_bits(adj[v] & mask)):
            out |= 1 << v
    return out


def _first(mask: int) -> int | None:
    return (mask & -mask).bit_length() - 1 if mask else None


def _ubtw_moves(adj: Sequence[int], out: Sequence[int], mask: int, k: int):
    """Candidate (name, X, F_add) removals, in the order of the case analysis."""
    cands = _lemma(adj, mask, k)
    # Case 1
    for v, l, U in cands:
        if l >= 2 and len(U) == l:
            keep3 = set(U[2:])
            Nv = (adj[v] & mask) | (1 << v)
            X = Nv & ~to_mask(keep3)
            F = (adj[v] & mask) & ~to_mask(U)
            yield "case1", X, F
    I1 = _ik(adj, mask, k)
    m1 = mask & ~I1
    c1 = _lemma(adj, m1, k)
    for v1, l1, U1 in c1:
        if len(U1) != l1:
            continue
        chain = {u: _first(adj[u] & I1) for u in U1}
        chained = [u for u in U1 if chain[u] is not None]
        if not chained:
            Nv = (adj[v1] & m1) | (1 << v1)
            yield "case1-reduced", Nv & ~to_mask(U1[2:]), (adj[v1] & m1) & ~to_mask(U1)
            continue
        order = chained + [u for u in U1 if chain[u] is None]
        base = ((adj[v1] & m1) | (1 << v1)) & ~to_mask(U1)  # N_{G'}[v'] minus U'
        if l1 >= 3 or (l1 == 2 and len(chained) == 2):
            top = order[:3]
            X = base | to_mask(top) | to_mask(chain[u] for u in top if chain[u] is not None)
            yield "case2.1" if l1 >= 3 else "case2.2a", X, base
        elif l1 == 2:
            ua = chained[0]
            W = base & ~(adj[ua] & m1)
            if W.bit_count() != 1:
                continue
            X = (base & ~W) | to_mask(U1) | (1 << chain[ua])
            yield "case2.2b", X, X & ~(to_mask(U1) | (1 << chain[ua]))
    # Case 2.3: two layers deep
    I2 = _ik(adj, m1, k)
    m2 = m1 & ~I2
    for v2, l2, U2 in _lemma(adj, m2, k):
        if len(U2) != l2:
            continue
        links = {}
        for u in U2:
            a = _first(adj[u] & I2)
            b = _first(adj[a] & I1) if a is not None else None
            links[u] = (a, b) if b is not None else None
        chained = [u for u in U2 if links[u] is not None]
        if not chained:
            continue
        N2 = adj[v2] & m2
        if l2 >= 2:
            top = (chained + [u for u in U2 if links[u] is None])[:2]
            X = (1 << v2) | (N2 & ~to_mask(U2)) | to_mask(top)
            F = N2 & ~to_mask(U2)
            for u in top:
                if links[u] is None:
                    continue
                a, b = links[u]
                X |= (1 << a) | (1 << b)
                F |= 1 << _breaker(out, [v2, u, a, b])
            yield "case2.3.1", X, F
        else:
            u = chained[0]
            a, b = links[u]
            W = (N2 & ~(1 << u)) & ~(adj[u] & m2)
            if W.bit_count() != 1:
                continue
            X = (((1 << v2) | N2) & ~W) | (1 << a) | (1 << b)
            F = (N2 & ~(W | (1 << u))) | (1 << _breaker(out, [v2, u, a, b]))
            yield "case2.3.2", X, F
    # peel: a vertex with at most k/3 in- or out-neighbours
    for v in iter_bits(mask):
        for side in (out_in(out, v, mask, True), out_in(out, v, mask, False)):
            if 3 * side.bit_count() <= k:
                yield "peel", side | (1 << v), side


def out_in(out: Sequence[int], v: int, mask: int, outward: bool) -> int:
    if outward:
        return out[v] & mask
    r = 0
    for u in iter_bits(mask):
        if out[u] >> v & 1:
            r |= 1 << u
    return r


def _lemma(adj: Sequence[int], mask: int, k: int) -> list[tuple[int, int, list[int]]]:
    deg = {v: (adj[v] & mask).bit_count() for v in iter_bits(mask)}
    res = []
    for v in iter_bits(mask):
        l = deg[v] - k
        if l < 1:
            continue
        small = [u for u in iter_bits(adj[v] & mask) if deg[u] == k]
        if len(small) >= l:
            res.append((v, l, small))
    return res


def _breaker(out: Sequence[int], quad: list[int]) -> int:
    """Lowest-id vertex of a 4-set whose removal leaves the other three acyclic."""
    for v in sorted(quad):
        rest = [u for u in quad if u != v]
        a, b, c = rest
        cyc = ((out[a] >> b & 1 and out[b] >> c & 1 and out[c] >> a & 1)
               or (out[a] >> c & 1 and out[c] >> b & 1 and out[b] >> a & 1))
        if not cyc:
            return v
    raise AssertionError("every 4-set has an acyclic triple")


def _move_is_safe(out: Sequence[int], inn: Sequence[int], mask: int, X: int, F: int
                  ) -> int | None:
    """Check that keeping ``X - F`` cannot close a cycle with the rest.

    Weak components of the remainder that touch the kept set and are entirely
    outside it are absorbed when the union stays acyclic with one-way contact.
    Returns the final removed set (X plus absorbed vertices) or None.
    """
    H = mask & ~X
    P = X & ~F
    adj = [out[v] | inn[v] for v in range(len(out))]
    absorbed = 0
    # H components adjacent to P
    touch = 0
    for v in iter_bits(P):
        touch |= adj[v] & H
    seen = 0
    for s in iter_bits(touch):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v] & H
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        seen |= comp
        if comp.bit_count() <= 3:
            absorbed |= comp
    C = P | absorbed
    rest = H & ~absorbed
    probe = Digraph(len(out), out)
    if not is_acyclic(probe, C):
        # absorbing may have created the cycle; retry with P alone
        C, absorbed, rest = P, 0, H
        if not is_acyclic(probe, C):
            return None
    # weak components of C: contact with the rest must be one-way
    left = C
    while left:
        s = _first(left)
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v] & C
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        left &= ~comp
        go_out = any(out[v] & rest for v in iter_bits(comp))
        go_in = any(inn[v] & rest for v in iter_bits(comp))
        if go_out and go_in:
            return None
    return X | absorbed


def ubtw_fvs(d: Digraph, k: int, witness: EliminationOrdering | Sequence[int] | None = None,
             trace: UbtwTrace | None = None) -> FvsCertificate:
    """FVS of size at most floor(k/(k+3) n) for an oriented digraph of treewidth <= k."""
    if not d.directed:
        raise GraphError("ubtw_fvs expects a digraph")
    if k < 1:
        raise GraphError("k must be at least 1")
    und = d.underlying()
    if witness is not None:
        order = witness.order if isinstance(witness, EliminationOrdering) else tuple(witness)
        width = fill_in(und, order)[1]
        if width > k:
            raise GraphError(f"witness has width {width} > k={k}")
    elif d.n <= TREEWIDTH_EXACT_LIMIT:
        wit = treewidth_exact(und)
        order = wit.ordering.order
        if wit.value > k:
            raise GraphError(f"treewidth {wit.value} exceeds k={k}")
    else:
        wit = treewidth_upper(und)
        if wit.value > k:
            raise GraphError(f"no width-{k} witness found (greedy gives {wit.value}); pass one")
        order = wit.ordering.order
    if k == 1:
        return certificate_for(d, [], False)
    if k <= 3:
        return degdir_fvs(d, k)
    trace = trace if trace is not None else UbtwTrace()
    F: list[int] = []
    out = list(d.out_adj)
    inn = list(d.in_adj)
    alive = (1 << d.n) - 1
    order = list(order)
    while alive:
        verts = [v for v in order if alive >> v & 1]
        if len(verts) <= k + 6:
            sub, idx = induced_subgraph(Digraph(d.n, out), verts)
            back = {i: v for v, i in idx.items()}
            part = [back[i] for i in min_fvs(sub).vertices]
            if (k + 3) * len(part) > k * len(verts):
                raise DiagnosticError("base case exceeds k/(k+3)", codec.encode(sub))
            trace.moves.append(f"base:{len(verts)}")
            F.extend(part)
            break
        # complete the live part to a k-tree, orienting new edges along the ordering
        sub_und, idx = induced_subgraph(Graph(d.n, [out[v] | inn[v] for v in range(d.n)]), verts)
        local_order = [idx[v] for v in verts]
        tree, _ = complete_to_ktree(sub_und, k, local_order)
        pos = {v: i for i, v in enumerate(verts)}
        for a in range(len(verts)):
            for b in iter_bits(tree.adj[a] & ~sub_und.adj[a]):
                if a < b:
                    x, y = verts[a], verts[b]
                    if pos[x] > pos[y]:
                        x, y = y, x
                    out[x] |= 1 << y
                    inn[y] |= 1 << x
        adj = [out[v] | inn[v] for v in range(d.n)]
        chosen = None
        for name, X, Fadd in _ubtw_moves(adj, out, alive, k):
            X &= alive
            Fadd &= X
            if (k + 3) * Fadd.bit_count() > k * X.bit_count():
                continue
            final = _move_is_safe(out, inn, alive, X, Fadd)
            if final is None:
                continue
            chosen = (name, final, Fadd)
            break
        if chosen is None:
            sub, _ = induced_subgraph(Digraph(d.n, out), verts)
            raise DiagnosticError("no safe case applies", codec.encode(sub))
        name, X, Fadd = chosen
        trace.moves.append(name)
        F.extend(iter_bits(Fadd))
        alive &= ~X
    return certificate_for(d, F, False)


# ---------------------------------------------------------------- strictness

@dataclass(frozen=True)
class StrictnessReport:
    kind: str
    k: int
    n: int
    f: int
    margin: int  # f * den - num * n; negative means strict
    holds: bool
    apex_f: int | None = None
    apex_n: int | None = None


def strictness_checks(g: AnyGraph, k: int, kind: str, f: int | None = None, apex: bool = False
                      ) -> StrictnessReport:
    """Strict ratio inequalities: ``undirected-even`` or ``directed-odd``.

    A ``holds=False`` report is a genuine contradiction finding, never an error.
    """
    dg, _ = degeneracy(g)
    if dg > k:
        raise GraphError(f"degeneracy {dg} exceeds k={k}")
    if f is None:
        f = min_fvs(g).size
    if kind == "undirected-even":
        if g.directed or k % 2:
            raise ValueError("undirected-even needs an undirected graph and even k")
        margin = f * (k + 2) - k * g.n
    elif kind == "directed-odd":
        if not g.directed or k % 2 == 0 or k < 3:
            raise ValueError("directed-odd needs a digraph and odd k >= 3")
        margin = f * (k + 1) - (k - 1) * g.n
    else:
        raise ValueError(f"unknown strictness kind {kind!r}")
    apex_f = apex_n = None
    if apex and not g.directed:
        gp = add_apex(g)
        apex_f, apex_n = min_fvs(gp).size, gp.n
    return StrictnessReport(kind, k, g.n, f, margin, margin < 0, apex_f, apex_n)
