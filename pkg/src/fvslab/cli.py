"""Command-line front end: ``fvslab <verb> ...``.

Exit codes: 0 success, 1 input error, 2 timeout with partial result,
3 a recomputed value disagrees with the stored reference value.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import bounds, codec, constructions
from .fvs import BudgetExceeded, bad_set_report, min_fvs, tournament_a
from .graph_core import AnyGraph, GraphError, to_dot
from .orderings import (TREEWIDTH_EXACT_LIMIT, degeneracy, rl_degeneracy, treewidth_exact,
                        treewidth_upper)

EXIT_OK, EXIT_INPUT, EXIT_TIMEOUT, EXIT_MISMATCH = 0, 1, 2, 3
SCHEMA = 1


class InputError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# ---------------------------------------------------------------- input

def read_instance(source: str, fmt: str | None, directed: bool) -> tuple[AnyGraph, dict[str, Any]]:
    """Decode a literal string, a file path, or ``-`` for stdin."""
    if source == "-":
        text, origin = sys.stdin.read(), "stdin"
    elif os.path.isfile(source):
        text, origin = Path(source).read_text(), source
    else:
        text, origin = source, "literal"
    text = text.strip().splitlines()[0] if text.strip() else ""
    if fmt == "dot":
        raise InputError("dot is an output format only")
    kind = fmt or (codec.DIGRAPH6 if directed else None)
    try:
        g = codec.decode(text, kind=kind)
    except codec.DecodeError as exc:
        pos = "" if exc.position is None else f" (position {exc.position})"
        raise InputError(f"decode failed{pos}: {exc}") from exc
    fmt_used = codec.DIGRAPH6 if g.directed else codec.GRAPH6
    return g, {"source": origin, "format": fmt_used, "text": codec.encode(g)}


def _emit_graph(g: AnyGraph, fmt: str | None) -> str:
    if fmt == "dot":
        return to_dot(g)
    if fmt is None:
        return codec.encode(g)
    return codec.encode(g, kind=fmt)


# ---------------------------------------------------------------- reports

def _fvs_block(cert) -> dict[str, Any]:
    w = cert.residual_witness
    return {"size": cert.size, "vertices": list(cert.vertices), "optimal": cert.optimal,
            "residual_witness": list(w) if w is not None else None}


def _check(name: str, ok: bool, **detail: Any) -> dict[str, Any]:
    return dict({"name": name, "pass": bool(ok)}, **detail)


def _treewidth(g: AnyGraph) -> dict[str, Any]:
    if g.n <= TREEWIDTH_EXACT_LIMIT:
        w = treewidth_exact(g)
    else:
        w = treewidth_upper(g)
    return {"kind": w.kind, "value": w.value, "witness": list(w.ordering.order)}


# ---------------------------------------------------------------- verbs

def cmd_solve(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    g, inst = read_instance(args.input, args.format, args.directed)
    rep: dict[str, Any] = {"verb": "solve", "instance": inst, "n": g.n,
                           "arcs" if g.directed else "edges": g.num_edges}
    try:
        cert = min_fvs(g, budget=args.budget, deadline_ms=args.deadline_ms)
    except BudgetExceeded as exc:
        rep["fvs"] = None
        rep["checks"] = [_check("within budget", False, budget=exc.budget, lower_bound=exc.lower_bound)]
        return rep, EXIT_OK
    rep["fvs"] = _fvs_block(cert)
    return rep, EXIT_OK if cert.optimal else EXIT_TIMEOUT


def cmd_analyze(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    g, inst = read_instance(args.input, args.format, args.directed)
    k, order = degeneracy(g)
    rep: dict[str, Any] = {"verb": "analyze", "instance": inst, "n": g.n,
                           "arcs" if g.directed else "edges": g.num_edges,
                           "degeneracy": {"value": k, "witness": list(order.order)}}
    tw = _treewidth(g)
    rep["treewidth"] = tw
    cert = min_fvs(g, deadline_ms=args.deadline_ms)
    rep["fvs"] = _fvs_block(cert)
    f, n, t = cert.size, g.n, tw["value"]
    entries, checks = [], []

    def bound(name: str, ratio: Fraction, param: int) -> None:
        cap = bounds.floor_bound(ratio, n)
        entries.append({"name": name, "k": param, "ratio": _frac(ratio), "value": cap,
                        "satisfied": f <= cap if cert.optimal else None})

    if g.directed:
        bound("degeneracy (directed)", bounds.ratio_degdir(max(k, 1)), k)
        # an upper-bound witness is enough: the bound is monotone in the width
        bound("treewidth (directed)", bounds.ratio_ubtw(max(t, 1)), t)
        if k >= 1:
            c = bounds.degdir_fvs(g, max(k, 1))
            checks.append(_check("degdir_fvs within bound", c.size <= bounds.floor_bound(
                bounds.ratio_degdir(max(k, 1)), n), size=c.size))
        if t >= 1:
            c = bounds.ubtw_fvs(g, t, witness=tw["witness"])
            checks.append(_check("ubtw_fvs within bound", c.size <= bounds.floor_bound(
                bounds.ratio_ubtw(t), n), size=c.size))
        if k >= 3 and k % 2 and cert.optimal:
            s = bounds.strictness_checks(g, k, "directed-odd", f=f)
            checks.append(_check("strict (odd degeneracy)", s.holds, margin=s.margin))
    else:
        bound("degeneracy (undirected)", bounds.ratio_un_dg(max(k, 1)), k)
        bound("treewidth (undirected)", bounds.ratio_un_tw(max(t, 1)), t)
        if k >= 1:
            fp = bounds.forest_partition(g, k, order)
            checks.append(_check("forest partition within bound", len(fp.fvs) <= bounds.floor_bound(
                bounds.ratio_un_dg(k), n), size=len(fp.fvs), classes=len(fp.classes)))
        if k >= 2 and k % 2 == 0 and cert.optimal:
            s = bounds.strictness_checks(g, k, "undirected-even", f=f)
            checks.append(_check("strict (even degeneracy)", s.holds, margin=s.margin))
    rep["bounds"] = entries
    rep["checks"] = checks
    code = EXIT_OK if cert.optimal else EXIT_TIMEOUT
    if any(c["pass"] is False for c in checks) or any(e["satisfied"] is False for e in entries):
        code = EXIT_MISMATCH
    return rep, code


def _family_json(rep: constructions.FamilyReport) -> dict[str, Any]:
    out = {"family": rep.family, "index": rep.index, "n": rep.n, "n_formula": rep.n_formula,
           "f_formula": rep.f_formula, "f_claim": rep.f_claim, "f_exact": rep.f_exact,
           "ratio": _frac(rep.ratio), "bad_set": list(rep.bad_set),
           "degeneracy_witness": {"width": rep.degeneracy_witness.width,
                                  "order": list(rep.degeneracy_witness.order)},
           "params": rep.params}
    if rep.treewidth_witness is not None:
        out["treewidth_witness"] = {"width": rep.treewidth_width,
                                    "order": list(rep.treewidth_witness.order)}
    return out


def _need(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for {args.family}")


def cmd_construct(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    fam = args.family
    try:
        if fam == "evendeg":
            _need(args, "k")
            rep = constructions.even_deg_block(args.k)
        elif fam == "lbdg":
            _need(args, "k")
            rep = constructions.lbdg_family(args.k, args.i or 0)
        elif fam == "lbtw":
            _need(args, "k")
            rep = constructions.lbtw_family(args.k, args.i or 0, seed=args.seed)
        elif fam == "lbtw2":
            _need(args, "k", "l", "m")
            rep = constructions.lbtw2_family(args.k, args.l, args.m, args.i or 1, seed=args.seed)
        elif fam == "gen-iterate":
            _need(args, "block")
            block = constructions.block_by_name(args.block).measure()
            rep = constructions.iterate_block(block, args.i or 0)
        elif fam == "gen2-spec":
            _need(args, "spec")
            spec = json.loads(Path(args.spec).read_text())
            built = constructions.build(spec)
            if built.report is not None:
                rep = built.report
            else:
                out = {"verb": "construct", "family": fam, "n": built.graph.n,
                       "bad_set": list(built.bad_set) if built.bad_set else None,
                       "graph": _emit_graph(built.graph, args.format)}
                if args.verify:
                    out["f_exact"] = min_fvs(built.graph, deadline_ms=args.deadline_ms).size
                return out, EXIT_OK
        else:
            raise InputError(f"unknown family {fam!r}")
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    code = EXIT_OK
    checks = [_check("n matches formula", rep.n == rep.n_formula)]
    if args.verify:
        cert = min_fvs(rep.graph, deadline_ms=args.deadline_ms)
        if cert.optimal:
            rep.f_exact = cert.size
            checks.append(_check(f"f {rep.f_claim} formula", rep.f_consistent()))
        else:
            code = EXIT_TIMEOUT
    out = {"verb": "construct", "family": fam, "report": _family_json(rep),
           "graph": _emit_graph(rep.graph, args.format), "checks": checks}
    if any(not c["pass"] for c in checks):
        code = EXIT_MISMATCH
    return out, code


# -- verify suites

def _cmp(rows: list[dict[str, Any]], name: str, claimed: Any, measured: Any) -> bool:
    ok = claimed == measured
    rows.append({"name": name, "claimed": claimed, "measured": measured, "pass": ok})
    return ok


def verify_table1(args: argparse.Namespace) -> dict[str, Any]:
    fixtures = []
    tri = constructions.triangle_block()
    blocks = [tri] + constructions.builtin_blocks()
    repaired = {b.name: b for b in constructions.builtin_blocks(repaired=True)}
    for b in blocks:
        _progress(f"table1: {b.name}")
        c = b.claimed
        b.measure(deadline_ms=args.deadline_ms)
        rows: list[dict[str, Any]] = []
        _cmp(rows, "n", c["n"], b.D.n)
        _cmp(rows, "f", c["f"], b.f)
        _cmp(rows, "deg", c["deg"], degeneracy(b.D)[0])
        _cmp(rows, "R is bad", True, b.is_bad)
        _cmp(rows, "deg_RL", c["deg_rl"], b.deg_rl)
        entry: dict[str, Any] = {"name": b.name, "R": list(b.R), "r_prime": b.r_prime,
                                 "R_minimal": b.is_minimal, "checks": rows}
        use = b
        if "R_repaired" in c:
            rb = repaired[b.name].measure(deadline_ms=args.deadline_ms)
            entry["repaired"] = {"R": list(rb.R), "is_bad": rb.is_bad, "is_minimal": rb.is_minimal,
                                 "deg_rl": rb.deg_rl}
            use = rb
        fam = []
        for i in range(args.family_depth + 1):
            rep = constructions.iterate_block(use, i)
            fam.append({"i": i, "n": rep.n, "degeneracy": degeneracy(rep.graph)[0],
                        "witness_width": rep.degeneracy_witness.width})
        entry["family"] = fam
        _cmp(rows, "family degeneracy", c["family_degeneracy"], max(x["degeneracy"] for x in fam))
        _cmp(rows, "block ratio", c["ratio_block"], [b.f, b.D.n])
        lim = Fraction(b.f, b.D.n - 1)
        _cmp(rows, "limit ratio", Fraction(*c["ratio_limit"]), lim)
        ub = bounds.ratio_degdir(c["family_degeneracy"])
        _cmp(rows, "upper bound", Fraction(*c["upper_bound"]), ub)
        for r in rows:
            for key in ("claimed", "measured"):
                if isinstance(r[key], Fraction):
                    r[key] = _frac(r[key])
        fixtures.append(entry)
    return {"suite": "table1", "fixtures": fixtures,
            "pass": all(r["pass"] for e in fixtures for r in e["checks"])}


def verify_table2(args: argparse.Namespace) -> dict[str, Any]:
    rows = []
    for row in bounds.table2():
        if args.row is not None and row.k != args.row:
            continue
        rows.append({"k": row.k, "claimed": [_frac(x) for x in row.claimed],
                     "measured": [_frac(x) for x in row.measured], "pass": row.matches,
                     "notes": list(row.notes)})
    exact = None
    if args.row in (None, 4):
        _progress("table2: building D^1 for k=4")
        rep = constructions.lbtw2_family(4, 1, 2, 1, seed=args.seed)
        cert = min_fvs(rep.graph, deadline_ms=args.deadline_ms)
        exact = {"k": 4, "n": rep.n, "f_formula": rep.f_formula, "f_exact": cert.size,
                 "optimal": cert.optimal, "treewidth_witness_width": rep.treewidth_width,
                 "pass": rep.n == 15 and cert.optimal and cert.size >= 7 and rep.treewidth_width <= 4}
    out = {"suite": "table2", "rows": rows, "exact": exact,
           "pass": all(r["pass"] for r in rows) and (exact is None or exact["pass"])}
    return out


def _no_transitive(d, size: int) -> bool:
    for S in itertools.combinations(range(d.n), size):
        degs = sorted(sum(d.has_arc(a, b) for b in S) for a in S)
        if degs == list(range(size)):
            return False
    return True


def verify_tournaments(args: argparse.Namespace) -> dict[str, Any]:
    rows = []
    for n in range(1, args.max_n + 1):
        _progress(f"tournaments: n={n}")
        res = tournament_a(n)
        claimed = bounds.a_value(n)
        ok = claimed is None or claimed == res.value
        if res.exact and res.value < n:
            ok = ok and _no_transitive(res.tournament, res.value + 1)
        rows.append({"n": n, "a": res.value, "exact": res.exact, "claimed": claimed,
                     "witness": codec.encode(res.tournament), "pass": ok})
    cor = []
    for k in range(3, args.max_n):
        a = next(r["a"] for r in rows if r["n"] == k + 1)
        fk = bounds.f_k(k)
        cor.append({"k": k, "f_k_claimed": fk[0] if fk else None, "f_k_measured": k + 1 - a,
                    "pass": fk is None or fk[0] == k + 1 - a})
    cons = [{"k": c.k, "f_k": c.f_value, "exact": c.f_exact, "implied": c.implied,
             "consistent": c.consistent} for c in bounds.cross_consistency()]
    doubly = [n for n in range(1, 48) if len(bounds.a_rows(n)) > 1]
    return {"suite": "tournaments", "rows": rows, "corollary": cor, "table_consistency": cons,
            "doubly_specified": doubly,
            "pass": all(r["pass"] for r in rows) and all(c["pass"] for c in cor)}


def verify_block(args: argparse.Namespace) -> dict[str, Any]:
    if args.graph is None or args.R is None or args.r_prime is None:
        raise InputError("block needs --graph, --R and --r-prime")
    g, inst = read_instance(args.graph, args.format, args.directed)
    R = [int(x) for x in args.R.split(",") if x.strip()]
    try:
        rep = bad_set_report(g, R, deadline_ms=args.deadline_ms)
        k, order = rl_degeneracy(g, R, args.r_prime)
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    return {"suite": "block", "instance": inst, "R": list(rep.R), "r_prime": args.r_prime,
            "f": rep.f, "f_forced": rep.f_forced, "is_bad": rep.is_bad,
            "is_minimal_bad": rep.is_minimal_bad,
            "f_without": {str(v): x for v, x in sorted(rep.f_without.items())},
            "deg_rl": k, "rl_witness": list(order.order), "ratio_limit": _frac(Fraction(rep.f, g.n - 1)),
            "pass": rep.is_bad}


def cmd_verify(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    suites: dict[str, Callable[[argparse.Namespace], dict[str, Any]]] = {
        "table1": verify_table1, "table2": verify_table2, "tournaments": verify_tournaments,
        "block": verify_block}
    out = suites[args.suite](args)
    out["verb"] = "verify"
    return out, EXIT_OK if out["pass"] else EXIT_MISMATCH


def cmd_search(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    state = None
    if args.state and os.path.isfile(args.state):
        state = json.loads(Path(args.state).read_text())
    try:
        res = constructions.search_block(args.n, args.max_rldeg, seed=args.seed, iterations=args.iters,
                                         state=state)
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    if args.state:
        Path(args.state).write_text(json.dumps(res.state, sort_keys=True) + "\n")
    out: dict[str, Any] = {"verb": "search", "n": args.n, "max_rldeg": args.max_rldeg, "seed": args.seed,
                           "iterations": res.iterations, "budget_spent": res.budget_spent}
    if res.block is None:
        out["block"] = None
    else:
        b = res.block
        out["block"] = {"digraph6": codec.encode(b.D, header=False), "R": list(b.R),
                        "r_prime": b.r_prime, "f": b.f, "is_bad": b.is_bad, "is_minimal": b.is_minimal,
                        "deg_rl": b.deg_rl, "ratio_limit": _frac(res.ratio)}
    return out, EXIT_OK


def cmd_codec(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    g, inst = read_instance(args.input, args.format, args.directed)
    to = args.to or inst["format"]
    if to == "dot":
        text = to_dot(g)
    else:
        try:
            text = codec.encode(g, kind=to, header=not args.no_header)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    pairs = g.arcs() if g.directed else g.edges()
    return {"verb": "codec", "instance": inst, "n": g.n, "directed": g.directed,
            "arcs" if g.directed else "edges": [list(p) for p in pairs], "encoded": text}, EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["graph6", "digraph6", "dot"], default=None)
    common.add_argument("--directed", action="store_true", help="read headerless input as digraph6")
    common.add_argument("--deadline-ms", type=int, default=None)
    common.add_argument("--threads", type=int, default=None,
                        help="worker count (default FVSLAB_THREADS or 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")

    p = argparse.ArgumentParser(prog="fvslab", description="Feedback vertex set laboratory.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("solve", parents=[common], help="exact minimum FVS")
    s.add_argument("input")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("analyze", parents=[common], help="parameters, bounds and checks")
    s.add_argument("input")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("construct", parents=[common], help="generate a family member")
    s.add_argument("family", choices=["lbdg", "evendeg", "lbtw", "lbtw2", "gen2-spec", "gen-iterate"])
    for name in ("k", "i", "l", "m"):
        s.add_argument(f"--{name}", type=int, default=None)
    s.add_argument("--block", default=None, help="builtin block name for gen-iterate")
    s.add_argument("--spec", default=None, help="JSON construction spec file for gen2-spec")
    s.add_argument("--verify", action="store_true", help="run the exact solver on the result")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", parents=[common], help="recompute the reference tables")
    s.add_argument("suite", choices=["table1", "table2", "tournaments", "block"])
    s.add_argument("--row", type=int, default=None)
    s.add_argument("--max-n", type=int, default=7)
    s.add_argument("--family-depth", type=int, default=2)
    s.add_argument("--graph", default=None)
    s.add_argument("--R", default=None, help="comma-separated bad set")
    s.add_argument("--r-prime", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="local search for building blocks")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-rldeg", type=int, required=True)
    s.add_argument("--iters", type=int, default=2000)
    s.add_argument("--state", default=None, help="resumable state file")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("codec", parents=[common], help="decode and re-encode")
    s.add_argument("input")
    s.add_argument("--to", choices=["graph6", "digraph6", "dot"], default=None)
    s.add_argument("--no-header", action="store_true")
    s.set_defaults(func=cmd_codec)
    return p


def _human(rep: dict[str, Any]) -> str:
    verb = rep.get("verb")
    if verb == "solve":
        f = rep.get("fvs")
        if f is None:
            return "no FVS within budget"
        return f"n={rep['n']} fvs={f['size']} optimal={f['optimal']} vertices={f['vertices']}"
    if verb == "construct":
        r = rep.get("report")
        head = rep["graph"]
        if r is None:
            return head
        return f"{head}\nn={r['n']} (formula {r['n_formula']}) f {r['f_claim']} {r['f_formula']}" + (
            f" exact={r['f_exact']}" if r["f_exact"] is not None else "")
    if verb == "codec":
        return rep["encoded"]
    return json.dumps(rep, sort_keys=True, indent=1)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        try:
            args.threads = int(os.environ.get("FVSLAB_THREADS", "1"))
        except ValueError:
            print("error: FVSLAB_THREADS must be an integer", file=sys.stderr)
            return EXIT_INPUT
    start = time.perf_counter()
    try:
        rep, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TimeoutError as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    rep["schema"] = SCHEMA
    rep["threads"] = args.threads
    if args.timing:
        rep["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    print(json.dumps(rep, sort_keys=True) if args.json else _human(rep))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
