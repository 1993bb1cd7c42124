"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import generators
from .augmentation import FRATERNAL_RULES, aug, check_neighbourhood_witness, verify_aug
from .covers import build_cover, cover_degree_equals_wreach, verify_cover
from .errors import InputError, NowhereDenseError, OracleGuardError, PropertyViolation
from .graph import ColoredGraph, Graph, bfs_distances
from .indepset import BRUTE_DIS_MAX_W, brute_dis, dis, verify_witness
from .io import parse_colors, parse_edge_list, parse_vertex_list
from .splitter import CONNECTORS, make_connector, play_game, replay
from .wcol import VertexOrder, brute_wcol, degeneracy_order, order_from_aug, wcol_of_order


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(args) -> Graph:
    if getattr(args, "input", None):
        return parse_edge_list(_read_text(args.input))
    if getattr(args, "graph", None):
        return generators.by_name(args.graph, args.seed)
    raise InputError("give --input FILE or --graph SPEC")


def _colored(G: Graph, path: str | None) -> ColoredGraph:
    if path is None:
        return ColoredGraph.uncolored(G)
    return parse_colors(_read_text(path), G)


def _tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise InputError(f"expected comma-separated vertices, got {text!r}") from None


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="edge list or DIMACS file")
    p.add_argument("--graph", help="generator spec, e.g. grid:20x20 or random:100:3")
    p.add_argument("--seed", type=int, default=0)


# ---------------------------------------------------------------- subcommands


def cmd_cover(args) -> int:
    G = _graph(args)
    if args.order == "identity":
        order = VertexOrder.identity(G.n)
    elif args.order == "degeneracy":
        order = degeneracy_order(G)
    else:
        order = None
    cover = build_cover(G, args.radius, order)
    text = cover.to_json(G)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    report = verify_cover(G, args.radius, cover)
    if not report.ok:
        print(json.dumps(report.as_dict(), sort_keys=True), file=sys.stderr)
        return 1
    return 0


def cmd_wcol(args) -> int:
    G = _graph(args)
    order, d = order_from_aug(G, args.radius)
    achieved = wcol_of_order(G, order, args.radius)
    for v in order.sequence:
        print(v)
    print(f"wcol={achieved}")
    print(f"d={d}")
    if args.exact:
        exact = brute_wcol(G, args.radius)
        print(f"exact={exact}")
        if achieved < exact:
            return 1
    return 0


def cmd_aug(args) -> int:
    G = _graph(args)
    res = aug(G, args.rounds, rule=args.rule)
    if args.stats:
        counts = res.count_by_provenance()
        print(f"rounds={res.rounds}")
        print(f"arcs={res.digraph.arc_count}")
        for tag in sorted(counts):
            print(f"{tag}={counts[tag]}")
        print(f"max_indegree={res.max_indegree}")
        print(f"conflicts={res.conflicts}")
    else:
        for u, v in sorted(res.digraph.arcs()):
            print(u, v)
    return 0


def cmd_dis(args) -> int:
    G = _graph(args)
    W = parse_vertex_list(_read_text(args.candidates)) if args.candidates else None
    if args.oracle:
        found = brute_dis(G, range(G.n) if W is None else W, args.k, args.radius)
    else:
        found = dis(G, W, args.k, args.radius, l=args.l, m=args.m)
    if found is None:
        print("no")
    else:
        verify_witness(G, found, args.radius)
        print(" ".join(["yes", *map(str, found)]))
    return 0


def cmd_splitter(args) -> int:
    G = _graph(args)
    transcript = play_game(G, args.l, args.m, args.radius, make_connector(args.connector, args.seed))
    for line in transcript.lines():
        print(line)
    replay(G, transcript)
    return 0


def cmd_fo(args) -> int:
    from .logic import Evaluator, Structure, ef_plus_equivalent, parse

    if args.fo_command == "eval":
        f = parse(_read_text(args.formula))
        CG = _colored(_graph(args), args.colors)
        env = {}
        for item in args.assign:
            for part in item.split(","):
                name, eq, value = part.partition("=")
                if not eq:
                    raise InputError(f"assignments look like x=3, got {part!r}")
                try:
                    env[name.strip()] = int(value)
                except ValueError:
                    raise InputError(f"vertex must be an integer in {part!r}") from None
        print("true" if Evaluator(Structure.from_colored(CG))(f, env) else "false")
        return 0
    A = parse_edge_list(_read_text(args.inputA))
    B = parse_edge_list(_read_text(args.inputB))
    ok = ef_plus_equivalent(A, _tuple(args.a), B, _tuple(args.b), args.q, args.l)
    print("true" if ok else "false")
    return 0


def _verify_graph(G: Graph, radii: list[int], out: list[str]) -> None:
    """Run every invariant on one graph; raise on the first failure."""
    for r in radii:
        chain: list = []
        res = aug(G, r, history=chain)
        for i in range(r):
            rep = verify_aug(chain[i], chain[i + 1])
            if not rep.ok:
                raise PropertyViolation(f"augmentation round {i + 1}: {rep.violations[:3]}")
        for v in range(G.n):
            for w in bfs_distances(G, v, r):
                if w != v:
                    check_neighbourhood_witness(G, res, v, w, r)
        order, d = order_from_aug(G, r)
        if wcol_of_order(G, order, r) > 2 * (d + 1) ** 2:
            raise PropertyViolation(f"wcol bound fails at r={r}")
        cover = build_cover(G, r)
        report = verify_cover(G, r, cover)
        if not report.ok:
            raise PropertyViolation(f"cover r={r}: {report.violations[:3]}")
        cover_degree_equals_wreach(G, r, cover.order, cover)
        for k in (1, 2, 3):
            if G.n <= BRUTE_DIS_MAX_W:
                got = dis(G, None, k, r)
                want = brute_dis(G, range(G.n), k, r)
                if (got is None) != (want is None):
                    raise PropertyViolation(f"dis disagrees with brute force at k={k}, r={r}")
        out.append(f"ok n={G.n} m={G.edge_count} r={r}")


def cmd_verify(args) -> int:
    radii = list(range(1, args.radius + 1))
    lines: list[str] = []
    if args.input or args.graph:
        graphs = [_graph(args)]
    else:
        rng = random.Random(args.seed)
        graphs = [generators.random_sparse(rng.randint(2, 16), rng.uniform(1, 3), rng) for _ in range(args.count)]
    try:
        for G in graphs:
            _verify_graph(G, radii, lines)
    except PropertyViolation as exc:
        for line in lines:
            print(line)
        print(f"violation: {exc}")
        return 1
    for line in lines:
        print(line)
    print(f"verified {len(graphs)} graphs")
    return 0


def cmd_bench(args) -> int:
    from ._fast import warm_up

    warm_up()
    sides = [int(s) for s in args.sides.split(",")]
    prev = None
    for side in sides:
        G = generators.grid(side, side)
        t0 = time.perf_counter()
        cover = build_cover(G, args.radius)
        seconds = time.perf_counter() - t0
        degs = cover.degrees(G.n)
        line = f"n={G.n} seconds={seconds:.2f} max_degree={max(degs)} mean_degree={sum(degs) / G.n:.3f}"
        if prev is not None:
            line += f" ratio={seconds / prev:.2f}"
        print(line, flush=True)
        prev = seconds
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nowheredense", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cover", help="sparse r-neighbourhood cover as JSON")
    _add_graph_args(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--order", choices=("aug", "identity", "degeneracy"), default="aug",
                   help="vertex order of the sweep (default: from the augmentation at radius 2r)")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("wcol", help="vertex order and its weak colouring number")
    _add_graph_args(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="also run the exhaustive oracle (n <= 8)")
    p.set_defaults(func=cmd_wcol)

    p = sub.add_parser("aug", help="transitive fraternal augmentation")
    _add_graph_args(p)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--rule", choices=FRATERNAL_RULES, default="order")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_aug)

    p = sub.add_parser("dis", help="distance independent set")
    _add_graph_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--candidates")
    p.add_argument("--l", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--oracle", action="store_true", help="exhaustive search under its size guard")
    p.set_defaults(func=cmd_dis)

    p = sub.add_parser("splitter", help="play the splitter game")
    _add_graph_args(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--connector", choices=sorted(CONNECTORS), default="center")
    p.set_defaults(func=cmd_splitter)

    p = sub.add_parser("fo", help="first-order formulas with distance atoms")
    fo = p.add_subparsers(dest="fo_command", required=True)
    e = fo.add_parser("eval", help="evaluate a formula")
    _add_graph_args(e)
    e.add_argument("--formula", required=True)
    e.add_argument("--colors")
    e.add_argument("--assign", action="append", default=[])
    e.set_defaults(func=cmd_fo)
    g = fo.add_parser("ef", help="decide the EF+ game")
    g.add_argument("--inputA", required=True)
    g.add_argument("--a", required=True)
    g.add_argument("--inputB", required=True)
    g.add_argument("--b", required=True)
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--l", type=int, required=True)
    g.set_defaults(func=cmd_fo)

    p = sub.add_parser("verify", help="run the invariant checks")
    _add_graph_args(p)
    p.add_argument("--radius", type=int, default=2, help="check radii 1..RADIUS")
    p.add_argument("--count", type=int, default=20, help="random graphs when no input is given")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="cover timing on square grids")
    p.add_argument("--sides", default="100,200,400")
    p.add_argument("--radius", type=int, default=2)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PropertyViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return 1
    except (InputError, OracleGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NowhereDenseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
