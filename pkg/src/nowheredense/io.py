"""Edge-list, DIMACS and colour-file parsing.

Plain edge lists look like::

    p 5 4
    0 1
    1 2

with an optional ``p <n> <m>`` header and 0-based ids.  DIMACS ``.col`` input
(``p edge n m`` plus ``e u v`` lines, 1-based) is detected and converted.
Lines starting with ``c`` or ``#`` are comments.
"""

from __future__ import annotations

from pathlib import Path

from .errors import GraphFormatError
from .graph import ColoredGraph, Graph


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    dimacs = any(
        (ln.split()[:1] == ["e"]) or (ln.split()[:2] in (["p", "edge"], ["p", "col"]))
        for ln in lines
        if ln.strip()
    )
    n: int | None = None
    m: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, 1):
        tokens = raw.split()
        if not tokens or tokens[0] in ("c", "#") or tokens[0].startswith("#"):
            continue
        if tokens[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            body = tokens[2:] if dimacs and len(tokens) == 4 else tokens[1:]
            if len(body) != 2:
                raise GraphFormatError("header must be 'p <n> <m>' or 'p edge <n> <m>'", lineno)
            n, m = _ints(body, lineno)
            if n < 0 or m < 0:
                raise GraphFormatError("negative counts in header", lineno)
            continue
        if dimacs:
            if tokens[0] != "e" or len(tokens) != 3:
                raise GraphFormatError("expected 'e <u> <v>'", lineno)
            u, v = _ints(tokens[1:], lineno)
            u, v = u - 1, v - 1
        else:
            if len(tokens) != 2:
                raise GraphFormatError("expected '<u> <v>'", lineno)
            u, v = _ints(tokens, lineno)
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex id in edge {tokens}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if n is not None and max(u, v) >= n:
            raise GraphFormatError(f"vertex id {max(u, v)} exceeds header n={n}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key[0]} {key[1]}", lineno)
        seen.add(key)
        edges.append(key)
    if n is None:
        n = max((max(e) for e in edges), default=-1) + 1
    elif m is not None and m != len(edges):
        raise GraphFormatError(f"header announces {m} edges but {len(edges)} were listed")
    return Graph(n, edges)


def serialize_edge_list(G: Graph) -> str:
    lines = [f"p {G.n} {G.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_graph(G: Graph, path: str | Path) -> None:
    Path(path).write_text(serialize_edge_list(G))


def parse_colors(text: str, graph: Graph) -> ColoredGraph:
    """Colour file: one ``vertex color_index`` pair per line."""
    color_of: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        if len(tokens) != 2:
            raise GraphFormatError("expected '<vertex> <color>'", lineno)
        v, c = _ints(tokens, lineno)
        if not 0 <= v < graph.n:
            raise GraphFormatError(f"vertex {v} out of range", lineno)
        if c < 0:
            raise GraphFormatError(f"negative colour {c}", lineno)
        if v in color_of and color_of[v] != c:
            raise GraphFormatError(f"vertex {v} given two colours", lineno)
        color_of[v] = c
    return ColoredGraph.from_color_map(graph, color_of)


def parse_vertex_list(text: str) -> list[int]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        out.extend(_ints(tokens, lineno))
    return out
