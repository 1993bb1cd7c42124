"""Graph representations and the basic distance primitives.

Vertex ids are dense integers ``0..n-1``.  Graphs are immutable once built and
keep every adjacency list sorted, so all traversals below are deterministic.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import DomainError, InputError, OracleGuardError

INF = float("inf")


class Graph:
    """Simple undirected graph stored as sorted adjacency tuples."""

    __slots__ = ("n", "adj", "_adjset")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._adjset: tuple[frozenset[int], ...] | None = None

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        n = len(adjacency)
        return cls(n, ((u, v) for u in range(n) for v in adjacency[u]))

    @property
    def vertex_count(self) -> int:
        return self.n

    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        if self._adjset is None:
            self._adjset = tuple(frozenset(nb) for nb in self.adj)
        return v in self._adjset[u]

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``G[X]`` relabelled to ``0..|X|-1`` and the new-to-old id map."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[w]) for u in old for w in self.adj[u] if w in index and u < w]
        return Graph(len(old), edges), old

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


class DiGraph:
    """Directed simple graph with in- and out-lists.

    Antiparallel arcs are rejected: at most one of ``(u, v)`` and ``(v, u)``.
    """

    __slots__ = ("n", "out", "inn")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        outs: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-arc at vertex {u}")
            outs[u].add(v)
        ins: list[list[int]] = [[] for _ in range(n)]
        for u in range(n):
            for v in outs[u]:
                if u in outs[v]:
                    raise InputError(f"antiparallel arcs between {u} and {v}")
                ins[v].append(u)
        self.n = n
        self.out: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in outs)
        self.inn: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in ins)

    @classmethod
    def from_sorted_out(cls, outs: Sequence[tuple[int, ...]]) -> "DiGraph":
        """Trusted constructor: ``outs[u]`` sorted, in range, loop-free and without antiparallel pairs."""
        n = len(outs)
        ins: list[list[int]] = [[] for _ in range(n)]
        for u in range(n):
            for v in outs[u]:
                ins[v].append(u)
        D = cls.__new__(cls)
        D.n = n
        D.out = tuple(outs)
        D.inn = tuple(map(tuple, ins))
        return D

    @property
    def vertex_count(self) -> int:
        return self.n

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self.out):
            for v in nb:
                yield (u, v)

    @property
    def arc_count(self) -> int:
        return sum(len(nb) for nb in self.out)

    def indegree(self, v: int) -> int:
        return len(self.inn[v])

    @property
    def max_indegree(self) -> int:
        return max((len(i) for i in self.inn), default=0)

    def underlying(self) -> Graph:
        return Graph(self.n, self.arcs())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DiGraph) and self.n == other.n and self.out == other.out

    def __hash__(self) -> int:
        return hash((self.n, self.out))

    def __repr__(self) -> str:
        return f"DiGraph(n={self.n}, arcs={self.arc_count})"


@dataclass(frozen=True)
class ColoredGraph:
    """A graph with pairwise disjoint colour classes; some vertices may be uncoloured.

    ``labels[i]`` optionally names colour ``i`` (used for distance-vector colours).
    """

    graph: Graph
    colors: tuple[frozenset[int], ...]
    color_of: tuple[int | None, ...] = field(repr=False)
    labels: tuple[Hashable, ...] | None = None

    @classmethod
    def from_classes(cls, graph: Graph, classes: Sequence[Iterable[int]], labels=None) -> "ColoredGraph":
        color_of: list[int | None] = [None] * graph.n
        frozen = []
        for i, cls_ in enumerate(classes):
            members = frozenset(cls_)
            for v in members:
                if not 0 <= v < graph.n:
                    raise InputError(f"coloured vertex {v} out of range")
                if color_of[v] is not None:
                    raise InputError(f"vertex {v} lies in colours {color_of[v]} and {i}")
                color_of[v] = i
            frozen.append(members)
        return cls(graph, tuple(frozen), tuple(color_of), None if labels is None else tuple(labels))

    @classmethod
    def from_color_map(cls, graph: Graph, color_of: Sequence[int | None] | dict[int, int]) -> "ColoredGraph":
        if isinstance(color_of, dict):
            items = color_of.items()
        else:
            items = ((v, c) for v, c in enumerate(color_of))
        classes: dict[int, set[int]] = {}
        for v, c in items:
            if c is None:
                continue
            if c < 0:
                raise InputError(f"negative colour index {c}")
            classes.setdefault(c, set()).add(v)
        t = max(classes, default=-1) + 1
        return cls.from_classes(graph, [classes.get(i, ()) for i in range(t)])

    @classmethod
    def uncolored(cls, graph: Graph) -> "ColoredGraph":
        return cls(graph, (), (None,) * graph.n)

    @property
    def color_count(self) -> int:
        return len(self.colors)

    def colored_vertices(self) -> list[int]:
        return [v for v, c in enumerate(self.color_of) if c is not None]


# ---------------------------------------------------------------- distances


def _check_vertex(G: Graph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < G.n:
        raise InputError(f"vertex {v!r} out of range for n={G.n}")


def bfs_distances(
    G: Graph,
    sources: int | Iterable[int],
    radius: float = INF,
    allowed: set[int] | frozenset[int] | None = None,
) -> dict[int, int]:
    """Multi-source BFS, optionally truncated at ``radius`` and restricted to ``allowed``."""
    if isinstance(sources, int):
        sources = (sources,)
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if s not in dist and (allowed is None or s in allowed):
            dist[s] = 0
            queue.append(s)
    adj = G.adj
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if dx >= radius:
            continue
        for y in adj[x]:
            if y not in dist and (allowed is None or y in allowed):
                dist[y] = dx + 1
                queue.append(y)
    return dist


def bfs_neighbourhood(G: Graph, v: int, r: int) -> tuple[list[int], dict[int, int]]:
    """Return ``N_r(v)`` in ascending id order together with exact distances."""
    _check_vertex(G, v)
    if r < 0:
        raise InputError("radius must be non-negative")
    dist = bfs_distances(G, v, r)
    return sorted(dist), dist


def neighbourhood(G: Graph, sources: Iterable[int], r: int, allowed=None) -> set[int]:
    return set(bfs_distances(G, sources, r, allowed))


def components(G: Graph, allowed: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components (of ``G[allowed]``), each sorted, ordered by minimum vertex."""
    pool = set(range(G.n)) if allowed is None else set(allowed)
    result = []
    for s in sorted(pool):
        if s not in pool:
            continue
        comp = bfs_distances(G, s, INF, pool)
        pool.difference_update(comp)
        result.append(sorted(comp))
    return result


def eccentricity(G: Graph, v: int, allowed=None) -> float:
    dist = bfs_distances(G, v, INF, allowed)
    size = G.n if allowed is None else len(allowed)
    if len(dist) < size:
        return INF
    return max(dist.values(), default=0)


def radius_and_center(G: Graph, allowed: Iterable[int] | None = None) -> tuple[int, int]:
    """Radius of a connected graph and its smallest-id centre vertex.

    With ``allowed`` the computation runs on the induced subgraph ``G[allowed]``.
    """
    pool = frozenset(range(G.n)) if allowed is None else frozenset(allowed)
    if not pool:
        raise DomainError("radius of the empty graph is undefined")
    best: tuple[float, int] | None = None
    for u in sorted(pool):
        dist = bfs_distances(G, u, INF, pool)
        if len(dist) < len(pool):
            raise DomainError("graph is disconnected; compute the radius per component")
        ecc = max(dist.values())
        if best is None or ecc < best[0]:
            best = (ecc, u)
    assert best is not None
    return int(best[0]), best[1]


# ---------------------------------------------------------------- degeneracy


def smallest_last_removal(adj: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Repeatedly delete a minimum-degree vertex, ties to the smallest id.

    Returns the removal sequence and the largest degree seen at removal time.
    """
    n = len(adj)
    deg = [len(a) for a in adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * n
    order: list[int] = []
    worst = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        if d > worst:
            worst = d
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, worst


def degeneracy_orientation(G: Graph) -> tuple[DiGraph, int]:
    """Greedy orientation: each removed vertex receives its remaining edges as in-arcs."""
    order, _ = smallest_last_removal(G.adj)
    pos = [0] * G.n
    for i, v in enumerate(order):
        pos[v] = i
    arcs = [(w, v) for v in range(G.n) for w in G.adj[v] if pos[w] > pos[v]]
    D = DiGraph(G.n, arcs)
    return D, D.max_indegree


# ---------------------------------------------------------------- products


def lex_product_colored(G: Graph, k: int, colored: Iterable[int] | None = None) -> ColoredGraph:
    """``G • K_k`` with vertex ``(x, y)`` stored as ``x*k + y`` and coloured ``y``.

    If ``colored`` is given only copies of those base vertices carry a colour.
    """
    if k < 1:
        raise InputError("lexicographic product needs k >= 1")
    n = G.n * k
    edges = []
    for x in range(G.n):
        base = x * k
        for y in range(k):
            for y2 in range(y + 1, k):
                edges.append((base + y, base + y2))
        for x2 in G.adj[x]:
            if x < x2:
                for y in range(k):
                    for y2 in range(k):
                        edges.append((base + y, x2 * k + y2))
    P = Graph(n, edges)
    keep = set(range(G.n)) if colored is None else set(colored)
    color_of = [(v % k) if (v // k) in keep else None for v in range(n)]
    classes: list[set[int]] = [set() for _ in range(k)]
    for v, c in enumerate(color_of):
        if c is not None:
            classes[c].add(v)
    return ColoredGraph.from_classes(P, classes)


# ---------------------------------------------------------------- minor oracle

MINOR_ORACLE_MAX_N = 12
MINOR_ORACLE_MAX_S = 4


def _branch_sets(G: Graph, r: int) -> list[int]:
    """Bitmasks of vertex sets inducing a connected subgraph of radius <= r."""
    out = []
    for mask in range(1, 1 << G.n):
        verts = [v for v in range(G.n) if mask >> v & 1]
        pool = frozenset(verts)
        for c in verts:
            dist = bfs_distances(G, c, r, pool)
            if len(dist) == len(verts):
                out.append(mask)
                break
    return out


def has_shallow_clique_minor(G: Graph, s: int, r: int) -> bool:
    """Brute-force test of ``K_s`` as a depth-``r`` minor (tiny graphs only)."""
    if G.n > MINOR_ORACLE_MAX_N or s > MINOR_ORACLE_MAX_S:
        raise OracleGuardError(
            f"shallow-minor oracle limited to n <= {MINOR_ORACLE_MAX_N}, s <= {MINOR_ORACLE_MAX_S}"
        )
    if s <= 0:
        return True
    if r < 0:
        raise InputError("depth must be non-negative")
    sets = _branch_sets(G, r)
    closed = []
    for mask in sets:
        nb = 0
        for v in range(G.n):
            if mask >> v & 1:
                for w in G.adj[v]:
                    nb |= 1 << w
        closed.append(nb)

    def extend(chosen: list[int], start: int) -> bool:
        if len(chosen) == s:
            return True
        used = 0
        for i in chosen:
            used |= sets[i]
        for j in range(start, len(sets)):
            mask = sets[j]
            if mask & used:
                continue
            if all(closed[i] & mask for i in chosen):
                chosen.append(j)
                if extend(chosen, j + 1):
                    return True
                chosen.pop()
        return False

    return extend([], 0)
