"""Vertex orders, weak reachability and weak colouring numbers.

``wreach_k[v]`` is the set of vertices ``u`` at or below ``v`` in the order
that ``v`` reaches by a path of length at most ``k`` whose vertices all lie
at or above ``u``.  Two independent routes compute it: a pruned search per
source (:func:`wreach_set`) and the ascending deletion sweep
(:func:`sweep_balls`) whose balls are inverted by :func:`wreach_sets`.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .augmentation import DEFAULT_INDEGREE_CEILING, aug
from .errors import InputError, OracleGuardError
from .graph import Graph, bfs_distances, smallest_last_removal

BRUTE_WCOL_MAX_N = 8
# arc count above which the degeneracy peel runs in the compiled kernel
COMPILED_THRESHOLD = 200_000


@dataclass(frozen=True)
class VertexOrder:
    """A linear order on ``0..n-1``; ``sequence[i]`` has rank ``i``."""

    sequence: tuple[int, ...]
    position: tuple[int, ...]

    @classmethod
    def from_sequence(cls, seq: Iterable[int]) -> "VertexOrder":
        seq = tuple(seq)
        n = len(seq)
        position = [-1] * n
        for i, v in enumerate(seq):
            if not isinstance(v, int) or not 0 <= v < n or position[v] != -1:
                raise InputError("order must be a permutation of 0..n-1")
            position[v] = i
        return cls(seq, tuple(position))

    @classmethod
    def identity(cls, n: int) -> "VertexOrder":
        return cls(tuple(range(n)), tuple(range(n)))

    def __len__(self) -> int:
        return len(self.sequence)

    def less(self, u: int, v: int) -> bool:
        return self.position[u] < self.position[v]


def _check_order(G: Graph, order: VertexOrder) -> None:
    if len(order) != G.n:
        raise InputError(f"order has {len(order)} vertices, graph has {G.n}")


def order_from_aug(
    G: Graph, r: int, indegree_ceiling: int = DEFAULT_INDEGREE_CEILING
) -> tuple[VertexOrder, int]:
    """Degeneracy order of the underlying graph of ``aug(G, r)`` and its max in-degree ``d``.

    Vertices removed first by the smallest-last procedure come last, so every
    vertex has at most ``2d`` smaller neighbours in the augmented graph.
    """
    if r < 1:
        raise InputError("order_from_aug needs r >= 1")
    H = aug(G, r, indegree_ceiling, track_provenance=False)
    D = H.digraph
    # the underlying graph of an augmentation is its out-lists plus in-lists
    adj = [o + i for o, i in zip(D.out, D.inn)]
    if D.arc_count > COMPILED_THRESHOLD:
        from ._fast import csr_from_lists, smallest_last_removal_csr

        removal, _ = smallest_last_removal_csr(*csr_from_lists(adj))
    else:
        removal, _ = smallest_last_removal(adj)
    return VertexOrder.from_sequence(reversed(removal)), H.max_indegree


def degeneracy_order(G: Graph) -> VertexOrder:
    """Smallest-last order of ``G`` itself, minimum degree last."""
    removal, _ = smallest_last_removal(G.adj)
    return VertexOrder.from_sequence(reversed(removal))


def wreach_set(G: Graph, order: VertexOrder, k: int, v: int) -> set[int]:
    """``wreach_k[v]`` including ``v``, by one restricted search per candidate."""
    _check_order(G, order)
    if k < 0:
        raise InputError("radius must be non-negative")
    pos = order.position
    pv = pos[v]
    result = {v}
    ball = bfs_distances(G, v, k)
    for u in ball:
        pu = pos[u]
        if pu >= pv:
            continue
        allowed = {w for w in ball if pos[w] >= pu}
        if u in bfs_distances(G, v, k, allowed):
            result.add(u)
    return result


def sweep_balls(G: Graph, order: VertexOrder, radius: int) -> list[list[int]]:
    """For each ``v`` the ball ``N_radius(v)`` in ``G`` minus every vertex below ``v``.

    Vertices are processed in ascending order and deleted afterwards.  Each
    adjacency list is kept sorted by position with a pointer past the deleted
    prefix, so deleting ``v`` only advances the pointers of its larger
    neighbours.  ``balls[v]`` is sorted ascending by id.
    """
    _check_order(G, order)
    if radius < 0:
        raise InputError("radius must be non-negative")
    n = G.n
    pos = order.position
    nbrs = [sorted(G.adj[x], key=pos.__getitem__) for x in range(n)]
    start = [0] * n
    balls: list[list[int]] = [[] for _ in range(n)]
    mark = [-1] * n
    for v in order.sequence:
        mark[v] = v
        ball = [v]
        frontier = [v]
        for _ in range(radius):
            nxt = []
            for x in frontier:
                lst = nbrs[x]
                for i in range(start[x], len(lst)):
                    y = lst[i]
                    if mark[y] != v:
                        mark[y] = v
                        nxt.append(y)
            if not nxt:
                break
            ball.extend(nxt)
            frontier = nxt
        ball.sort()
        balls[v] = ball
        # delete v: it is the first live entry of each larger neighbour's list
        for w in nbrs[v]:
            if pos[w] > pos[v]:
                start[w] += 1
    return balls


def wreach_sets(G: Graph, order: VertexOrder, k: int) -> list[set[int]]:
    """All ``wreach_k`` sets at once by inverting the sweep balls."""
    balls = sweep_balls(G, order, k)
    result: list[set[int]] = [set() for _ in range(G.n)]
    for v, ball in enumerate(balls):
        for w in ball:
            result[w].add(v)
    return result


def wcol_of_order(G: Graph, order: VertexOrder, k: int) -> int:
    """``max_v |wreach_k[v]|`` under ``order``; ``0`` on the empty graph."""
    if G.n == 0:
        return 0
    counts = [0] * G.n
    for ball in sweep_balls(G, order, k):
        for w in ball:
            counts[w] += 1
    return max(counts)


def brute_wcol_with_order(G: Graph, k: int) -> tuple[int, VertexOrder]:
    """Exact ``wcol_k`` and an order attaining it, by branch and bound over all orders.

    Orders are built from the smallest vertex upwards.  Placing ``u`` adds one
    to the count of every unplaced vertex within distance ``k`` of ``u`` in
    the graph of unplaced vertices, so counts only grow and a partial order
    whose maximum already reaches the incumbent is cut.
    """
    n = G.n
    if n > BRUTE_WCOL_MAX_N:
        raise OracleGuardError(f"brute_wcol refuses n={n} > {BRUTE_WCOL_MAX_N}")
    if k < 0:
        raise InputError("radius must be non-negative")
    if n == 0:
        return 0, VertexOrder.identity(0)
    best = [n + 1, tuple(range(n))]
    counts = [0] * n
    placed: list[int] = []
    alive = set(range(n))

    def extend(current_max: int) -> None:
        if current_max >= best[0]:
            return
        if not alive:
            best[0] = current_max
            best[1] = tuple(placed)
            return
        for u in sorted(alive):
            reach = bfs_distances(G, u, k, alive)
            for w in reach:
                counts[w] += 1
            new_max = max(current_max, max(counts[w] for w in reach))
            alive.discard(u)
            placed.append(u)
            extend(new_max)
            placed.pop()
            alive.add(u)
            for w in reach:
                counts[w] -= 1

    extend(0)
    return best[0], VertexOrder.from_sequence(best[1])


def brute_wcol(G: Graph, k: int) -> int:
    """Exact ``wcol_k(G)`` for ``n <= 8``."""
    return brute_wcol_with_order(G, k)[0]
