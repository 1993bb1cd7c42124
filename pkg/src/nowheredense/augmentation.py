"""Tight transitive fraternal augmentations of oriented graphs."""

from __future__ import annotations

import heapq
from bisect import bisect_left
from collections.abc import Sequence
from dataclasses import dataclass, field

from .errors import DenseInputError, InputError, PropertyViolation
from .graph import DiGraph, Graph, bfs_distances, degeneracy_orientation, smallest_last_removal

ORIGINAL = "original"
TRANSITIVE = "transitive"
FRATERNAL = "fraternal"

DEFAULT_INDEGREE_CEILING = 2**20


@dataclass
class AugmentationResult:
    digraph: DiGraph
    rounds: int
    max_indegree: int
    provenance: dict[tuple[int, int], str] = field(repr=False)
    # antiparallel transitive demands that could not both be honoured
    conflicts: int = 0

    def count_by_provenance(self) -> dict[str, int]:
        counts = {ORIGINAL: 0, TRANSITIVE: 0, FRATERNAL: 0}
        for tag in self.provenance.values():
            counts[tag] += 1
        return counts


FRATERNAL_RULES = ("order", "indegree")


def topological_rank(D: DiGraph) -> list[int] | None:
    """Rank with every arc running from a higher to a lower rank, or ``None`` if ``D`` has a cycle.

    Kahn's algorithm with the smallest available id first, so the result is canonical.
    """
    n = D.n
    indeg = [len(i) for i in D.inn]
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    seq = []
    while heap:
        v = heapq.heappop(heap)
        seq.append(v)
        for w in D.out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(seq) < n:
        return None
    rank = [0] * n
    for i, v in enumerate(seq):
        rank[v] = n - 1 - i
    return rank


def _ranked_round(
    D: DiGraph,
    rank: Sequence[int],
    provenance: dict[tuple[int, int], str] | None,
) -> DiGraph:
    """One round when every arc of ``D`` descends in ``rank``.

    Works per tail ``u``: the new heads are the heads of ``u``'s heads
    (transitive) and the lower-ranked co-tails of ``u``'s heads (fraternal).
    The result descends in ``rank`` as well, so it stays acyclic.
    ``provenance`` is updated in place when given.
    """
    n = D.n
    out, inn = D.out, D.inn
    co_tails = []
    co_keys = []
    for w in range(n):
        lst = sorted(inn[w], key=rank.__getitem__)
        co_tails.append(lst)
        co_keys.append([rank[x] for x in lst])
    new_out: list[tuple[int, ...]] = []
    for u in range(n):
        heads = out[u]
        if not heads:
            new_out.append(())
            continue
        ru = rank[u]
        trans: set[int] = set()
        frat: set[int] = set()
        for w in heads:
            trans.update(out[w])
            frat.update(co_tails[w][: bisect_left(co_keys[w], ru)])
        merged = trans.union(heads, frat)
        new_out.append(tuple(sorted(merged)))
        if provenance is not None:
            for v in trans.difference(heads):
                provenance[(u, v)] = TRANSITIVE
            for v in frat.difference(heads, trans):
                provenance[(u, v)] = FRATERNAL
    return DiGraph.from_sorted_out(new_out)


def _indegree_round(D: DiGraph, provenance: dict[tuple[int, int], str] | None) -> tuple[DiGraph, int]:
    """One round orienting fraternal arcs toward the smaller current in-degree (ties to the larger id).

    Transitive arcs come first; a pair demanded in both directions keeps the
    first demand in sorted order and is counted as a conflict.
    """
    n = D.n
    out = [set(o) for o in D.out]
    indeg = [len(i) for i in D.inn]
    conflicts = 0

    transitive: set[tuple[int, int]] = set()
    for w in range(n):
        outs = D.out[w]
        if not outs:
            continue
        for u in D.inn[w]:
            for v in outs:
                if u != v:
                    transitive.add((u, v))
    for u, v in sorted(transitive):
        if v in out[u]:
            continue
        if u in out[v]:
            conflicts += 1
            continue
        out[u].add(v)
        indeg[v] += 1
        if provenance is not None:
            provenance[(u, v)] = TRANSITIVE

    fraternal: set[tuple[int, int]] = set()
    for w in range(n):
        ins = D.inn[w]
        for i in range(len(ins)):
            u = ins[i]
            for v in ins[i + 1:]:
                fraternal.add((u, v))
    for u, v in sorted(fraternal):
        if v in out[u] or u in out[v]:
            continue
        if indeg[u] < indeg[v]:
            tail, head = v, u
        else:
            tail, head = u, v
        out[tail].add(head)
        indeg[head] += 1
        if provenance is not None:
            provenance[(tail, head)] = FRATERNAL

    return DiGraph(n, ((u, v) for u in range(n) for v in out[u])), conflicts


def _round(D: DiGraph, rank: Sequence[int] | None, provenance) -> tuple[DiGraph, int]:
    if rank is None:
        return _indegree_round(D, provenance)
    return _ranked_round(D, rank, provenance), 0


def _rank_for(D: DiGraph, rule: str) -> list[int] | None:
    if rule not in FRATERNAL_RULES:
        raise InputError(f"unknown fraternal rule {rule!r}; expected one of {FRATERNAL_RULES}")
    return topological_rank(D) if rule == "order" else None


def tight_one_aug(
    D: DiGraph,
    provenance: dict[tuple[int, int], str] | None = None,
    rule: str = "order",
) -> AugmentationResult:
    """One round: close directed 2-paths (transitive) and common out-neighbours (fraternal).

    Under the default ``"order"`` rule fraternal arcs follow a canonical
    topological order of ``D``.  A cyclic ``D`` has no such order and falls back
    to the in-degree rule; its conflicts are reported in ``conflicts``.
    """
    tags = {arc: ORIGINAL for arc in D.arcs()} if provenance is None else dict(provenance)
    H, conflicts = _round(D, _rank_for(D, rule), tags)
    return AugmentationResult(H, 1, H.max_indegree, tags, conflicts)


def aug(
    G: Graph,
    r: int,
    indegree_ceiling: int = DEFAULT_INDEGREE_CEILING,
    rule: str = "order",
    track_provenance: bool = True,
    history: list[DiGraph] | None = None,
) -> AugmentationResult:
    """``r`` rounds of tight augmentation starting from the greedy degeneracy orientation.

    ``r == 0`` returns the initial orientation unchanged.  Under the ``"order"``
    rule every round orients fraternal arcs from the later-removed to the
    earlier-removed endpoint of the smallest-last sequence.  With
    ``track_provenance=False`` the per-arc tags are skipped (large inputs).
    If ``history`` is a list, the digraph after each round (starting with the
    initial orientation) is appended to it.
    """
    if r < 0:
        raise InputError("number of rounds must be non-negative")
    if rule not in FRATERNAL_RULES:
        raise InputError(f"unknown fraternal rule {rule!r}; expected one of {FRATERNAL_RULES}")
    removal, _ = smallest_last_removal(G.adj)
    rank: list[int] | None = None
    if rule == "order":
        rank = [0] * G.n
        for i, v in enumerate(removal):
            rank[v] = i
    D, _ = degeneracy_orientation(G)
    tags = {arc: ORIGINAL for arc in D.arcs()} if track_provenance else None
    conflicts = 0
    if history is not None:
        history.append(D)
    for _ in range(r):
        D, c = _round(D, rank, tags)
        conflicts += c
        if history is not None:
            history.append(D)
        if D.max_indegree > indegree_ceiling:
            raise DenseInputError(
                f"max in-degree {D.max_indegree} exceeds ceiling {indegree_ceiling}; input is too dense"
            )
    return AugmentationResult(D, r, D.max_indegree, tags if tags is not None else {}, conflicts)


@dataclass
class AugReport:
    violations: list[tuple]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_aug(D: DiGraph, H: DiGraph) -> AugReport:
    """Check the four tight-augmentation conditions for ``H`` over ``D`` exhaustively."""
    if D.n != H.n:
        raise InputError("digraphs live on different vertex sets")
    n = D.n
    Hout = [set(o) for o in H.out]
    Dout = [set(o) for o in D.out]
    Din = [set(i) for i in D.inn]
    bad: list[tuple] = []
    for u, v in D.arcs():
        if v not in Hout[u]:
            bad.append(("kept", u, v))
    for w in range(n):
        for u in D.inn[w]:
            for v in D.out[w]:
                if u != v and v not in Hout[u]:
                    bad.append(("transitive", u, w, v))
        ins = D.inn[w]
        for i, u in enumerate(ins):
            for v in ins[i + 1:]:
                if v not in Hout[u] and u not in Hout[v]:
                    bad.append(("fraternal", u, v, w))
    for u, v in H.arcs():
        if v in Dout[u]:
            continue
        if Dout[u] & Din[v] or Dout[u] & Dout[v]:
            continue
        bad.append(("tight", u, v))
    return AugReport(bad)


def check_neighbourhood_witness(G: Graph, H: AugmentationResult | DiGraph, v: int, w: int, r: int) -> tuple:
    """Find the arc or common in-neighbour that certifies ``dist(v, w) <= r`` in the augmentation.

    Returns ``("arc", v, w)``, ``("arc", w, v)`` or ``("common", u)``.
    """
    D = H.digraph if isinstance(H, AugmentationResult) else H
    if v == w:
        raise InputError("witness is defined for distinct vertices")
    dist = bfs_distances(G, v, r)
    if w not in dist:
        raise InputError(f"dist({v}, {w}) exceeds {r}")
    if w in D.out[v]:
        return ("arc", v, w)
    if v in D.out[w]:
        return ("arc", w, v)
    common = set(D.inn[v]).intersection(D.inn[w])
    if common:
        return ("common", min(common))
    raise PropertyViolation(f"no augmentation witness for pair ({v}, {w}) at distance {dist[w]}")
