"""Sparse r-neighbourhood covers of radius at most 2r from a vertex order."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InputError, PropertyViolation
from .graph import Graph, bfs_distances
from .wcol import VertexOrder, order_from_aug, sweep_balls, wreach_set


@dataclass
class Cover:
    """Clusters ``(center, sorted vertices)`` plus the cluster index assigned to every vertex."""

    clusters: list[tuple[int, tuple[int, ...]]]
    assignment: list[int]
    r: int
    order: VertexOrder = field(repr=False)

    def degrees(self, n: int) -> list[int]:
        deg = [0] * n
        for _, verts in self.clusters:
            for w in verts:
                deg[w] += 1
        return deg

    @property
    def total_size(self) -> int:
        return sum(len(verts) for _, verts in self.clusters)

    def max_degree(self) -> int:
        return max(self.degrees(len(self.assignment)), default=0)

    def to_json(self, G: Graph) -> str:
        doc = {
            "r": self.r,
            "clusters": [{"center": c, "vertices": list(v)} for c, v in self.clusters],
            "assignment": list(self.assignment),
            "order": list(self.order.sequence),
            "stats": {
                "max_degree": self.max_degree(),
                "max_radius": max_cluster_radius(G, self),
                "total_size": self.total_size,
            },
        }
        return json.dumps(doc, sort_keys=True)


def default_order(G: Graph, r: int) -> VertexOrder:
    """The weak-colouring order for radius ``2r``; identity when ``r == 0``."""
    if r == 0:
        return VertexOrder.identity(G.n)
    return order_from_aug(G, 2 * r)[0]


def build_cover(G: Graph, r: int, order: VertexOrder | None = None) -> Cover:
    """One cluster per vertex ``v``: its ``2r``-ball after deleting everything below ``v``.

    Vertex ``w`` is assigned to the cluster of the first ``v`` in the order
    whose ``r``-ball in that deleted graph contains ``w``, which is the
    smallest vertex of ``N_r(w)``.
    """
    if r < 0:
        raise InputError("radius must be non-negative")
    if order is None:
        order = default_order(G, r)
    balls = sweep_balls(G, order, 2 * r)
    pos = order.position
    # smallest vertex of N_r(w): one BFS layer at a time from every vertex at once
    owner = list(range(G.n))
    for _ in range(r):
        nxt = owner[:]
        for x in range(G.n):
            best = nxt[x]
            for y in G.adj[x]:
                if pos[owner[y]] < pos[best]:
                    best = owner[y]
            nxt[x] = best
        owner = nxt
    index = {}
    clusters = []
    for v in range(G.n):
        if balls[v]:
            index[v] = len(clusters)
            clusters.append((v, tuple(balls[v])))
    return Cover(clusters, [index[owner[w]] for w in range(G.n)], r, order)


def cluster_radius(G: Graph, center: int, vertices) -> float:
    allowed = set(vertices)
    dist = bfs_distances(G, center, allowed=allowed)
    if len(dist) < len(allowed) or center not in allowed:
        return float("inf")
    return max(dist.values())


def max_cluster_radius(G: Graph, cover: Cover) -> float:
    """Largest eccentricity of a center inside its own cluster."""
    return max((cluster_radius(G, c, verts) for c, verts in cover.clusters), default=0)


@dataclass
class CoverReport:
    violations: list[tuple]
    max_degree: int
    total_size: int
    max_radius: float

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "violations": [list(v) for v in self.violations],
            "max_degree": self.max_degree,
            "total_size": self.total_size,
            "max_radius": self.max_radius,
        }


def verify_cover(G: Graph, r: int, cover: Cover) -> CoverReport:
    """Check the cover property, cluster radius, connectivity and recompute the statistics."""
    bad: list[tuple] = []
    n = G.n
    deg = [0] * n
    total = 0
    max_radius: float = 0
    members = []
    for idx, (center, verts) in enumerate(cover.clusters):
        vs = set(verts)
        members.append(vs)
        total += len(verts)
        for w in verts:
            if not 0 <= w < n:
                bad.append(("vertex_range", idx, w))
            else:
                deg[w] += 1
        if center not in vs:
            bad.append(("center_outside", idx, center))
            continue
        reach = bfs_distances(G, center, allowed=vs)
        if len(reach) < len(vs):
            bad.append(("disconnected", idx))
            max_radius = float("inf")
            continue
        rad = max(reach.values())
        max_radius = max(max_radius, rad)
        if rad > 2 * r:
            bad.append(("radius", idx, rad))
    if len(cover.assignment) != n:
        bad.append(("assignment_length", len(cover.assignment)))
    else:
        for v in range(n):
            idx = cover.assignment[v]
            if not 0 <= idx < len(members):
                bad.append(("assignment_range", v, idx))
                continue
            missing = [w for w in bfs_distances(G, v, r) if w not in members[idx]]
            if missing:
                bad.append(("cover", v, idx, min(missing)))
    return CoverReport(bad, max(deg, default=0), total, max_radius)


def cover_degree_equals_wreach(G: Graph, r: int, order: VertexOrder, cover: Cover | None = None) -> list[int]:
    """Check ``d^X(v) == |wreach_2r[v]|`` for every ``v`` with the per-source search; return the degrees."""
    if cover is None:
        cover = build_cover(G, r, order)
    deg = cover.degrees(G.n)
    for v in range(G.n):
        expected = len(wreach_set(G, order, 2 * r, v))
        if deg[v] != expected:
            raise PropertyViolation(f"vertex {v} lies in {deg[v]} clusters but |wreach_{2 * r}| = {expected}")
    return deg
