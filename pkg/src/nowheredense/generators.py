"""Reproducible graph families used by the test and verification suites."""

from __future__ import annotations

import random

from .errors import InputError
from .graph import Graph


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star(leaves: int) -> Graph:
    """Centre 0 joined to vertices ``1..leaves``."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def grid(a: int, b: int) -> Graph:
    """``a x b`` grid; vertex ``(i, j)`` has id ``i*b + j``."""
    edges = []
    for i in range(a):
        for j in range(b):
            v = i * b + j
            if j + 1 < b:
                edges.append((v, v + 1))
            if i + 1 < a:
                edges.append((v, v + b))
    return Graph(a * b, edges)


def empty(n: int) -> Graph:
    return Graph(n)


def random_sparse(n: int, avg_degree: float, rng: random.Random) -> Graph:
    """Erdős–Rényi graph with expected average degree ``avg_degree``."""
    if n < 2:
        return Graph(n)
    m_target = min(int(round(avg_degree * n / 2)), n * (n - 1) // 2)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m_target:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


def random_tree(n: int, rng: random.Random) -> Graph:
    return Graph(n, ((i, rng.randrange(i)) for i in range(1, n)))


def random_regular3(n: int, rng: random.Random, attempts: int = 1000) -> Graph:
    """Random simple 3-regular graph by the configuration model with rejection."""
    if n % 2 or n < 4:
        raise InputError("3-regular graphs need an even n >= 4")
    for _ in range(attempts):
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            key = (min(u, v), max(u, v))
            if u == v or key in edges:
                ok = False
                break
            edges.add(key)
        if ok:
            return Graph(n, sorted(edges))
    raise InputError("failed to sample a simple 3-regular graph")


def random_outerplanar(n: int, rng: random.Random) -> Graph:
    """Cycle plus random non-crossing chords (a maximal-ish outerplanar sample)."""
    if n < 3:
        return path(n)
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}

    def triangulate(lo: int, hi: int) -> None:
        if hi - lo < 2:
            return
        mid = rng.randrange(lo + 1, hi)
        if rng.random() < 0.6:
            if mid - lo > 1:
                edges.add((lo, mid))
            if hi - mid > 1:
                edges.add((mid, hi))
        triangulate(lo, mid)
        triangulate(mid, hi)

    triangulate(0, n - 1)
    return Graph(n, sorted(edges))


def by_name(spec: str, seed: int = 0) -> Graph:
    """Build a graph from a short spec such as ``grid:20x20`` or ``random:100:3``."""
    kind, _, args = spec.partition(":")
    rng = random.Random(seed)
    try:
        if kind == "path":
            return path(int(args))
        if kind == "cycle":
            return cycle(int(args))
        if kind == "complete":
            return complete(int(args))
        if kind == "star":
            return star(int(args))
        if kind == "grid":
            a, b = args.split("x")
            return grid(int(a), int(b))
        if kind == "random":
            n, _, d = args.partition(":")
            return random_sparse(int(n), float(d or 3), rng)
        if kind == "regular3":
            return random_regular3(int(args), rng)
        if kind == "tree":
            return random_tree(int(args), rng)
    except ValueError:
        raise InputError(f"bad generator arguments in {spec!r}") from None
    raise InputError(f"unknown generator {kind!r}")
