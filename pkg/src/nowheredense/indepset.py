"""Distance-r independent sets: brute-force oracles, greedy rainbow sets and the recursive solver.

A set is r-independent when its members are pairwise more than ``r`` apart,
and rainbow when its members carry pairwise distinct colours.  Plain
independence reduces to the rainbow version on ``G • K_k``.

The recursive solver
--------------------
1. Peel: take a greedy maximal rainbow r-independent set ``I_i`` of what is
   left, delete its ``2r``-ball, repeat at most ``k`` times.  A colour found in
   all ``k`` peeled sets has ``k`` members pairwise more than ``2r`` apart, so it
   can always be added last; such colours are set aside.  Every vertex of the
   remaining colours lies within ``2r`` of some peeled set.
2. Localise: restrict to the ``3r``-ball around the peeled sets, which keeps
   every path of length at most ``r`` between remaining coloured vertices.
   Several components are combined by splitting the colours between them.
3. Split: in a connected region play Connector on a centre and let Splitter
   answer with ``M``.  Branch over the part ``X`` of the solution inside
   ``M``, recolour the rest by distance vectors to ``M`` so that paths through
   ``M`` become colour conflicts, and recurse on the region minus ``M``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable

from .errors import InputError, OracleGuardError, PropertyViolation
from .graph import (
    INF,
    ColoredGraph,
    Graph,
    bfs_distances,
    components,
    lex_product_colored,
    radius_and_center,
)
from .splitter import GameState, splitter_move

BRUTE_DIS_MAX_W = 20
BRUTE_DIS_MAX_K = 4
BRUTE_RAINBOW_MAX = 40
DEFAULT_N0 = 12

Witness = tuple[int, ...]


# ---------------------------------------------------------------- oracles


def _pairwise_far(G: Graph, vertices: Iterable[int], r: int, allowed=None) -> bool:
    vs = list(vertices)
    for i, v in enumerate(vs):
        near = bfs_distances(G, v, r, allowed)
        if any(w in near for w in vs[i + 1:]):
            return False
    return True


def brute_dis(G: Graph, W: Iterable[int], k: int, r: int) -> Witness | None:
    """Lexicographically least k-subset of ``W`` that is r-independent in ``G``, or ``None``."""
    cand = sorted(set(W))
    if len(cand) > BRUTE_DIS_MAX_W or k > BRUTE_DIS_MAX_K:
        raise OracleGuardError(f"brute_dis refuses |W|={len(cand)}, k={k} (limits {BRUTE_DIS_MAX_W}, {BRUTE_DIS_MAX_K})")
    if k < 0 or r < 0:
        raise InputError("k and r must be non-negative")
    near = {v: set(bfs_distances(G, v, r)) for v in cand}
    for combo in combinations(cand, k):
        if all(b not in near[a] for a, b in combinations(combo, 2)):
            return combo
    return None


def brute_rainbow_dis(
    G: Graph,
    color_of: dict[int, Hashable],
    k: int,
    r: int,
    allowed: frozenset[int] | None = None,
) -> Witness | None:
    """Lexicographically least rainbow r-independent k-set among the coloured vertices."""
    cand = sorted(v for v in color_of if allowed is None or v in allowed)
    if len(cand) > BRUTE_RAINBOW_MAX:
        raise OracleGuardError(f"rainbow brute force refuses {len(cand)} > {BRUTE_RAINBOW_MAX} coloured vertices")
    near = {v: set(bfs_distances(G, v, r, allowed)) for v in cand}
    for combo in combinations(cand, k):
        if len({color_of[v] for v in combo}) < k:
            continue
        if all(b not in near[a] for a, b in combinations(combo, 2)):
            return combo
    return None


def verify_witness(G: Graph, witness: Iterable[int], r: int, color_of=None) -> None:
    """Independent post-hoc check: pairwise BFS distance above ``r`` and, with colours, rainbow."""
    ws = list(witness)
    if len(set(ws)) != len(ws):
        raise PropertyViolation(f"witness {ws} repeats a vertex")
    for i, a in enumerate(ws):
        dist = bfs_distances(G, a)
        for b in ws[i + 1:]:
            if dist.get(b, INF) <= r:
                raise PropertyViolation(f"witness vertices {a} and {b} are at distance {dist[b]} <= {r}")
    if color_of is not None:
        seen = set()
        for v in ws:
            c = color_of[v] if not isinstance(color_of, dict) else color_of.get(v)
            if c is None:
                raise PropertyViolation(f"witness vertex {v} is uncoloured")
            if c in seen:
                raise PropertyViolation(f"colour {c!r} used twice in witness")
            seen.add(c)


# ---------------------------------------------------------------- greedy and recolouring


def greedy_max_rainbow_independent(
    CG: ColoredGraph,
    r: int,
    candidates: Iterable[int] | None = None,
) -> list[int]:
    """Scan coloured vertices by (colour, id); keep a vertex if its colour is new and it is far from the kept ones."""
    allowed = None if candidates is None else set(candidates)
    order = sorted(
        (c, v) for v, c in enumerate(CG.color_of) if c is not None and (allowed is None or v in allowed)
    )
    return _greedy(CG.graph, order, r, None)


def _greedy(G: Graph, order: list[tuple], r: int, alive) -> list[int]:
    chosen: list[int] = []
    used = set()
    blocked: set[int] = set()
    for c, v in order:
        if c in used or v in blocked:
            continue
        chosen.append(v)
        used.add(c)
        blocked.update(bfs_distances(G, v, r, alive))
    return chosen


@dataclass(frozen=True, order=True)
class DistanceVectorColor:
    """Original colour plus distances to the deleted vertices ``m_1..m_t`` (``INF`` beyond ``r``)."""

    base: Hashable
    dvec: tuple[float, ...]


def recolor_with_distance_vectors(CG: ColoredGraph, M: Iterable[int], r: int) -> ColoredGraph:
    """Give every coloured vertex outside ``M`` the colour (base, distances to ``M`` up to ``r``).

    Distances are measured in ``CG.graph`` (which still contains ``M``); the
    vertices of ``M`` lose their colour.
    """
    M = list(M)
    if not M:
        raise InputError("recolouring needs a non-empty set M")
    G = CG.graph
    dist = [bfs_distances(G, m, r) for m in M]
    Mset = set(M)
    labels: dict[DistanceVectorColor, int] = {}
    color_of: list[int | None] = [None] * G.n
    for v in range(G.n):
        c = CG.color_of[v]
        if c is None or v in Mset:
            continue
        base = CG.labels[c] if CG.labels is not None else c
        col = DistanceVectorColor(base, tuple(d.get(v, INF) for d in dist))
        color_of[v] = labels.setdefault(col, len(labels))
    ordered = sorted(labels, key=lambda col: labels[col])
    classes = [[v for v in range(G.n) if color_of[v] == i] for i in range(len(ordered))]
    return ColoredGraph.from_classes(G, classes, labels=ordered)


# ---------------------------------------------------------------- the recursive solver


@dataclass
class DISStats:
    splitter_moves: int = 0
    brute_calls: int = 0
    max_depth: int = 0
    abundant_extensions: int = 0


@dataclass(frozen=True)
class DISInstance:
    colored: ColoredGraph
    k: int
    r: int
    l: int | None = None
    m: int | None = None
    depth: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise InputError("k must be non-negative")
        if self.r < 1:
            raise InputError("r must be at least 1")


@dataclass
class DISResult:
    witness: Witness | None
    stats: DISStats = field(default_factory=DISStats)


def peel(G: Graph, alive: frozenset[int], colors: dict[int, Hashable], k: int, r: int) -> list[tuple[list[int], set[int]]]:
    """Up to ``k`` rounds of greedy rainbow sets ``I_i`` and their ``2r``-balls ``Y_i``.

    Stops early when a round finds ``k`` vertices or no coloured vertex is left.
    Distances are taken in ``G[alive]``.
    """
    rounds = []
    remaining = {v for v in colors if v in alive}
    for _ in range(k):
        if not remaining:
            break
        I = _greedy(G, sorted((colors[v], v) for v in remaining), r, alive)
        Y = set(bfs_distances(G, I, 2 * r, alive))
        rounds.append((I, Y))
        if len(I) >= k:
            break
        remaining -= Y
    return rounds


def _maximal_cliques(nodes: list, compatible: Callable[[object, object], bool]) -> list[list]:
    """Bron-Kerbosch with pivoting; ``nodes`` sorted, cliques reported in a deterministic order."""
    nbr = {a: {b for b in nodes if b != a and compatible(a, b)} for a in nodes}
    cliques: list[list] = []

    def expand(R: list, P: set, X: set) -> None:
        if not P and not X:
            cliques.append(sorted(R))
            return
        pivot = max(sorted(P | X), key=lambda u: len(nbr[u] & P))
        for v in sorted(P - nbr[pivot]):
            expand(R + [v], P & nbr[v], X & nbr[v])
            P = P - {v}
            X = X | {v}

    expand([], set(nodes), set())
    cliques.sort()
    return cliques


class _Solver:
    def __init__(self, G: Graph, r: int, k_top: int, n0: int, strategy, stats: DISStats):
        self.G = G
        self.r = r
        self.rho = k_top * k_top * (6 * r + 1)
        self.n0 = n0
        self.strategy = strategy
        self.stats = stats

    # distances inside the current instance graph G[alive]
    def ball(self, sources, radius: int, alive) -> set[int]:
        return set(bfs_distances(self.G, sources, radius, alive))

    def solve(self, alive: frozenset[int], colors: dict[int, Hashable], k: int, game: GameState, depth: int) -> Witness | None:
        self.stats.max_depth = max(self.stats.max_depth, depth)
        if k == 0:
            return ()
        if len(set(colors.values())) < k:
            return None
        if len(alive) <= self.n0:
            self.stats.brute_calls += 1
            return brute_rainbow_dis(self.G, colors, k, self.r, alive)
        rounds = peel(self.G, alive, colors, k, self.r)
        if rounds and len(rounds[-1][0]) >= k:
            return tuple(sorted(rounds[-1][0][:k]))
        abundant: set = set()
        if len(rounds) == k:
            per_round = [{colors[v] for v in I} for I, _ in rounds]
            abundant = set.intersection(*per_round)
        if len(abundant) >= k:
            self.stats.abundant_extensions += 1
            return self.extend((), sorted(abundant)[:k], colors, alive)
        rest = {v: c for v, c in colors.items() if c not in abundant}
        k_rest = k - len(abundant)
        centres = [v for I, _ in rounds for v in I]
        region = frozenset(self.ball(centres, 3 * self.r, alive))
        if not region.issuperset(rest):
            raise PropertyViolation("a coloured vertex escaped the 2r-balls of the peeled sets")
        sub = self.solve_region(region, rest, k_rest, game, depth)
        if sub is None:
            return None
        if abundant:
            self.stats.abundant_extensions += 1
            return self.extend(sub, sorted(abundant), colors, alive)
        return sub

    def extend(self, partial: Witness, palette: list, colors: dict[int, Hashable], alive) -> Witness:
        """Add one far-away vertex of each colour in ``palette`` (each has enough spread-out members)."""
        chosen = list(partial)
        blocked = self.ball(chosen, self.r, alive) if chosen else set()
        by_color: dict[Hashable, list[int]] = {}
        for v, c in colors.items():
            by_color.setdefault(c, []).append(v)
        for c in palette:
            pick = next((v for v in sorted(by_color[c]) if v not in blocked), None)
            if pick is None:
                raise PropertyViolation(f"abundant colour {c!r} has no vertex far from the partial solution")
            chosen.append(pick)
            blocked |= self.ball([pick], self.r, alive)
        return tuple(sorted(chosen))

    def solve_region(self, region: frozenset[int], colors: dict[int, Hashable], k: int, game: GameState, depth: int) -> Witness | None:
        comps = [frozenset(c) for c in components(self.G, region) if any(v in colors for v in c)]
        if len(comps) == 1:
            comp = comps[0]
            return self.split(comp, {v: c for v, c in colors.items() if v in comp}, k, game, depth)
        comp_colors = [{v: c for v, c in colors.items() if v in comp} for comp in comps]
        palettes = [sorted(set(cc.values())) for cc in comp_colors]
        memo_comp: dict[tuple[int, tuple], Witness | None] = {}

        def solve_comp(i: int, palette: tuple) -> Witness | None:
            key = (i, palette)
            if key not in memo_comp:
                keep = set(palette)
                sub = {v: c for v, c in comp_colors[i].items() if c in keep}
                memo_comp[key] = self.split(comps[i], sub, len(palette), game, depth)
            return memo_comp[key]

        memo: dict[tuple[int, frozenset, int], Witness | None] = {}

        def combine(i: int, free: frozenset, need: int) -> Witness | None:
            if need == 0:
                return ()
            if i == len(comps):
                return None
            key = (i, free, need)
            if key in memo:
                return memo[key]
            capacity = sum(len(free.intersection(p)) for p in palettes[i:])
            result = None
            if capacity >= need:
                avail = [c for c in palettes[i] if c in free]
                for j in range(min(need, len(avail)), -1, -1):
                    for palette in combinations(avail, j):
                        here = solve_comp(i, palette) if j else ()
                        if here is None:
                            continue
                        rest = combine(i + 1, free.difference(palette), need - j)
                        if rest is not None:
                            result = tuple(sorted(here + rest))
                            break
                    if result is not None:
                        break
            memo[key] = result
            return result

        all_colors = frozenset(c for p in palettes for c in p)
        return combine(0, all_colors, k)

    def split(self, comp: frozenset[int], colors: dict[int, Hashable], k: int, game: GameState, depth: int) -> Witness | None:
        if k == 0:
            return ()
        if len(set(colors.values())) < k:
            return None
        if len(comp) <= self.n0:
            self.stats.brute_calls += 1
            return brute_rainbow_dis(self.G, colors, k, self.r, comp)
        rad, centre = radius_and_center(self.G, comp)
        if rad > self.rho:
            raise PropertyViolation(f"connected region has radius {rad} > {self.rho}")
        if not comp <= game.current:
            raise PropertyViolation("region left the splitter game's current graph")
        W = self.strategy(game, centre)
        game = game.advance(centre, W)
        self.stats.splitter_moves += 1
        M = sorted(set(W) & comp)
        rest = comp.difference(M)
        r = self.r
        far = r + 1  # stands for any distance beyond r
        dist_to_M = [bfs_distances(self.G, m, r, comp) for m in M]
        near_M = {m: set(d) for m, d in zip(M, dist_to_M)}
        coloured_M = [m for m in M if m in colors]
        for size in range(min(k, len(coloured_M)), -1, -1):
            for X in combinations(coloured_M, size):
                if len({colors[x] for x in X}) < size:
                    continue
                if any(b in near_M[a] for a, b in combinations(X, 2)):
                    continue
                k2 = k - size
                if k2 == 0:
                    return tuple(sorted(X))
                used = {colors[x] for x in X}
                blocked = self.ball(X, r, comp) if X else set()
                recolored = {}
                for w, c in colors.items():
                    if w in rest and c not in used and w not in blocked:
                        recolored[w] = (c, tuple(d.get(w, far) for d in dist_to_M))
                palette = sorted(set(recolored.values()))
                if len({c[0] for c in palette}) < k2:
                    continue
                for clique in _maximal_cliques(palette, lambda a, b: _compatible(a, b, r)):
                    if len(clique) < k2:
                        continue
                    keep = set(clique)
                    sub_colors = {w: c for w, c in recolored.items() if c in keep}
                    found = self.solve(rest, sub_colors, k2, game, depth + 1)
                    if found is not None:
                        return tuple(sorted(X + found))
        return None


def _compatible(a: tuple, b: tuple, r: int) -> bool:
    """Two distance-vector colours may both be used: different base, no short path through M."""
    if a[0] == b[0]:
        return False
    return all(x + y > r for x, y in zip(a[1], b[1]))


def solve_rainbow(
    inst: DISInstance,
    n0: int = DEFAULT_N0,
    strategy: Callable[[GameState, int], tuple[int, ...]] = splitter_move,
) -> DISResult:
    """Run the recursive solver and verify any witness before returning it."""
    CG = inst.colored
    G = CG.graph
    colors = {v: c for v, c in enumerate(CG.color_of) if c is not None}
    stats = DISStats()
    solver = _Solver(G, inst.r, inst.k, n0, strategy, stats)
    game = GameState.start(G, inst.l, inst.m, max(1, solver.rho))
    witness = solver.solve(frozenset(range(G.n)), colors, inst.k, game, inst.depth)
    if witness is not None:
        verify_witness(G, witness, inst.r, CG.color_of)
        if len(witness) != inst.k:
            raise PropertyViolation(f"witness has {len(witness)} vertices, expected {inst.k}")
    return DISResult(witness, stats)


def rainbow_dis(
    inst: DISInstance,
    n0: int = DEFAULT_N0,
    strategy: Callable[[GameState, int], tuple[int, ...]] = splitter_move,
) -> Witness | None:
    """A rainbow r-independent set of size ``k`` (sorted ids) or ``None``."""
    return solve_rainbow(inst, n0, strategy).witness


def dis(
    G: Graph,
    W: Iterable[int] | None,
    k: int,
    r: int,
    l: int | None = None,
    m: int | None = None,
    n0: int = DEFAULT_N0,
) -> Witness | None:
    """An r-independent k-subset of ``W`` (default: all vertices), via the rainbow problem on ``G • K_k``."""
    cand = sorted(set(range(G.n) if W is None else W))
    if any(not 0 <= v < G.n for v in cand):
        raise InputError("candidate vertex out of range")
    if k < 0:
        raise InputError("k must be non-negative")
    if r < 1:
        raise InputError("r must be at least 1")
    if k == 0:
        return ()
    if len(cand) < k:
        return None
    CG = lex_product_colored(G, k, colored=cand)
    found = rainbow_dis(DISInstance(CG, k, r, l, m), n0)
    if found is None:
        return None
    witness = tuple(sorted(v // k for v in found))
    verify_witness(G, witness, r)
    if not set(witness) <= set(cand):
        raise PropertyViolation("projected witness left the candidate set")
    return witness
