"""The (l, m, r) splitter game: Splitter's path-blocking strategy, Connector strategies, transcripts.

Connector picks ``v`` in the current graph ``G_i``; Splitter answers with a set
``W`` inside the ``r``-ball of ``v``; play continues on that ball minus ``W``.
Splitter wins once the graph is empty, Connector wins after ``l`` rounds.

Splitter's strategy keeps a BFS tree of depth ``r`` for every past move
``v_j`` (built in the graph ``G_{j-1}`` in which it was played).  A new move
``v`` lies in all those trees, and Splitter deletes the tree paths from ``v``
back to every ``v_j`` that are still within distance ``r`` of ``v``.
"""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .errors import BudgetExceeded, InputError, OracleGuardError, PropertyViolation
from .graph import Graph, bfs_distances, components

ADVERSARIAL_MAX_N = 10
EXHAUSTIVE_MAX_N = 8


@dataclass(frozen=True)
class Round:
    connector: int
    splitter: tuple[int, ...]
    remaining: int


def bfs_tree(G: Graph, root: int, r: int, allowed: frozenset[int]) -> dict[int, int | None]:
    """Parent map of a BFS tree of depth ``r`` in ``G[allowed]``, neighbours visited by ascending id."""
    parent: dict[int, int | None] = {root: None}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        if depth[x] >= r:
            continue
        for y in G.adj[x]:
            if y in allowed and y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                queue.append(y)
    return parent


@dataclass(frozen=True)
class GameState:
    """Immutable position; every move returns a fresh state so branches never interfere.

    ``l`` and ``m`` may be ``None`` for an unlimited budget.
    """

    graph: Graph
    r: int
    l: int | None
    m: int | None
    current: frozenset[int]
    history: tuple[Round, ...] = ()
    trees: tuple[dict, ...] = field(default=(), repr=False)

    @classmethod
    def start(cls, G: Graph, l: int | None, m: int | None, r: int, vertices: Iterable[int] | None = None) -> "GameState":
        if r < 1:
            raise InputError("splitter radius must be >= 1")
        if l is not None and l < 1 or m is not None and m < 1:
            raise InputError("splitter budgets must be >= 1")
        current = frozenset(range(G.n)) if vertices is None else frozenset(vertices)
        return cls(G, r, l, m, current)

    @property
    def rounds_played(self) -> int:
        return len(self.history)

    @property
    def splitter_won(self) -> bool:
        return not self.current

    def ball(self, v: int) -> frozenset[int]:
        return frozenset(bfs_distances(self.graph, v, self.r, self.current))

    def restrict(self, vertices: Iterable[int]) -> "GameState":
        """Continue in an induced subgraph of the current graph (deleting more than Splitter asked)."""
        return GameState(self.graph, self.r, self.l, self.m, self.current & frozenset(vertices), self.history, self.trees)

    def advance(self, v: int, W: Iterable[int]) -> "GameState":
        """Play Connector's ``v`` and Splitter's ``W``, checking legality."""
        if v not in self.current:
            raise InputError(f"vertex {v} is not in the current graph")
        if self.l is not None and self.rounds_played >= self.l:
            raise BudgetExceeded(f"all {self.l} rounds have been played")
        W = tuple(sorted(set(W)))
        ball = self.ball(v)
        if not ball.issuperset(W):
            raise InputError("Splitter may only delete vertices of the r-ball around Connector's move")
        if self.m is not None and len(W) > self.m:
            raise BudgetExceeded(f"Splitter set of size {len(W)} exceeds m={self.m}")
        tree = bfs_tree(self.graph, v, self.r, self.current)
        nxt = ball.difference(W)
        return GameState(
            self.graph, self.r, self.l, self.m, nxt,
            self.history + (Round(v, W, len(nxt)),),
            self.trees + (tree,),
        )


def splitter_move(state: GameState, v: int) -> tuple[int, ...]:
    """Splitter's answer to ``v``: ``{v}`` in round one, later the tree paths back to earlier moves."""
    if v not in state.current:
        raise InputError(f"vertex {v} is not in the current graph")
    if not state.history:
        W = {v}
    else:
        ball = state.ball(v)
        W = set()
        for tree in state.trees:
            if v not in tree:
                raise PropertyViolation(f"vertex {v} escaped the BFS tree of an earlier move")
            x: int | None = v
            while x is not None:
                if x in ball:
                    W.add(x)
                x = tree[x]
    if state.m is not None and len(W) > state.m:
        raise BudgetExceeded(f"Splitter needs {len(W)} vertices but m={state.m}")
    return tuple(sorted(W))


def play_round(state: GameState, v: int) -> GameState:
    return state.advance(v, splitter_move(state, v))


Connector = Callable[[GameState], int]


@dataclass(frozen=True)
class Transcript:
    winner: str
    rounds: int
    history: tuple[Round, ...]
    l: int | None
    m: int | None
    r: int

    def lines(self) -> list[str]:
        out = [
            f"round {i}: connector={rd.connector} splitter={{{','.join(map(str, rd.splitter))}}} |G|={rd.remaining}"
            for i, rd in enumerate(self.history, 1)
        ]
        out.append(f"winner={self.winner} rounds={self.rounds}")
        return out


def play_game(
    G: Graph,
    l: int | None,
    m: int | None,
    r: int,
    connector: Connector,
    strategy: Callable[[GameState, int], tuple[int, ...]] = splitter_move,
) -> Transcript:
    """Play until the graph is empty (Splitter wins) or ``l`` rounds pass (Connector wins)."""
    state = GameState.start(G, l, m, r)
    while state.current and (l is None or state.rounds_played < l):
        v = connector(state)
        state = state.advance(v, strategy(state, v))
    winner = "splitter" if not state.current else "connector"
    return Transcript(winner, state.rounds_played, state.history, l, m, r)


def replay(G: Graph, transcript: Transcript) -> list[frozenset[int]]:
    """Re-run the recorded Connector moves and check every Splitter answer and graph size.

    Returns the vertex sets ``G_0, G_1, ...``.
    """
    state = GameState.start(G, transcript.l, transcript.m, transcript.r)
    graphs = [state.current]
    for rd in transcript.history:
        W = splitter_move(state, rd.connector)
        if W != rd.splitter:
            raise PropertyViolation(f"replayed Splitter answer {W} differs from recorded {rd.splitter}")
        state = state.advance(rd.connector, W)
        if len(state.current) != rd.remaining:
            raise PropertyViolation("replayed graph size differs from the transcript")
        graphs.append(state.current)
    return graphs


# ---------------------------------------------------------------- connectors


def random_connector(seed: int) -> Connector:
    rng = random.Random(seed)

    def pick(state: GameState) -> int:
        return rng.choice(sorted(state.current))

    return pick


def _centers(G: Graph, comp: list[int]) -> list[int]:
    allowed = frozenset(comp)
    best = None
    found: list[int] = []
    for u in comp:
        ecc = max(bfs_distances(G, u, allowed=allowed).values())
        if best is None or ecc < best:
            best, found = ecc, [u]
        elif ecc == best:
            found.append(u)
    return found


def center_connector(seed: int | None = None) -> Connector:
    """Pick a centre of the largest component (ties: smallest first vertex).

    Without a seed the smallest-id centre is chosen; with one, a seeded random centre.
    """
    rng = random.Random(seed) if seed is not None else None

    def pick(state: GameState) -> int:
        comps = components(state.graph, state.current)
        largest = max(comps, key=lambda c: (len(c), -c[0]))
        centers = _centers(state.graph, largest)
        return centers[0] if rng is None else rng.choice(centers)

    return pick


def adversarial_connector(state: GameState) -> int:
    """Move that lets the game last longest against Splitter's strategy (ties: smallest id)."""
    if len(state.current) > ADVERSARIAL_MAX_N:
        raise OracleGuardError(f"adversarial connector refuses {len(state.current)} > {ADVERSARIAL_MAX_N} vertices")

    def survive(s: GameState) -> int:
        # number of further rounds Connector can force
        if not s.current or (s.l is not None and s.rounds_played >= s.l):
            return 0
        best = 0
        for v in sorted(s.current):
            try:
                nxt = play_round(s, v)
            except BudgetExceeded:
                return s.l if s.l is not None else len(s.current)
            best = max(best, 1 + survive(nxt))
        return best

    best_v, best_len = None, -1
    for v in sorted(state.current):
        try:
            length = 1 + survive(play_round(state, v))
        except BudgetExceeded:
            return v
        if length > best_len:
            best_v, best_len = v, length
    assert best_v is not None
    return best_v


CONNECTORS = {"random", "center", "adversarial"}


def make_connector(name: str, seed: int = 0) -> Connector:
    if name == "random":
        return random_connector(seed)
    if name == "center":
        return center_connector(seed if seed else None)
    if name == "adversarial":
        return adversarial_connector
    raise InputError(f"unknown connector {name!r}")


# ---------------------------------------------------------------- exhaustive game


def splitter_wins_exhaustive(G: Graph, l: int, m: int, r: int) -> bool:
    """Minimax over all Connector moves and all Splitter sets of size at most ``m``."""
    if G.n > EXHAUSTIVE_MAX_N:
        raise OracleGuardError(f"exhaustive splitter game refuses n={G.n} > {EXHAUSTIVE_MAX_N}")

    @lru_cache(maxsize=None)
    def wins(current: frozenset[int], rounds_left: int) -> bool:
        if not current:
            return True
        if rounds_left == 0:
            return False
        for v in sorted(current):
            ball = sorted(bfs_distances(G, v, r, current))
            ok = False
            for size in range(min(m, len(ball)), -1, -1):
                for W in combinations(ball, size):
                    if wins(frozenset(ball).difference(W), rounds_left - 1):
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return False
        return True

    return wins(frozenset(range(G.n)), l)


# ---------------------------------------------------------------- lexicographic products


@dataclass(frozen=True)
class LiftedRound:
    connector: int
    shadow: int
    splitter: tuple[int, ...]
    remaining: int


def play_lex_lifted(
    G: Graph,
    k: int,
    l: int | None,
    m: int | None,
    r: int,
    connector: Connector,
) -> tuple[str, list[LiftedRound]]:
    """Play on ``G • K_k`` (vertex ``(x, y)`` stored as ``x*k + y``) by projecting onto ``G``.

    A shadow game on ``G`` answers Connector's ``(x, y)`` as if ``x`` were played
    and Splitter deletes all ``k`` copies of the shadow answer.  The product
    game is checked move by move against BFS in the product graph itself.
    """
    from .graph import lex_product_colored

    P = lex_product_colored(G, k).graph
    product = GameState.start(P, l, None if m is None else k * m, r)
    shadow = GameState.start(G, l, m, r)
    rounds: list[LiftedRound] = []
    while product.current and (l is None or product.rounds_played < l):
        v = connector(product)
        x = v // k
        W0 = splitter_move(shadow, x)
        shadow = shadow.advance(x, W0)
        W = tuple(w * k + y for w in W0 for y in range(k))
        product = product.advance(v, W)
        if product.current != frozenset(u * k + y for u in shadow.current for y in range(k)):
            raise PropertyViolation("product game left the lift of the shadow game")
        rounds.append(LiftedRound(v, x, W, len(product.current)))
    return ("splitter" if not product.current else "connector"), rounds
