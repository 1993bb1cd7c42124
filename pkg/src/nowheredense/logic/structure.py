"""Coloured graphs as relational structures, and a memoizing evaluator."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from ..errors import InputError
from ..graph import INF, ColoredGraph, Graph, bfs_distances
from .formula import (
    And,
    Const,
    DistLe,
    Edge,
    Eq,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Pred,
)


@dataclass(eq=False)
class Structure:
    """Vocabulary ``{E}`` plus unary predicates.

    Colour class ``i`` of a coloured graph becomes predicate ``P<i>``.
    ``original`` maps vertex ids back to a parent graph when the structure was
    cut out of one.
    """

    graph: Graph
    predicates: dict[str, frozenset[int]]
    original: tuple[int, ...] | None = None
    _dist: dict[int, dict[int, int]] = field(default_factory=dict, repr=False)

    @classmethod
    def from_graph(cls, G: Graph) -> "Structure":
        return cls(G, {})

    @classmethod
    def from_colored(cls, CG: ColoredGraph, extra: Mapping[str, Iterable[int]] | None = None) -> "Structure":
        preds = {f"P{i}": members for i, members in enumerate(CG.colors)}
        for name, members in (extra or {}).items():
            preds[name] = frozenset(members)
        return cls(CG.graph, preds)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def vocabulary(self) -> tuple[str, ...]:
        return tuple(sorted(self.predicates))

    def holds(self, name: str, v: int) -> bool:
        members = self.predicates.get(name)
        return members is not None and v in members

    def distance(self, u: int, v: int) -> float:
        row = self._dist.get(u)
        if row is None:
            row = self._dist[u] = bfs_distances(self.graph, u)
        return row.get(v, INF)


class Evaluator:
    """Naive recursive evaluation with a memo on (subformula, values of its free variables).

    One evaluator per structure; the memo persists across calls, which pays
    off when many formulas share subformulas.
    """

    def __init__(self, A: Structure):
        self.A = A
        self.memo: dict[tuple[Formula, tuple[int, ...]], bool] = {}

    def __call__(self, f: Formula, assignment: Mapping[str, int] | None = None) -> bool:
        env = dict(assignment or {})
        missing = f.free - env.keys()
        if missing:
            raise InputError(f"unbound free variables: {', '.join(sorted(missing))}")
        for var, v in env.items():
            if not 0 <= v < self.A.n:
                raise InputError(f"variable {var} assigned to missing vertex {v}")
        return self._ev(f, env)

    def _ev(self, f: Formula, env: dict[str, int]) -> bool:
        A = self.A
        if isinstance(f, Eq):
            return env[f.x] == env[f.y]
        if isinstance(f, Edge):
            return A.graph.has_edge(env[f.x], env[f.y])
        if isinstance(f, DistLe):
            return A.distance(env[f.x], env[f.y]) <= f.d
        if isinstance(f, Pred):
            return A.holds(f.name, env[f.x])
        if isinstance(f, Const):
            return f.value
        key = (f, tuple(env[x] for x in f.free_sorted))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Not):
            out = not self._ev(f.body, env)
        elif isinstance(f, And):
            out = all(self._ev(g, env) for g in f.items)
        elif isinstance(f, Or):
            out = any(self._ev(g, env) for g in f.items)
        elif isinstance(f, (Exists, Forall)):
            want = isinstance(f, Exists)
            out = not want
            inner = dict(env)
            for v in range(A.n):
                inner[f.var] = v
                if self._ev(f.body, inner) == want:
                    out = want
                    break
        else:
            raise InputError(f"cannot evaluate {type(f).__name__}")
        self.memo[key] = out
        return out


def evaluate(f: Formula, A: Structure | ColoredGraph | Graph, assignment: Mapping[str, int] | None = None) -> bool:
    return Evaluator(as_structure(A))(f, assignment)


def as_structure(A: Structure | ColoredGraph | Graph) -> Structure:
    if isinstance(A, Structure):
        return A
    if isinstance(A, ColoredGraph):
        return Structure.from_colored(A)
    if isinstance(A, Graph):
        return Structure.from_graph(A)
    raise InputError(f"expected a graph or structure, got {type(A).__name__}")
