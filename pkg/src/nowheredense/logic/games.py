"""The EF+ game with distance-aware winning condition, and Hintikka formulas.

Duplicator must keep the pebbled map a partial ``f_q(l - i)``-isomorphism
after every round ``i``: atoms agree and distances agree exactly or both
exceed the threshold.  The Hintikka formula of ``(A, a)`` is the canonical
rank-``l`` formula whose models are exactly the pointed structures that
Duplicator cannot tell apart from ``(A, a)``.
"""

from __future__ import annotations

from collections.abc import Sequence

from ..errors import InputError, OracleGuardError
from ..graph import INF
from .formula import (
    DistLe,
    Edge,
    Eq,
    Formula,
    Pred,
    conj,
    disj,
    exists,
    f_q,
    forall,
    neg,
)
from .structure import Evaluator, Structure, as_structure

GAME_MAX_N = 8


def _check_params(q: int, l: int) -> None:
    if q < 1 or not 0 <= l <= q:
        raise InputError("the game needs q >= 1 and 0 <= l <= q")


def _guard(*structures: Structure) -> None:
    for A in structures:
        if A.n > GAME_MAX_N:
            raise OracleGuardError(f"game search refuses n={A.n} > {GAME_MAX_N}")


def _check_tuple(A: Structure, a: Sequence[int]) -> tuple[int, ...]:
    for v in a:
        if not 0 <= v < A.n:
            raise InputError(f"vertex {v} out of range")
    return tuple(a)


def distance_profile(A: Structure, a: Sequence[int], cap: int) -> tuple[tuple[float, ...], ...]:
    """Pairwise distances of a tuple, with everything above ``cap`` reported as infinity."""
    return tuple(
        tuple(d if (d := A.distance(x, y)) <= cap else INF for y in a)
        for x in a
    )


def partial_isomorphism(A: Structure, a: Sequence[int], B: Structure, b: Sequence[int], d: int) -> bool:
    """``a_i -> b_i`` preserves equality, edges, unary predicates and distances up to ``d``."""
    vocab = set(A.predicates) | set(B.predicates)
    for i, (x, y) in enumerate(zip(a, b)):
        for name in vocab:
            if A.holds(name, x) != B.holds(name, y):
                return False
        for x2, y2 in zip(a[:i], b[:i]):
            if (x == x2) != (y == y2):
                return False
            if A.graph.has_edge(x, x2) != B.graph.has_edge(y, y2):
                return False
            da, db = A.distance(x, x2), B.distance(y, y2)
            if da != db and (da <= d or db <= d):
                return False
    return True


class EFGame:
    """Exhaustive EF+ game between two fixed structures.

    The memo is keyed by concrete positions and can be shared by many starting
    tuples of the same pair of structures.
    """

    def __init__(self, A, B, q: int, l: int):
        _check_params(q, l)
        self.A, self.B = as_structure(A), as_structure(B)
        _guard(self.A, self.B)
        self.q, self.l = q, l
        self.memo: dict[tuple[tuple[int, ...], tuple[int, ...], int], bool] = {}

    def duplicator_wins(self, a: Sequence[int], b: Sequence[int]) -> bool:
        a, b = _check_tuple(self.A, a), _check_tuple(self.B, b)
        if len(a) != len(b):
            raise InputError("tuples must have equal length")
        return self._wins(a, b, self.l)

    def _wins(self, a: tuple[int, ...], b: tuple[int, ...], left: int) -> bool:
        key = (a, b, left)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        A, B = self.A, self.B
        out = partial_isomorphism(A, a, B, b, f_q(self.q, left))
        if out and left > 0:
            out = all(
                any(self._wins(a + (x,), b + (y,), left - 1) for y in range(B.n))
                for x in range(A.n)
            ) and all(
                any(self._wins(a + (x,), b + (y,), left - 1) for x in range(A.n))
                for y in range(B.n)
            )
        self.memo[key] = out
        return out


def ef_plus_equivalent(A, a: Sequence[int], B, b: Sequence[int], q: int, l: int) -> bool:
    """Whether Duplicator wins the ``l``-round EF+ game with parameter ``q`` from ``(a, b)``."""
    return EFGame(A, B, q, l).duplicator_wins(a, b)


# ---------------------------------------------------------------- Hintikka formulas


def var(i: int) -> str:
    return f"x{i + 1}"


def distance_type(A: Structure, a: Sequence[int], cap: int) -> Formula:
    """Pairwise distances of ``a`` pinned exactly up to ``cap``, and '> cap' beyond."""
    parts = []
    for j in range(len(a)):
        for i in range(j):
            d = A.distance(a[i], a[j])
            if d > cap:
                parts.append(neg(DistLe(var(i), var(j), cap)))
            else:
                d = int(d)
                parts.append(DistLe(var(i), var(j), d))
                if d > 0:
                    parts.append(neg(DistLe(var(i), var(j), d - 1)))
    return conj(*parts)


def atomic_type(A: Structure, a: Sequence[int], vocabulary: Sequence[str]) -> Formula:
    """Conjunction of the atomic formulas and negated atoms that hold of ``a``."""
    parts = []
    for j, y in enumerate(a):
        for name in vocabulary:
            atom = Pred(name, var(j))
            parts.append(atom if A.holds(name, y) else neg(atom))
        for i in range(j):
            x = a[i]
            eq = Eq(var(i), var(j))
            parts.append(eq if x == y else neg(eq))
            e = Edge(var(i), var(j))
            parts.append(e if A.graph.has_edge(x, y) else neg(e))
    return conj(*parts)


def hintikka(A, a: Sequence[int], q: int, l: int, vocabulary: Sequence[str] | None = None) -> Formula:
    """The formula ``phi_a^{q,l}`` in free variables ``x1..xk`` (``k = len(a)``).

    ``vocabulary`` lists the unary predicates to describe; pass the union of
    both vocabularies when comparing two structures.
    """
    _check_params(q, l)
    A = as_structure(A)
    _guard(A)
    a = _check_tuple(A, a)
    vocab = tuple(sorted(A.predicates if vocabulary is None else vocabulary))
    memo: dict[tuple[tuple[int, ...], int], Formula] = {}

    def build(t: tuple[int, ...], level: int) -> Formula:
        key = (t, level)
        if key in memo:
            return memo[key]
        theta = distance_type(A, t, f_q(q, level))
        if level == 0:
            out = conj(theta, atomic_type(A, t, vocab))
        else:
            x = var(len(t))
            branches = sorted({build(t + (v,), level - 1) for v in range(A.n)})
            out = conj(
                theta,
                *(exists(x, phi) for phi in branches),
                forall(x, disj(*branches)),
            )
        memo[key] = out
        return out

    return build(a, l)


def hintikka_agrees(A, a, B, b, q: int, l: int) -> tuple[bool, bool]:
    """``(game verdict, Hintikka verdict)`` for one pair of pointed structures."""
    A, B = as_structure(A), as_structure(B)
    vocab = sorted(set(A.predicates) | set(B.predicates))
    phi = hintikka(A, a, q, l, vocab)
    env = {var(i): v for i, v in enumerate(b)}
    return ef_plus_equivalent(A, a, B, b, q, l), Evaluator(B)(phi, env)


__all__ = [
    "GAME_MAX_N",
    "EFGame",
    "atomic_type",
    "distance_profile",
    "distance_type",
    "ef_plus_equivalent",
    "hintikka",
    "hintikka_agrees",
    "partial_isomorphism",
    "var",
]
