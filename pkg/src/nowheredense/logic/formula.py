"""First-order formulas over coloured graphs, extended with distance atoms ``dist(x, y) <= d``.

Nodes are immutable and carry a canonical text key; equality and hashing go
through that key.  ``conj`` and ``disj`` flatten, deduplicate and sort their
arguments, and the symmetric atoms order their two variables, so equal
formulas built in different ways compare equal.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator

from ..errors import InputError

PRED_RE = re.compile(r"^(P\d+|Q\d+_\d+)$")
VAR_RE = re.compile(r"^[a-z][a-z0-9_']*$")
KEYWORDS = {"true", "false", "not", "and", "or", "exists", "forall", "distle"}


class Formula:
    __slots__ = ("key", "_hash", "free", "free_sorted")

    key: str
    free: frozenset[str]
    free_sorted: tuple[str, ...]

    def _set(self, key: str, free: frozenset[str]) -> None:
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "_hash", hash(key))
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "free_sorted", tuple(sorted(free)))

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Formula) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Formula") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return self.key

    def __str__(self) -> str:
        return self.key

    def children(self) -> tuple["Formula", ...]:
        return ()


def _check_var(v: str) -> str:
    if not isinstance(v, str) or not VAR_RE.match(v) or v in KEYWORDS:
        raise InputError(f"invalid variable name {v!r}")
    return v


class Const(Formula):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        object.__setattr__(self, "value", bool(value))
        self._set("true" if value else "false", frozenset())


TRUE = Const(True)
FALSE = Const(False)


class _Binary(Formula):
    __slots__ = ("x", "y")
    tag = ""

    def __init__(self, x: str, y: str):
        x, y = sorted((_check_var(x), _check_var(y)))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        self._set(f"({self.tag} {x} {y})", frozenset((x, y)))


class Eq(_Binary):
    __slots__ = ()
    tag = "="


class Edge(_Binary):
    __slots__ = ()
    tag = "E"


class DistLe(Formula):
    __slots__ = ("x", "y", "d")

    def __init__(self, x: str, y: str, d: int):
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise InputError(f"distance bound must be a non-negative integer, got {d!r}")
        x, y = sorted((_check_var(x), _check_var(y)))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "d", d)
        self._set(f"(distle {x} {y} {d})", frozenset((x, y)))


class Pred(Formula):
    __slots__ = ("name", "x")

    def __init__(self, name: str, x: str):
        if not PRED_RE.match(name):
            raise InputError(f"predicate names are P<k> or Q<i>_<j>, got {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "x", _check_var(x))
        self._set(f"({name} {x})", frozenset((x,)))


class Not(Formula):
    __slots__ = ("body",)

    def __init__(self, body: Formula):
        object.__setattr__(self, "body", body)
        self._set(f"(not {body.key})", body.free)

    def children(self):
        return (self.body,)


class _Junction(Formula):
    __slots__ = ("items",)
    tag = ""

    def __init__(self, items: tuple[Formula, ...]):
        object.__setattr__(self, "items", items)
        free = frozenset().union(*(f.free for f in items))
        self._set(f"({self.tag} {' '.join(f.key for f in items)})", free)

    def children(self):
        return self.items


class And(_Junction):
    __slots__ = ()
    tag = "and"


class Or(_Junction):
    __slots__ = ()
    tag = "or"


class _Quant(Formula):
    __slots__ = ("var", "body")
    tag = ""

    def __init__(self, var: str, body: Formula):
        object.__setattr__(self, "var", _check_var(var))
        object.__setattr__(self, "body", body)
        self._set(f"({self.tag} {var} {body.key})", body.free - {var})

    def children(self):
        return (self.body,)


class Exists(_Quant):
    __slots__ = ()
    tag = "exists"


class Forall(_Quant):
    __slots__ = ()
    tag = "forall"


# ---------------------------------------------------------------- smart constructors


def _flatten(kind: type, items: Iterable[Formula]) -> Iterator[Formula]:
    for f in items:
        if isinstance(f, kind):
            yield from f.items
        else:
            yield f


def conj(*items: Formula) -> Formula:
    parts = {f for f in _flatten(And, items) if f != TRUE}
    if FALSE in parts:
        return FALSE
    if not parts:
        return TRUE
    if len(parts) == 1:
        return next(iter(parts))
    return And(tuple(sorted(parts)))


def disj(*items: Formula) -> Formula:
    parts = {f for f in _flatten(Or, items) if f != FALSE}
    if TRUE in parts:
        return TRUE
    if not parts:
        return FALSE
    if len(parts) == 1:
        return next(iter(parts))
    return Or(tuple(sorted(parts)))


def neg(f: Formula) -> Formula:
    if isinstance(f, Not):
        return f.body
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    return Not(f)


def exists(var: str, body: Formula) -> Formula:
    return Exists(var, body)


def forall(var: str, body: Formula) -> Formula:
    return Forall(var, body)


# ---------------------------------------------------------------- ranks


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, _Quant):
        return 1 + quantifier_rank(f.body)
    return max((quantifier_rank(c) for c in f.children()), default=0)


def f_q(q: int, l: int) -> int:
    """Largest distance bound allowed in an atom of q-rank ``l`` outside all quantifiers: ``(4q)^(q+l)``."""
    if q < 1 or l < 0:
        raise InputError("f_q needs q >= 1 and l >= 0")
    return (4 * q) ** (q + l)


def distance_atoms(f: Formula, depth: int = 0) -> Iterator[tuple[DistLe, int]]:
    """Every distance atom with the number of quantifiers it sits under."""
    if isinstance(f, DistLe):
        yield f, depth
        return
    inner = depth + 1 if isinstance(f, _Quant) else depth
    for c in f.children():
        yield from distance_atoms(c, inner)


def q_rank_check(f: Formula, q: int, l: int) -> bool:
    """Quantifier rank at most ``l`` and each atom under ``i`` quantifiers has ``d <= (4q)^(q+l-i)``."""
    if q < 1 or l < 0:
        raise InputError("q_rank_check needs q >= 1 and l >= 0")
    if quantifier_rank(f) > l:
        return False
    return all(atom.d <= (4 * q) ** (q + l - i) for atom, i in distance_atoms(f))


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in f.children())
