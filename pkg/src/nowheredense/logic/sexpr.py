"""S-expression syntax for formulas.

::

    true | false
    (= x y)  (E x y)  (P3 x)  (Q2_1 x)  (distle x y 7)
    (not f)  (and f ...)  (or f ...)  (exists x f)  (forall x f)

``str(formula)`` prints the same syntax, so ``parse(str(f)) == f``.
"""

from __future__ import annotations

import re

from ..errors import InputError
from .formula import (
    FALSE,
    PRED_RE,
    TRUE,
    DistLe,
    Edge,
    Eq,
    Formula,
    Pred,
    conj,
    disj,
    exists,
    forall,
    neg,
)

_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _tokens(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"cannot tokenize formula at offset {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _tree(tokens: list[str]):
    stack: list[list] = [[]]
    for tok in tokens:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise InputError("unbalanced ')' in formula")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise InputError("unbalanced '(' in formula")
    if len(stack[0]) != 1:
        raise InputError("expected exactly one formula")
    return stack[0][0]


def _arity(node: list, n: int) -> None:
    if len(node) != n:
        raise InputError(f"'{node[0]}' expects {n - 1} arguments, got {len(node) - 1}")


def _build(node) -> Formula:
    if isinstance(node, str):
        if node == "true":
            return TRUE
        if node == "false":
            return FALSE
        raise InputError(f"unexpected bare token {node!r}")
    if not node or not isinstance(node[0], str):
        raise InputError("formula lists must start with an operator")
    head, args = node[0], node[1:]
    if any(isinstance(a, list) for a in args) and head in {"=", "E", "distle"} or (
        PRED_RE.match(head) and any(isinstance(a, list) for a in args)
    ):
        raise InputError(f"atom '{head}' takes variables only")
    if head == "=":
        _arity(node, 3)
        return Eq(args[0], args[1])
    if head == "E":
        _arity(node, 3)
        return Edge(args[0], args[1])
    if head == "distle":
        _arity(node, 4)
        try:
            d = int(args[2])
        except ValueError:
            raise InputError(f"distance bound must be an integer, got {args[2]!r}") from None
        return DistLe(args[0], args[1], d)
    if PRED_RE.match(head):
        _arity(node, 2)
        return Pred(head, args[0])
    if head == "not":
        _arity(node, 2)
        return neg(_build(args[0]))
    if head == "and":
        return conj(*map(_build, args))
    if head == "or":
        return disj(*map(_build, args))
    if head in ("exists", "forall"):
        _arity(node, 3)
        if not isinstance(args[0], str):
            raise InputError(f"'{head}' binds a single variable")
        body = _build(args[1])
        return exists(args[0], body) if head == "exists" else forall(args[0], body)
    raise InputError(f"unknown operator {head!r}")


def parse(text: str) -> Formula:
    return _build(_tree(_tokens(text)))


def serialize(f: Formula) -> str:
    return f.key
