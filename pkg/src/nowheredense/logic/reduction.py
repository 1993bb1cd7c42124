"""Translations and reductions around FO+ formulas.

* ``to_fo`` removes distance atoms, replacing them with plain first-order
  distance formulas built by repeated halving.
* ``remove_and_mark`` deletes a tuple of vertices and records, on every
  survivor, its distance to each deleted vertex as unary marks ``Q<i>_<j>``.
* Independence sentences ask for ``q`` vertices, pairwise more than ``2r``
  apart, each satisfying one quantifier-free property; they are decided by
  the distance-independent-set solver.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import count

from ..errors import InputError
from ..graph import ColoredGraph, Graph, bfs_distances
from ..indepset import dis
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
    conj,
    disj,
    exists,
    f_q,
    forall,
    neg,
    quantifier_rank,
)
from .structure import Evaluator, Structure, as_structure

# ---------------------------------------------------------------- FO translation


def distance_formula(x: str, y: str, d: int, fresh) -> Formula:
    """Plain first-order formula equivalent to ``dist(x, y) <= d``.

    Quantifier rank is ``ceil(log2 d)`` for ``d >= 1``.
    """
    if d == 0:
        return Eq(x, y)
    if d == 1:
        return disj(Eq(x, y), Edge(x, y))
    z = next(fresh)
    hi, lo = (d + 1) // 2, d // 2
    return exists(z, conj(distance_formula(x, z, hi, fresh), distance_formula(z, y, lo, fresh)))


def to_fo(f: Formula) -> Formula:
    """Equivalent formula without distance atoms; new bound variables are named ``z<i>``."""
    used = _variables(f)
    fresh = (name for i in count() if (name := f"z{i}") not in used)

    def walk(g: Formula) -> Formula:
        if isinstance(g, DistLe):
            return distance_formula(g.x, g.y, g.d, fresh)
        if isinstance(g, Not):
            return neg(walk(g.body))
        if isinstance(g, And):
            return conj(*map(walk, g.items))
        if isinstance(g, Or):
            return disj(*map(walk, g.items))
        if isinstance(g, Exists):
            return exists(g.var, walk(g.body))
        if isinstance(g, Forall):
            return forall(g.var, walk(g.body))
        return g

    return walk(f)


def _variables(f: Formula) -> set[str]:
    out = set(f.free)
    if isinstance(f, (Exists, Forall)):
        out.add(f.var)
    for c in f.children():
        out |= _variables(c)
    return out


# ---------------------------------------------------------------- removal with marks


def mark_name(i: int, j: int) -> str:
    """Predicate marking distance ``i`` to the ``j``-th removed vertex (both 1-based)."""
    return f"Q{i}_{j}"


@dataclass(frozen=True)
class MarkedStructure:
    """Result of deleting ``removed`` from a coloured graph.

    ``structure`` is renumbered ``0..n'-1``; ``original[v]`` is the old id of
    new vertex ``v``.  Only non-empty marks are stored; marks for distances
    above ``bound`` are never materialized.
    """

    structure: Structure
    removed: tuple[int, ...]
    original: tuple[int, ...]
    bound: int

    def marks_of(self, v: int) -> dict[int, int]:
        """``{j: i}`` for every mark ``Q<i>_<j>`` on new vertex ``v``."""
        out = {}
        for name, members in self.structure.predicates.items():
            if name.startswith("Q") and v in members:
                i, j = map(int, name[1:].split("_"))
                out[j] = i
        return out


def remove_and_mark(CG: ColoredGraph | Graph, w: Sequence[int], q: int, l: int) -> MarkedStructure:
    if isinstance(CG, Graph):
        CG = ColoredGraph.uncolored(CG)
    G = CG.graph
    w = tuple(w)
    if len(set(w)) != len(w):
        raise InputError("removed vertices must be distinct")
    for v in w:
        if not 0 <= v < G.n:
            raise InputError(f"vertex {v} out of range")
    # distances never exceed n - 1, so larger marks would be empty anyway
    bound = min(f_q(q, l), max(G.n - 1, 0))
    gone = set(w)
    keep = [v for v in range(G.n) if v not in gone]
    H, _ = G.induced_subgraph(keep)
    new_id = {v: i for i, v in enumerate(keep)}
    preds: dict[str, set[int]] = {f"P{c}": {new_id[v] for v in members if v in new_id} for c, members in enumerate(CG.colors)}
    for j, wj in enumerate(w, 1):
        for v, dist in bfs_distances(G, wj, bound).items():
            if v in new_id and dist >= 1:
                preds.setdefault(mark_name(dist, j), set()).add(new_id[v])
    S = Structure(H, {k: frozenset(v) for k, v in preds.items()}, tuple(keep))
    return MarkedStructure(S, w, tuple(keep), bound)


# ---------------------------------------------------------------- independence sentences


def _quantifier_free(f: Formula) -> bool:
    return quantifier_rank(f) == 0


@dataclass(frozen=True)
class IndependenceSentence:
    """``q`` vertices pairwise at distance ``> 2r``, each satisfying ``phi(var)``."""

    q: int
    r: int
    phi: Formula
    var: str = "x"

    def __post_init__(self):
        if self.q < 1 or self.r < 0:
            raise InputError("independence sentences need q >= 1 and r >= 0")
        if not _quantifier_free(self.phi):
            raise InputError("the vertex property must be quantifier-free")
        if not self.phi.free <= {self.var}:
            raise InputError(f"the vertex property may only mention {self.var!r}")

    def as_formula(self) -> Formula:
        """The sentence itself, for direct evaluation on small graphs."""
        names = [f"y{i + 1}" for i in range(self.q)]
        parts = [_rename(self.phi, self.var, y) for y in names]
        for j in range(self.q):
            for i in range(j):
                parts.append(neg(DistLe(names[i], names[j], 2 * self.r)))
        body = conj(*parts)
        for y in reversed(names):
            body = exists(y, body)
        return body


def _rename(f: Formula, old: str, new: str) -> Formula:
    """Substitute a variable in a quantifier-free formula."""
    sub = lambda v: new if v == old else v  # noqa: E731
    if isinstance(f, Eq):
        return Eq(sub(f.x), sub(f.y))
    if isinstance(f, Edge):
        return Edge(sub(f.x), sub(f.y))
    if isinstance(f, DistLe):
        return DistLe(sub(f.x), sub(f.y), f.d)
    if isinstance(f, Pred):
        return Pred(f.name, sub(f.x))
    if isinstance(f, Const):
        return f
    if isinstance(f, Not):
        return neg(_rename(f.body, old, new))
    if isinstance(f, And):
        return conj(*(_rename(g, old, new) for g in f.items))
    if isinstance(f, Or):
        return disj(*(_rename(g, old, new) for g in f.items))
    raise InputError("expected a quantifier-free formula")


def satisfying_vertices(A, phi: Formula, var: str = "x") -> list[int]:
    A = as_structure(A)
    ev = Evaluator(A)
    return [v for v in range(A.n) if ev(phi, {var: v})]


def eval_independence_sentence(
    CG,
    psi: IndependenceSentence,
    l: int | None = None,
    m: int | None = None,
    n0: int | None = None,
) -> bool:
    """Decide ``psi`` by collecting ``U = {v : phi(v)}`` and asking for ``q`` vertices of ``U`` pairwise more than ``2r`` apart."""
    A = as_structure(CG)
    U = satisfying_vertices(A, psi.phi, psi.var)
    if psi.r == 0:
        # pairwise distance > 0 just means distinct
        return len(U) >= psi.q
    kwargs = {} if n0 is None else {"n0": n0}
    return dis(A.graph, U, psi.q, 2 * psi.r, l=l, m=m, **kwargs) is not None
