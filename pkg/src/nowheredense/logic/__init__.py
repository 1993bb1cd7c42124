"""First-order logic with distance atoms: syntax, evaluation, EF+ games, reductions."""

from .formula import (
    FALSE,
    TRUE,
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
    q_rank_check,
    quantifier_rank,
)
from .games import EFGame, distance_profile, ef_plus_equivalent, hintikka, hintikka_agrees, partial_isomorphism
from .reduction import (
    IndependenceSentence,
    MarkedStructure,
    eval_independence_sentence,
    mark_name,
    remove_and_mark,
    satisfying_vertices,
    to_fo,
)
from .sexpr import parse, serialize
from .structure import Evaluator, Structure, as_structure, evaluate

__all__ = [
    "FALSE", "TRUE", "DistLe", "Edge", "Eq", "Formula", "Pred",
    "conj", "disj", "exists", "f_q", "forall", "neg", "q_rank_check", "quantifier_rank",
    "EFGame", "distance_profile", "ef_plus_equivalent", "hintikka", "hintikka_agrees", "partial_isomorphism",
    "IndependenceSentence", "MarkedStructure", "eval_independence_sentence", "mark_name",
    "remove_and_mark", "satisfying_vertices", "to_fo",
    "parse", "serialize",
    "Evaluator", "Structure", "as_structure", "evaluate",
]
