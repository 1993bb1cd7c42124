import random
from itertools import combinations

import pytest

from conftest import nx_distances
from nowheredense import generators as gen
from nowheredense.errors import InputError, OracleGuardError
from nowheredense.graph import INF, ColoredGraph, Graph
from nowheredense.logic import (
    FALSE,
    TRUE,
    DistLe,
    Edge,
    EFGame,
    Eq,
    Evaluator,
    IndependenceSentence,
    Pred,
    Structure,
    conj,
    disj,
    distance_profile,
    ef_plus_equivalent,
    eval_independence_sentence,
    evaluate,
    exists,
    f_q,
    forall,
    hintikka,
    mark_name,
    neg,
    parse,
    q_rank_check,
    quantifier_rank,
    remove_and_mark,
    serialize,
    to_fo,
)
from nowheredense.logic.formula import size
from nowheredense.logic.games import atomic_type

SAMPLE = (
    "(exists x (exists y (and (distle x y {a}) (exists z (and (distle x z {b}) "
    "(forall w (or (not (distle z w {c})) (distle w y {c}))))))))"
).format(a=12**5, b=12**6, c=12**4)


# ---------------------------------------------------------------- ranks


def test_f_q_values():
    assert f_q(3, 6) == 12**9
    assert f_q(1, 0) == 4
    for q in range(1, 5):
        for l in range(0, 6):
            assert f_q(q, l + 1) == 4 * q * f_q(q, l)
    assert f_q(20, 20) == 80**40
    with pytest.raises(InputError):
        f_q(0, 1)
    with pytest.raises(InputError):
        f_q(1, -1)


def test_q_rank_of_sample_sentence():
    f = parse(SAMPLE)
    assert quantifier_rank(f) == 4
    assert q_rank_check(f, 3, 6)
    assert not q_rank_check(f, 3, 5)


def test_q_rank_boundary_outside_quantifiers():
    for q, l in ((1, 0), (2, 1), (3, 2)):
        assert q_rank_check(DistLe("x", "y", f_q(q, l)), q, l)
        assert not q_rank_check(DistLe("x", "y", f_q(q, l) + 1), q, l)


def test_q_rank_without_distance_atoms_is_quantifier_rank():
    f = parse("(forall y (or (= x y) (exists z (and (E x z) (E z y)))))")
    assert quantifier_rank(f) == 2
    assert [q_rank_check(f, 2, l) for l in range(4)] == [False, False, True, True]


# ---------------------------------------------------------------- syntax


def test_canonical_form():
    a, b = Edge("x", "y"), Pred("P0", "x")
    assert conj(a, b) == conj(b, a, a)
    assert conj(conj(a, b), a) == conj(a, b)
    assert disj(a, FALSE) == a and conj(a, FALSE) == FALSE and disj(a, TRUE) == TRUE
    assert Eq("y", "x") == Eq("x", "y")
    assert neg(neg(a)) == a
    assert conj() == TRUE and disj() == FALSE


def test_parse_round_trip():
    for text in (SAMPLE, "(forall y (or (= x1 y) (= x2 y) (E x1 y) (E x2 y)))", "(and (P3 x) (Q2_1 y) true)"):
        f = parse(text)
        assert parse(serialize(f)) == f
        assert serialize(parse(serialize(f))) == serialize(f)


def test_free_variables():
    f = parse("(exists y (and (E x y) (distle y z 3)))")
    assert f.free == {"x", "z"}


@pytest.mark.parametrize(
    "text",
    ["(and (E x y)", "(E x)", "(foo x)", "(distle x y -1)", "(distle x y z)", "(exists (x) true)", "x", "(E x y) (E y z)", "(P x)"],
)
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse(text)


def test_formulas_are_immutable():
    f = Edge("x", "y")
    with pytest.raises(AttributeError):
        f.x = "z"


# ---------------------------------------------------------------- evaluation


def test_evaluation_examples():
    dom = parse("(forall y (or (= x1 y) (= x2 y) (E x1 y) (E x2 y)))")
    assert evaluate(dom, gen.path(3), {"x1": 0, "x2": 2})
    assert not evaluate(dom, gen.path(5), {"x1": 0, "x2": 4})
    assert evaluate(parse("(exists x (= x x))"), gen.path(1))
    assert not evaluate(parse("(exists x (= x x))"), gen.empty(0))
    assert not evaluate(parse("(distle x y 2)"), gen.path(5), {"x": 0, "y": 3})
    assert evaluate(parse("(distle x y 3)"), gen.path(5), {"x": 0, "y": 3})
    assert not evaluate(parse("(distle x y 100)"), gen.empty(2), {"x": 0, "y": 1})
    with pytest.raises(InputError):
        evaluate(parse("(E x y)"), gen.path(3), {"x": 0})
    with pytest.raises(InputError):
        evaluate(parse("(E x y)"), gen.path(3), {"x": 0, "y": 9})


def test_colour_predicates():
    CG = ColoredGraph.from_color_map(gen.path(4), [0, None, 1, 0])
    assert evaluate(parse("(forall x (or (not (P0 x)) (not (P1 x))))"), CG)
    assert evaluate(parse("(exists x (exists y (and (P0 x) (P1 y) (E x y))))"), CG)
    assert not evaluate(parse("(exists x (P7 x))"), CG)


def random_formula(rng: random.Random, vars_: list[str], depth: int, max_d: int = 5):
    if depth == 0 or rng.random() < 0.25:
        x, y = rng.choice(vars_), rng.choice(vars_)
        kind = rng.randrange(4)
        if kind == 0:
            return Eq(x, y)
        if kind == 1:
            return Edge(x, y)
        if kind == 2:
            return Pred("P0", x)
        return DistLe(x, y, rng.randint(0, max_d))
    kind = rng.randrange(5)
    if kind == 0:
        return neg(random_formula(rng, vars_, depth - 1, max_d))
    if kind in (1, 2):
        parts = [random_formula(rng, vars_, depth - 1, max_d) for _ in range(rng.randint(2, 3))]
        return conj(*parts) if kind == 1 else disj(*parts)
    v = f"v{depth}"
    body = random_formula(rng, vars_ + [v], depth - 1, max_d)
    return exists(v, body) if kind == 3 else forall(v, body)


def random_coloured(rng: random.Random, n: int) -> ColoredGraph:
    G = gen.random_sparse(n, rng.uniform(0.5, 2.5), rng)
    return ColoredGraph.from_color_map(G, [0 if rng.random() < 0.4 else None for _ in range(n)])


def test_fo_translation_agrees():
    rng = random.Random(71)
    for _ in range(150):
        CG = random_coloured(rng, rng.randint(1, 7))
        f = random_formula(rng, ["x", "y"], 3)
        g = to_fo(f)
        assert not any(isinstance(a, DistLe) for a in _atoms(g))
        A = Structure.from_colored(CG)
        ev = Evaluator(A)
        for x in range(CG.graph.n):
            for y in range(CG.graph.n):
                env = {"x": x, "y": y}
                assert ev(f, env) == ev(g, env)


def _atoms(f):
    if not f.children():
        yield f
    for c in f.children():
        yield from _atoms(c)


def test_distance_formula_rank_is_logarithmic():
    for d, rank in ((0, 0), (1, 0), (2, 1), (3, 2), (4, 2), (8, 3), (9, 4)):
        assert quantifier_rank(to_fo(DistLe("x", "y", d))) == rank


# ---------------------------------------------------------------- EF game and Hintikka formulas


def test_ef_examples():
    for G in (gen.path(3), gen.cycle(4), gen.star(3)):
        for q in (1, 2):
            for l in range(q + 1):
                for v in range(G.n):
                    assert ef_plus_equivalent(G, (v,), G, (v,), q, l)
    assert not ef_plus_equivalent(gen.path(2), (0,), gen.path(3), (1,), 2, 2)
    CG = ColoredGraph.from_color_map(gen.path(2), [0, None])
    assert not ef_plus_equivalent(CG, (0,), CG, (1,), 1, 0)
    assert not ef_plus_equivalent(gen.path(3), (0, 1), gen.path(3), (0, 2), 1, 0)


def test_ef_uses_distance_thresholds():
    # endpoints of paths: distance 6 vs 7 is invisible above the threshold 4
    A, B = gen.path(7), gen.path(8)
    assert f_q(1, 0) == 4
    assert ef_plus_equivalent(A, (0, 6), B, (0, 7), 1, 0)
    assert not ef_plus_equivalent(A, (0, 3), B, (0, 4), 1, 0)


def test_ef_guards():
    with pytest.raises(OracleGuardError):
        ef_plus_equivalent(gen.path(9), (0,), gen.path(3), (0,), 1, 1)
    with pytest.raises(InputError):
        ef_plus_equivalent(gen.path(3), (0,), gen.path(3), (0,), 1, 2)
    with pytest.raises(InputError):
        ef_plus_equivalent(gen.path(3), (0,), gen.path(3), (0, 1), 1, 1)


def test_ef_is_an_equivalence_relation():
    rng = random.Random(72)
    pointed = []
    for _ in range(8):
        G = gen.random_sparse(rng.randint(1, 4), 1.5, rng)
        pointed.append((G, rng.randrange(G.n)))
    for q, l in ((1, 1), (2, 1), (2, 2)):
        rel = {
            (i, j): ef_plus_equivalent(pointed[i][0], (pointed[i][1],), pointed[j][0], (pointed[j][1],), q, l)
            for i in range(len(pointed))
            for j in range(len(pointed))
        }
        for i in range(len(pointed)):
            assert rel[i, i]
            for j in range(len(pointed)):
                assert rel[i, j] == rel[j, i]
                for k in range(len(pointed)):
                    if rel[i, j] and rel[j, k]:
                        assert rel[i, k]


def test_single_vertex_hintikka_is_atomic_type():
    CG = ColoredGraph.from_color_map(gen.path(1), [0])
    A = Structure.from_colored(CG)
    phi = hintikka(A, (0,), 1, 0)
    assert phi == atomic_type(A, (0,), ["P0"]) == Pred("P0", "x1")
    other = ColoredGraph.from_color_map(gen.path(2), [None, 0])
    assert evaluate(phi, other, {"x1": 1}) and not evaluate(phi, other, {"x1": 0})


def test_structure_satisfies_own_hintikka_formula():
    rng = random.Random(73)
    for _ in range(30):
        CG = random_coloured(rng, rng.randint(1, 5))
        A = Structure.from_colored(CG)
        ev = Evaluator(A)
        for q, l in ((1, 1), (2, 2)):
            for a in combinations(range(A.n), min(2, A.n)):
                phi = hintikka(A, a, q, l)
                assert q_rank_check(phi, q, l)
                assert ev(phi, {f"x{i + 1}": v for i, v in enumerate(a)})


def test_game_agrees_with_hintikka_on_coloured_pairs():
    rng = random.Random(74)
    structures = [Structure.from_colored(random_coloured(rng, rng.randint(1, 3))) for _ in range(10)]
    vocab = ["P0"]
    for q, l in ((1, 1), (2, 1), (2, 2)):
        for A in structures:
            for B in structures:
                game = EFGame(A, B, q, l)
                ev = Evaluator(B)
                for a in combinations(range(A.n), min(2, A.n)):
                    phi = hintikka(A, a, q, l, vocab)
                    for b in combinations(range(B.n), len(a)):
                        env = {f"x{i + 1}": v for i, v in enumerate(b)}
                        won = game.duplicator_wins(a, b)
                        assert won == ev(phi, env)
                        if won:
                            cap = f_q(q, l)
                            assert distance_profile(A, a, cap) == distance_profile(B, b, cap)


def test_hintikka_deduplicates_branches():
    A = Structure.from_graph(gen.complete(4))
    phi = hintikka(A, (0,), 1, 1)
    # all other vertices look alike, so only two branches (same vertex, other vertex)
    assert size(phi) < 40


# ---------------------------------------------------------------- removal with marks


def test_remove_and_mark_examples():
    m = remove_and_mark(gen.path(3), (1,), 2, 1)
    S = m.structure
    assert S.n == 2 and S.graph.edge_count == 0
    assert S.predicates == {mark_name(1, 1): frozenset({0, 1})}
    assert m.original == (0, 2)
    iso = remove_and_mark(Graph(3, [(0, 1)]), (2,), 1, 1)
    assert not any(name.startswith("Q") for name in iso.structure.predicates)
    gone = remove_and_mark(gen.path(3), (2, 0, 1), 1, 1)
    assert gone.structure.n == 0
    with pytest.raises(InputError):
        remove_and_mark(gen.path(3), (1, 1), 1, 1)
    with pytest.raises(InputError):
        remove_and_mark(gen.path(3), (5,), 1, 1)


def test_marks_keep_colours():
    CG = ColoredGraph.from_color_map(gen.path(4), [0, 0, None, 1])
    m = remove_and_mark(CG, (1,), 1, 0)
    assert m.structure.predicates["P0"] == frozenset({0})
    assert m.structure.predicates["P1"] == frozenset({2})


def test_marks_match_distances():
    rng = random.Random(75)
    for _ in range(40):
        G = gen.random_sparse(rng.randint(2, 20), 2, rng)
        w = tuple(rng.sample(range(G.n), rng.randint(1, min(3, G.n))))
        q, l = rng.randint(1, 2), rng.randint(0, 1)
        m = remove_and_mark(G, w, q, l)
        dist = nx_distances(G)
        for v in range(m.structure.n):
            old = m.original[v]
            marks = m.marks_of(v)
            for j, wj in enumerate(w, 1):
                d = dist[wj].get(old, INF)
                assert marks.get(j) == (d if d <= m.bound else None)


# ---------------------------------------------------------------- independence sentences


def test_independence_examples():
    CG = ColoredGraph.from_color_map(gen.path(5), [0, None, None, None, 0])
    red = parse("(P0 x)")
    assert eval_independence_sentence(CG, IndependenceSentence(2, 1, red))
    assert not eval_independence_sentence(CG, IndependenceSentence(2, 2, red))
    assert eval_independence_sentence(CG, IndependenceSentence(1, 5, red))
    assert not eval_independence_sentence(ColoredGraph.uncolored(gen.path(3)), IndependenceSentence(1, 1, red))
    assert not eval_independence_sentence(gen.complete(4), IndependenceSentence(2, 1, TRUE))
    with pytest.raises(InputError):
        IndependenceSentence(2, 1, parse("(exists y (E x y))"))
    with pytest.raises(InputError):
        IndependenceSentence(2, 1, parse("(E x y)"))


def test_independence_solver_agrees_with_direct_evaluation():
    rng = random.Random(76)
    props = [parse(t) for t in ("(P0 x)", "(not (P0 x))", "true", "(or (P0 x) (P1 x))")]
    for _ in range(40):
        G = gen.random_sparse(rng.randint(1, 8), rng.uniform(0.5, 2.5), rng)
        CG = ColoredGraph.from_color_map(G, [rng.choice((0, 1, None)) for _ in range(G.n)])
        psi = IndependenceSentence(rng.randint(1, 3), rng.randint(0, 2), rng.choice(props))
        direct = evaluate(psi.as_formula(), CG)
        assert eval_independence_sentence(CG, psi, n0=0) == direct
