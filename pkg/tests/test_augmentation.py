import random

import pytest

from conftest import nx_distances, sparse_corpus
from nowheredense import generators as gen
from nowheredense.augmentation import (
    FRATERNAL,
    ORIGINAL,
    TRANSITIVE,
    aug,
    check_neighbourhood_witness,
    tight_one_aug,
    topological_rank,
    verify_aug,
)
from nowheredense.errors import DenseInputError, InputError, PropertyViolation
from nowheredense.graph import DiGraph, Graph, degeneracy_orientation


def test_transitive_arc_is_added_and_tagged():
    res = tight_one_aug(DiGraph(3, [(0, 1), (1, 2)]))
    assert set(res.digraph.arcs()) == {(0, 1), (1, 2), (0, 2)}
    assert res.provenance[(0, 2)] == TRANSITIVE
    assert res.provenance[(0, 1)] == ORIGINAL


@pytest.mark.parametrize("rule", ["order", "indegree"])
def test_fraternal_pair_gets_exactly_one_arc(rule):
    res = tight_one_aug(DiGraph(3, [(0, 2), (1, 2)]), rule=rule)
    new = set(res.digraph.arcs()) - {(0, 2), (1, 2)}
    assert new in ({(0, 1)}, {(1, 0)})
    assert res.provenance[next(iter(new))] == FRATERNAL


def test_indegree_rule_orients_toward_smaller_indegree_then_larger_id():
    # 3 and 4 share head 0; 4 already has in-degree 1 from 5
    D = DiGraph(6, [(3, 0), (4, 0), (5, 4)])
    res = tight_one_aug(D, rule="indegree")
    assert (4, 3) in set(res.digraph.arcs())
    # tie in in-degree goes to the larger id
    res = tight_one_aug(DiGraph(3, [(0, 2), (1, 2)]), rule="indegree")
    assert (0, 1) in set(res.digraph.arcs())


def test_arcless_digraph_unchanged():
    D = DiGraph(4)
    assert tight_one_aug(D).digraph == D


def test_aug_examples():
    assert aug(gen.path(4), 1).max_indegree <= 2
    K3 = gen.complete(3)
    assert aug(K3, 1).digraph.underlying() == K3
    assert aug(gen.cycle(4), 2).digraph.underlying() == gen.complete(4)
    D, _ = degeneracy_orientation(gen.cycle(5))
    assert aug(gen.cycle(5), 0).digraph == D


def test_aug_rejects_bad_arguments():
    with pytest.raises(InputError):
        aug(gen.path(3), -1)
    with pytest.raises(InputError):
        aug(gen.path(3), 1, rule="flow")
    with pytest.raises(DenseInputError):
        aug(gen.complete(8), 1, indegree_ceiling=3)


def test_verify_aug_reports_each_condition():
    D = DiGraph(3, [(0, 1), (1, 2)])
    kinds = {v[0] for v in verify_aug(D, D).violations}
    assert kinds == {"transitive"}
    H = DiGraph(3, [(0, 1), (1, 2), (0, 2)])
    assert verify_aug(D, H).ok
    extra = DiGraph(4, [(0, 1), (1, 2), (0, 2), (3, 0)])
    report = verify_aug(DiGraph(4, [(0, 1), (1, 2)]), extra)
    assert ("tight", 3, 0) in report.violations
    assert ("kept", 0, 1) in verify_aug(D, DiGraph(3, [(1, 2)])).violations
    frat = DiGraph(3, [(0, 2), (1, 2)])
    assert ("fraternal", 0, 1, 2) in verify_aug(frat, frat).violations


def test_consecutive_rounds_are_tight_and_monotone():
    for G in sparse_corpus(60, 60, seed=21):
        chain: list = []
        aug(G, 3, history=chain)
        for a, b in zip(chain, chain[1:]):
            assert verify_aug(a, b).ok
            assert set(a.arcs()) <= set(b.arcs())


def test_order_rule_keeps_rank_descending_and_conflict_free():
    for G in sparse_corpus(60, 60, seed=22):
        res = aug(G, 3)
        assert res.conflicts == 0
        assert topological_rank(res.digraph) is not None


def test_indegree_rule_still_tight_even_with_conflicts():
    for G in sparse_corpus(40, 40, seed=23):
        chain: list = []
        aug(G, 2, rule="indegree", history=chain)
        for a, b in zip(chain, chain[1:]):
            kinds = {v[0] for v in verify_aug(a, b).violations}
            # a conflicting pair drops one transitive demand, never adds unjustified arcs
            assert kinds <= {"transitive"}


def test_max_indegree_recomputed():
    for G in sparse_corpus(30, 50, seed=24):
        res = aug(G, 2)
        assert res.max_indegree == max((len(i) for i in res.digraph.inn), default=0)
        counts = res.count_by_provenance()
        assert sum(counts.values()) == res.digraph.arc_count


def test_aug_is_deterministic():
    G = gen.random_sparse(80, 3, random.Random(5))
    a, b = aug(G, 3), aug(G, 3)
    assert a.digraph == b.digraph and a.provenance == b.provenance


def test_topological_rank():
    assert topological_rank(DiGraph(3, [(0, 1), (1, 2)])) == [2, 1, 0]
    assert topological_rank(DiGraph(3, [(0, 1), (1, 2), (2, 0)])) is None


def test_neighbourhood_witness_examples():
    G = gen.path(3)
    res = aug(G, 2)
    assert check_neighbourhood_witness(G, res, 0, 2, 2)[0] in ("arc", "common")
    w = check_neighbourhood_witness(G, aug(G, 1), 0, 1, 1)
    assert w[0] == "arc"
    with pytest.raises(InputError):
        check_neighbourhood_witness(G, res, 0, 2, 1)
    with pytest.raises(PropertyViolation):
        check_neighbourhood_witness(G, DiGraph(3, [(0, 1), (2, 1)]), 0, 2, 2)


def test_neighbourhood_witness_everywhere():
    for G in sparse_corpus(40, 100, seed=25):
        dist = nx_distances(G)
        for r in (1, 2, 3):
            res = aug(G, r)
            for v in range(G.n):
                for w, d in dist[v].items():
                    if v < w and d <= r:
                        check_neighbourhood_witness(G, res, v, w, r)


def test_large_grid_without_provenance():
    G = gen.grid(30, 30)
    a = aug(G, 2, track_provenance=False)
    b = aug(G, 2)
    assert a.digraph == b.digraph and a.provenance == {}
