import random

from conftest import sparse_corpus
from nowheredense import generators as gen
from nowheredense._fast import csr_from_lists, smallest_last_removal_csr
from nowheredense.augmentation import aug
from nowheredense.graph import smallest_last_removal
from nowheredense.wcol import order_from_aug


def test_compiled_peel_matches_reference():
    for G in sparse_corpus(80, 120, seed=41, min_n=0):
        assert smallest_last_removal_csr(*csr_from_lists(G.adj)) == smallest_last_removal(G.adj)


def test_compiled_peel_on_augmented_adjacency():
    rng = random.Random(42)
    for _ in range(10):
        G = gen.random_sparse(rng.randint(50, 300), 3, rng)
        D = aug(G, 2).digraph
        adj = [o + i for o, i in zip(D.out, D.inn)]
        assert smallest_last_removal_csr(*csr_from_lists(adj)) == smallest_last_removal(adj)


def test_threshold_switch_gives_same_order(monkeypatch):
    import nowheredense.wcol as wcol

    G = gen.grid(12, 12)
    ref = order_from_aug(G, 2)
    monkeypatch.setattr(wcol, "COMPILED_THRESHOLD", 0)
    assert order_from_aug(G, 2) == ref
