import random
from itertools import permutations

import pytest

from hypertree.errors import IndexOutOfRange, NotAHypertree, NotAnNCycle, UnsupportedUniformity
from hypertree.hypergraph import Hypergraph, complete_hypergraph
from hypertree.signs import (
    OrientedEdge,
    conjugating_permutation,
    orient,
    permutation_parity,
    rotation_product,
    sign_conjugation,
    sign_exterior,
)
from hypertree.verify import random_corpus
from oracles import naive_hypertrees, perm_sign


def tree_of(n, edges):
    g = complete_hypergraph(n, 3)
    return g, g.subset(edges)


def test_permutation_parity_matches_inversions():
    for n in range(1, 7):
        for p in permutations(range(1, n + 1)):
            assert permutation_parity(p) == perm_sign(p)


# ---------------------------------------------------------
# orientation
# ---------------------------------------------------------


def test_orient_single_edge():
    g, t = tree_of(3, [(1, 2, 3)])
    o = orient(g, t, 1)
    assert o.edges == (OrientedEdge(0, 1, (2, 3)),)


def test_orient_two_edges():
    g, t = tree_of(5, [(1, 2, 4), (2, 3, 5)])
    o = orient(g, t, 1)
    by_vertices = {g.edges[e.index]: (e.tip, e.tails) for e in o.edges}
    assert by_vertices == {(1, 2, 4): (1, (2, 4)), (2, 3, 5): (2, (3, 5))}


def test_orient_tails_cover_non_root_vertices_once():
    g = complete_hypergraph(7, 3)
    for t in naive_hypertrees(g)[::37]:
        for root in range(1, 8):
            o = orient(g, t, root)
            tails = [v for e in o.edges for v in e.tails]
            assert sorted(tails + [root]) == list(range(1, 8))


def test_orient_rejects_non_trees():
    g, t = tree_of(5, [(1, 2, 3), (1, 2, 4)])
    with pytest.raises(NotAHypertree):
        orient(g, t, 1)
    g, t = tree_of(5, [(1, 2, 3), (3, 4, 5)])
    with pytest.raises(IndexOutOfRange):
        orient(g, t, 6)


# ---------------------------------------------------------
# the two sign definitions
# ---------------------------------------------------------


@pytest.mark.parametrize(
    "n, edges, expected",
    [
        (3, [(1, 2, 3)], 1),
        (5, [(1, 2, 3), (3, 4, 5)], 1),
        (5, [(1, 2, 4), (2, 3, 5)], -1),
    ],
)
def test_sign_examples(n, edges, expected):
    g, t = tree_of(n, edges)
    assert sign_exterior(g, t, 1) == expected
    assert sign_conjugation(g, t) == expected


def test_rotation_products_by_hand():
    assert rotation_product(3, [(1, 2, 3)]) == [2, 3, 1]
    assert rotation_product(5, [(1, 2, 3), (3, 4, 5)]) == [2, 3, 4, 5, 1]
    # (1 2 3 5 4)
    assert rotation_product(5, [(1, 2, 4), (2, 3, 5)]) == [2, 3, 5, 1, 4]
    assert conjugating_permutation([2, 3, 5, 1, 4]) == [1, 2, 3, 5, 4]


def test_conjugation_rejects_non_cycles():
    with pytest.raises(NotAnNCycle):
        conjugating_permutation([2, 1, 4, 5, 3])
    with pytest.raises(NotAnNCycle):
        conjugating_permutation([1, 2, 3])
    g, t = tree_of(5, [(1, 2, 3), (1, 2, 4)])
    with pytest.raises(NotAnNCycle):
        sign_conjugation(g, t)
    with pytest.raises(NotAnNCycle):
        sign_conjugation(g, t[:1])


def test_signs_need_three_uniform():
    g = complete_hypergraph(3, 2)
    with pytest.raises(UnsupportedUniformity):
        sign_exterior(g, (0, 1), 1)
    with pytest.raises(UnsupportedUniformity):
        sign_conjugation(g, (0, 1))


def test_order_must_permute_tree():
    g, t = tree_of(5, [(1, 2, 3), (3, 4, 5)])
    with pytest.raises(ValueError):
        sign_conjugation(g, t, [t[0], t[0]])


@pytest.mark.parametrize("n", [3, 5, 7])
def test_definitions_agree_on_complete_instances(n):
    g = complete_hypergraph(n, 3)
    trees = naive_hypertrees(g)
    assert trees
    for t in trees:
        s = sign_conjugation(g, t)
        assert s in (-1, 1)
        assert all(sign_exterior(g, t, r) == s for r in range(1, n + 1))


def test_definitions_agree_on_random_instances():
    checked = 0
    for g in random_corpus(100, sizes=(5, 7, 9), seed=11):
        for t in naive_hypertrees(g):
            assert sign_exterior(g, t, 1) == sign_conjugation(g, t)
            checked += 1
    assert checked > 100


def test_conjugation_independent_of_edge_order():
    rng = random.Random(5)
    g = complete_hypergraph(7, 3)
    for t in naive_hypertrees(g)[::11]:
        ref = sign_conjugation(g, t)
        for _ in range(20):
            order = list(t)
            rng.shuffle(order)
            assert sign_conjugation(g, t, order) == ref


def test_rotation_product_is_single_cycle_and_start_irrelevant():
    g = complete_hypergraph(7, 3)
    for t in naive_hypertrees(g)[::7]:
        word = rotation_product(7, [g.edges[i] for i in t])
        parities = {permutation_parity(conjugating_permutation(word, s)) for s in range(1, 8)}
        assert len(parities) == 1


def test_sign_on_non_complete_host():
    # sign depends only on the edges, not on which host hypergraph holds them
    g = Hypergraph(3, 5, [(1, 2, 4), (2, 3, 5), (1, 3, 5)])
    t = g.subset([(1, 2, 4), (2, 3, 5)])
    assert sign_exterior(g, t) == sign_conjugation(g, t) == -1
