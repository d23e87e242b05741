import random

import pytest

from mackey_kit.burnside import (BurnsideElement, coset_gset, fixed_points, from_marks,
                                 multiply_via_marks, product, pullback, table_of_marks)
from mackey_kit.permgrp import (Permutation, double_cosets, enumerate_subgroup_classes,
                                group_from_generators, named_group)


def table(name):
    return enumerate_subgroup_classes(named_group(name))


def test_marks_small():
    assert table_of_marks(named_group("C2")) == [[2, 1], [0, 1]]
    assert table_of_marks(group_from_generators(1, [])) == [[1]]


def test_marks_a5():
    m = table_of_marks(named_group("A5"))
    assert len(m) == 9 and m[0][0] == 60 and m[8][8] == 1
    # upper triangular in the (order, rep) class order
    assert all(m[i][j] == 0 for i in range(9) for j in range(i))


def test_marks_against_fixed_point_scan():
    T = table("S4")
    G = T.group
    m = table_of_marks(G, T)
    for j, cj in enumerate(T.classes):
        X = coset_gset(G, cj.rep)
        for i, ci in enumerate(T.classes):
            assert m[i][j] == len(fixed_points(X, ci.rep))


def test_coset_gsets():
    G = named_group("A5")
    T = table("A5")
    assert len(coset_gset(G, T[7].rep)) == 5
    assert len(coset_gset(G, G.whole)) == 1
    C2 = named_group("C2")
    assert len(coset_gset(C2, C2.trivial)) == 2
    assert fixed_points(coset_gset(C2, C2.trivial), C2.whole) == []


def test_fixed_points_of_c3_on_five_points():
    G = named_group("A5")
    A4 = frozenset(g for g in range(G.order) if G.images(g)[4] == 4)
    C3 = G.subgroup_from_perms([Permutation.from_cycles(5, (0, 1, 2))])
    assert len(fixed_points(coset_gset(G, A4), C3)) == 2


def test_products():
    T = table("C2")
    free = BurnsideElement.basis(T, 0)
    assert free * free == 2 * free
    T5 = table("A5")
    x = BurnsideElement.basis(T5, 7)
    sq = x * x
    # the diagonal gives A5/A4 and the 20 ordered pairs of distinct points give A5/C3
    assert sq == x + BurnsideElement.basis(T5, T5.index_by_label("C3"))


@pytest.mark.parametrize("name", ["C2", "S3", "D4", "A4", "A5"])
def test_one_is_identity(name):
    T = table(name)
    rng = random.Random(1)
    x = BurnsideElement(T, [rng.randint(-2, 2) for _ in range(len(T))])
    assert BurnsideElement.one(T) * x == x


@pytest.mark.parametrize("name", ["C2", "C3", "S3", "V4", "D4", "Q8", "A4", "D6"])
def test_product_against_marks(name):
    T = table(name)
    rng = random.Random(3)
    for _ in range(30):
        a = BurnsideElement(T, [rng.randint(-3, 3) for _ in range(len(T))])
        b = BurnsideElement(T, [rng.randint(-3, 3) for _ in range(len(T))])
        assert a * b == multiply_via_marks(a, b)
        assert a * b == b * a


def test_marks_roundtrip():
    T = table("S4")
    x = BurnsideElement(T, list(range(-5, len(T) - 5)))
    assert from_marks(T, x.marks()) == x


def test_pullbacks():
    G = named_group("C2")
    pt = coset_gset(G, G.whole)
    free = coset_gset(G, G.trivial)
    P = pullback(pt, pt, pt, [0], [0])
    assert len(P.gset) == 1
    P = pullback(free, free, pt, [0, 0], [0, 0])
    assert len(P.gset) == 4
    assert len(P.gset.orbits()) == 2


def test_pullback_over_point_has_one_orbit_per_double_coset():
    T = table("A5")
    G = T.group
    pt = coset_gset(G, G.whole)
    for i in (1, 2, 5):
        for j in (4, 7):
            X, Y = coset_gset(G, T[i].rep), coset_gset(G, T[j].rep)
            P = pullback(X, Y, pt, [0] * len(X), [0] * len(Y))
            assert len(P.gset.orbits()) == len(double_cosets(G, T[i].rep, T[j].rep))
            assert len(P.gset) == len(product(X, Y))
