import pytest

from mackey_kit.permgrp import (NAMED_GROUPS, GroupSizeError, Permutation, brute_force_subgroups,
                                conjugacy_classes, double_cosets, enumerate_subgroup_classes,
                                group_from_generators, group_from_json, named_group, normalizer,
                                weyl_group)


def test_generation():
    A5 = group_from_generators(5, [Permutation.from_cycles(5, (0, 1, 2, 3, 4)),
                                   Permutation.from_cycles(5, (0, 1, 2))])
    assert A5.order == 60
    assert group_from_generators(1, []).order == 1
    assert group_from_generators(2, [Permutation.from_cycles(2, (0, 1))]).order == 2


def test_identity_is_index_zero():
    G = named_group("S4")
    for g in range(G.order):
        assert G.mul(0, g) == g == G.mul(g, 0)
        assert G.mul(g, G.inv(g)) == 0


def test_group_table_matches_permutation_product():
    G = named_group("S3")
    for a in range(G.order):
        for b in range(G.order):
            assert G.element(G.mul(a, b)) == G.element(a) * G.element(b)


def test_a5_subgroup_classes():
    T = enumerate_subgroup_classes(named_group("A5"))
    assert T.labels() == ["e", "C2", "C3", "V4", "C5", "S3", "D5", "A4", "A5"]
    assert [c.order for c in T.classes] == [1, 2, 3, 4, 5, 6, 10, 12, 60]
    assert sum(c.size for c in T.classes) == 59


def test_small_subgroup_classes():
    assert len(enumerate_subgroup_classes(named_group("C2"))) == 2
    assert enumerate_subgroup_classes(named_group("S3")).labels() == ["e", "C2", "C3", "S3"]


@pytest.mark.parametrize("name", sorted(NAMED_GROUPS))
def test_subgroups_against_brute_force(name):
    G = named_group(name)
    T = enumerate_subgroup_classes(G)
    assert set(T.all_subgroups) == brute_force_subgroups(G)
    assert len(T.all_subgroups) == len(set(T.all_subgroups))
    for H in T.all_subgroups:
        assert G.is_subgroup(H)


def test_conjugacy_classes():
    assert sorted(len(c) for c in conjugacy_classes(named_group("A5"))) == [1, 12, 12, 15, 20]
    assert len(conjugacy_classes(group_from_generators(1, []))) == 1
    assert [len(c) for c in conjugacy_classes(named_group("C3"))] == [1, 1, 1]


def test_double_cosets():
    G = named_group("A5")
    T = enumerate_subgroup_classes(G)
    A4 = frozenset(g for g in range(G.order) if G.images(g)[4] == 4)
    C2 = G.subgroup_from_perms([Permutation.from_cycles(5, (0, 1), (2, 3))])
    dc = double_cosets(G, C2, A4)
    assert len(dc) == 3
    assert sum(n for _, n in dc) == 60
    assert len(double_cosets(G, G.trivial, A4)) == 5
    assert len(double_cosets(G, G.whole, T[2].rep)) == 1


def test_normalizer_and_weyl():
    G = named_group("A5")
    T = enumerate_subgroup_classes(G)
    C5 = T[T.index_by_label("C5")].rep
    assert len(normalizer(G, C5)) == 10
    assert weyl_group(G, C5).order == 2
    assert weyl_group(G, G.trivial).order == 60
    assert weyl_group(G, G.whole).order == 1


def test_json_roundtrip():
    G = named_group("D5")
    H = group_from_json(G.to_json())
    assert H.order == 10
    assert group_from_json("C3").order == 3


def test_unknown_group_and_cap(monkeypatch):
    with pytest.raises(KeyError):
        named_group("nope")
    monkeypatch.setenv("MACKEY_KIT_CAP", "10")
    with pytest.raises(GroupSizeError):
        enumerate_subgroup_classes(named_group("A4"))
