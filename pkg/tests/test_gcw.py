import json
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from mackey_kit.catmod import CovariantFreeModule
from mackey_kit.gcw import (ComplexError, RegularGCW, SimpGComplex, barycentric_subdivision,
                            bredon_complex, bredon_homology_with_coeffs,
                            evaluation_matches_fixed_points, fixed_subcomplex,
                            is_resolution_of_Z, point_complex)
from mackey_kit.orbitmackey import Family, OrbitCategory
from mackey_kit.permgrp import (enumerate_subgroup_classes, group_from_generators,
                                named_group)

TRIVIAL = group_from_generators(1, [])


def trivial_orbit():
    return OrbitCategory(Family.all(enumerate_subgroup_classes(TRIVIAL)))


def plain(n, simplices):
    return SimpGComplex(n, simplices, TRIVIAL, [tuple(range(n))])


def test_triangle_subdivision():
    T = barycentric_subdivision(SimpGComplex(3, [(0, 1, 2)]))
    assert T.counts() == (7, 12, 6)
    assert T.homology().acyclic


def test_sphere_and_circle():
    sphere = SimpGComplex(4, list(combinations(range(4), 3)))
    assert sphere.homology().reduced == [(0, []), (0, []), (1, [])]
    circle = SimpGComplex(3, [(0, 1), (1, 2), (0, 2)])
    assert circle.homology().reduced == [(0, []), (1, []), (0, [])]
    assert not circle.homology().acyclic


def test_empty_complex_is_flagged():
    h = SimpGComplex(0, []).homology()
    assert h.empty and h.reduced is None and not h.acyclic
    assert h.to_dict()["empty"]


def test_regular_complex_square():
    sq = RegularGCW(None, 4, [(0, 1), (1, 2), (2, 3), (0, 3)], [(0, 1, 2, 3)])
    assert sq.counts() == (4, 4, 1)
    assert sq.check_boundary()
    assert sq.homology().acyclic
    assert barycentric_subdivision(sq).counts() == (9, 16, 8)


def test_regular_complex_rejects_bad_input():
    with pytest.raises(ComplexError):
        RegularGCW(None, 2, [(0, 0)], [])
    with pytest.raises(ComplexError):
        RegularGCW(None, 3, [(0, 1), (1, 2), (0, 2)], [(0, 1, 0)])
    with pytest.raises(ComplexError):
        SimpGComplex(3, [(0, 1)], act=[(1, 2, 0)])


def test_admissibility():
    C2 = named_group("C2")
    swap = SimpGComplex(2, [(0, 1)], C2, [(0, 1), (1, 0)])
    assert not swap.is_admissible()
    with pytest.raises(ComplexError):
        fixed_subcomplex(swap, C2.whole)
    sd = barycentric_subdivision(swap)
    assert sd.is_admissible()
    fixed = fixed_subcomplex(sd, C2.whole)
    assert fixed.counts() == (1, 0, 0)
    assert fixed_subcomplex(sd, C2.trivial).counts() == sd.counts()


@st.composite
def small_complexes(draw):
    n = draw(st.integers(1, 6))
    tris = draw(st.lists(st.tuples(*[st.integers(0, n - 1)] * 3), max_size=6))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    simp = [tuple(sorted(set(t))) for t in tris + edges if len(set(t)) == len(t)]
    return SimpGComplex(n, simp)


@settings(max_examples=60, deadline=None)
@given(small_complexes())
def test_subdivision_preserves_euler_characteristic_and_homology(X):
    Y = barycentric_subdivision(X)
    assert Y.euler_characteristic() == X.euler_characteristic()
    assert Y.homology().groups == X.homology().groups


def test_orbit_counting():
    G = named_group("S3")
    # the S3 action on the boundary of a triangle, subdivided
    act = [G.images(g) for g in range(G.order)]
    X = barycentric_subdivision(SimpGComplex(3, [(0, 1), (1, 2), (0, 2)], G, act))
    for n in range(3):
        total = sum(G.order // len(X.stabilizer(orb[0])) for orb in X.orbits(n))
        assert total == X.counts()[n]


def test_json_roundtrip():
    G = named_group("C3")
    act = [G.images(g) for g in range(G.order)]
    X = barycentric_subdivision(SimpGComplex(3, [(0, 1, 2)], G, act))
    Y = SimpGComplex.from_json(json.loads(json.dumps(X.to_json())), G)
    assert Y.simplices == X.simplices and Y.act == X.act


def test_bredon_for_trivial_group_is_cellular_complex():
    X = plain(4, [(0, 1, 2), (2, 3)])
    B = bredon_complex(X, trivial_orbit())
    C = B.complex
    assert [C.dim(n, 0) for n in range(3)] == list(X.counts())
    assert C.check_d_squared()
    assert is_resolution_of_Z(B)
    circle = plain(3, [(0, 1), (1, 2), (0, 2)])
    assert not is_resolution_of_Z(bredon_complex(circle, trivial_orbit()))


def test_point_is_resolution():
    assert is_resolution_of_Z(bredon_complex(point_complex(TRIVIAL), trivial_orbit()))
    G = named_group("S3")
    O = OrbitCategory(Family.all(enumerate_subgroup_classes(G)))
    assert is_resolution_of_Z(bredon_complex(point_complex(G), O))


def test_bredon_evaluation_matches_fixed_points_s3():
    G = named_group("S3")
    T = enumerate_subgroup_classes(G)
    O = OrbitCategory(Family.all(T))
    act = [G.images(g) for g in range(G.order)]
    X = barycentric_subdivision(SimpGComplex(3, [(0, 1, 2)], G, act))
    B = bredon_complex(X, O)
    assert B.complex.check_d_squared()
    for a in O.objects:
        assert evaluation_matches_fixed_points(B, a)[0]
    assert is_resolution_of_Z(B)


def test_stabilizer_outside_family_rejected():
    G = named_group("C2")
    T = enumerate_subgroup_classes(G)
    O = OrbitCategory(Family.trivial(T))
    with pytest.raises(ValueError):
        bredon_complex(point_complex(G), O)


def test_bredon_homology_with_constant_coefficients():
    X = plain(3, [(0, 1), (1, 2), (0, 2)])
    O = trivial_orbit()
    L = CovariantFreeModule(O, [0])
    H = bredon_homology_with_coeffs(bredon_complex(X, O), L)
    assert H[:2] == [(1, []), (1, [])]
    pt = bredon_homology_with_coeffs(bredon_complex(point_complex(TRIVIAL), O), L)
    assert pt == [(1, [])]
