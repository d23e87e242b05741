import random
from itertools import product

import pytest

from mackey_kit.catmod import (CovariantFreeModule, FreeModule, ModMorphism, PresentedModule,
                               ValuesModule, natural_transformations_rank, resolve)
from mackey_kit.orbitmackey import (Family, FamilyError, MackeyCategory, OrbitCategory,
                                    PiFunctor, adjunction_check, adjunction_ranks,
                                    burnside_functor, burnside_ranks, constant_module,
                                    double_coset_rank, ind_pi, induction_detects_zero,
                                    pullback_compose, random_free, random_morphism, res_pi,
                                    restrict_free, restrict_summand, restriction_rank_check,
                                    tensor_adjunction_ranks)
from mackey_kit.permgrp import (Permutation, double_cosets, enumerate_subgroup_classes,
                                group_from_generators, named_group)


def table(name):
    return enumerate_subgroup_classes(named_group(name))


def setup(name, family="all"):
    T = table(name)
    fam = Family.named(T, family)
    O, M = OrbitCategory(fam), MackeyCategory(fam)
    return T, O, M, PiFunctor(O, M)


def test_family_validation():
    T = table("A5")
    with pytest.raises(FamilyError):
        Family(T, [0, 7])
    with pytest.raises(FamilyError):
        Family(T, [1])
    with pytest.raises(FamilyError):
        Family.named(T, "odd")
    assert len(Family.proper(T)) == 8
    assert Family(T, [0, 1, 2]).members == (0, 1, 2)


def test_orbit_hom_ranks():
    T, O, _, _ = setup("A5", "proper")
    assert O.hom_rank(0, 0) == 60
    a4 = T.index_by_label("A4")
    assert O.hom_rank(a4, a4) == 1
    assert O.check_identities()


def test_mackey_hom_ranks():
    _, _, M, _ = setup("C2")
    assert M.hom_rank(1, 1) == 2
    _, _, M5, _ = setup("A5")
    assert M5.hom_rank(0, 0) == 60
    trivial = enumerate_subgroup_classes(group_from_generators(1, []))
    assert MackeyCategory(Family.all(trivial)).hom_rank(0, 0) == 1


@pytest.mark.parametrize("name", ["C2", "C3", "S3", "A4", "D5"])
def test_rank_law(name):
    T, _, M, _ = setup(name)
    for a, b in product(M.objects, repeat=2):
        assert M.hom_rank(a, b) == double_coset_rank(T, a, b)


@pytest.mark.parametrize("name,family", [("S3", "all"), ("A4", "all"), ("A5", "proper")])
def test_composition_matches_pullback(name, family):
    _, _, M, _ = setup(name, family)
    rng = random.Random(13)
    checked = 0
    while checked < 60:
        a, b, c = (rng.choice(M.objects) for _ in range(3))
        rf, rg = M.hom_rank(a, b), M.hom_rank(b, c)
        f, g = rng.randrange(rf), rng.randrange(rg)
        assert M.compose(a, b, c, g, f) == pullback_compose(M, a, b, c, g, f)
        checked += 1


def test_mackey_associativity_sampled():
    for name, fam in (("S3", "all"), ("A5", "proper")):
        _, _, M, _ = setup(name, fam)
        assert M.check_associativity(samples=1000, rng=random.Random(1))


def test_pi_identity_and_injectivity():
    _, O, M, pi = setup("C2")
    for a in O.objects:
        assert pi.mor_index(a, a, O.identity(a)) == M.identity(a)
    for a, b in product(O.objects, repeat=2):
        images = [pi.mor_index(a, b, k) for k in range(O.hom_rank(a, b))]
        assert len(set(images)) == len(images)


def test_pi_functorial():
    _, O, M, pi = setup("S3")
    assert pi.check_functorial() > 0
    _, O5, M5, pi5 = setup("A5")
    assert pi5.check_functorial(samples=100, rng=random.Random(2)) == 100


def test_burnside_ranks():
    T = table("A5")
    assert [burnside_ranks(T)[c] for c in range(9)] == [1, 2, 2, 5, 2, 4, 4, 5, 9]
    _, _, M, _ = setup("A5")
    A = burnside_functor(M)
    assert [A.dim(c) for c in M.objects] == [1, 2, 2, 5, 2, 4, 4, 5, 9]
    trivial = enumerate_subgroup_classes(group_from_generators(1, []))
    assert burnside_functor(MackeyCategory(Family.all(trivial))).dim(0) == 1


def test_burnside_on_proper_family_uses_ambient_top():
    T, _, M, _ = setup("A5", "proper")
    A = burnside_functor(M)
    assert [A.dim(c) for c in M.objects] == [1, 2, 2, 5, 2, 4, 4, 5]


@pytest.mark.parametrize("name", ["C2", "S3"])
def test_burnside_is_representable_at_top(name):
    T, _, M, _ = setup(name)
    top = len(T) - 1
    # Hom(Z[-,G/G], A) has rank A(G/G) and A resolves in length 0
    A = burnside_functor(M)
    assert natural_transformations_rank(FreeModule(M, [top]), A) == len(T)
    assert resolve(A, 2).length == 0


def test_induction_on_representables():
    T, O, M, pi = setup("S3")
    for c in O.objects:
        F = ind_pi(FreeModule(O, [c]), pi)
        assert F == FreeModule(M, [c])
        assert F.dim(0) == M.hom_rank(0, c) == T.group.order // T[c].order
    I = ModMorphism.identity(FreeModule(O, [0, 2]))
    assert ind_pi(I, pi) == ModMorphism.identity(FreeModule(M, [0, 2]))
    with pytest.raises(TypeError):
        ind_pi(ValuesModule.constant(O), pi)


def test_induction_preserves_composition():
    _, O, M, pi = setup("S3")
    rng = random.Random(8)
    for _ in range(10):
        A, B, C = (random_free(O, rng) for _ in range(3))
        f, g = random_morphism(A, B, rng), random_morphism(B, C, rng)
        assert ind_pi(g @ f, pi) == ind_pi(g, pi) @ ind_pi(f, pi)


@pytest.mark.parametrize("name", ["C2", "S3"])
def test_adjunction(name):
    _, O, M, pi = setup(name)
    rng = random.Random(21)
    for c in O.objects:
        assert adjunction_check(FreeModule(O, [c]), burnside_functor(M), pi)
    for _ in range(10):
        N, Mm = random_free(O, rng), random_free(M, rng)
        lhs, rhs = adjunction_ranks(N, Mm, pi)
        assert lhs == rhs


@pytest.mark.parametrize("name", ["C2", "S3"])
def test_tensor_adjunction(name):
    _, O, M, pi = setup(name)
    rng = random.Random(22)
    for _ in range(10):
        P = random_morphism(random_free(O, rng), random_free(O, rng), rng)
        L = CovariantFreeModule(M, [rng.choice(M.objects)])
        lhs, rhs = tensor_adjunction_ranks(P, L, pi)
        assert lhs == rhs


def test_restriction_index_sets():
    T = table("A5")
    G = T.group
    a4 = T.index_by_label("A4")
    C2 = G.subgroup_from_perms([Permutation.from_cycles(5, (0, 1), (2, 3))])
    sub, parts = restrict_summand(T, C2, a4)
    assert [g for g, _ in parts] == [g for g, _ in double_cosets(G, C2, T[a4].rep)]
    assert sorted(sub.label(h) for _, h in parts) == ["C2", "e", "e"]
    # restricting to the trivial subgroup gives |G/L| free summands
    _, parts = restrict_summand(T, G.trivial, a4)
    assert len(parts) == 5
    # restricting to G itself is the identity on summands
    _, parts = restrict_summand(T, G.whole, a4)
    assert [h for _, h in parts] == [a4]


@pytest.mark.parametrize("kind", ["orbit", "mackey"])
def test_restriction_ranks(kind):
    T, O, M, _ = setup("A5")
    C = O if kind == "orbit" else M
    for K in (T[5].rep, T[7].rep):
        assert restriction_rank_check(FreeModule(C, [3, 5, 7]), K)
        assert restrict_free(FreeModule(C, [7]), K).category.kind == kind


def test_restricted_module_dims():
    _, O, M, pi = setup("S3")
    A = burnside_functor(M)
    R = res_pi(A, pi)
    assert all(R.dim(c) == A.dim(c) for c in O.objects)


def test_induction_detects_zero():
    _, O, M, pi = setup("S3")
    assert induction_detects_zero(PresentedModule.free(FreeModule(O, [])), pi)[0]
    Z = PresentedModule.free(constant_module(O))
    ok, rows = induction_detects_zero(Z, pi)
    assert ok and all(ind != (0, []) for _, _, ind in rows)
    rng = random.Random(42)
    for _ in range(20):
        P = random_morphism(random_free(O, rng), random_free(O, rng), rng, density=0.7)
        assert induction_detects_zero(PresentedModule(P), pi)[0]


def test_constant_module_values():
    _, O, _, _ = setup("S3")
    Z = constant_module(O)
    assert all(Z.dim(c) == 1 for c in O.objects)
    V = ValuesModule.constant(O)
    assert all(V.dim(c) == 1 for c in O.objects)
