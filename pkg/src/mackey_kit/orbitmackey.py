"""Orbit and Mackey categories of a finite group relative to a family of subgroups.

Objects of both categories are subgroup class indices of a
:class:`~mackey_kit.permgrp.SubgroupClassTable`; the object ``c`` stands for
the coset space G/R where R is the canonical representative of class ``c``.

Orbit category basis of Hom(G/S, G/K): cosets xK with S <= xKx^-1, labelled
by their minimal element x; the map sends eS to xK.

Mackey category basis of Hom(G/S, G/K): spans G/S <- G/L -> G/K, written
``(g, L)``: g is the minimal element of a double coset SgK and L runs over
subgroups of T = S ∩ gKg^-1 up to T-conjugacy (minimal sorted conjugate).
The left leg is xL -> xS, the right leg xL -> xgK.
"""
from __future__ import annotations

import itertools
import random

from .burnside import coset_gset, pullback
from .catmod import (AddCategory, ChainComplex, FreeModule, ModMorphism, Module,
                     PresentedModule, RestrictedModule, add_into,
                     natural_transformations_rank, tensor_coend)
from .permgrp import PermGroup, SubgroupClassTable, double_cosets, enumerate_subgroup_classes


class FamilyError(ValueError):
    pass


class Family:
    """Set of subgroup classes closed under taking subgroups."""

    def __init__(self, table: SubgroupClassTable, members, name=None):
        members = frozenset(members)
        if 0 not in members:
            raise FamilyError("a family must contain the trivial subgroup")
        G = table.group
        for c in members:
            R = table[c].rep
            for H in table.all_subgroups:
                if H <= R and table.class_of(H) not in members:
                    raise FamilyError(f"family not closed under subgroups at class {c}")
        self.table = table
        self.group: PermGroup = G
        self.members = tuple(sorted(members))
        self.name = name or "custom"

    @classmethod
    def all(cls, table):
        return cls(table, range(len(table)), "all")

    @classmethod
    def proper(cls, table):
        return cls(table, range(len(table) - 1), "proper")

    @classmethod
    def trivial(cls, table):
        return cls(table, [0], "trivial")

    @classmethod
    def named(cls, table, name):
        try:
            return {"all": cls.all, "full": cls.all, "proper": cls.proper,
                    "trivial": cls.trivial}[name](table)
        except KeyError:
            raise FamilyError(f"unknown family {name!r}") from None

    def __contains__(self, c):
        return c in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"Family({self.name}, {list(self.members)})"


class _GroupCategory(AddCategory):
    def __init__(self, family: Family):
        super().__init__()
        self.family = family
        self.table = family.table
        self.group = family.group
        self.objects = list(family.members)
        self.top = len(self.table) - 1
        self._homs = {}
        self._pos = {}
        labels = self.table.labels()
        self._obj_labels = [lab if labels.count(lab) == 1 else f"{lab}#{i}"
                            for i, lab in enumerate(labels)]

    def object_label(self, a):
        return self._obj_labels[a]

    def rep(self, a):
        return self.table[a].rep

    def hom_labels(self, a, b):
        key = (a, b)
        hl = self._homs.get(key)
        if hl is None:
            hl = self._homs[key] = self._build_hom(a, b)
            self._pos[key] = {lab: i for i, lab in enumerate(hl)}
        return hl

    def hom_index(self, a, b, label):
        self.hom_labels(a, b)
        return self._pos[(a, b)][label]


class OrbitCategory(_GroupCategory):
    kind = "orbit"

    def __init__(self, family: Family):
        super().__init__(family)
        self._cmin = {}

    def coset_min(self, b):
        """Element index -> minimal element of its left coset of the rep of b."""
        cm = self._cmin.get(b)
        if cm is None:
            G, K = self.group, self.rep(b)
            cm = [0] * G.order
            for r in G.coset_reps(K):
                for k in K:
                    cm[G.mul(r, k)] = r
            self._cmin[b] = cm
        return cm

    def _build_hom(self, a, b):
        G = self.group
        S, K = self.rep(a), self.rep(b)
        return [x for x in G.coset_reps(K) if S <= G.conjugate(K, x)]

    def identity(self, a):
        return self.hom_index(a, a, 0)

    def _compose(self, a, b, c, g, f):
        x = self.hom_labels(a, b)[f]
        y = self.hom_labels(b, c)[g]
        z = self.coset_min(c)[self.group.mul(x, y)]
        return {self.hom_index(a, c, z): 1}


class MackeyCategory(_GroupCategory):
    kind = "mackey"

    def __init__(self, family: Family):
        super().__init__(family)
        self._dc = {}
        self._tcanon = {}
        self._tsubs = {}

    def _subgroups_of(self, T):
        out = self._tsubs.get(T)
        if out is None:
            out = self._tsubs[T] = [H for H in self.table.all_subgroups if H <= T]
        return out

    def t_canonical(self, T, L):
        """Minimal sorted T-conjugate of L (as a sorted tuple)."""
        key = (T, L)
        out = self._tcanon.get(key)
        if out is None:
            G = self.group
            out = min(tuple(sorted(G.conjugate(L, t))) for t in T)
            self._tcanon[key] = out
        return out

    def double_coset_data(self, a, b):
        """For every element y: (g, u) with g = min(S y K), u in S, u*y in gK."""
        key = (a, b)
        data = self._dc.get(key)
        if data is None:
            G = self.group
            S, K = self.rep(a), self.rep(b)
            data = [None] * G.order
            for g, _ in double_cosets(G, S, K):
                for u in S:
                    ui = G.inv(u)
                    for k in K:
                        y = G.mul(ui, G.mul(g, k))
                        if data[y] is None:
                            data[y] = (g, u)
            self._dc[key] = data
        return data

    def _build_hom(self, a, b):
        G = self.group
        S, K = self.rep(a), self.rep(b)
        out = []
        for g, _ in double_cosets(G, S, K):
            T = S & G.conjugate(K, g)
            mids = {self.t_canonical(T, L) for L in self._subgroups_of(T)}
            out.extend((g, L) for L in sorted(mids, key=lambda t: (len(t), t)))
        return out

    def canonical(self, a, b, L, x, y):
        """Basis index of the span (L, x, y): G/S <- G/L -> G/K.

        Requires L <= xSx^-1 ∩ yKy^-1 (left leg zL -> zxS, right zL -> zyK).
        """
        G = self.group
        xi = G.inv(x)
        L1 = G.conjugate(L, xi)
        y1 = G.mul(xi, y)
        g, u = self.double_coset_data(a, b)[y1]
        L2 = G.conjugate(L1, u)
        T = self.rep(a) & G.conjugate(self.rep(b), g)
        return self.hom_index(a, b, (g, self.t_canonical(T, L2)))

    def identity(self, a):
        return self.hom_index(a, a, (0, tuple(sorted(self.rep(a)))))

    def _compose(self, a, b, c, g, f):
        G = self.group
        g1, L1 = self.hom_labels(a, b)[f]
        g2, L2 = self.hom_labels(b, c)[g]
        L1, L2 = frozenset(L1), frozenset(L2)
        K = self.rep(b)
        # L1-orbits on cosets yL2 inside g1 K
        keyed = {}
        for k in K:
            y = G.mul(g1, k)
            key = min(G.mul(y, l) for l in L2)
            keyed[key] = y
        seen, out = set(), {}
        for key in sorted(keyed):
            if key in seen:
                continue
            y = keyed[key]
            for l in L1:
                seen.add(min(G.mul(G.mul(l, y), m) for m in L2))
            mid = L1 & G.conjugate(L2, y)
            idx = self.canonical(a, c, mid, 0, G.mul(y, g2))
            out[idx] = out.get(idx, 0) + 1
        return out

    def span(self, a, b, k):
        """Basis element k of Hom(a, b) as (L, x, y) with x = identity."""
        g, L = self.hom_labels(a, b)[k]
        return frozenset(L), 0, g


def orbit_category(G_or_table, family="all"):
    table = _table(G_or_table)
    fam = family if isinstance(family, Family) else Family.named(table, family)
    return OrbitCategory(fam)


def mackey_category(G_or_table, family="all"):
    table = _table(G_or_table)
    fam = family if isinstance(family, Family) else Family.named(table, family)
    return MackeyCategory(fam)


def _table(x):
    return x if isinstance(x, SubgroupClassTable) else enumerate_subgroup_classes(x)


def double_coset_rank(table, a, b):
    """Sum over S\\G/K of the number of conjugacy classes of subgroups of S ∩ gKg^-1."""
    G = table.group
    S, K = table[a].rep, table[b].rep
    total = 0
    for g, _ in double_cosets(G, S, K):
        T = S & G.conjugate(K, g)
        TG = G.as_group(T)
        total += len(enumerate_subgroup_classes(TG))
    return total


# ---------------------------------------------------------------------------
# element-level pullback oracle


def span_equivalent(G: PermGroup, S, K, s1, s2):
    """Brute-force isomorphism test for spans (L, x, y) from G/S to G/K."""
    L, x, y = s1
    M, x2, y2 = s2
    if len(L) != len(M):
        return False
    for c in range(G.order):
        if not L <= G.conjugate(M, c):
            continue
        if G.mul(G.inv(x), G.mul(c, x2)) in S and G.mul(G.inv(y), G.mul(c, y2)) in K:
            return True
    return False


def pullback_compose(cat: MackeyCategory, a, b, c, g, f):
    """Composite of basis spans via an explicit G-set pullback.

    Components are matched against basis labels by brute-force span
    isomorphism, so nothing here relies on the canonical-form routine.
    """
    G = cat.group
    S, K, J = cat.rep(a), cat.rep(b), cat.rep(c)
    L1, _, g1 = cat.span(a, b, f)
    L2, _, g2 = cat.span(b, c, g)
    X1, X2, Y = coset_gset(G, L1), coset_gset(G, L2), coset_gset(G, K)
    kpos = {r: i for i, r in enumerate(Y.labels)}
    cm = [0] * G.order
    for r in Y.labels:
        for k in K:
            cm[G.mul(r, k)] = r
    f1 = [kpos[cm[G.mul(r, g1)]] for r in X1.labels]
    f2 = [kpos[cm[r]] for r in X2.labels]
    P = pullback(X1, X2, Y, f1, f2)
    basis = [cat.span(a, c, k) for k in range(cat.hom_rank(a, c))]
    out = {}
    for orb in P.gset.orbits():
        p = orb[0]
        i, j = P.points[p]
        xr, yr = X1.labels[i], X2.labels[j]
        stab = P.gset.stabilizer(p)
        comp = (stab, xr, G.mul(yr, g2))
        hits = [k for k, s in enumerate(basis) if span_equivalent(G, S, J, comp, s)]
        if len(hits) != 1:
            raise AssertionError("pullback component matches %d basis spans" % len(hits))
        out[hits[0]] = out.get(hits[0], 0) + 1
    return out


# ---------------------------------------------------------------------------
# pi, restriction and induction


class PiFunctor:
    """The functor from the orbit category to the Mackey category."""

    def __init__(self, orbit: OrbitCategory, mackey: MackeyCategory):
        if orbit.family.members != mackey.family.members or orbit.table is not mackey.table:
            raise ValueError("categories belong to different groups or families")
        self.source = orbit
        self.target = mackey
        self._cache = {}

    def obj(self, a):
        return a

    def mor_index(self, a, b, k):
        key = (a, b, k)
        out = self._cache.get(key)
        if out is None:
            x = self.source.hom_labels(a, b)[k]
            out = self.target.canonical(a, b, self.source.rep(a), 0, x)
            self._cache[key] = out
        return out

    def mor(self, a, b, k):
        return {self.mor_index(a, b, k): 1}

    def map_elem(self, a, b, vec):
        out = {}
        for k, x in vec.items():
            add_into(out, self.mor(a, b, k), x)
        return out

    def check_functorial(self, samples=None, rng=None):
        O = self.source
        obs = O.objects
        rng = rng or random.Random(0)
        if samples is None:
            pairs = ((a, b, c, g, f) for a, b, c in itertools.product(obs, repeat=3)
                     for g in range(O.hom_rank(b, c)) for f in range(O.hom_rank(a, b)))
        else:
            def gen():
                n = 0
                while n < samples:
                    a, b, c = rng.choice(obs), rng.choice(obs), rng.choice(obs)
                    rb, ra = O.hom_rank(b, c), O.hom_rank(a, b)
                    if ra and rb:
                        n += 1
                        yield a, b, c, rng.randrange(rb), rng.randrange(ra)
            pairs = gen()
        M = self.target
        for a in obs:
            if self.mor_index(a, a, O.identity(a)) != M.identity(a):
                return False
        count = 0
        for a, b, c, g, f in pairs:
            lhs = self.map_elem(a, c, O.compose(a, b, c, g, f))
            rhs = M.compose(a, b, c, self.mor_index(b, c, g), self.mor_index(a, b, f))
            if lhs != rhs:
                return False
            count += 1
        return count


def pi_functor(orbit, mackey):
    return PiFunctor(orbit, mackey)


def ind_pi(x, pi: PiFunctor):
    """Induction along pi on free modules, maps of free modules, free complexes
    and presented modules (entrywise application of pi)."""
    M = pi.target
    if isinstance(x, FreeModule):
        return FreeModule(M, x.summands)
    if isinstance(x, ModMorphism):
        src, tgt = ind_pi(x.source, pi), ind_pi(x.target, pi)
        entries = {}
        for (i, j), v in x.entries.items():
            entries[(i, j)] = pi.map_elem(x.source.summands[j], x.target.summands[i], v)
        return ModMorphism(src, tgt, entries)
    if isinstance(x, ChainComplex):
        aug = x.augmentation
        if aug is not None and not isinstance(aug, ModMorphism):
            raise TypeError("ind_pi needs an augmentation between free modules")
        return ChainComplex([ind_pi(m, pi) for m in x.modules],
                            [ind_pi(d, pi) for d in x.differentials[1:]],
                            ind_pi(aug, pi) if aug is not None else None)
    if isinstance(x, PresentedModule):
        return PresentedModule(ind_pi(x.presentation, pi))
    raise TypeError("ind_pi is only defined on free data")


def res_pi(module: Module, pi: PiFunctor) -> Module:
    return RestrictedModule(module, pi.source, pi)


class CovariantRestricted:
    """Restriction of a covariant module along pi."""

    covariant = True

    def __init__(self, module, pi):
        self.module = module
        self.category = pi.source
        self.pi = pi

    def dim(self, a):
        return self.module.dim(a)

    def act(self, a, b, k):
        return self.module.act(a, b, self.pi.mor_index(a, b, k))


def constant_module(orbit: OrbitCategory) -> FreeModule:
    """The constant functor Z, realised as Z[-, G/G] on family objects."""
    return FreeModule(orbit, [orbit.top])


def burnside_functor(mackey: MackeyCategory) -> FreeModule:
    """The Burnside functor H -> A(H), realised as Z^G[-, G] on family objects."""
    return FreeModule(mackey, [mackey.top])


def augmentation(F: FreeModule, target: FreeModule) -> ModMorphism:
    """Sum of the unique maps from each summand to G/G (coefficient 1 each)."""
    cat = F.category
    top = target.summands[0]
    ent = {}
    for j, c in enumerate(F.summands):
        if cat.hom_rank(c, top) != 1:
            raise ValueError("target is not the terminal object")
        ent[(0, j)] = {0: 1} if isinstance(cat, OrbitCategory) else \
            {cat.canonical(c, top, cat.rep(c), 0, 0): 1}
    return ModMorphism(F, target, ent)


def burnside_ranks(table: SubgroupClassTable, family=None):
    """rank A(H) for each class, by enumerating subgroup classes of H itself."""
    G = table.group
    classes = family.members if family is not None else range(len(table))
    return {c: len(enumerate_subgroup_classes(G.as_group(table[c].rep))) for c in classes}


# ---------------------------------------------------------------------------
# adjunction checks


def adjunction_ranks(N: FreeModule, M: Module, pi: PiFunctor):
    """(rank Hom_O(N, res M), rank Hom_M(ind N, M)) via naturality equations."""
    lhs = natural_transformations_rank(N, res_pi(M, pi))
    rhs = natural_transformations_rank(ind_pi(N, pi), M)
    return lhs, rhs


def adjunction_check(N: FreeModule, M: Module, pi: PiFunctor):
    lhs, rhs = adjunction_ranks(N, M, pi)
    yoneda = sum(M.dim(c) for c in N.summands)
    return lhs == rhs == yoneda


def tensor_adjunction_ranks(P: ModMorphism, L, pi: PiFunctor):
    """Both sides of ind(N) (x)_M L = N (x)_O res(L) for N = coker P."""
    lhs = tensor_coend(ind_pi(P, pi), L)
    rhs = tensor_coend(P, CovariantRestricted(L, pi))
    return lhs, rhs


def random_free(cat, rng, max_summands=3, objects=None):
    obs = objects or cat.objects
    return FreeModule(cat, [rng.choice(obs) for _ in range(rng.randint(1, max_summands))])


def random_morphism(src: FreeModule, tgt: FreeModule, rng, density=0.5, bound=2):
    cat = src.category
    ent = {}
    for i, ci in enumerate(tgt.summands):
        for j, cj in enumerate(src.summands):
            r = cat.hom_rank(cj, ci)
            v = {k: rng.randint(-bound, bound) for k in range(r) if rng.random() < density}
            v = {k: x for k, x in v.items() if x}
            if v:
                ent[(i, j)] = v
    return ModMorphism(src, tgt, ent)


# ---------------------------------------------------------------------------
# restriction to a subgroup


def restrict_summand(table: SubgroupClassTable, K, c, sub_table=None):
    """res^G_K of the representable at class c.

    Returns (sub_table, [(double coset rep g, class index in sub_table of
    K ∩ gLg^-1)]) over K\\G/L, L the rep of c.
    """
    G = table.group
    K = G.check_subgroup(K)
    KG = G.as_group(K)
    sub_table = sub_table or enumerate_subgroup_classes(KG)
    L = table[c].rep
    out = []
    for g, _ in double_cosets(G, K, L):
        H = K & G.conjugate(L, g)
        Hk = frozenset(KG.index_of(G.element(h)) for h in H)
        out.append((g, sub_table.class_of(Hk)))
    return sub_table, out


def restrict_free(F: FreeModule, K, kind=None):
    """Restrict a free module over a category of G to one over K (all subgroups)."""
    cat = F.category
    sub_table = None
    summands = []
    for c in F.summands:
        sub_table, parts = restrict_summand(cat.table, K, c, sub_table)
        summands.extend(h for _, h in parts)
    if sub_table is None:
        sub_table = enumerate_subgroup_classes(cat.group.as_group(frozenset(K)))
    fam = Family.all(sub_table)
    kind = kind or cat.kind
    sub_cat = OrbitCategory(fam) if kind == "orbit" else MackeyCategory(fam)
    return FreeModule(sub_cat, summands)


def restriction_rank_check(F: FreeModule, K):
    """Compare ranks of res^G_K F at every subgroup H <= K with F(G/H)."""
    cat = F.category
    G = cat.group
    R = restrict_free(F, K)
    sub = R.category
    KG = sub.group
    for h, cls in enumerate(sub.table.classes):
        H = frozenset(G.index_of(KG.element(x)) for x in cls.rep)
        a = cat.table.class_of(H)
        # F(G/H) computed with H itself rather than the class rep of H in G
        if R.dim(h) != F.dim(a):
            return False
    return True


# ---------------------------------------------------------------------------
# vanishing detection


def induction_detects_zero(N: PresentedModule, pi: PiFunctor):
    """For every object: induced value zero implies the original value zero.

    Returns (holds, rows) with rows [(object, orig invariants, induced invariants)].
    """
    I = ind_pi(N, pi)
    rows, ok = [], True
    for a in pi.source.objects:
        orig, ind = N.invariants(a), I.invariants(a)
        if I.is_zero_at(a) and not N.is_zero_at(a):
            ok = False
        rows.append((a, orig, ind))
    return ok, rows
