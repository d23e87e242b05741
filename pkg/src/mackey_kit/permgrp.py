"""Finite permutation groups by brute-force closure.

Group elements are stored once, sorted lexicographically by their image
arrays, and addressed by index everywhere else; index 0 is the identity.
Subgroups are frozensets of element indices.
"""
from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

DEFAULT_CAP = 10_000


class GroupSizeError(RuntimeError):
    pass


class NotASubgroupError(ValueError):
    pass


def group_cap() -> int:
    return int(os.environ.get("MACKEY_KIT_CAP", DEFAULT_CAP))


class Permutation:
    """A bijection of {0..n-1}; ``(p * q)(i) == p(q(i))``."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree, *cycles):
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        im = self.images
        return Permutation(im[j] for j in other.images)

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def cycles(self):
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def _compose(p, q):
    return tuple(p[j] for j in q)


class PermGroup:
    """A finite permutation group with all elements enumerated."""

    def __init__(self, degree, generators, elements):
        self.degree = degree
        self.generators = list(generators)
        self._tuples = elements
        self.index = {t: i for i, t in enumerate(elements)}
        self._mul = None

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    @property
    def order(self):
        return len(self._tuples)

    def __len__(self):
        return len(self._tuples)

    @cached_property
    def elements(self):
        return [Permutation(t) for t in self._tuples]

    def element(self, i) -> Permutation:
        return Permutation(self._tuples[i])

    def images(self, i):
        return self._tuples[i]

    def index_of(self, perm) -> int:
        t = perm.images if isinstance(perm, Permutation) else tuple(perm)
        return self.index[t]

    # -- arithmetic on indices -------------------------------------------
    def _table(self):
        if self._mul is None and self.order <= 2048:
            idx, els = self.index, self._tuples
            self._mul = [[idx[_compose(a, b)] for b in els] for a in els]
        return self._mul

    def mul(self, i, j):
        t = self._table()
        if t is not None:
            return t[i][j]
        return self.index[_compose(self._tuples[i], self._tuples[j])]

    @cached_property
    def _inv(self):
        out = [0] * self.order
        for i, t in enumerate(self._tuples):
            inv = [0] * self.degree
            for a, b in enumerate(t):
                inv[b] = a
            out[i] = self.index[tuple(inv)]
        return out

    def inv(self, i):
        return self._inv[i]

    def conj(self, g, h):
        """g h g^-1."""
        return self.mul(self.mul(g, h), self._inv[g])

    def element_order(self, i):
        n, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            n += 1
        return n

    # -- subgroups -------------------------------------------------------
    @cached_property
    def whole(self) -> frozenset:
        return frozenset(range(self.order))

    @cached_property
    def trivial(self) -> frozenset:
        return frozenset([0])

    def closure(self, gens, start=frozenset([0])) -> frozenset:
        """Smallest subgroup containing ``start`` (already a subgroup) and ``gens``."""
        elems = set(start)
        gens = [g for g in gens if g not in elems] or []
        if not gens:
            return frozenset(elems)
        allgens = list(gens) + list(start)
        queue = deque(elems)
        while queue:
            x = queue.popleft()
            for s in allgens:
                y = self.mul(x, s)
                if y not in elems:
                    elems.add(y)
                    queue.append(y)
        return frozenset(elems)

    def is_subgroup(self, H) -> bool:
        H = frozenset(H)
        if 0 not in H or not H <= self.whole:
            return False
        return all(self.mul(a, b) in H for a in H for b in H)

    def check_subgroup(self, H) -> frozenset:
        H = frozenset(H)
        if not self.is_subgroup(H):
            raise NotASubgroupError("input is not a subgroup")
        return H

    def subgroup_from_perms(self, perms) -> frozenset:
        return self.closure([self.index_of(p) for p in perms])

    def conjugate(self, H, g) -> frozenset:
        return frozenset(self.conj(g, h) for h in H)

    def as_group(self, H) -> PermGroup:
        """Return the subgroup H as a standalone PermGroup on the same points."""
        els = sorted(self._tuples[h] for h in H)
        gens = [Permutation(t) for t in _small_generating_set(self, H)]
        return PermGroup(self.degree, gens, els)

    def left_coset(self, x, K) -> frozenset:
        return frozenset(self.mul(x, k) for k in K)

    def coset_reps(self, K):
        """Minimal representatives of left cosets xK, sorted."""
        seen, reps = set(), []
        for x in range(self.order):
            if x in seen:
                continue
            reps.append(x)
            seen.update(self.mul(x, k) for k in K)
        return reps

    def to_json(self):
        return {"degree": self.degree,
                "generators": [list(g.images) for g in self.generators]}


def _small_generating_set(G, H):
    gens, cur = [], frozenset([0])
    for h in sorted(H):
        if h not in cur:
            gens.append(G.images(h))
            cur = G.closure([G.index_of(Permutation(t)) for t in gens])
    return gens


def group_from_generators(degree, gens, cap=None) -> PermGroup:
    """Enumerate the group generated by ``gens`` by breadth-first products."""
    cap = group_cap() if cap is None else cap
    gens = [g if isinstance(g, Permutation) else Permutation(g) for g in gens]
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    gt = [g.images for g in gens]
    while queue:
        x = queue.popleft()
        for s in gt:
            y = _compose(x, s)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupSizeError(f"group order exceeds cap {cap}")
                queue.append(y)
    return PermGroup(degree, gens, sorted(seen))


# ---------------------------------------------------------------------------
# element and subgroup classes


def conjugacy_classes(G: PermGroup):
    """Element conjugacy classes as sorted lists of indices, ordered by min element."""
    seen, out = set(), []
    for x in range(G.order):
        if x in seen:
            continue
        cls = sorted({G.conj(g, x) for g in range(G.order)})
        seen.update(cls)
        out.append(cls)
    return out


def double_cosets(G: PermGroup, S, K):
    """Double cosets S g K as ``(minimal representative, size)`` pairs, sorted."""
    S, K = G.check_subgroup(S), G.check_subgroup(K)
    seen, out = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        dc = {G.mul(G.mul(s, g), k) for s in S for k in K}
        seen |= dc
        out.append((g, len(dc)))
    return out


def normalizer(G: PermGroup, H) -> frozenset:
    H = G.check_subgroup(H)
    return frozenset(g for g in range(G.order) if G.conjugate(H, g) == H)


@dataclass(frozen=True)
class WeylGroup:
    base: PermGroup
    subgroup: frozenset
    normalizer: frozenset
    quotient: PermGroup
    coset_reps: tuple

    @property
    def order(self):
        return self.quotient.order


def weyl_group(G: PermGroup, H) -> WeylGroup:
    """N_G(H)/H realised as a permutation group on the cosets nH."""
    H = G.check_subgroup(H)
    N = normalizer(G, H)
    reps = [r for r in G.coset_reps(H) if r in N]
    pos = {}
    for i, r in enumerate(reps):
        for h in H:
            pos[G.mul(r, h)] = i
    gens = []
    for n in sorted(N):
        gens.append(Permutation([pos[G.mul(n, r)] for r in reps]))
    Q = group_from_generators(len(reps), gens)
    return WeylGroup(G, H, N, Q, tuple(reps))


@dataclass
class SubgroupClass:
    rep: frozenset
    conjugates: list
    normalizer_order: int

    @property
    def order(self):
        return len(self.rep)

    @property
    def size(self):
        return len(self.conjugates)


@dataclass(eq=False)
class SubgroupClassTable:
    """Subgroups up to conjugacy, sorted by (order, sorted representative)."""

    group: PermGroup
    classes: list
    lookup: dict = field(repr=False)
    subconjugate: list = field(repr=False)

    def __len__(self):
        return len(self.classes)

    def __getitem__(self, i) -> SubgroupClass:
        return self.classes[i]

    def class_of(self, H) -> int:
        return self.lookup[frozenset(H)]

    def reps(self):
        return [c.rep for c in self.classes]

    @cached_property
    def all_subgroups(self):
        return [H for c in self.classes for H in c.conjugates]

    def label(self, i):
        return subgroup_label(self.group, self.classes[i].rep)

    def labels(self):
        return [self.label(i) for i in range(len(self))]

    def index_by_label(self, name):
        labels = self.labels()
        if labels.count(name) != 1:
            raise KeyError(name)
        return labels.index(name)


def _cyclic_subgroups(G):
    seen, out = set(), []
    for x in range(G.order):
        C = G.closure([x])
        if C not in seen:
            seen.add(C)
            out.append(C)
    return out


def all_subgroups(G: PermGroup, cap=None):
    """Every subgroup of G, found by repeatedly adjoining cyclic subgroups."""
    cap = group_cap() if cap is None else cap
    if G.order > cap:
        raise GroupSizeError(f"group order {G.order} exceeds cap {cap}")
    cyclic = _cyclic_subgroups(G)
    gens_of = {C: min(x for x in C if G.closure([x]) == C) for C in cyclic}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = G.closure([gens_of[C]], start=H)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return found


def enumerate_subgroup_classes(G: PermGroup, cap=None) -> SubgroupClassTable:
    subs = all_subgroups(G, cap)
    remaining = set(subs)
    classes = []
    while remaining:
        H = next(iter(remaining))
        conj = {G.conjugate(H, g) for g in range(G.order)}
        remaining -= conj
        ordered = sorted(conj, key=sorted)
        classes.append(SubgroupClass(ordered[0], ordered,
                                     G.order // len(conj)))
    classes.sort(key=lambda c: (len(c.rep), sorted(c.rep)))
    lookup = {H: i for i, c in enumerate(classes) for H in c.conjugates}
    n = len(classes)
    sub = [[False] * n for _ in range(n)]
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            if len(cj.rep) % len(ci.rep) == 0:
                sub[i][j] = any(ci.rep <= K for K in cj.conjugates)
    return SubgroupClassTable(G, classes, lookup, sub)


def subgroup_label(G: PermGroup, H) -> str:
    """Best-effort isomorphism-type name (e, Cn, V4, Sn, Dn, A4, A5)."""
    n = len(H)
    if n == 1:
        return "e"
    orders = [G.element_order(h) for h in H]
    if max(orders) == n:
        return f"C{n}"
    abelian = all(G.mul(a, b) == G.mul(b, a) for a in H for b in H)
    if n == 4 and abelian:
        return "V4"
    if abelian:
        return f"Ab{n}"
    if n == 6:
        return "S3"
    if n % 2 == 0 and max(orders) == n // 2 and sum(o == 2 for o in orders) >= n // 2:
        return f"D{n // 2}"
    if n == 12 and 6 not in orders and sorted(set(orders)) == [1, 2, 3]:
        return "A4"
    if n == 24 and sorted(set(orders)) == [1, 2, 3, 4]:
        return "S4"
    if n == 60 and sorted(set(orders)) == [1, 2, 3, 5]:
        return "A5"
    if n == 8 and sum(o == 2 for o in orders) == 1:
        return "Q8"
    return f"G{n}"


# ---------------------------------------------------------------------------
# named groups and JSON


def cyclic(n):
    if n == 1:
        return group_from_generators(1, [])
    return group_from_generators(n, [Permutation([(i + 1) % n for i in range(n)])])


def dihedral(n):
    """Symmetries of an n-gon, order 2n."""
    r = Permutation([(i + 1) % n for i in range(n)])
    s = Permutation([(-i) % n for i in range(n)])
    return group_from_generators(n, [r, s])


def symmetric(n):
    if n == 1:
        return group_from_generators(1, [])
    gens = [Permutation.from_cycles(n, tuple(range(n)))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, (0, 1)))
    return group_from_generators(n, gens)


def alternating(n):
    gens = [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return group_from_generators(n, gens)


def quaternion():
    i = Permutation.from_cycles(8, (0, 2, 1, 3), (4, 6, 5, 7))
    j = Permutation.from_cycles(8, (0, 4, 1, 5), (2, 7, 3, 6))
    return group_from_generators(8, [i, j])


NAMED_GROUPS = {
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C5": lambda: cyclic(5),
    "C6": lambda: cyclic(6),
    "V4": lambda: group_from_generators(4, [Permutation.from_cycles(4, (0, 1), (2, 3)),
                                            Permutation.from_cycles(4, (0, 2), (1, 3))]),
    "C2xC2xC2": lambda: group_from_generators(6, [Permutation.from_cycles(6, (0, 1)),
                                                  Permutation.from_cycles(6, (2, 3)),
                                                  Permutation.from_cycles(6, (4, 5))]),
    "S3": lambda: symmetric(3),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
    "D5": lambda: dihedral(5),
    "D6": lambda: dihedral(6),
    "A4": lambda: alternating(4),
    "S4": lambda: symmetric(4),
    "A5": lambda: group_from_generators(5, [Permutation.from_cycles(5, (0, 1, 2, 3, 4)),
                                            Permutation.from_cycles(5, (0, 1, 2))]),
}


def named_group(name) -> PermGroup:
    try:
        return NAMED_GROUPS[name]()
    except KeyError:
        raise KeyError(f"unknown group {name!r}; known: {sorted(NAMED_GROUPS)}") from None


def group_from_json(data) -> PermGroup:
    if isinstance(data, str):
        if data in NAMED_GROUPS:
            return named_group(data)
        data = json.loads(data)
    return group_from_generators(int(data["degree"]),
                                 [Permutation(g) for g in data["generators"]])


def brute_force_subgroups(G: PermGroup):
    """Independent oracle: close all <=2-element generating sets, then join pairs until stable."""
    found = {G.closure([a, b]) for a, b in combinations(range(G.order), 2)}
    found |= {G.closure([a]) for a in range(G.order)}
    changed = True
    while changed:
        changed = False
        for A, B in combinations(list(found), 2):
            if A <= B or B <= A:
                continue
            J = G.closure(B, start=A)
            if J not in found:
                found.add(J)
                changed = True
    return found


def extend_action(G: PermGroup, gen_images, npoints=None):
    """Images of every element under the action defined on G's generators.

    ``gen_images[i]`` is the point permutation assigned to ``G.generators[i]``.
    Raises ValueError if the assignment is not a homomorphism.
    """
    if len(gen_images) != len(G.generators):
        raise ValueError("need one image per generator")
    gidx = [G.index_of(s) for s in G.generators]
    gim = [tuple(im) for im in gen_images]
    npts = len(gim[0]) if gim else npoints
    if npts is None:
        raise ValueError("cannot infer the number of points for a generator-free group")
    if any(sorted(p) != list(range(npts)) for p in gim):
        raise ValueError("generator images must be permutations of the same point set")
    out = {0: tuple(range(npts))}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        px = out[x]
        for s, ps in zip(gidx, gim):
            y = G.mul(x, s)
            py = tuple(px[j] for j in ps)
            if y in out:
                if out[y] != py:
                    raise ValueError("generator images do not define an action")
            else:
                out[y] = py
                queue.append(y)
    return [out[i] for i in range(G.order)]
