"""Finite G-sets, marks and the Burnside ring."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .permgrp import PermGroup, SubgroupClassTable, enumerate_subgroup_classes, extend_action


class NotEquivariantError(ValueError):
    pass


class GSet:
    """A finite set {0..n-1} with a G-action stored for every group element.

    ``act[g][p]`` is the image of point ``p`` under element index ``g``.
    """

    def __init__(self, group: PermGroup, act, labels=None):
        self.group = group
        self.act = [tuple(a) for a in act]
        self.size = len(self.act[0]) if self.act else 0
        self.labels = labels

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"GSet(|G|={self.group.order}, points={self.size})"

    @classmethod
    def from_generator_action(cls, group, gen_images, npoints=None):
        return cls(group, extend_action(group, gen_images, npoints))

    def to_json(self, group_ref):
        gidx = [self.group.index_of(s) for s in self.group.generators]
        return {"group": group_ref, "points": self.size,
                "action": [list(self.act[g]) for g in gidx]}

    def stabilizer(self, p) -> frozenset:
        return frozenset(g for g in range(self.group.order) if self.act[g][p] == p)

    def orbits(self):
        seen, out = set(), []
        for p in range(self.size):
            if p in seen:
                continue
            orb = sorted({a[p] for a in self.act})
            seen.update(orb)
            out.append(orb)
        return out

    def orbit_decomposition(self, table: SubgroupClassTable):
        """List of (orbit, stabilizer class index) pairs."""
        return [(orb, table.class_of(self.stabilizer(orb[0]))) for orb in self.orbits()]

    def burnside_class(self, table) -> BurnsideElement:
        coeffs = [0] * len(table)
        for _, c in self.orbit_decomposition(table):
            coeffs[c] += 1
        return BurnsideElement(table, tuple(coeffs))

    def is_equivariant(self, other, f):
        return all(f[a[p]] == b[f[p]] for a, b in zip(self.act, other.act)
                   for p in range(self.size))


def coset_gset(G: PermGroup, H) -> GSet:
    """G/H with points the left cosets xH ordered by minimal representative."""
    H = G.check_subgroup(H)
    reps = G.coset_reps(H)
    pos = {}
    for i, r in enumerate(reps):
        for h in H:
            pos[G.mul(r, h)] = i
    act = [tuple(pos[G.mul(g, r)] for r in reps) for g in range(G.order)]
    return GSet(G, act, labels=reps)


def fixed_points(X: GSet, H):
    return [p for p in range(X.size) if all(X.act[h][p] == p for h in H)]


def product(X: GSet, Y: GSet) -> GSet:
    n = Y.size
    act = [tuple(a[i] * n + b[j] for i in range(X.size) for j in range(n))
           for a, b in zip(X.act, Y.act)]
    return GSet(X.group, act)


@dataclass
class Pullback:
    gset: GSet
    points: list  # (x, y) pairs
    left: list    # projection to X
    right: list   # projection to Y


def pullback(X: GSet, Y: GSet, Z: GSet, f, g) -> Pullback:
    """Fibre product X x_Z Y = {(x, y) : f(x) = g(y)} with the diagonal action."""
    if not X.is_equivariant(Z, f) or not Y.is_equivariant(Z, g):
        raise NotEquivariantError("pullback maps must be G-equivariant")
    pts = [(x, y) for x in range(X.size) for y in range(Y.size) if f[x] == g[y]]
    pos = {p: i for i, p in enumerate(pts)}
    if pts:
        act = [tuple(pos[(a[x], b[y])] for x, y in pts) for a, b in zip(X.act, Y.act)]
    else:
        act = [() for _ in X.act]
    P = GSet(X.group, act)
    return Pullback(P, pts, [x for x, _ in pts], [y for _, y in pts])


def table_of_marks(G: PermGroup, table: SubgroupClassTable | None = None):
    """m[i][j] = |(G/K_j)^{H_i}| over subgroup classes in table order."""
    table = table or enumerate_subgroup_classes(G)
    n = len(table)
    m = [[0] * n for _ in range(n)]
    for j, cj in enumerate(table.classes):
        # xK is H-fixed iff H <= xKx^-1; count cosets through the conjugates
        cosets_per_conj = cj.normalizer_order // cj.order
        for i, ci in enumerate(table.classes):
            m[i][j] = sum(ci.rep <= K for K in cj.conjugates) * cosets_per_conj
    return m


class BurnsideElement:
    """Integer combination of transitive G-sets [G/H], indexed by subgroup class."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: SubgroupClassTable, coeffs):
        self.table = table
        self.coeffs = tuple(int(c) for c in coeffs)
        if len(self.coeffs) != len(table):
            raise ValueError("coefficient vector has the wrong length")

    @classmethod
    def basis(cls, table, i):
        return cls(table, [int(j == i) for j in range(len(table))])

    @classmethod
    def one(cls, table):
        return cls.basis(table, len(table) - 1)

    def _same(self, other):
        if other.table is not self.table:
            raise ValueError("Burnside elements of different groups")

    def __add__(self, other):
        self._same(other)
        return BurnsideElement(self.table, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        return BurnsideElement(self.table, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BurnsideElement(self.table, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(self.table, [other * a for a in self.coeffs])
        return burnside_multiply(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, BurnsideElement) and other.table is self.table \
            and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def marks(self, m=None):
        m = m or _marks(self.table)
        return [sum(m[i][j] * c for j, c in enumerate(self.coeffs)) for i in range(len(m))]

    def __repr__(self):
        labels = self.table.labels()
        terms = [f"{c}[G/{labels[i]}]" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


@lru_cache(maxsize=None)
def _marks(table):
    return table_of_marks(table.group, table)


@lru_cache(maxsize=None)
def _basis_product(table, i, j):
    G = table.group
    X = product(coset_gset(G, table[i].rep), coset_gset(G, table[j].rep))
    return X.burnside_class(table).coeffs


def burnside_multiply(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Product via explicit G-set products and orbit decomposition."""
    a._same(b)
    T = a.table
    out = [0] * len(T)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if not y:
                continue
            for k, z in enumerate(_basis_product(T, i, j)):
                out[k] += x * y * z
    return BurnsideElement(T, out)


def from_marks(table, marks) -> BurnsideElement:
    """Recover coefficients from a mark vector (the table of marks is triangular)."""
    m = _marks(table)
    n = len(m)
    coeffs = [0] * n
    for j in reversed(range(n)):
        rest = marks[j] - sum(m[j][k] * coeffs[k] for k in range(j + 1, n))
        if rest % m[j][j]:
            raise ValueError("not the mark vector of a virtual G-set")
        coeffs[j] = rest // m[j][j]
    return BurnsideElement(table, coeffs)


def multiply_via_marks(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Product through the mark homomorphism (pointwise product of marks)."""
    return from_marks(a.table, [x * y for x, y in zip(a.marks(), b.marks())])
