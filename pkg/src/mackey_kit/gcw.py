"""Two-dimensional G-complexes: regular cell complexes, simplicial complexes,
barycentric subdivision, fixed subcomplexes, homology and Bredon chains."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import intlinalg as ila
from .catmod import ChainComplex, FreeModule, ModMorphism, tensor_over_category
from .orbitmackey import Family, OrbitCategory, constant_module
from .permgrp import PermGroup, extend_action


class ComplexError(ValueError):
    pass


def _perm_sign(seq):
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# homology


@dataclass
class Homology:
    """Integral homology of a finite complex.

    ``groups[n]`` is ``(free rank, torsion factors)``. For the empty complex
    ``empty`` is set and ``reduced`` is None: the empty set is kept apart
    from acyclic complexes.
    """

    groups: list
    reduced: list | None
    empty: bool = False

    @property
    def acyclic(self):
        return not self.empty and all(r == 0 and not t for r, t in self.reduced)

    def betti(self):
        return [r for r, _ in self.groups]

    def to_dict(self):
        return {"empty": self.empty,
                "homology": [[r, t] for r, t in self.groups],
                "reduced": None if self.reduced is None else [[r, t] for r, t in self.reduced]}


def chain_homology(dims, boundaries):
    """Homology from dims[n] and boundary matrices boundaries[n]: C_n -> C_{n-1}."""
    out = []
    for n, dim in enumerate(dims):
        if dim == 0:
            out.append((0, []))
            continue
        d_out = boundaries[n] if n >= 1 else None
        d_in = boundaries[n + 1] if n + 1 < len(dims) else None
        r_out = ila.rank(d_out, dim) if d_out is not None and d_out.nrows else 0
        inv = ila.invariant_factors(d_in, dims[n + 1]) if d_in is not None and dims[n + 1] else []
        out.append((dim - r_out - len(inv), [x for x in inv if x > 1]))
    return out


def _reduce(groups):
    red = [list(g) for g in groups]
    red[0] = [red[0][0] - 1, red[0][1]]
    return [tuple(g) for g in red]


# ---------------------------------------------------------------------------
# regular cell complexes


class RegularGCW:
    """Regular 2-complex with a G-action through its vertices.

    Edges are vertex pairs, 2-cells are cyclic vertex walks; a 2-cell is
    identified by its set of edges. ``vertex_action[g]`` is the vertex
    permutation of element g.
    """

    def __init__(self, group: PermGroup | None, nvertices, edges, faces, vertex_action=None):
        self.group = group
        self.nvertices = nvertices
        if vertex_action is None:
            vertex_action = [tuple(range(nvertices))]
        self.vertex_action = [tuple(a) for a in vertex_action]
        self.edges = []
        self.edge_index = {}
        for u, v in edges:
            if u == v:
                raise ComplexError("edge with equal endpoints is not regular")
            key = frozenset((u, v))
            if key in self.edge_index:
                raise ComplexError("repeated edge")
            self.edge_index[key] = len(self.edges)
            self.edges.append(tuple(sorted((u, v))))
        self.faces = []
        self.face_walks = []
        self.face_index = {}
        for walk in faces:
            walk = tuple(walk)
            if len(set(walk)) != len(walk) or len(walk) < 3:
                raise ComplexError("2-cell boundary must be an embedded closed walk")
            es = frozenset(self.edge_index[frozenset((walk[i], walk[(i + 1) % len(walk)]))]
                           for i in range(len(walk)))
            if es in self.face_index:
                raise ComplexError("repeated 2-cell")
            self.face_index[es] = len(self.faces)
            self.faces.append(es)
            self.face_walks.append(walk)
        self._check_action()

    def _check_action(self):
        for a in self.vertex_action:
            for u, v in self.edges:
                if frozenset((a[u], a[v])) not in self.edge_index:
                    raise ComplexError("action does not preserve the edge set")
            for es in self.faces:
                if self._move_face(a, es) not in self.face_index:
                    raise ComplexError("action does not preserve the 2-cells")

    def _move_face(self, a, es):
        return frozenset(self.edge_index[frozenset(a[x] for x in self.edges[e])] for e in es)

    def counts(self):
        return (self.nvertices, len(self.edges), len(self.faces))

    def euler_characteristic(self):
        v, e, f = self.counts()
        return v - e + f

    def boundary_matrices(self):
        d1 = ila.SparseMatrix(self.nvertices, len(self.edges))
        for j, (u, v) in enumerate(self.edges):
            d1.add(v, j, 1)
            d1.add(u, j, -1)
        d2 = ila.SparseMatrix(len(self.edges), len(self.faces))
        for j, walk in enumerate(self.face_walks):
            for i in range(len(walk)):
                u, v = walk[i], walk[(i + 1) % len(walk)]
                e = self.edge_index[frozenset((u, v))]
                d2.add(e, j, 1 if u < v else -1)
        return d1, d2

    def homology(self) -> Homology:
        if self.nvertices == 0:
            return Homology([(0, []), (0, []), (0, [])], None, empty=True)
        d1, d2 = self.boundary_matrices()
        groups = chain_homology(list(self.counts()), [None, d1, d2])
        return Homology(groups, _reduce(groups))

    def check_boundary(self):
        """d1 d2 = 0 over Z, and each edge meets every face boundary evenly mod 2."""
        d1, d2 = self.boundary_matrices()
        return d1.matmul(d2).is_zero()

    def face_poset(self):
        """Cells as (dim, key) with their facets, in a deterministic order."""
        cells = [(0, (v,)) for v in range(self.nvertices)]
        cells += [(1, e) for e in self.edges]
        cells += [(2, tuple(sorted(es))) for es in self.faces]
        facets = {}
        for v in range(self.nvertices):
            facets[(0, (v,))] = []
        for e in self.edges:
            facets[(1, e)] = [(0, (e[0],)), (0, (e[1],))]
        for es in self.faces:
            facets[(2, tuple(sorted(es)))] = [(1, self.edges[e]) for e in sorted(es)]

        def move(a, cell):
            d, key = cell
            if d == 0:
                return (0, (a[key[0]],))
            if d == 1:
                return (1, tuple(sorted(a[x] for x in key)))
            return (2, tuple(sorted(self._move_face(a, frozenset(key)))))
        return cells, facets, move

    def pentagon_edge_incidence(self):
        """Number of 2-cells containing each edge."""
        inc = [0] * len(self.edges)
        for es in self.faces:
            for e in es:
                inc[e] += 1
        return inc


# ---------------------------------------------------------------------------
# simplicial complexes


class SimpGComplex:
    """Simplicial complex (dimension <= 2) on vertices 0..n-1 with a G-action.

    ``act[g]`` is the vertex permutation of element index g; with no group
    the action is trivial. Simplices are sorted vertex tuples, closed under
    faces.
    """

    def __init__(self, nvertices, simplices, group: PermGroup | None = None, act=None,
                 vertex_labels=None):
        self.nvertices = nvertices
        self.group = group
        self.act = [tuple(a) for a in act] if act is not None else [tuple(range(nvertices))]
        self.vertex_labels = vertex_labels
        by_dim = [set() for _ in range(3)]
        for s in simplices:
            s = tuple(sorted(s))
            if not s:
                continue
            if len(set(s)) != len(s) or len(s) > 3:
                raise ComplexError("bad simplex %r" % (s,))
            for k in range(1, len(s) + 1):
                for f in itertools.combinations(s, k):
                    by_dim[k - 1].add(f)
        for v in range(nvertices):
            by_dim[0].add((v,))
        self.simplices = [sorted(d) for d in by_dim]
        self.index = [{s: i for i, s in enumerate(d)} for d in self.simplices]
        for a in self.act:
            for d in self.simplices:
                for s in d:
                    if tuple(sorted(a[v] for v in s)) not in self.index[len(s) - 1]:
                        raise ComplexError("action does not preserve simplices")

    def counts(self):
        return tuple(len(d) for d in self.simplices)

    def euler_characteristic(self):
        return sum((-1) ** n * c for n, c in enumerate(self.counts()))

    @property
    def dimension(self):
        for n in (2, 1, 0):
            if self.simplices[n]:
                return n
        return -1

    def move(self, g, s):
        a = self.act[g]
        return tuple(sorted(a[v] for v in s))

    def is_admissible(self):
        """Every element mapping a simplex to itself fixes it pointwise."""
        for a in self.act:
            for d in self.simplices[1:]:
                for s in d:
                    img = [a[v] for v in s]
                    if sorted(img) == list(s) and img != list(s):
                        return False
        return True

    def stabilizer(self, s) -> frozenset:
        return frozenset(g for g, a in enumerate(self.act)
                         if all(a[v] == v for v in s))

    def orbits(self, n):
        seen, out = set(), []
        for s in self.simplices[n]:
            if s in seen:
                continue
            orb = sorted({self.move(g, s) for g in range(len(self.act))})
            seen.update(orb)
            out.append(orb)
        return out

    def boundary_matrix(self, n):
        rows = len(self.simplices[n - 1])
        d = ila.SparseMatrix(rows, len(self.simplices[n]))
        idx = self.index[n - 1]
        for j, s in enumerate(self.simplices[n]):
            for k in range(len(s)):
                d.add(idx[s[:k] + s[k + 1:]], j, (-1) ** k)
        return d

    def homology(self) -> Homology:
        if self.nvertices == 0:
            return Homology([(0, []), (0, []), (0, [])], None, empty=True)
        dims = list(self.counts())
        groups = chain_homology(dims, [None, self.boundary_matrix(1), self.boundary_matrix(2)])
        return Homology(groups, _reduce(groups))

    def face_poset(self):
        cells = [(len(s) - 1, s) for d in self.simplices for s in d]
        facets = {(len(s) - 1, s): [(len(s) - 2, s[:k] + s[k + 1:]) for k in range(len(s))]
                  if len(s) > 1 else [] for d in self.simplices for s in d}

        def move(a, cell):
            return (cell[0], tuple(sorted(a[v] for v in cell[1])))
        return cells, facets, move

    def to_json(self):
        if self.group is None:
            action = []
        else:
            gidx = [self.group.index_of(s) for s in self.group.generators]
            action = [list(self.act[g]) for g in gidx]
        return {"vertices": self.nvertices, "action": action,
                "simplices": [list(s) for d in self.simplices for s in d if len(s) > 1]}

    @classmethod
    def from_json(cls, data, group: PermGroup | None = None):
        n = data["vertices"]
        act = None
        if group is not None:
            act = extend_action(group, [tuple(x) for x in data["action"]], n)
        elif data.get("action"):
            raise ComplexError("action given but no group")
        return cls(n, [tuple(s) for s in data["simplices"]], group, act)


def fixed_subcomplex(X: SimpGComplex, H) -> SimpGComplex:
    """Subcomplex of simplices whose vertices are all fixed by H (trivial action)."""
    if not X.is_admissible():
        raise ComplexError("fixed subcomplex needs an admissible action")
    fixed = [v for v in range(X.nvertices) if all(X.act[h][v] == v for h in H)]
    pos = {v: i for i, v in enumerate(fixed)}
    simp = [tuple(pos[v] for v in s) for d in X.simplices for s in d
            if all(v in pos for v in s)]
    return SimpGComplex(len(fixed), simp, vertex_labels=fixed)


def barycentric_subdivision(X) -> SimpGComplex:
    """Vertices are the cells of X, simplices the chains of the face order."""
    cells, facets, move = X.face_poset()
    cells = sorted(cells)
    pos = {c: i for i, c in enumerate(cells)}
    below = {}
    for c in cells:
        acc = set()
        for f in facets[c]:
            acc.add(f)
            acc |= below[f]
        below[c] = acc
    simplices = []
    for c in cells:
        simplices.append((pos[c],))
        for b in below[c]:
            simplices.append((pos[b], pos[c]))
            for a in below[b]:
                simplices.append((pos[a], pos[b], pos[c]))
    act = [tuple(pos[move(a, c)] for c in cells) for a in _vertex_actions(X)]
    return SimpGComplex(len(cells), simplices, X.group, act, vertex_labels=cells)


def _vertex_actions(X):
    return X.vertex_action if isinstance(X, RegularGCW) else X.act


# ---------------------------------------------------------------------------
# Bredon chains


@dataclass
class BredonComplex:
    complex: ChainComplex
    space: SimpGComplex
    family: Family
    reps: list                 # per degree: orbit representative simplices
    classes: list              # per degree: stabilizer class per summand
    orbit_sizes: list = field(default_factory=list)

    def summand_labels(self, n):
        t = self.family.table
        return sorted(t.label(c) for c in self.classes[n])

    def evaluate(self, n, a):
        return self.complex.d(n).evaluate(a)


def bredon_complex(X: SimpGComplex, orbit: OrbitCategory) -> BredonComplex:
    """Augmented cellular chain complex of X as free modules over the orbit category."""
    if X.group is None:
        raise ComplexError("bredon complex needs a group action")
    if not X.is_admissible():
        raise ComplexError("bredon complex needs an admissible action")
    fam, table, G = orbit.family, orbit.table, orbit.group
    reps, classes, sizes = [], [], []
    for n in range(X.dimension + 1):
        rs, cs, ss = [], [], []
        for orb in X.orbits(n):
            stab = X.stabilizer(orb[0])
            c = table.class_of(stab)
            if c not in fam:
                raise ComplexError(f"stabilizer class {table.label(c)} outside the family")
            R = table[c].rep
            rep = min(s for s in orb if X.stabilizer(s) == R)
            rs.append(rep)
            cs.append(c)
            ss.append(len(orb))
        order = sorted(range(len(rs)), key=lambda i: rs[i])
        reps.append([rs[i] for i in order])
        classes.append([cs[i] for i in order])
        sizes.append([ss[i] for i in order])
    mods = [FreeModule(orbit, cs) for cs in classes]
    # locate every simplex as x . rep with the orientation sign of the transport
    where = []
    for n, rs in enumerate(reps):
        w = {}
        for i, r in enumerate(rs):
            for g in range(G.order):
                img = tuple(X.act[g][v] for v in r)
                key = tuple(sorted(img))
                if key not in w:
                    w[key] = (i, g, _perm_sign(img))
        where.append(w)
    diffs = []
    for n in range(1, len(reps)):
        ent = {}
        for j, s in enumerate(reps[n]):
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                i, g, sign = where[n - 1][face]
                cj, ci = classes[n][j], classes[n - 1][i]
                lab = orbit.coset_min(ci)[g]
                idx = orbit.hom_index(cj, ci, lab)
                e = ent.setdefault((i, j), {})
                e[idx] = e.get(idx, 0) + (-1) ** k * sign
        diffs.append(ModMorphism(mods[n], mods[n - 1], ent))
    Z = constant_module(orbit)
    aug = ModMorphism(mods[0], Z, {(0, j): {0: 1} for j in range(len(reps[0]))})
    return BredonComplex(ChainComplex(mods, diffs, aug), X, fam, reps, classes, sizes)


def is_resolution_of_Z(B: BredonComplex, cancel=None):
    return B.complex.is_exact(cancel=cancel)


def bredon_homology_with_coeffs(B: BredonComplex, L, cancel=None):
    """Homology of C_*(X^-) tensored over the orbit category with covariant L."""
    C = B.complex
    return [tensor_over_category(C, L, n, cancel) for n in range(len(C.modules))]


def evaluation_matches_fixed_points(B: BredonComplex, a):
    """Compare unaugmented homology at G/H with that of the H-fixed subcomplex."""
    C = B.complex
    orbit = C.category
    H = orbit.rep(a)
    fixed = fixed_subcomplex(B.space, H).homology()
    dims = [C.dim(n, a) for n in range(len(C.modules))]
    bd = [None] + [C.d(n).evaluate(a) for n in range(1, len(C.modules))]
    ours = chain_homology(dims, bd)
    theirs = fixed.groups[:len(ours)]
    return ours == theirs, ours, theirs


def point_complex(group: PermGroup | None = None):
    act = [(0,)] * group.order if group is not None else None
    return SimpGComplex(1, [(0,)], group, act)
