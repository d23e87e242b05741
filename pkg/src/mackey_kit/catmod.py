"""Finitely presented additive categories and modules over them.

A category hands out finite hom bases and composes basis morphisms into
integer combinations. Morphism *elements* are sparse dicts
``{basis index: coefficient}``. Right modules (contravariant functors) are
the default; covariant modules are only needed as tensor coefficients.

Every exactness, splitting and Ext computation goes through objectwise
integer matrices and the routines in :mod:`mackey_kit.intlinalg`.
"""
from __future__ import annotations

import itertools
import json
import random

from . import intlinalg as ila
from .intlinalg import SparseMatrix, Lattice


def add_into(acc, vec, scale=1):
    for k, v in vec.items():
        nv = acc.get(k, 0) + scale * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


# ---------------------------------------------------------------------------
# categories


class AddCategory:
    """Base class: subclasses provide ``hom_labels``, ``identity``, ``_compose``.

    ``objects`` are the objects modules are evaluated at; homs and
    composition may also be asked of *ambient* objects outside that list
    (used for restricted representables such as the constant functor).
    """

    objects: list

    def __init__(self):
        self._comp_cache = {}

    def hom_labels(self, a, b):
        raise NotImplementedError

    def hom_rank(self, a, b):
        return len(self.hom_labels(a, b))

    def identity(self, a) -> int:
        raise NotImplementedError

    def _compose(self, a, b, c, g, f):
        raise NotImplementedError

    def compose(self, a, b, c, g, f):
        """Basis element g: b -> c after f: a -> b, as a dict on Hom(a, c)."""
        key = (a, b, c, g, f)
        out = self._comp_cache.get(key)
        if out is None:
            out = self._compose(a, b, c, g, f)
            self._comp_cache[key] = out
        return out

    def compose_vec(self, a, b, c, gv, fv):
        acc = {}
        for g, x in gv.items():
            for f, y in fv.items():
                add_into(acc, self.compose(a, b, c, g, f), x * y)
        return acc

    def id_vec(self, a):
        return {self.identity(a): 1}

    def object_label(self, a):
        return str(a)

    def to_dict(self):
        """Materialise hom bases and full composition tables over ``objects``."""
        obs = list(self.objects)
        homs = {f"{a},{b}": [_jsonable(l) for l in self.hom_labels(a, b)]
                for a in obs for b in obs}
        comp = {}
        for a, b, c in itertools.product(obs, repeat=3):
            table = []
            for g in range(self.hom_rank(b, c)):
                for f in range(self.hom_rank(a, b)):
                    v = self.compose(a, b, c, g, f)
                    if v:
                        table.append([g, f, sorted(v.items())])
            if table:
                comp[f"{a},{b},{c}"] = table
        return {"objects": obs,
                "object_labels": [self.object_label(a) for a in obs],
                "homs": homs,
                "identities": {str(a): self.identity(a) for a in obs},
                "compose": comp}

    def check_associativity(self, samples=None, rng=None):
        """Check (h g) f == h (g f) on all or on ``samples`` random basis triples."""
        obs = list(self.objects)
        rng = rng or random.Random(0)
        quads = [q for q in itertools.product(obs, repeat=4)]
        if samples is None:
            triples = ((a, b, c, d, h, g, f) for a, b, c, d in quads
                       for h in range(self.hom_rank(c, d))
                       for g in range(self.hom_rank(b, c))
                       for f in range(self.hom_rank(a, b)))
        else:
            def gen():
                n = 0
                while n < samples:
                    a, b, c, d = rng.choice(quads)
                    ranks = (self.hom_rank(c, d), self.hom_rank(b, c), self.hom_rank(a, b))
                    if 0 in ranks:
                        continue
                    n += 1
                    yield (a, b, c, d) + tuple(rng.randrange(r) for r in ranks)
            triples = gen()
        for a, b, c, d, h, g, f in triples:
            left = self.compose_vec(a, b, d, self.compose(b, c, d, h, g), {f: 1})
            right = self.compose_vec(a, c, d, {h: 1}, self.compose(a, b, c, g, f))
            if left != right:
                return False
        return True

    def check_identities(self):
        obs = list(self.objects)
        for a, b in itertools.product(obs, repeat=2):
            for f in range(self.hom_rank(a, b)):
                if self.compose(a, a, b, f, self.identity(a)) != {f: 1}:
                    return False
                if self.compose(a, b, b, self.identity(b), f) != {f: 1}:
                    return False
        return True


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, frozenset):
        return sorted(x)
    return x


class TableCategory(AddCategory):
    """A category given by explicit hom bases and composition tables."""

    def __init__(self, objects, homs, identities, compose, labels=None):
        super().__init__()
        self.objects = list(objects)
        self._homs = homs
        self._ids = identities
        self._table = compose
        self._labels = labels or {a: str(a) for a in self.objects}

    @classmethod
    def from_dict(cls, data):
        obs = list(data["objects"])
        homs = {}
        for key, labels in data["homs"].items():
            a, b = (int(x) for x in key.split(","))
            homs[(a, b)] = [tuple(l) if isinstance(l, list) else l for l in labels]
        ids = {int(k): v for k, v in data["identities"].items()}
        table = {}
        for key, rows in data["compose"].items():
            a, b, c = (int(x) for x in key.split(","))
            for g, f, vec in rows:
                table[(a, b, c, g, f)] = {int(k): int(v) for k, v in vec}
        labels = dict(zip(obs, data.get("object_labels", map(str, obs))))
        return cls(obs, homs, ids, table, labels)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def hom_labels(self, a, b):
        return self._homs.get((a, b), [])

    def identity(self, a):
        return self._ids[a]

    def _compose(self, a, b, c, g, f):
        return dict(self._table.get((a, b, c, g, f), {}))

    def object_label(self, a):
        return self._labels[a]


# ---------------------------------------------------------------------------
# modules


class Module:
    """Right module: ``dim(a)`` and the action ``act(a, b, k): M(b) -> M(a)``."""

    category: AddCategory

    def dim(self, a) -> int:
        raise NotImplementedError

    def act(self, a, b, k) -> SparseMatrix:
        raise NotImplementedError

    def act_vec(self, a, b, k, v):
        """Apply basis morphism k in Hom(a, b) to a dense vector of M(b)."""
        return self.act(a, b, k).apply(v)

    def act_elem(self, a, b, fv):
        """Action of a morphism element as a SparseMatrix."""
        out = SparseMatrix(self.dim(a), self.dim(b))
        for k, x in fv.items():
            M = self.act(a, b, k)
            for i, r in enumerate(M.rows):
                for j, v in r.items():
                    out.add(i, j, x * v)
        return out

    def ranks(self):
        return {a: self.dim(a) for a in self.category.objects}


class FreeModule(Module):
    """Direct sum of representables Z[-, c] over the listed summand objects.

    Summands may be ambient objects outside ``category.objects``; the result
    is then only the restriction of a representable (e.g. the constant
    functor), and ``is_free`` is False.
    """

    def __init__(self, category, summands):
        self.category = category
        self.summands = tuple(summands)
        self._act_cache = {}

    def __repr__(self):
        labels = [self.category.object_label(c) for c in self.summands]
        return "FreeModule(" + " + ".join(labels) + ")"

    def __eq__(self, other):
        return isinstance(other, FreeModule) and other.category is self.category \
            and other.summands == self.summands

    def __hash__(self):
        return hash(self.summands)

    def __len__(self):
        return len(self.summands)

    @property
    def is_free(self):
        obs = set(self.category.objects)
        return all(c in obs for c in self.summands)

    def offsets(self, a):
        out, o = [], 0
        for c in self.summands:
            out.append(o)
            o += self.category.hom_rank(a, c)
        return out

    def dim(self, a):
        return sum(self.category.hom_rank(a, c) for c in self.summands)

    def split(self, a, v):
        """Dense vector of F(a) -> list of hom elements per summand."""
        out = []
        for o, c in zip(self.offsets(a), self.summands):
            r = self.category.hom_rank(a, c)
            out.append({k: v[o + k] for k in range(r) if v[o + k]})
        return out

    def join(self, a, parts):
        v = [0] * self.dim(a)
        for o, part in zip(self.offsets(a), parts):
            for k, x in part.items():
                v[o + k] += x
        return v

    def act(self, a, b, k):
        key = (a, b, k)
        M = self._act_cache.get(key)
        if M is not None:
            return M
        cat = self.category
        M = SparseMatrix(self.dim(a), self.dim(b))
        for oa, ob, c in zip(self.offsets(a), self.offsets(b), self.summands):
            for phi in range(cat.hom_rank(b, c)):
                for t, x in cat.compose(a, b, c, phi, k).items():
                    M.add(oa + t, ob + phi, x)
        self._act_cache[key] = M
        return M

    def __add__(self, other):
        return FreeModule(self.category, self.summands + other.summands)

    def to_dict(self):
        return {"summands": list(self.summands)}


class CovariantFreeModule:
    """Left module: direct sum of corepresentables Z[c, -] (post-composition)."""

    def __init__(self, category, summands):
        self.category = category
        self.summands = tuple(summands)

    def dim(self, a):
        return sum(self.category.hom_rank(c, a) for c in self.summands)

    def act(self, a, b, k):
        """Basis morphism k in Hom(a, b) sends L(a) -> L(b)."""
        cat = self.category
        M = SparseMatrix(self.dim(b), self.dim(a))
        oa = ob = 0
        for c in self.summands:
            ra, rb = cat.hom_rank(c, a), cat.hom_rank(c, b)
            for phi in range(ra):
                for t, x in cat.compose(c, a, b, k, phi).items():
                    M.add(ob + t, oa + phi, x)
            oa += ra
            ob += rb
        return M


class ValuesModule(Module):
    """Module given by explicit dimensions and action matrices on basis morphisms."""

    def __init__(self, category, dims, actions, covariant=False):
        self.category = category
        self.dims = dict(dims)
        self.actions = actions
        self.covariant = covariant

    def dim(self, a):
        return self.dims[a]

    def act(self, a, b, k):
        return self.actions[(a, b, k)]

    @classmethod
    def constant(cls, category, value=1):
        """Constant functor Z on every object, every basis morphism acting by 1."""
        obs = category.objects
        acts = {}
        for a, b in itertools.product(obs, repeat=2):
            for k in range(category.hom_rank(a, b)):
                acts[(a, b, k)] = SparseMatrix(1, 1, [{0: value}])
        return cls(category, {a: 1 for a in obs}, acts)


class SubModule(Module):
    """Submodule of ``parent`` given objectwise by generators of saturated lattices.

    Each value is stored as an echelon basis, so coordinates of a vector in
    the sublattice come from forward substitution on the pivot columns.
    """

    def __init__(self, parent: Module, bases):
        self.parent = parent
        self.category = parent.category
        self.bases, self._rows = {}, {}
        for a in self.category.objects:
            L = Lattice(parent.dim(a))
            for v in bases[a]:
                L.add(v)
            self._rows[a] = [(j, L.rows[j]) for j in sorted(L.rows)]
            self.bases[a] = L.basis()
        self._act_cache = {}

    def dim(self, a):
        return len(self._rows[a])

    def coords(self, a, v):
        """Coordinates of a parent vector lying in the sublattice at a."""
        w = {j: x for j, x in enumerate(v) if x} if not isinstance(v, dict) else dict(v)
        out = []
        for j, row in self._rows[a]:
            x = w.get(j, 0)
            if x % row[j]:
                raise ValueError("vector is not in the sublattice")
            q = x // row[j]
            out.append(q)
            if q:
                add_into(w, row, -q)
        if w:
            raise ValueError("vector is not in the sublattice")
        return out

    def lift(self, a, c):
        v = [0] * self.parent.dim(a)
        for x, (_, row) in zip(c, self._rows[a]):
            if x:
                for j, y in row.items():
                    v[j] += x * y
        return v

    def act_vec(self, a, b, k, v):
        return self.coords(a, self.parent.act_vec(a, b, k, self.lift(b, v)))

    def act(self, a, b, k):
        key = (a, b, k)
        M = self._act_cache.get(key)
        if M is not None:
            return M
        M = SparseMatrix(self.dim(a), self.dim(b))
        for j in range(self.dim(b)):
            e = [0] * self.dim(b)
            e[j] = 1
            for i, x in enumerate(self.act_vec(a, b, k, e)):
                if x:
                    M.rows[i][j] = x
        self._act_cache[key] = M
        return M


class RestrictedModule(Module):
    """Pull back a module along a functor given by a basis map."""

    def __init__(self, module: Module, category, functor):
        self.module = module
        self.category = category
        self.functor = functor

    def dim(self, a):
        return self.module.dim(self.functor.obj(a))

    def act(self, a, b, k):
        F = self.functor
        return self.module.act_elem(F.obj(a), F.obj(b), F.mor(a, b, k))


# ---------------------------------------------------------------------------
# morphisms


class ModMorphism:
    """Map of free modules, entry (i, j) an element of Hom(source_j, target_i).

    By Yoneda the entry is the image of the identity of summand j, read in
    summand i of the target.
    """

    def __init__(self, source: FreeModule, target: FreeModule, entries=None):
        if source.category is not target.category:
            raise ValueError("source and target live over different categories")
        self.source = source
        self.target = target
        self.category = source.category
        self.entries = {}
        for (i, j), v in (entries or {}).items():
            v = {k: x for k, x in v.items() if x}
            if v:
                self.entries[(i, j)] = v
        self._eval = {}

    def __repr__(self):
        return f"ModMorphism({self.source} -> {self.target}, nnz={len(self.entries)})"

    @classmethod
    def identity(cls, F: FreeModule):
        cat = F.category
        return cls(F, F, {(i, i): cat.id_vec(c) for i, c in enumerate(F.summands)})

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {})

    def entry(self, i, j):
        return self.entries.get((i, j), {})

    def evaluate(self, a) -> SparseMatrix:
        M = self._eval.get(a)
        if M is not None:
            return M
        cat = self.category
        src, tgt = self.source, self.target
        so, to = src.offsets(a), tgt.offsets(a)
        M = SparseMatrix(tgt.dim(a), src.dim(a))
        for (i, j), u in self.entries.items():
            cj, ci = src.summands[j], tgt.summands[i]
            for phi in range(cat.hom_rank(a, cj)):
                col = so[j] + phi
                for k, x in u.items():
                    for t, y in cat.compose(a, cj, ci, k, phi).items():
                        M.add(to[i] + t, col, x * y)
        self._eval[a] = M
        return M

    def __matmul__(self, other):
        """self o other."""
        if other.target != self.source:
            raise ValueError("morphisms are not composable")
        cat = self.category
        out = {}
        by_j = {}
        for (j, k), v in other.entries.items():
            by_j.setdefault(j, []).append((k, v))
        for (i, j), u in self.entries.items():
            for k, v in by_j.get(j, []):
                w = cat.compose_vec(other.source.summands[k], self.source.summands[j],
                                    self.target.summands[i], u, v)
                add_into(out.setdefault((i, k), {}), w)
        return ModMorphism(other.source, self.target, out)

    def __add__(self, other):
        out = {k: dict(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            add_into(out.setdefault(k, {}), v)
        return ModMorphism(self.source, self.target, out)

    def __neg__(self):
        return ModMorphism(self.source, self.target,
                           {k: {t: -x for t, x in v.items()} for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, ModMorphism) and self.source == other.source \
            and self.target == other.target and self.entries == other.entries

    def to_dict(self, labels=False):
        cat = self.category
        out = []
        for (i, j), v in sorted(self.entries.items()):
            if labels:
                hl = cat.hom_labels(self.source.summands[j], self.target.summands[i])
                vec = [[_jsonable(hl[k]), x] for k, x in sorted(v.items())]
            else:
                vec = sorted(v.items())
            out.append([i, j, vec])
        return {"source": list(self.source.summands), "target": list(self.target.summands),
                "entries": out}

    @classmethod
    def from_dict(cls, category, data, labels=False):
        src = FreeModule(category, data["source"])
        tgt = FreeModule(category, data["target"])
        entries = {}
        for i, j, vec in data["entries"]:
            if labels:
                hl = category.hom_labels(src.summands[j], tgt.summands[i])
                pos = {_freeze(l): k for k, l in enumerate(hl)}
                entries[(i, j)] = {pos[_freeze(l)]: x for l, x in vec}
            else:
                entries[(i, j)] = {int(k): int(x) for k, x in vec}
        return cls(src, tgt, entries)


def _freeze(x):
    if isinstance(x, (list, tuple)):
        return tuple(_freeze(y) for y in x)
    if isinstance(x, frozenset):
        return tuple(sorted(x))
    return x


class FreeToModule:
    """Map from a free module to an arbitrary module, given by the images of
    the summand generators (Yoneda)."""

    def __init__(self, source: FreeModule, target: Module, images):
        self.source = source
        self.target = target
        self.category = source.category
        self.images = [list(v) for v in images]
        self._eval = {}

    def evaluate(self, a) -> SparseMatrix:
        M = self._eval.get(a)
        if M is not None:
            return M
        src, tgt, cat = self.source, self.target, self.category
        M = SparseMatrix(tgt.dim(a), src.dim(a))
        for o, c, img in zip(src.offsets(a), src.summands, self.images):
            for phi in range(cat.hom_rank(a, c)):
                col = tgt.act_vec(a, c, phi, img)
                for i, x in enumerate(col):
                    if x:
                        M.rows[i][o + phi] = x
        self._eval[a] = M
        return M

    def precompose(self, f: ModMorphism) -> FreeToModule:
        """self o f, again determined by generator images."""
        imgs = []
        for j, c in enumerate(f.source.summands):
            col = _column_vector(f, j)
            img = self.evaluate(c).apply(col)
            imgs.append(img)
        return FreeToModule(f.source, self.target, imgs)


def _column_vector(f: ModMorphism, j):
    """Image of the identity of source summand j as a dense vector of target(c_j)."""
    c = f.source.summands[j]
    parts = [f.entry(i, j) for i in range(len(f.target.summands))]
    return f.target.join(c, parts)


def as_free_to_module(m: ModMorphism) -> FreeToModule:
    return FreeToModule(m.source, m.target,
                        [_column_vector(m, j) for j in range(len(m.source.summands))])


# ---------------------------------------------------------------------------
# generators, kernels, covers


def generated_vectors(M: Module, gens, a):
    """Images in M(a) of ``gens`` = [(object, vector)] under every basis morphism."""
    cat = M.category
    out = []
    for b, v in gens:
        for k in range(cat.hom_rank(a, b)):
            w = {j: x for j, x in enumerate(M.act_vec(a, b, k, v)) if x}
            if w:
                out.append(w)
    return out


def _lattice_invariants(rows, n, cancel=None):
    if not rows:
        return []
    return ila.invariant_factors(SparseMatrix(len(rows), n, rows), n, cancel)


def _fills(rows, n, cancel=None):
    inv = _lattice_invariants(rows, n, cancel)
    return len(inv) == n and all(d == 1 for d in inv)


def module_generators(M: Module, order=None, prune=True, cancel=None):
    """Deterministic finite generating set [(object, vector)] of M.

    Objects are scanned in category order; at each object, standard basis
    vectors are added while they enlarge the generated lattice, until it is
    all of M(a). A pruning pass then drops generators the others reach.
    Lattice comparisons go through invariant factors, which avoids the
    coefficient growth of incremental echelon forms.
    """
    cat = M.category
    obs = list(order) if order is not None else list(cat.objects)
    gens = []
    for a in obs:
        ila._check(cancel)
        n = M.dim(a)
        if n == 0:
            continue
        rows = generated_vectors(M, gens, a)
        inv = _lattice_invariants(rows, n, cancel)
        for i in range(n):
            if len(inv) == n and all(d == 1 for d in inv):
                break
            e = [0] * n
            e[i] = 1
            more = rows + generated_vectors(M, [(a, e)], a)
            inv2 = _lattice_invariants(more, n, cancel)
            if (len(inv2), _prod(inv2)) != (len(inv), _prod(inv)):
                gens.append((a, e))
                rows, inv = more, inv2
    if prune and len(gens) > 1:
        i = 0
        while i < len(gens):
            ila._check(cancel)
            rest = gens[:i] + gens[i + 1:]
            if all(_fills(generated_vectors(M, rest, a), M.dim(a), cancel)
                   for a in obs if M.dim(a)):
                gens = rest
            else:
                i += 1
    return gens


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def kernel_submodule(m, cancel=None) -> SubModule:
    """Objectwise kernel of a map out of a free module, as a SubModule."""
    src = m.source
    bases = {}
    for a in src.category.objects:
        A = m.evaluate(a)
        bases[a] = ila.kernel_basis(A, A.ncols, cancel) if A.ncols else []
    return SubModule(src, bases)


def kernel_generators(m, cancel=None):
    """Generators [(object, vector in source(a))] of the kernel of ``m``."""
    K = kernel_submodule(m, cancel)
    return [(a, K.lift(a, v)) for a, v in module_generators(K, cancel=cancel)]


def free_cover(gens, target: Module):
    """Surjection onto ``target`` from one representable per generator."""
    F = FreeModule(target.category, [a for a, _ in gens])
    if isinstance(target, FreeModule):
        entries = {}
        for j, (a, v) in enumerate(gens):
            for i, part in enumerate(target.split(a, v)):
                if part:
                    entries[(i, j)] = part
        return ModMorphism(F, target, entries)
    return FreeToModule(F, target, [v for _, v in gens])


def is_surjective(m, objects=None):
    obs = objects if objects is not None else m.category.objects
    for a in obs:
        A = m.evaluate(a)
        n = A.nrows
        if n == 0:
            continue
        inv = ila.invariant_factors(A, A.ncols)
        if len(inv) != n or any(d != 1 for d in inv):
            return False
    return True


# ---------------------------------------------------------------------------
# chain complexes


class ChainComplex:
    """Free chain complex C_0 <- C_1 <- ... with optional augmentation C_0 -> T.

    ``differentials[n]`` is d_n : C_n -> C_{n-1} for n >= 1 (index 0 unused).
    """

    def __init__(self, modules, differentials, augmentation=None):
        self.modules = list(modules)
        self.differentials = [None] + list(differentials)
        self.augmentation = augmentation
        if len(self.differentials) != len(self.modules):
            raise ValueError("need one differential per positive degree")
        self.category = self.modules[0].category if self.modules else None

    def __repr__(self):
        return "ChainComplex(" + " <- ".join(repr(m) for m in self.modules) + ")"

    @property
    def length(self):
        return len(self.modules) - 1

    def d(self, n):
        if n == 0:
            return self.augmentation
        if 1 <= n < len(self.modules):
            return self.differentials[n]
        return None

    def dim(self, n, a):
        if n == -1:
            return self.augmentation.target.dim(a) if self.augmentation else 0
        if 0 <= n < len(self.modules):
            return self.modules[n].dim(a)
        return 0

    def check_d_squared(self):
        """d o d == 0 at the morphism level (and augmentation o d_1 == 0)."""
        for n in range(2, len(self.modules)):
            if not (self.differentials[n - 1] @ self.differentials[n]).is_zero():
                return False
        if self.augmentation is not None and len(self.modules) > 1:
            e = self.augmentation
            if isinstance(e, ModMorphism):
                return (e @ self.differentials[1]).is_zero()
            for a in self.category.objects:
                if not e.evaluate(a).matmul(self.differentials[1].evaluate(a)).is_zero():
                    return False
        return True

    def homology(self, n, a, cancel=None):
        """(free rank, torsion invariant factors) of homology at degree n, object a.

        Degree -1 is the cokernel of the augmentation when present.
        """
        dim = self.dim(n, a)
        if dim == 0:
            return 0, []
        out_map = self.d(n) if n >= 0 else None
        in_map = self.d(n + 1) if n + 1 <= self.length else None
        r_out = 0
        if out_map is not None:
            A = out_map.evaluate(a)
            r_out = ila.rank(A, A.ncols, cancel) if A.ncols else 0
        inv = []
        if in_map is not None:
            B = in_map.evaluate(a)
            inv = ila.invariant_factors(B, B.ncols, cancel) if B.ncols else []
        return dim - r_out - len(inv), [d for d in inv if d > 1]

    def is_exact_at(self, n, a, cancel=None):
        free, tors = self.homology(n, a, cancel)
        return free == 0 and not tors

    def is_exact(self, degrees=None, objects=None, cancel=None):
        obs = objects if objects is not None else self.category.objects
        lo = -1 if self.augmentation is not None else 0
        degs = degrees if degrees is not None else range(lo, len(self.modules))
        return all(self.is_exact_at(n, a, cancel) for a in obs for n in degs)

    def exactness_table(self, objects=None, cancel=None):
        obs = objects if objects is not None else self.category.objects
        lo = -1 if self.augmentation is not None else 0
        return {a: {n: self.homology(n, a, cancel) for n in range(lo, len(self.modules))}
                for a in obs}

    def to_dict(self):
        return {"modules": [list(m.summands) for m in self.modules],
                "differentials": [d.to_dict() for d in self.differentials[1:]],
                "augmentation": (self.augmentation.to_dict()
                                 if isinstance(self.augmentation, ModMorphism) else None)}

    @classmethod
    def from_dict(cls, category, data):
        mods = [FreeModule(category, s) for s in data["modules"]]
        ds = [ModMorphism.from_dict(category, d) for d in data["differentials"]]
        aug = data.get("augmentation")
        return cls(mods, ds, ModMorphism.from_dict(category, aug) if aug else None)


# ---------------------------------------------------------------------------
# presented modules and resolutions


class PresentedModule:
    """Cokernel of a map of free modules P1 -> P0."""

    def __init__(self, presentation: ModMorphism):
        self.presentation = presentation
        self.category = presentation.category
        self._inv = {}

    @classmethod
    def free(cls, F: FreeModule):
        return cls(ModMorphism.zero(FreeModule(F.category, ()), F))

    def invariants(self, a):
        """(free rank, torsion invariant factors) of the value at a."""
        r = self._inv.get(a)
        if r is None:
            A = self.presentation.evaluate(a)
            inv = ila.invariant_factors(A, A.ncols) if A.ncols else []
            r = (A.nrows - len(inv), [d for d in inv if d > 1])
            self._inv[a] = r
        return r

    def is_zero_at(self, a):
        free, tors = self.invariants(a)
        return free == 0 and not tors


def resolve(M, length, cancel=None) -> ChainComplex:
    """Free resolution of M of the given length.

    For a Module the augmentation is a free cover of M. For a
    PresentedModule there is no augmentation: degree 0 homology is M
    itself. The top differential is the last cover computed, so the result
    is exact everywhere below ``length``.
    """
    if isinstance(M, PresentedModule):
        mods, ds, aug = [M.presentation.target], [], None
        prev = None
        if length >= 1 and len(M.presentation.source):
            mods.append(M.presentation.source)
            ds.append(M.presentation)
            prev = M.presentation
    elif isinstance(M, FreeModule) and M.is_free:
        return ChainComplex([M], [], ModMorphism.identity(M))
    else:
        aug = free_cover(module_generators(M, cancel=cancel), M)
        mods, ds, prev = [aug.source], [], aug
    while prev is not None and len(mods) <= length:
        gens = kernel_generators(prev, cancel)
        if not gens:
            break
        cover = free_cover(gens, prev.source)
        mods.append(cover.source)
        ds.append(cover)
        prev = cover
    return ChainComplex(mods, ds, aug)


# ---------------------------------------------------------------------------
# Hom, Ext, tensor


def hom_cochain_matrix(d: ModMorphism, N: Module) -> SparseMatrix:
    """Hom(d, N): Hom(target, N) -> Hom(source, N), both as sums of values N(c)."""
    src, tgt = d.source, d.target
    so = _dims_offsets([N.dim(c) for c in src.summands])
    to = _dims_offsets([N.dim(c) for c in tgt.summands])
    M = SparseMatrix(so[-1], to[-1])
    for (i, j), u in d.entries.items():
        A = N.act_elem(src.summands[j], tgt.summands[i], u)
        for r, row in enumerate(A.rows):
            for c, x in row.items():
                M.add(so[j] + r, to[i] + c, x)
    return M


def _dims_offsets(dims):
    out = [0]
    for d in dims:
        out.append(out[-1] + d)
    return out


def _cohomology(delta_in, delta_out, dim, cancel=None):
    r_out = ila.rank(delta_out, delta_out.ncols, cancel) if delta_out is not None and delta_out.nrows and dim else 0
    inv = ila.invariant_factors(delta_in, delta_in.ncols, cancel) if delta_in is not None and delta_in.ncols and dim else []
    return dim - r_out - len(inv), [x for x in inv if x > 1]


def ext(resolution: ChainComplex, N: Module, n, cancel=None):
    """Ext^n(M, N) from a free resolution of M: (free rank, torsion factors)."""
    if n > resolution.length:
        raise ValueError("resolution shorter than requested degree")
    dims = [sum(N.dim(c) for c in F.summands) for F in resolution.modules]
    delta_out = hom_cochain_matrix(resolution.d(n + 1), N) if n + 1 <= resolution.length else None
    delta_in = hom_cochain_matrix(resolution.d(n), N) if n >= 1 else None
    return _cohomology(delta_in, delta_out, dims[n], cancel)


def hom_group(resolution: ChainComplex, N: Module, cancel=None):
    return ext(resolution, N, 0, cancel)


def hom_free(F: FreeModule, N: Module):
    """Rank of Hom(F, N) for free F (Yoneda: sum of N(c))."""
    return sum(N.dim(c) for c in F.summands)


def natural_transformations_rank(M: Module, N: Module, cancel=None):
    """Rank of Hom(M, N) computed from the naturality equations directly."""
    cat = M.category
    obs = list(cat.objects)
    off, o = {}, 0
    for a in obs:
        off[a] = o
        o += N.dim(a) * M.dim(a)
    rows = []
    for a, b in itertools.product(obs, repeat=2):
        for k in range(cat.hom_rank(a, b)):
            Mk, Nk = M.act(a, b, k), N.act(a, b, k)
            # N(f) s_b - s_a M(f) = 0 ; entries (p, q) with p in N(a), q in M(b)
            ma, mb, na, nb = M.dim(a), M.dim(b), N.dim(a), N.dim(b)
            if not (ma or mb) or not (na or nb):
                continue
            eqs = {}
            for p in range(na):
                for r, x in Nk.rows[p].items():
                    for q in range(mb):
                        key = (p, q)
                        var = off[b] + r * mb + q
                        eqs.setdefault(key, {})
                        eqs[key][var] = eqs[key].get(var, 0) + x
            MkT = Mk.transpose()
            for q in range(mb):
                for t, x in MkT.rows[q].items():
                    for p in range(na):
                        key = (p, q)
                        var = off[a] + p * ma + t
                        eqs.setdefault(key, {})
                        eqs[key][var] = eqs[key].get(var, 0) - x
            rows.extend({v: x for v, x in e.items() if x} for e in eqs.values())
    rows = [r for r in rows if r]
    if not o:
        return 0
    A = SparseMatrix(len(rows), o, rows)
    return o - ila.rank(A, o, cancel)


def tensor_free(F: FreeModule, L):
    """Rank of Z[-,c] (x) L summed: Yoneda gives L(c) per summand."""
    return sum(L.dim(c) for c in F.summands)


def tensor_matrix(d: ModMorphism, L) -> SparseMatrix:
    """d (x) L : sum L(source) -> sum L(target) for covariant L."""
    src, tgt = d.source, d.target
    so = _dims_offsets([L.dim(c) for c in src.summands])
    to = _dims_offsets([L.dim(c) for c in tgt.summands])
    M = SparseMatrix(to[-1], so[-1])
    for (i, j), u in d.entries.items():
        a, b = src.summands[j], tgt.summands[i]
        for k, x in u.items():
            A = L.act(a, b, k)
            for r, row in enumerate(A.rows):
                for c, y in row.items():
                    M.add(to[i] + r, so[j] + c, x * y)
    return M


def tensor_over_category(C, L, n=None, cancel=None):
    """Tensor a free module, presented module or complex with covariant L.

    Returns (free rank, torsion) of F (x) L, of the cokernel for a
    PresentedModule, or of the n-th homology for a ChainComplex.
    """
    if isinstance(C, FreeModule):
        return tensor_free(C, L), []
    if isinstance(C, PresentedModule):
        A = tensor_matrix(C.presentation, L)
        inv = ila.invariant_factors(A, A.ncols, cancel) if A.ncols else []
        return A.nrows - len(inv), [x for x in inv if x > 1]
    dim = tensor_free(C.modules[n], L)
    dout = tensor_matrix(C.d(n), L) if n >= 1 else None
    din = tensor_matrix(C.d(n + 1), L) if n + 1 <= C.length else None
    r_out = ila.rank(dout, dout.ncols, cancel) if dout is not None and dout.ncols else 0
    inv = ila.invariant_factors(din, din.ncols, cancel) if din is not None and din.ncols else []
    return dim - r_out - len(inv), [x for x in inv if x > 1]


def tensor_coend(P: ModMorphism, L, cancel=None):
    """coker(P) (x) L computed from the coend presentation, not from Yoneda.

    Generators: sum over objects a of P0(a) (x) L(a); relations
    M(f)m (x) l - m (x) L(f)l for every basis morphism f, plus the image of
    P1 (x) L computed the same way.
    """
    cat = P.category
    obs = list(cat.objects)

    def coend_pieces(F: FreeModule):
        off, o = {}, 0
        for a in obs:
            off[a] = o
            o += F.dim(a) * L.dim(a)
        rels = []
        for a, b in itertools.product(obs, repeat=2):
            la, lb, fb = L.dim(a), L.dim(b), F.dim(b)
            if not (fb and la):
                continue
            for k in range(cat.hom_rank(a, b)):
                Fk = F.act(a, b, k)       # F(b) -> F(a)
                Lk = L.act(a, b, k)       # L(a) -> L(b)
                LkT = Lk.transpose()
                for m in range(fb):
                    for l in range(la):
                        r = {}
                        for i, x in Fk.transpose().rows[m].items():
                            v = off[a] + i * la + l
                            r[v] = r.get(v, 0) + x
                        for j, y in LkT.rows[l].items():
                            v = off[b] + m * lb + j
                            r[v] = r.get(v, 0) - y
                        r = {v: x for v, x in r.items() if x}
                        if r:
                            rels.append(r)
        return off, o, rels

    off0, n0, rels0 = coend_pieces(P.target)
    # image of P1 (x) L: each generator of the coend of P1 maps through P(a) (x) id
    off1, n1, _ = coend_pieces(P.source)
    for a in obs:
        la = L.dim(a)
        if not la:
            continue
        A = P.evaluate(a)
        for j in range(A.ncols):
            col = {i: row[j] for i, row in enumerate(A.rows) if j in row}
            for l in range(la):
                r = {off0[a] + i * la + l: x for i, x in col.items()}
                if r:
                    rels0.append(r)
    if n0 == 0:
        return 0, []
    # relations are rows; the quotient is Z^n0 / rowspace
    A = SparseMatrix(len(rels0), n0, rels0)
    inv = ila.invariant_factors(A, n0, cancel) if rels0 else []
    return n0 - len(inv), [x for x in inv if x > 1]


# ---------------------------------------------------------------------------
# solving for module maps


def _unknowns(src: FreeModule, tgt: FreeModule):
    cat = src.category
    idx = []
    for i, ci in enumerate(tgt.summands):
        for j, cj in enumerate(src.summands):
            for beta in range(cat.hom_rank(cj, ci)):
                idx.append((i, j, beta))
    return idx


def solve_morphism(src: FreeModule, tgt: FreeModule, pre=(), post=(), extra=None,
                   cancel=None):
    """Find X: src -> tgt with X o P == Q for (P, Q) in ``pre`` and
    R o X == S for (R, S) in ``post``; ``extra`` adds rows (coeff dict over
    unknown positions, rhs). Returns a ModMorphism or None.
    """
    cat = src.category
    unk = _unknowns(src, tgt)
    pos = {u: n for n, u in enumerate(unk)}
    rows, rhs = [], []
    for P, Q in pre:
        if P.target != src or Q.source != P.source or Q.target != tgt:
            raise ValueError("bad pre-composition constraint")
        eqs = {}
        for (j, k), pv in P.entries.items():
            W = P.source.summands[k]
            cj = src.summands[j]
            for i, ci in enumerate(tgt.summands):
                for beta in range(cat.hom_rank(cj, ci)):
                    w = cat.compose_vec(W, cj, ci, {beta: 1}, pv)
                    for g, x in w.items():
                        add_into(eqs.setdefault((i, k, g), {}), {pos[(i, j, beta)]: x})
        for i, ci in enumerate(tgt.summands):
            for k, W in enumerate(P.source.summands):
                q = Q.entry(i, k)
                for g in range(cat.hom_rank(W, ci)):
                    rows.append(eqs.get((i, k, g), {}))
                    rhs.append(q.get(g, 0))
    for R, S in post:
        if R.source != tgt or S.source != src or S.target != R.target:
            raise ValueError("bad post-composition constraint")
        eqs = {}
        for (l, i), rv in R.entries.items():
            Y = R.target.summands[l]
            ci = tgt.summands[i]
            for j, cj in enumerate(src.summands):
                for beta in range(cat.hom_rank(cj, ci)):
                    w = cat.compose_vec(cj, ci, Y, rv, {beta: 1})
                    for g, x in w.items():
                        add_into(eqs.setdefault((l, j, g), {}), {pos[(i, j, beta)]: x})
        for l, Y in enumerate(R.target.summands):
            for j, cj in enumerate(src.summands):
                s = S.entry(l, j)
                for g in range(cat.hom_rank(cj, Y)):
                    rows.append(eqs.get((l, j, g), {}))
                    rhs.append(s.get(g, 0))
    if extra:
        for coeffs, b in extra(pos):
            rows.append(coeffs)
            rhs.append(b)
    if not unk:
        return ModMorphism(src, tgt, {}) if all(b == 0 for b in rhs) else None
    A = SparseMatrix(len(rows), len(unk), [dict(r) for r in rows])
    X = ila.solve(A, [[b] for b in rhs], len(unk), cancel)
    if X is None:
        return None
    entries = {}
    for (i, j, beta), row in zip(unk, X):
        if row[0]:
            entries.setdefault((i, j), {})[beta] = row[0]
    return ModMorphism(src, tgt, entries)


def left_inverse(s: ModMorphism, cancel=None):
    """r with r o s == id, or None."""
    return solve_morphism(s.target, s.source,
                          pre=[(s, ModMorphism.identity(s.source))], cancel=cancel)


class Section:
    """A module map s: N -> F out of a presented module N (via its cover t = s o q)."""

    def __init__(self, t: ModMorphism, cover, target: Module):
        self.t = t
        self.cover = cover
        self.source = target
        self.target = t.target
        self.category = t.category

    def evaluate(self, a) -> SparseMatrix:
        Q = self.cover.evaluate(a)
        n = self.source.dim(a)
        if n == 0:
            return SparseMatrix(self.target.dim(a), 0)
        P = ila.solve(Q, ila.identity(n), Q.ncols)
        T = self.t.evaluate(a)
        return T.matmul(SparseMatrix.from_dense(P, n))


def split_surjection(e, cancel=None):
    """Section s of a surjection e: F -> N with e o s = id, or None.

    For free N this is a single linear system in the entries of s. For a
    general module N, a presentation P1 -> P0 -> N is built and s is sought
    as t: P0 -> F with t o d = 0 and e o t = q on generators.
    """
    if not is_surjective(e):
        raise ValueError("map is not surjective")
    if isinstance(e, ModMorphism) and e.target.is_free:
        return solve_morphism(e.target, e.source,
                              post=[(e, ModMorphism.identity(e.target))], cancel=cancel)
    F = e.source
    N = e.target
    if isinstance(e, ModMorphism):
        e = as_free_to_module(e)
    gens = module_generators(N, cancel=cancel)
    q = free_cover(gens, N)
    if isinstance(q, ModMorphism):
        q = as_free_to_module(q)
    P0 = q.source
    rel_gens = kernel_generators(q, cancel)
    d = free_cover(rel_gens, P0) if rel_gens else None
    pre = []
    if d is not None:
        pre.append((d, ModMorphism.zero(d.source, F)))

    def extra(pos):
        out = []
        for j, c in enumerate(P0.summands):
            E = e.evaluate(c)           # F(c) -> N(c)
            offs = F.offsets(c)
            target = q.images[j]
            for row_i, row in enumerate(E.rows):
                coeffs = {}
                for col, x in row.items():
                    # locate summand i and basis beta of column col in F(c)
                    i = max(t for t, o in enumerate(offs) if o <= col)
                    beta = col - offs[i]
                    coeffs[pos[(i, j, beta)]] = coeffs.get(pos[(i, j, beta)], 0) + x
                out.append((coeffs, target[row_i]))
        return out

    t = solve_morphism(P0, F, pre=pre, extra=extra, cancel=cancel)
    if t is None:
        return None
    return Section(t, q, N)


def verify_section(e, s, objects=None):
    """e o s == id at every object."""
    cat = e.category
    for a in (objects if objects is not None else cat.objects):
        n = e.target.dim(a)
        if n == 0:
            continue
        P = e.evaluate(a).matmul(s.evaluate(a))
        if P.to_dense() != ila.identity(n):
            return False
    return True


def stably_free_candidates(P_ranks, objects, free_rank_vectors, bound=2, max_mult=6):
    """Heuristic for the finite Eilenberg-swindle question (incomplete by design).

    Given objectwise ranks of a projective P, search k <= bound copies of each
    representable and multiplicities n_c <= max_mult with
    rank(P) + k * rank(Z[-,c0]) == sum_c n_c rank(Z[-,c]). Matching rank
    vectors are necessary, not sufficient, for P + Z[-,c0]^k to be free.
    """
    cands = []
    keys = list(free_rank_vectors)
    for c0 in keys:
        for k in range(bound + 1):
            goal = [P_ranks[a] + k * free_rank_vectors[c0][a] for a in objects]
            for mult in itertools.product(range(max_mult + 1), repeat=len(keys)):
                tot = [sum(m * free_rank_vectors[c][a] for m, c in zip(mult, keys)) for a in objects]
                if tot == goal:
                    cands.append({"added": (c0, k), "free": dict(zip(keys, mult))})
    return cands
