"""The A5 pentagon complex and the Bredon/Mackey resolutions built from it.

The 2-complex has the 5 points of A5's natural action as vertices, every
pair as an edge, and one pentagon for each pair {x, x^-1} of 5-cycles
conjugate to (0 1 2 3 4). Its subdivisions give admissible A5-complexes
whose fixed sets are acyclic for every proper subgroup.
"""
from __future__ import annotations

import hashlib
import json
from collections import Counter
from functools import lru_cache

from . import __version__
from .catmod import (FreeModule, FreeToModule, ModMorphism, ext, free_cover, kernel_submodule,
                     left_inverse, module_generators, split_surjection, verify_section)
from .gcw import (RegularGCW, SimpGComplex, barycentric_subdivision, bredon_complex,
                  fixed_subcomplex, is_resolution_of_Z)
from .orbitmackey import (Family, MackeyCategory, OrbitCategory, PiFunctor,
                          burnside_functor, ind_pi)
from .permgrp import Permutation, conjugacy_classes, enumerate_subgroup_classes, named_group

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# construction


@lru_cache(maxsize=None)
def a5_table():
    return enumerate_subgroup_classes(named_group("A5"))


def pentagon_walks(G=None):
    G = G or a5_table().group
    x0 = G.index_of(Permutation.from_cycles(5, (0, 1, 2, 3, 4)))
    cls = next(c for c in conjugacy_classes(G) if x0 in c)
    walks = set()
    for x in cls:
        p = G.images(x)
        w = [0]
        for _ in range(4):
            w.append(p[w[-1]])
        walks.add(tuple(w))
    # x and x^-1 trace the same pentagon in opposite directions
    canon = set()
    for w in walks:
        rev = (w[0],) + tuple(reversed(w[1:]))
        canon.add(min(w, rev))
    return sorted(canon)


@lru_cache(maxsize=None)
def build_floyd_richardson() -> RegularGCW:
    table = a5_table()
    G = table.group
    edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    act = [G.images(g) for g in range(G.order)]
    M = RegularGCW(G, 5, edges, pentagon_walks(G), act)
    if len(M.faces) != 6:
        raise AssertionError("expected six pentagons")
    return M


@lru_cache(maxsize=None)
def complex_L() -> SimpGComplex:
    return barycentric_subdivision(build_floyd_richardson())


@lru_cache(maxsize=None)
def complex_L2() -> SimpGComplex:
    return barycentric_subdivision(complex_L())


def named_complex(name):
    try:
        return {"M": build_floyd_richardson, "L": complex_L, "L'": complex_L2,
                "L2": complex_L2}[name]()
    except KeyError:
        raise KeyError(f"unknown complex {name!r}; known: M, L, L2") from None


@lru_cache(maxsize=None)
def categories(family="proper"):
    fam = Family.named(a5_table(), family)
    O, M = OrbitCategory(fam), MackeyCategory(fam)
    return O, M, PiFunctor(O, M)


@lru_cache(maxsize=None)
def bredon_L(which="L", family="proper"):
    X = named_complex(which)
    O, _, _ = categories(family)
    return bredon_complex(X, O)


@lru_cache(maxsize=None)
def induced_L(which="L", family="proper"):
    _, _, pi = categories(family)
    return ind_pi(bredon_L(which, family).complex, pi)


# ---------------------------------------------------------------------------
# reports


def _labels(cat, summands):
    return sorted(cat.object_label(c) for c in summands)


def input_hash(obj):
    data = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(data).hexdigest()[:16]


def make_report(target, checks, details, inputs=None):
    return {"schema": SCHEMA_VERSION, "tool_version": __version__, "target": target,
            "pass": all(checks.values()), "checks": checks, "details": details,
            "input_hashes": {k: input_hash(v) for k, v in (inputs or {}).items()}}


def verify_acyclic(which="M", subgroups="all-proper"):
    """Cell counts and reduced homology of a complex and of its fixed sets."""
    X = named_complex(which)
    table = a5_table()
    checks, details = {}, {}
    h = X.homology()
    details["counts"] = list(X.counts())
    details["homology"] = h.to_dict()
    checks["acyclic"] = h.acyclic
    if which == "M":
        checks["counts"] = X.counts() == (5, 10, 6)
        checks["edge_incidence"] = set(X.pentagon_edge_incidence()) == {3}
        checks["euler"] = X.euler_characteristic() == 1
    if subgroups != "none":
        if isinstance(X, RegularGCW):
            # fixed sets of a cell complex are read off its subdivision
            X = barycentric_subdivision(X)
            details["fixed_sets_of"] = "barycentric subdivision"
        classes = range(len(table) - 1) if subgroups == "all-proper" else \
            [table.index_by_label(s) for s in subgroups.split(",")]
        fixed = {}
        for c in classes:
            Y = fixed_subcomplex(X, table[c].rep)
            hy = Y.homology()
            fixed[table.label(c)] = {"counts": list(Y.counts()), "acyclic": hy.acyclic}
            checks[f"fixed_{table.label(c)}_acyclic"] = hy.acyclic
        top = fixed_subcomplex(X, table[len(table) - 1].rep)
        fixed["A5"] = {"counts": list(top.counts()), "empty": top.nvertices == 0}
        checks["fixed_A5_empty"] = top.nvertices == 0
        details["fixed"] = fixed
    return make_report("acyclicity", checks, details, {"complex": which})


def verify_bredon_resolution():
    L = complex_L()
    O, _, _ = categories("proper")
    B = bredon_L("L")
    C = B.complex
    shapes = [_labels(O, m.summands) for m in C.modules]
    checks = {
        "admissible": L.is_admissible(),
        "counts": L.counts() == (21, 80, 60),
        "degree0": shapes[0] == sorted(["A4", "D5", "S3"]),
        "degree1": shapes[1] == ["C2", "C2", "C3"],
        "degree2": shapes[2] == ["e"],
        "d_squared": C.check_d_squared(),
        "exact": is_resolution_of_Z(B),
    }
    table = C.exactness_table()
    details = {"summands": shapes, "counts": list(L.counts()),
               "homology": {O.object_label(a): {str(n): list(v) for n, v in row.items()}
                            for a, row in table.items()}}
    return make_report("eq9", checks, details, {"complex": "L"})


def verify_mackey_resolution():
    L2 = complex_L2()
    O, M, pi = categories("proper")
    IC = induced_L("L2")
    shapes = [_labels(M, m.summands) for m in IC.modules]
    checks = {
        "admissible": L2.is_admissible(),
        "counts": L2.counts() == (161, 520, 360),
        "degree2": shapes[2] == ["e"] * 6,
        "degree1": shapes[1] == sorted(["e"] * 6 + ["C2"] * 4 + ["C3"] * 2),
        "augmentation_target_is_burnside": IC.augmentation.target == burnside_functor(M),
        "d_squared": IC.check_d_squared(),
        "exact": IC.is_exact(),
    }
    details = {"summands": shapes,
               "F0": dict(sorted(Counter(shapes[0]).items())),
               "F1": dict(sorted(Counter(shapes[1]).items())),
               "F2": dict(sorted(Counter(shapes[2]).items())),
               "counts": list(L2.counts())}
    return make_report("eq10", checks, details, {"complex": "L2"})


def _pi_image(pi, a, b):
    return {pi.mor_index(a, b, k) for k in range(pi.source.hom_rank(a, b))}


def transfer_usage(r: ModMorphism, pi: PiFunctor):
    """Number of nonzero basis coefficients of r outside the image of pi."""
    n = 0
    for (i, j), v in r.entries.items():
        img = _pi_image(pi, r.source.summands[j], r.target.summands[i])
        n += sum(1 for k in v if k not in img)
    return n


def _transport(m: ModMorphism, cat):
    """Re-express a morphism over another category on the same table by labels."""
    return ModMorphism.from_dict(cat, m.to_dict(labels=True), labels=True)


def compute_splitting():
    O, M, pi = categories("proper")
    IC = induced_L("L2")
    s = IC.d(2)
    r = left_inverse(s)
    checks = {"exists": r is not None}
    details = {}
    if r is not None:
        checks["r_after_s_is_identity"] = (r @ s) == ModMorphism.identity(s.source)
        n_tr = transfer_usage(r, pi)
        details["transfer_coefficients"] = n_tr
        details["uses_transfers"] = n_tr > 0
        # the same spans make sense over the family of all subgroups
        Mall = categories("all")[1]
        s_all, r_all = _transport(s, Mall), _transport(r, Mall)
        checks["extends_to_all_subgroups"] = (r_all @ s_all) == ModMorphism.identity(s_all.source)
        details["witness"] = {"group": "A5", "family": "proper",
                              "r": r.to_dict(labels=True), "s": s.to_dict(labels=True)}
        details["r_nonzero_entries"] = len(r.entries)
    # the analogous question over the orbit category, reported either way
    d2 = bredon_L("L").complex.d(2)
    details["orbit_category_degree2_splits"] = left_inverse(d2) is not None
    return make_report("splitting", checks, details, {"complex": "L2"})


def reverify_witness(report):
    """Check r o s = id using nothing but the serialized witness."""
    w = report["details"]["witness"]
    table = enumerate_subgroup_classes(named_group(w["group"]))
    cat = MackeyCategory(Family.named(table, w["family"]))
    r = ModMorphism.from_dict(cat, w["r"], labels=True)
    s = ModMorphism.from_dict(cat, w["s"], labels=True)
    return (r @ s) == ModMorphism.identity(s.source)


def ext_vanishing(coefficients=None):
    """Ext^1 of the Burnside functor over the proper-family Mackey category,
    from the resolution built on the second subdivision."""
    _, M, _ = categories("proper")
    IC = induced_L("L2")
    coefficients = coefficients or [FreeModule(M, [c]) for c in M.objects] + [burnside_functor(M)]
    return [(repr(N), ext(IC, N, 1)) for N in coefficients]


def stable_model_report(X: SimpGComplex, family: Family, m: int):
    """Truncate the induced resolution at m and test the relevant kernel for projectivity.

    The kernel examined is ker d_{m-1} (degree m-1; for m = 0 the kernel of
    the augmentation). ``top_kernel_zero`` records whether d_m (the
    augmentation when m = 0) is injective.
    """
    O, M = OrbitCategory(family), MackeyCategory(family)
    pi = PiFunctor(O, M)
    B = bredon_complex(X, O)
    if not is_resolution_of_Z(B):
        raise ValueError("the Bredon complex is not a resolution of the constant functor")
    IC = ind_pi(B.complex, pi)
    length = IC.length
    cells = []
    for n, (reps, classes) in enumerate(zip(B.reps, B.classes)):
        cells.append(dict(sorted(Counter(O.object_label(c) for c in classes).items())))
    if m > length:
        raise ValueError(f"truncation degree {m} exceeds the complex length {length}")
    kdeg = max(m - 1, 0)
    dmap = IC.d(m - 1) if m >= 1 else IC.augmentation
    K = kernel_submodule(dmap)
    ranks = {M.object_label(a): K.dim(a) for a in M.objects}
    details = {"m": m, "cells": cells, "kernel_degree": kdeg, "kernel_ranks": ranks}
    if all(v == 0 for v in ranks.values()):
        verdict, cover = "zero", []
    else:
        gens = [(a, K.lift(a, v)) for a, v in module_generators(K)]
        q = free_cover(gens, dmap.source)
        # the cover lands in the kernel; split it onto the kernel submodule
        qk = FreeToModule(q.source, K, [K.coords(a, v) for a, v in gens])
        s = split_surjection(qk)
        verdict = "projective" if s is not None and verify_section(qk, s) else "no-split"
        cover = _labels(M, q.source.summands)
    top = IC.d(m) if m >= 1 else IC.augmentation
    top_zero = all(not kernel_submodule(top).dim(a) for a in M.objects)
    details.update({"verdict": verdict, "cover": cover, "top_kernel_zero": top_zero,
                    "achieved_length": length})
    checks = {"resolution": True, "length_at_least_m": length >= m}
    return make_report("stable-model", checks, details, {"m": m, "family": family.name})
