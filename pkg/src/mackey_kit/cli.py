"""Command line entry point ``mackey-kit``.

Exit codes: 0 when every requested check passes, 1 on a failed check
(the report is still written), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import floyd_richardson as fr
from .burnside import table_of_marks
from .gcw import RegularGCW, SimpGComplex, barycentric_subdivision, fixed_subcomplex
from .orbitmackey import Family, FamilyError, MackeyCategory, OrbitCategory
from .permgrp import (GroupSizeError, conjugacy_classes, enumerate_subgroup_classes,
                      group_from_json, named_group)


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(obj, out):
    text = _dump(obj)
    print(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _load_group(args):
    if getattr(args, "group_json", None):
        with open(args.group_json) as fh:
            return group_from_json(json.load(fh))
    try:
        return named_group(args.group)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _load_complex(name, args):
    if name in ("M", "L", "L2", "L'"):
        return fr.named_complex(name)
    G = _load_group(args)
    with open(name) as fh:
        return SimpGComplex.from_json(json.load(fh), G)


def _subgroup_class(table, label):
    try:
        return table.index_by_label(label)
    except KeyError:
        if label.isdigit() and int(label) < len(table):
            return int(label)
        raise UsageError(f"unknown or ambiguous subgroup label {label!r}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_group(args):
    G = _load_group(args)
    T = enumerate_subgroup_classes(G)
    return True, {"order": G.order, "degree": G.degree,
                  "element_class_sizes": [len(c) for c in conjugacy_classes(G)],
                  "subgroup_classes": [{"label": T.label(i), "order": c.order,
                                        "conjugates": c.size, "rep": sorted(c.rep)}
                                       for i, c in enumerate(T.classes)]}


def cmd_marks(args):
    G = _load_group(args)
    T = enumerate_subgroup_classes(G)
    return True, table_of_marks(G, T)


def cmd_cat_build(args):
    G = _load_group(args)
    T = enumerate_subgroup_classes(G)
    fam = Family.named(T, args.family)
    cat = (MackeyCategory if args.kind == "mackey" else OrbitCategory)(fam)
    data = cat.to_dict()
    data.update({"group": G.to_json(), "family": args.family, "kind": args.kind})
    ok = cat.check_identities()
    return ok, data


def cmd_complex(args):
    X = _load_complex(args.complex, args)
    if args.action == "subdivide":
        Y = barycentric_subdivision(X)
        return True, Y.to_json()
    if args.action == "homology":
        return True, {"counts": list(X.counts()), **X.homology().to_dict()}
    if isinstance(X, RegularGCW):
        raise UsageError("fixed subcomplexes need a simplicial complex (try L)")
    if not args.subgroup:
        raise UsageError("complex fixed needs --subgroup")
    T = enumerate_subgroup_classes(X.group)
    c = _subgroup_class(T, args.subgroup)
    Y = fixed_subcomplex(X, T[c].rep)
    return True, {"subgroup": T.label(c), "complex": Y.to_json(),
                  "vertices": Y.vertex_labels, **Y.homology().to_dict()}


def cmd_verify(args):
    if args.target == "eq9":
        rep = fr.verify_bredon_resolution()
    elif args.target == "eq10":
        rep = fr.verify_mackey_resolution()
    else:
        rep = fr.verify_acyclic(args.complex, args.subgroup)
    return rep["pass"], rep


def cmd_split(args):
    rep = fr.compute_splitting()
    return rep["pass"], rep


def cmd_stable_model(args):
    X = fr.named_complex(args.complex)
    fam = Family.named(fr.a5_table(), args.family)
    rep = fr.stable_model_report(X, fam, args.m)
    return rep["pass"], rep


def cmd_selftest(args):
    from .acceptance import run_all
    results = run_all(args.only)
    ok = all(r["pass"] for r in results)
    for r in results:
        print(("PASS " if r["pass"] else "FAIL ") + r["criterion"], file=sys.stderr)
    return ok, {"schema": fr.SCHEMA_VERSION, "tool_version": __version__,
                "pass": ok, "criteria": results}


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="mackey-kit",
                                description="Orbit and Mackey category computations for finite groups.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--out", help="also write the JSON result to this file")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="also write the JSON result to this file")
    sub = p.add_subparsers(dest="command", required=True)

    def group_opts(q, default="A5"):
        q.add_argument("--group", default=default, help="named group (e.g. C2, S3, A5)")
        q.add_argument("--group-json", help="group given as {degree, generators}")

    q = sub.add_parser("group", parents=[common], help="order and subgroup classes")
    group_opts(q)
    q.set_defaults(func=cmd_group)

    q = sub.add_parser("marks", parents=[common], help="table of marks")
    group_opts(q)
    q.set_defaults(func=cmd_marks)

    q = sub.add_parser("cat", parents=[common], help="category construction")
    cs = q.add_subparsers(dest="cat_command", required=True)
    b = cs.add_parser("build", parents=[common], help="serialize an orbit or Mackey category")
    group_opts(b)
    b.add_argument("--family", default="all", choices=["all", "proper", "trivial"])
    b.add_argument("--kind", default="mackey", choices=["mackey", "orbit"])
    b.set_defaults(func=cmd_cat_build)

    q = sub.add_parser("complex", parents=[common], help="subdivide, fixed subcomplex or homology")
    q.add_argument("action", choices=["subdivide", "fixed", "homology"])
    q.add_argument("--complex", default="M", help="M, L, L2 or a JSON complex file")
    q.add_argument("--subgroup", help="subgroup class label for 'fixed'")
    group_opts(q)
    q.set_defaults(func=cmd_complex)

    q = sub.add_parser("verify", parents=[common], help="verify a worked-example claim")
    q.add_argument("target", choices=["eq9", "eq10", "acyclic"],
                   help="eq9: Bredon resolution of L over the proper orbit category; "
                        "eq10: its induced Mackey resolution built on L2; "
                        "acyclic: homology of a complex and its fixed sets")
    q.add_argument("--complex", default="M", choices=["M", "L", "L2"])
    q.add_argument("--subgroup", default="all-proper",
                   help="'all-proper', 'none' or comma separated class labels")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("split", parents=[common], help="compute the splitting witness r with r s = id")
    q.set_defaults(func=cmd_split)

    q = sub.add_parser("stable-model", parents=[common], help="truncated resolution and kernel projectivity")
    q.add_argument("--complex", default="L", choices=["L", "L2"])
    q.add_argument("--family", default="proper", choices=["all", "proper"])
    q.add_argument("--m", type=int, default=2)
    q.set_defaults(func=cmd_stable_model)

    q = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    q.add_argument("--only", nargs="*", help="criterion number prefixes to run")
    q.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ok, result = args.func(args)
    except (UsageError, FamilyError, GroupSizeError, FileNotFoundError) as exc:
        print(f"mackey-kit: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"mackey-kit: error: {exc}", file=sys.stderr)
        return 1
    _emit(result, args.out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
