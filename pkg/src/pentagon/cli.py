"""Command line front end.

Exit codes: 0 success or a true verdict, 1 a failed verification or false
verdict (JSON diagnostics on stdout), 2 malformed input or usage.
"""
import argparse
import sys

import numpy as np

from . import constructions as con
from .clifford import clifford_structure, default_epsilon, glue_e_fixed
from .enumeration import (
    SearchFilter,
    census,
    enumerate_semigroups,
    enumerate_solutions,
    semigroup_listing,
    write_catalog,
)
from .errors import (
    NotAssociative,
    NotBijective,
    NotInvolutive,
    OrderTooLarge,
    OutOfRangeEntry,
    PentagonError,
    SchemaError,
    SolutionViolation,
)
from .idempotent import IdempotentClassificationData, construct_idempotent_central
from .involutive import decompose_involutive, ext_sigma, retract, t_A
from .semigroup import group_inverse
from .serialize import (
    dumps,
    load,
    read_solution_parts,
    semigroup_from_json,
    solution_from_json,
    solution_to_json,
)
from .solution import (
    axiom_violations,
    classify_properties,
    opposite,
    pentagon_direct_check,
    solutions_isomorphic,
)

FILTERS = ["involutive", "idempotent", "bijective", "nondegenerate",
           "commutative", "cocommutative", "e-invariant", "e-fixed"]
KINDS = ["lyubashenko", "endo", "leftzero-group", "factorization", "kashaev-sergeev",
         "group-quotient", "matched", "ext-sigma", "t-a", "clifford-glue", "idempotent-central"]


class Failure(Exception):
    """A false verdict: printed as JSON, exit 1."""

    def __init__(self, doc):
        super().__init__(doc.get("error", "failed"))
        self.doc = doc


def emit(doc):
    sys.stdout.write(dumps(doc))


def _field(doc, key, path=""):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"{path}/{key}", "missing")
    return doc[key]


def _semigroup(doc, key):
    return semigroup_from_json({"table": _field(doc, key)}, f"/{key}")


# ------------------------------------------------------------------- verbs

def cmd_verify(args):
    S, theta = read_solution_parts(load(args.file))
    violations = axiom_violations(S, theta)
    direct = pentagon_direct_check((S.table, np.asarray(theta)))
    if violations:
        raise Failure({
            "valid": False,
            "violations": {k: list(v) for k, v in violations.items()},
            "pentagon_direct": direct,
        })
    emit({"valid": True, "pentagon_direct": direct})


def cmd_properties(args):
    s = solution_from_json(load(args.file))
    doc = classify_properties(s, args.convention).as_dict()
    doc["convention"] = args.convention
    emit(doc)


def cmd_enumerate(args):
    filt = SearchFilter.from_names(args.filter)
    if args.semigroup:
        S = semigroup_from_json(load(args.semigroup))
        sols = enumerate_solutions(S, filt, args.workers)
        emit({"order": S.order, "filter": filt.label(), "count": len(sols),
              "thetas": [s.theta.tolist() for s in sols]})
        return
    if args.order is None:
        raise SchemaError("/", "enumerate needs --order or --semigroup")
    tables = enumerate_semigroups(args.order, up_to_iso=args.up_to_iso, workers=args.workers,
                                  allow_long=args.allow_long)
    emit({"order": args.order, "up_to_iso": args.up_to_iso, "count": len(tables),
          "tables": [d["table"] for d in semigroup_listing(tables)]})


def cmd_census(args):
    filt = SearchFilter.from_names(args.filter)
    report = census(args.order, filt, args.workers)
    doc = write_catalog(report, args.out) if args.out else report.summary()
    emit(doc)


def cmd_retract(args):
    s = solution_from_json(load(args.file))
    emit(solution_to_json(retract(s)))


def cmd_decompose(args):
    s = solution_from_json(load(args.file))
    d = decompose_involutive(s)
    emit({
        "sizes": {"X": d.x_size, "A": d.A.order, "G": d.G.order},
        "A": d.A.table.tolist(),
        "G": d.G.table.tolist(),
        "sigma": d.sigma.tolist(),
        "witness": d.witness.tolist(),
    })


def cmd_opposite(args):
    s = solution_from_json(load(args.file))
    emit(solution_to_json(opposite(s)))


def cmd_iso(args):
    s = solution_from_json(load(args.first))
    t = solution_from_json(load(args.second))
    psi = solutions_isomorphic(s, t)
    if psi is None:
        raise Failure({"isomorphic": False})
    emit({"isomorphic": True, "psi": psi.tolist()})


# ------------------------------------------------------------------ construct

def _group_mu(G, K, R):
    t = G.table
    inv = group_inverse(G)
    mu = np.empty(G.order, dtype=np.int64)
    for x in range(G.order):
        hits = [r for r in R if t[r, inv[x]] in K]
        if len(hits) != 1:
            raise SchemaError("/R", f"R must meet the coset of {x} exactly once")
        mu[x] = hits[0]
    return mu


def build(kind, p):
    """Run one construction from a parameter object."""
    if kind == "lyubashenko":
        return con.lyubashenko(_field(p, "n"), _field(p, "f"), _field(p, "g"))
    if kind == "endo":
        return con.endo_solution(_semigroup(p, "table"), _field(p, "gamma"))
    if kind == "leftzero-group":
        return con.left_zero_group_solution(_semigroup(p, "group"), _field(p, "n"), _field(p, "sigma"))
    if kind == "factorization":
        out = con.exact_factorization_solutions(_semigroup(p, "group"), set(_field(p, "H")), set(_field(p, "K")))
        return out.r if p.get("which", "s") == "r" else out.s
    if kind == "kashaev-sergeev":
        G = _semigroup(p, "group")
        return con.kashaev_sergeev(G, _field(p, "X"), _field(p, "lambda"), _field(p, "mu"))
    if kind == "group-quotient":
        G = _semigroup(p, "group")
        K = frozenset(_field(p, "K"))
        R = frozenset(_field(p, "R"))
        return con.group_quotient_solution(G, con.GroupSolutionData(K, R, _group_mu(G, K, R)))
    if kind == "matched":
        q = con.MatchedQuadruple(
            solution_from_json(_field(p, "s"), "/s"),
            solution_from_json(_field(p, "t"), "/t"),
            np.asarray(_field(p, "alpha")),
            np.asarray(_field(p, "beta")),
        )
        return con.matched_product(q)
    if kind == "ext-sigma":
        return ext_sigma(_semigroup(p, "A"), _field(p, "x_size"), _field(p, "sigma"))
    if kind == "t-a":
        return t_A(_semigroup(p, "A"))
    if kind == "clifford-glue":
        S = _semigroup(p, "table")
        thetas = {int(e): v for e, v in _field(p, "thetas").items()}
        if "epsilon" in p:
            eps = {}
            for key, v in p["epsilon"].items():
                e, f = (int(x) for x in key.split(","))
                eps[e, f] = np.asarray(v)
        else:
            st = clifford_structure(S)
            eps = {k: _dense(v, S.order) for k, v in default_epsilon(st).items()}
        return glue_e_fixed(S, thetas, eps)
    if kind == "idempotent-central":
        M = _semigroup(p, "table")
        thetas = {int(e): np.asarray(v) for e, v in _field(p, "thetas").items()}
        return construct_idempotent_central(M, IdempotentClassificationData(np.asarray(_field(p, "mu")), thetas))
    raise SchemaError("/kind", f"unknown kind {kind!r}")


def _dense(mapping, n):
    out = np.zeros(n, dtype=np.int64)
    for k, v in mapping.items():
        out[k] = v
    return out


def cmd_construct(args):
    params = load(args.params)
    s = build(args.kind, params)
    emit(solution_to_json(s))


# --------------------------------------------------------------------- main

def parser():
    ap = argparse.ArgumentParser(prog="pe", description="PE solutions on finite semigroups")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("verify", help="check (P1) and (P2) for a solution file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("properties", help="involutive, idempotent, ... flags")
    p.add_argument("file")
    p.add_argument("--convention", choices=["qybe-a", "qybe-b"], default="qybe-a")
    p.set_defaults(func=cmd_properties)

    p = sub.add_parser("enumerate", help="semigroups of an order, or solutions on a semigroup")
    p.add_argument("--order", type=int)
    p.add_argument("--semigroup", help="semigroup JSON file")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--filter", action="append", choices=FILTERS, default=[])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-long", action="store_true", help="permit order 5 (slow)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census", help="solutions of an order up to isomorphism")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--filter", action="append", choices=FILTERS, default=[])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the catalog directory here")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("construct", help="run a construction from a parameter file")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("params")
    p.set_defaults(func=cmd_construct)

    for verb, func, text in (
        ("retract", cmd_retract, "retract of an involutive solution"),
        ("decompose", cmd_decompose, "Ext x s_G decomposition of an involutive solution"),
        ("opposite", cmd_opposite, "opposite of a bijective solution"),
    ):
        p = sub.add_parser(verb, help=text)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("iso", help="isomorphism between two solutions")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)
    return ap


def main(argv=None):
    ap = parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except Failure as exc:
        emit(exc.doc)
        return 1
    except NotAssociative as exc:
        emit({"valid": False, "error": "not associative", "witness": list(exc.witness)})
        return 1
    except SolutionViolation as exc:
        emit({"valid": False, "error": str(exc),
              "violations": {k: list(v) for k, v in exc.violations.items()}})
        return 1
    except (NotInvolutive, NotBijective) as exc:
        emit({"ok": False, "error": str(exc)})
        return 1
    except (SchemaError, OutOfRangeEntry, OrderTooLarge, OSError) as exc:
        print(f"pe: error: {exc}", file=sys.stderr)
        return 2
    except PentagonError as exc:
        emit({"ok": False, "error": f"{type(exc).__name__}: {exc}"})
        return 1
    except ValueError as exc:
        print(f"pe: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
