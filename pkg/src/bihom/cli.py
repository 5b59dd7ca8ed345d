"""Command line front end: ``bihom check | construct | catalog``.

Exit codes: 0 all axioms pass, 1 some axiom fails, 2 input, shape or
precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import construct as C
from . import verify as V
from .catalog import CATALOG, emit
from .expr import ExprSyntaxError
from .io import (DocumentError, dumps, loads, report_to_doc, report_to_text, specialize)
from .linalg import DimensionMismatch, SingularMatrix
from .models import AlgebraBundle, RepresentationBundle, ShapeError
from .scalar import InadmissibleSpecialization, Scalar

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


# -- checks ------------------------------------------------------------------

ALGEBRA_CHECKS: Dict[str, Callable] = {
    "bihom-lie": V.check_bihom_lie,
    "bihom-post-lie": V.check_bihom_post_lie,
    "bihom-lr": V.check_bihom_lr,
    "bihom-tridendriform": V.check_tridendriform,
    "bihom-product": V.check_admissible,
    "bihom-associative": V.check_bihom_associative,
    "structure-maps": V.check_structure_maps,
    "rota-baxter": V.check_rota_baxter,
}

REP_CHECKS: Dict[str, Callable] = {
    "bihom-lie-rep": V.check_lie_representation,
    "module-k-algebra": V.check_module_k_algebra,
    "o-operator": V.check_o_operator,
    "post-lie-rep": V.check_post_lie_representation,
}


def default_rep_kind(r: RepresentationBundle) -> str:
    if r.mu is not None or r.nu is not None:
        return "post-lie-rep"
    if r.T is not None:
        return "o-operator"
    if r.vbracket is not None:
        return "module-k-algebra"
    return "bihom-lie-rep"


def run_check(bundle, kind: Optional[str], weight: Optional[str], witness_cap: int, fail_fast: bool):
    opts = {"witness_cap": witness_cap, "fail_fast": fail_fast}
    if isinstance(bundle, RepresentationBundle):
        kind = kind or default_rep_kind(bundle)
        if kind not in REP_CHECKS:
            raise UsageError(f"kind {kind!r} does not apply to a representation document")
        if weight is not None:
            bundle = bundle.evolve(weight=Scalar.of(weight, bundle.algebra.parameters))
        return REP_CHECKS[kind](bundle, **opts)
    kind = kind or bundle.kind
    if kind not in ALGEBRA_CHECKS:
        raise UsageError(f"kind {kind!r} does not apply to an algebra document")
    if kind == "rota-baxter":
        return V.check_rota_baxter(bundle, Scalar.of(weight or "0", bundle.parameters), **opts)
    return ALGEBRA_CHECKS[kind](bundle, **opts)


# -- constructions -----------------------------------------------------------


def _alg(x) -> AlgebraBundle:
    if not isinstance(x, AlgebraBundle):
        raise UsageError("construction expects an algebra document")
    return x


def _rep(x) -> RepresentationBundle:
    if not isinstance(x, RepresentationBundle):
        raise UsageError("construction expects a representation document")
    return x


def _with_weight(r: RepresentationBundle, weight):
    if weight is None:
        return r
    return r.evolve(weight=Scalar.of(weight, r.algebra.parameters))


# name -> (arity, build(inputs, weight), verify(output))
CONSTRUCTIONS = {
    "flip-post-lie": (1, lambda xs, w: C.flip_post_lie(_alg(xs[0])), V.check_bihom_post_lie),
    "sub-adjacent": (1, lambda xs, w: C.sub_adjacent(_alg(xs[0])), V.check_bihom_lie),
    "admissible-product": (1, lambda xs, w: C.admissible_product(_alg(xs[0])), V.check_admissible),
    "commutator": (1, lambda xs, w: C.commutator_bihom_lie(_alg(xs[0])), V.check_bihom_lie),
    "black-transform": (1, lambda xs, w: C.black_transform(_alg(xs[0])), V.check_bihom_post_lie),
    "double-bracket": (1, lambda xs, w: C.double_bracket(_alg(xs[0])), V.check_bihom_lie),
    "lr-to-post": (1, lambda xs, w: C.lr_to_post(_alg(xs[0])), V.check_bihom_post_lie),
    "tridend-to-post": (1, lambda xs, w: C.tridend_to_post(_alg(xs[0])), V.check_bihom_post_lie),
    "tridend-to-assoc": (1, lambda xs, w: C.tridend_to_assoc(_alg(xs[0])), V.check_bihom_associative),
    "rota-baxter-induced": (
        1, lambda xs, w: C.rota_baxter_induced(_alg(xs[0]), Scalar.of(w or "0", xs[0].parameters)),
        V.check_bihom_post_lie),
    "o-operator-induced": (
        1, lambda xs, w: C.o_operator_induced(_with_weight(_rep(xs[0]), w)), V.check_bihom_post_lie),
    "induced-on-image": (
        1, lambda xs, w: C.induced_on_image(_with_weight(_rep(xs[0]), w)), V.check_bihom_post_lie),
    "compatible-from-invertible-o": (
        1, lambda xs, w: C.compatible_from_invertible_o(_with_weight(_rep(xs[0]), w)), V.check_bihom_post_lie),
    "semidirect-lie": (
        1, lambda xs, w: C.semidirect_lie(_rep(xs[0]).algebra, _rep(xs[0])), V.check_bihom_lie),
    "semidirect-module-algebra": (
        1, lambda xs, w: C.semidirect_module_algebra(_rep(xs[0]).algebra, _rep(xs[0])), V.check_bihom_lie),
    "semidirect-post-lie": (
        1, lambda xs, w: C.semidirect_post_lie(_rep(xs[0]).algebra, _rep(xs[0])), V.check_bihom_post_lie),
    "pi-representation": (1, lambda xs, w: C.pi_representation(_rep(xs[0])), V.check_lie_representation),
    "adjoint": (1, lambda xs, w: C.adjoint_representation(_alg(xs[0])), V.check_lie_representation),
    "adjoint-post": (
        1, lambda xs, w: C.adjoint_post_representation(_alg(xs[0])), V.check_post_lie_representation),
}


# -- plumbing ----------------------------------------------------------------


def parse_bindings(items: List[str]) -> Dict[str, Fraction]:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--param value for {name!r} must be a rational number") from None
    return out


def read_bundle(path: str, bindings):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return specialize(loads(text), bindings)


def write_text(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def emit_report(rep, fmt: str, stream):
    if fmt == "json":
        stream.write(json.dumps(report_to_doc(rep), sort_keys=True, indent=2) + "\n")
    else:
        stream.write(report_to_text(rep))


def cmd_check(args) -> int:
    bundle = read_bundle(args.file, parse_bindings(args.param))
    rep = run_check(bundle, args.kind, args.weight, args.witness_cap, args.fail_fast)
    emit_report(rep, args.format, sys.stdout)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_construct(args) -> int:
    if args.construction not in CONSTRUCTIONS:
        raise UsageError(f"unknown construction {args.construction!r}; known: {', '.join(CONSTRUCTIONS)}")
    arity, build, verify = CONSTRUCTIONS[args.construction]
    if len(args.inputs) != arity:
        raise UsageError(f"{args.construction} takes {arity} input file(s)")
    bindings = parse_bindings(args.param)
    inputs = [read_bundle(p, bindings) for p in args.inputs]
    out = build(inputs, args.weight)
    write_text(dumps(out), args.out)
    rep = verify(out, witness_cap=args.witness_cap, fail_fast=args.fail_fast)
    emit_report(rep, args.format, sys.stdout if args.out else sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.name not in CATALOG:
        raise UsageError(f"unknown catalog name {args.name!r}; known: {', '.join(CATALOG)}")
    bundle = specialize(emit(args.name), parse_bindings(args.param))
    write_text(dumps(bundle), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bihom", description="Exact checks and constructions for BiHom algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, checks=True):
        sp.add_argument("--param", action="append", metavar="NAME=VALUE", help="specialize a parameter")
        sp.add_argument("--out", help="output path (default stdout)")
        if checks:
            sp.add_argument("--format", choices=("text", "json"), default="text")
            sp.add_argument("--fail-fast", action="store_true", help="stop at the first failing axiom")
            sp.add_argument("--witness-cap", type=int, default=V.DEFAULT_WITNESS_CAP, metavar="N")
            sp.add_argument("--weight", metavar="EXPR", help="weight for rota-baxter or O-operator data")

    c = sub.add_parser("check", help="verify a bundle document")
    c.add_argument("file")
    c.add_argument("--kind", choices=sorted(ALGEBRA_CHECKS) + sorted(REP_CHECKS))
    common(c)
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("construct", help="build a new bundle and verify it")
    k.add_argument("construction", metavar="NAME", help=", ".join(CONSTRUCTIONS))
    k.add_argument("inputs", nargs="+", metavar="FILE")
    common(k)
    k.set_defaults(func=cmd_construct)

    g = sub.add_parser("catalog", help="write a built-in bundle document")
    g.add_argument("name", help=", ".join(CATALOG))
    common(g, checks=False)
    g.set_defaults(func=cmd_catalog)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except ShapeError as e:
        msg = "shape error:\n" + "\n".join(f"  - {i}" for i in e.issues)
    except ExprSyntaxError as e:
        msg = f"parse error: {e}"
    except (UsageError, DocumentError, C.PreconditionError, SingularMatrix, DimensionMismatch,
            InadmissibleSpecialization, KeyError) as e:
        msg = str(e).strip("'\"")
    sys.stderr.write(f"error: {msg}\n")
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
