"""JSON documents for bundles and reports.

Operation tables are sparse: keys "Bi,Bj" map to linear combinations such as
``"-4*lambda^2/gamma^2*H + Y"``; unlisted products are zero. Maps are dense
row-major matrices of scalar expressions, with column j the image of basis j.
Serialization is canonical (sorted keys, canonical scalar printing), so
emit -> parse -> emit is byte-identical.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Mapping, Sequence

from .expr import Neg, Num, Pow, Var, parse_scalar_expr
from .linalg import MatrixS, StructureTensor, Vector, zero_vector
from .models import OP_NAMES, AlgebraBundle, RepresentationBundle, ViolationReport
from .scalar import Scalar, format_scalar


class DocumentError(ValueError):
    """Malformed bundle document."""


# -- linear combinations -----------------------------------------------------


def format_coefficient(c: Scalar) -> str:
    s = format_scalar(c)
    if c.denom.is_one() and len(c.numer.terms) > 1:
        s = f"({s})"
    return s


def format_combination(v: Vector, basis: Sequence[str]) -> str:
    parts = []
    for c, name in zip(v, basis):
        if not c:
            continue
        if c == 1:
            term = name
        elif c == -1:
            term = f"-{name}"
        else:
            term = f"{format_coefficient(c)}*{name}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def parse_combination(text: str, basis: Sequence[str], params: Sequence[str]) -> Vector:
    """Evaluate a linear combination of basis names with scalar coefficients."""
    node = parse_scalar_expr(text, list(params) + list(basis))
    index = {b: k for k, b in enumerate(basis)}
    n = len(basis)
    params = tuple(params)

    def ev(nd):
        if isinstance(nd, Num):
            return Scalar.of(nd.value, params)
        if isinstance(nd, Var):
            if nd.name in index:
                v = [Scalar.of(0, params)] * n
                v[index[nd.name]] = Scalar.of(1, params)
                return tuple(v)
            return Scalar.param(nd.name, params)
        if isinstance(nd, Neg):
            x = ev(nd.operand)
            return tuple(-a for a in x) if isinstance(x, tuple) else -x
        if isinstance(nd, Pow):
            x = ev(nd.base)
            if isinstance(x, tuple):
                raise DocumentError(f"cannot raise a vector to a power in {text!r}")
            return x ** nd.exponent
        a, b = ev(nd.left), ev(nd.right)
        va, vb = isinstance(a, tuple), isinstance(b, tuple)
        if nd.op in "+-":
            if va != vb:
                raise DocumentError(f"cannot add a scalar and a vector in {text!r}")
            if va:
                return tuple(x + y if nd.op == "+" else x - y for x, y in zip(a, b))
            return a + b if nd.op == "+" else a - b
        if nd.op == "*":
            if va and vb:
                raise DocumentError(f"product of two basis vectors in {text!r}")
            if va:
                return tuple(x * b for x in a)
            if vb:
                return tuple(a * y for y in b)
            return a * b
        if vb:
            raise DocumentError(f"division by a vector in {text!r}")
        if va:
            return tuple(x / b for x in a)
        return a / b

    if text.strip() == "0":
        return zero_vector(n)
    out = ev(node)
    if not isinstance(out, tuple):
        if not out:
            return zero_vector(n)
        raise DocumentError(f"expected a linear combination of basis vectors, got scalar {text!r}")
    return out


# -- tensors and matrices ----------------------------------------------------


def tensor_to_table(t: StructureTensor, basis: Sequence[str]) -> Dict[str, str]:
    out = {}
    for i in range(t.dim):
        for j in range(t.dim):
            v = t.c[i][j]
            if any(v):
                out[f"{basis[i]},{basis[j]}"] = format_combination(v, basis)
    return out


def table_to_tensor(table: Mapping[str, str], basis: Sequence[str], params: Sequence[str]) -> StructureTensor:
    index = {b: k for k, b in enumerate(basis)}
    entries = {}
    for key, value in table.items():
        names = [s.strip() for s in key.split(",")]
        if len(names) != 2:
            raise DocumentError(f"table key {key!r} must name two basis elements")
        for nm in names:
            if nm not in index:
                raise DocumentError(f"table key {key!r} references unknown basis name {nm!r}")
        if not isinstance(value, str):
            raise DocumentError(f"table entry {key!r} must be a string")
        entries[(index[names[0]], index[names[1]])] = parse_combination(value, basis, params)
    return StructureTensor.from_table(len(basis), entries)


def matrix_to_rows(m: MatrixS) -> List[List[str]]:
    return [[format_scalar(x) for x in row] for row in m.entries]


def rows_to_matrix(rows, params: Sequence[str], shape, label: str) -> MatrixS:
    if not isinstance(rows, list) or len(rows) != shape[0] or any(
            not isinstance(r, list) or len(r) != shape[1] for r in rows):
        raise DocumentError(f"{label} must be a {shape[0]}x{shape[1]} matrix")
    return MatrixS([[_scalar(x, params, label) for x in row] for row in rows])


def _scalar(x, params, label) -> Scalar:
    if isinstance(x, bool):
        raise DocumentError(f"{label}: boolean is not a scalar")
    if isinstance(x, int):
        return Scalar.of(x, params)
    if not isinstance(x, str):
        raise DocumentError(f"{label}: scalar entries must be strings or integers")
    return Scalar.of(x, params)


# -- bundles -----------------------------------------------------------------


def algebra_to_doc(b: AlgebraBundle) -> Dict[str, Any]:
    return {
        "name": b.name,
        "kind": b.kind,
        "dimension": b.dim,
        "basis": list(b.basis),
        "parameters": list(b.parameters),
        "operations": {k: tensor_to_table(t, b.basis) for k, t in b.ops.items()},
        "maps": {k: matrix_to_rows(m) for k, m in b.maps.items()},
    }


def _family_to_doc(family, basis):
    return {basis[i]: matrix_to_rows(m) for i, m in enumerate(family)}


def representation_to_doc(r: RepresentationBundle) -> Dict[str, Any]:
    doc = {
        "name": r.name,
        "kind": "representation",
        "algebra": algebra_to_doc(r.algebra),
        "module_dimension": r.vdim,
        "module_basis": list(r.vbasis),
        "rho": _family_to_doc(r.rho, r.algebra.basis),
        "phi": matrix_to_rows(r.phi),
        "psi": matrix_to_rows(r.psi),
    }
    if r.mu is not None:
        doc["mu"] = _family_to_doc(r.mu, r.algebra.basis)
    if r.nu is not None:
        doc["nu"] = _family_to_doc(r.nu, r.algebra.basis)
    if r.vbracket is not None:
        doc["vbracket"] = tensor_to_table(r.vbracket, r.vbasis)
    if r.T is not None:
        doc["T"] = matrix_to_rows(r.T)
    if r.weight is not None:
        doc["weight"] = format_scalar(r.weight)
    return doc


def to_doc(bundle) -> Dict[str, Any]:
    if isinstance(bundle, RepresentationBundle):
        return representation_to_doc(bundle)
    return algebra_to_doc(bundle)


def dumps(bundle) -> str:
    return json.dumps(to_doc(bundle), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _field(doc, key, typ, label="document"):
    if key not in doc:
        raise DocumentError(f"{label} is missing field {key!r}")
    v = doc[key]
    if not isinstance(v, typ):
        raise DocumentError(f"{label} field {key!r} has the wrong type")
    return v


def _names(doc, key, label) -> tuple:
    names = _field(doc, key, list, label)
    for nm in names:
        if not isinstance(nm, str) or not nm.isidentifier():
            raise DocumentError(f"{label} field {key!r}: {nm!r} is not an identifier")
    return tuple(names)


def algebra_from_doc(doc: Mapping[str, Any]) -> AlgebraBundle:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    basis = _names(doc, "basis", "algebra")
    params = _names(doc, "parameters", "algebra")
    clash = set(basis) & set(params)
    if clash:
        raise DocumentError(f"names used as both basis and parameter: {sorted(clash)}")
    dim = _field(doc, "dimension", int, "algebra")
    if dim != len(basis):
        raise DocumentError(f"dimension {dim} does not match {len(basis)} basis names")
    ops = {}
    for k, table in _field(doc, "operations", dict, "algebra").items():
        if k not in OP_NAMES:
            raise DocumentError(f"unknown operation {k!r}")
        if not isinstance(table, dict):
            raise DocumentError(f"operation {k!r} must be a table")
        ops[k] = table_to_tensor(table, basis, params)
    maps = {k: rows_to_matrix(rows, params, (dim, dim), f"map {k!r}")
            for k, rows in _field(doc, "maps", dict, "algebra").items()}
    return AlgebraBundle(name=str(doc.get("name", "")), dim=dim, basis=basis, parameters=params,
                         ops=ops, maps=maps, kind=_field(doc, "kind", str, "algebra"))


def representation_from_doc(doc: Mapping[str, Any]) -> RepresentationBundle:
    alg = algebra_from_doc(_field(doc, "algebra", dict))
    params = alg.parameters
    vbasis = _names(doc, "module_basis", "representation")
    v = _field(doc, "module_dimension", int, "representation")
    if v != len(vbasis):
        raise DocumentError(f"module dimension {v} does not match {len(vbasis)} basis names")

    def family(key):
        if key not in doc:
            return None
        fam = _field(doc, key, dict, "representation")
        unknown = set(fam) - set(alg.basis)
        if unknown:
            raise DocumentError(f"{key} references unknown basis names {sorted(unknown)}")
        zero = [["0"] * v for _ in range(v)]
        return [rows_to_matrix(fam.get(b, zero), params, (v, v), f"{key}[{b}]") for b in alg.basis]

    vbracket = None
    if "vbracket" in doc:
        vbracket = table_to_tensor(_field(doc, "vbracket", dict), vbasis, params)
    T = None
    if "T" in doc:
        T = rows_to_matrix(doc["T"], params, (alg.dim, v), "T")
    weight = _scalar(doc["weight"], params, "weight") if "weight" in doc else None
    return RepresentationBundle(
        algebra=alg, vdim=v, rho=family("rho") or [MatrixS.zeros(v)] * alg.dim,
        phi=rows_to_matrix(_field(doc, "phi", list), params, (v, v), "phi"),
        psi=rows_to_matrix(_field(doc, "psi", list), params, (v, v), "psi"),
        mu=family("mu"), nu=family("nu"), vbracket=vbracket, T=T, weight=weight,
        name=str(doc.get("name", "")), vbasis=vbasis,
    )


def from_doc(doc: Mapping[str, Any]):
    if isinstance(doc, dict) and doc.get("kind") == "representation":
        return representation_from_doc(doc)
    return algebra_from_doc(doc)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON at byte offset {e.pos}: {e.msg}") from None
    return from_doc(doc)


# -- specialization ----------------------------------------------------------


def specialize(bundle, assignment: Mapping[str, Any]):
    """Substitute parameter values and drop the bound parameters."""
    if not assignment:
        return bundle
    alg = bundle.algebra if isinstance(bundle, RepresentationBundle) else bundle
    unknown = set(assignment) - set(alg.parameters)
    if unknown:
        raise DocumentError(f"unknown parameter(s) {sorted(unknown)}")
    rest = tuple(p for p in alg.parameters if p not in assignment)

    def s(x: Scalar) -> Scalar:
        return x.substitute(assignment).with_params(rest)

    def m(x: MatrixS) -> MatrixS:
        return x.map_entries(s)

    def t(x: StructureTensor) -> StructureTensor:
        return StructureTensor(x.dim, [[tuple(s(a) for a in v) for v in row] for row in x.c])

    def a(b: AlgebraBundle) -> AlgebraBundle:
        return b.evolve(parameters=rest, ops={k: t(v) for k, v in b.ops.items()},
                        maps={k: m(v) for k, v in b.maps.items()})

    if isinstance(bundle, AlgebraBundle):
        return a(bundle)
    r = bundle
    fam = lambda f: None if f is None else [m(x) for x in f]
    return r.evolve(
        algebra=a(r.algebra), rho=fam(r.rho), mu=fam(r.mu), nu=fam(r.nu), phi=m(r.phi), psi=m(r.psi),
        vbracket=None if r.vbracket is None else t(r.vbracket), T=None if r.T is None else m(r.T),
        weight=None if r.weight is None else s(r.weight),
    )


# -- reports -----------------------------------------------------------------


def report_to_doc(rep: ViolationReport) -> Dict[str, Any]:
    return {
        "structure": rep.structure,
        "ok": rep.ok,
        "complete": rep.complete,
        "notes": list(rep.notes),
        "entries": [
            {
                "axiom": e.axiom,
                "status": e.status,
                "failures": e.failures,
                "note": e.note,
                "witnesses": [
                    {"indices": list(w.indices), "labels": list(w.labels),
                     "residual": [format_scalar(x) for x in w.residual]}
                    for w in e.witnesses
                ],
            }
            for e in rep.entries
        ],
    }


def report_to_text(rep: ViolationReport) -> str:
    lines = [rep.summary()]
    for e in rep.entries:
        if e.passed:
            lines.append(f"  PASS {e.axiom}")
            continue
        lines.append(f"  FAIL {e.axiom} ({e.failures} failing tuple{'s' if e.failures != 1 else ''})")
        for w in e.witnesses:
            res = ", ".join(format_scalar(x) for x in w.residual)
            lines.append(f"       at ({','.join(w.labels)}): residual [{res}]")
    if not rep.complete:
        lines.append("  (stopped at first failing axiom)")
    for n in rep.notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines) + "\n"
