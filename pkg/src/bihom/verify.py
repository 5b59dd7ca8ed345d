"""Axiom checkers.

Every identity is multilinear, so it is evaluated on all basis tuples in
lexicographic order. Failures are data: each check returns a
:class:`ViolationReport` whose failing entries carry witnesses (basis index
tuple plus the nonzero residual in the ambient basis). Identities between
operators on a module V are split per V-basis column, so their witnesses end
with a V index.
"""

from __future__ import annotations

import itertools
from functools import wraps
from typing import Callable, Iterable, Optional, Sequence, Tuple

from .linalg import (MatrixS, SingularMatrix, StructureTensor, Vector, basis_vector, bilinear_eval,
                     determinant, is_zero_vector, mat_inverse, vadd, vscale, vsub, vsum)
from .models import (AlgebraBundle, AxiomResult, RepresentationBundle, ShapeError, ViolationReport,
                     Witness, validate_bundle)
from .scalar import ZERO, Scalar

DEFAULT_WITNESS_CAP = 16

NU_ALPHA_READING = (
    "nu-alpha-phi reads the unbalanced source relation as nu(alpha(x)) phi = phi nu(x), "
    "by symmetry with the mu relations"
)


class _FailFast(Exception):
    pass


class _Run:
    """Collects axiom results into one report."""

    def __init__(self, report: ViolationReport, cap: int, fail_fast: bool, prefix: str = ""):
        self.report = report
        self.cap = cap
        self.fail_fast = fail_fast
        self.prefix = prefix

    def nested(self, prefix: str) -> "_Run":
        return _Run(self.report, self.cap, self.fail_fast, self.prefix + prefix)

    def note(self, text: str):
        if text not in self.report.notes:
            self.report.notes.append(text)

    def axiom(self, axiom: str, tuples: Iterable[Tuple[int, ...]], residual: Callable,
              names: Sequence[Sequence[str]], note: str = ""):
        """Evaluate ``residual`` on each tuple; a MatrixS residual is split by column."""
        result = AxiomResult(self.prefix + axiom, True, note=note)
        for t in tuples:
            r = residual(*t)
            if isinstance(r, MatrixS):
                parts = [(t + (k,), col) for k, col in enumerate(r.columns())]
            else:
                parts = [(t, r)]
            for idx, vec in parts:
                if is_zero_vector(vec):
                    continue
                result.passed = False
                result.failures += 1
                if len(result.witnesses) < self.cap:
                    labels = tuple(names[p][i] for p, i in enumerate(idx))
                    result.witnesses.append(Witness(idx, labels, tuple(vec)))
        self.report.entries.append(result)
        if not result.passed and self.fail_fast:
            raise _FailFast()
        return result


def _checker(fn):
    """Give a checker the public keyword interface and fail-fast handling."""

    @wraps(fn)
    def wrapper(bundle, *args, witness_cap: int = DEFAULT_WITNESS_CAP, fail_fast: bool = False,
                _run: Optional[_Run] = None, **kwargs):
        if _run is not None:
            fn(_run, bundle, *args, **kwargs)
            return _run.report
        validate_bundle(bundle)
        report = ViolationReport(structure=bundle.name)
        run = _Run(report, witness_cap, fail_fast)
        try:
            fn(run, bundle, *args, **kwargs)
        except _FailFast:
            report.complete = False
        return report

    return wrapper


# -- helpers -----------------------------------------------------------------


def _pairs(n: int):
    return itertools.product(range(n), repeat=2)


def _triples(n: int):
    return itertools.product(range(n), repeat=3)


def combine(family: Sequence[MatrixS], x: Sequence[Scalar]) -> MatrixS:
    """Linear extension of a basis-indexed family of matrices: sum_i x_i M_i."""
    acc = None
    for c, m in zip(x, family):
        if not c:
            continue
        term = m.scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        return MatrixS.zeros(family[0].rows, family[0].cols)
    return acc


class _Ctx:
    """Basis images under the structure maps, computed once per check."""

    def __init__(self, b: AlgebraBundle):
        n = b.dim
        self.n = n
        self.e = [basis_vector(n, i) for i in range(n)]
        self.al = b.alpha
        self.be = b.beta
        self.a = self.al.columns()
        self.b = self.be.columns()
        self.ab = (self.al @ self.be).columns()
        self.bb = (self.be @ self.be).columns()


def regular_maps(b: AlgebraBundle) -> Tuple[MatrixS, MatrixS]:
    """(alpha^-1, beta^-1); raises SingularMatrix naming the offending map."""
    for name in ("alpha", "beta"):
        if not determinant(b.maps[name]):
            raise SingularMatrix(f"{name} is singular")
    return mat_inverse(b.alpha), mat_inverse(b.beta)


def check_regular(b: AlgebraBundle) -> bool:
    """Both structure maps have nonzero determinant (as rational functions)."""
    return bool(determinant(b.maps["alpha"])) and bool(determinant(b.maps["beta"]))


# -- algebra axioms ----------------------------------------------------------


def _structure_maps(run: _Run, b: AlgebraBundle, ops: Sequence[str]):
    names = [b.basis] * 3
    n = b.dim
    comm = b.alpha @ b.beta - b.beta @ b.alpha
    run.axiom("alpha-beta-commute", [(j,) for j in range(n)], lambda j: comm.column(j), names)
    for op in ops:
        t = b.ops[op]
        suffix = "" if op == "bracket" else f"[{op}]"
        for mname in ("alpha", "beta"):
            f = b.maps[mname]
            cols = f.columns()
            run.axiom(
                f"{mname}-multiplicative{suffix}", _pairs(n),
                lambda i, j, t=t, f=f, cols=cols: vsub(f.apply(t.c[i][j]), bilinear_eval(t, cols[i], cols[j])),
                names,
            )


def _ordered_ops(b: AlgebraBundle):
    from .models import OP_NAMES

    return [o for o in OP_NAMES if o in b.ops]


@_checker
def check_structure_maps(run: _Run, b: AlgebraBundle):
    """alpha beta = beta alpha, and both maps multiplicative for every op."""
    _structure_maps(run, b, _ordered_ops(b))


def _bihom_lie_axioms(run: _Run, b: AlgebraBundle, t: StructureTensor):
    c = _Ctx(b)
    n = c.n
    names = [b.basis] * 3
    run.axiom(
        "bihom-skew", _pairs(n),
        lambda i, j: vadd(bilinear_eval(t, c.b[i], c.a[j]), bilinear_eval(t, c.b[j], c.a[i])),
        names,
    )
    inner = [[bilinear_eval(t, c.b[j], c.a[k]) for k in range(n)] for j in range(n)]

    def jacobi(i, j, k):
        return vsum(
            (bilinear_eval(t, c.bb[i], inner[j][k]),
             bilinear_eval(t, c.bb[j], inner[k][i]),
             bilinear_eval(t, c.bb[k], inner[i][j])), n)

    run.axiom("bihom-jacobi", _triples(n), jacobi, names)


@_checker
def check_bihom_lie(run: _Run, b: AlgebraBundle):
    """Structure maps, BiHom-skew-symmetry and the BiHom-Jacobi cyclic sum."""
    _structure_maps(run, b, ["bracket"])
    _bihom_lie_axioms(run, b, b.bracket)


@_checker
def check_bihom_post_lie(run: _Run, b: AlgebraBundle):
    _structure_maps(run, b, ["bracket", "triangle"])
    _bihom_lie_axioms(run, b, b.bracket)
    br, tr = b.bracket, b.triangle
    c = _Ctx(b)
    n = c.n
    names = [b.basis] * 3

    def cond1(i, j, k):
        lhs = bilinear_eval(tr, c.ab[i], br.c[j][k])
        r1 = bilinear_eval(br, bilinear_eval(tr, c.b[i], c.e[j]), c.b[k])
        r2 = bilinear_eval(br, c.b[j], bilinear_eval(tr, c.a[i], c.e[k]))
        return vsub(lhs, vadd(r1, r2))

    def assoc(x: Vector, y: Vector, k: int) -> Vector:
        # alpha(x) > (y > z) - (x > y) > beta(z), with z = e_k
        ax = c.al.apply(x)
        left = bilinear_eval(tr, ax, bilinear_eval(tr, y, c.e[k]))
        right = bilinear_eval(tr, bilinear_eval(tr, x, y), c.b[k])
        return vsub(left, right)

    def cond2(i, j, k):
        lhs = bilinear_eval(tr, bilinear_eval(br, c.b[i], c.a[j]), c.b[k])
        rhs = vsub(assoc(c.b[i], c.a[j], k), assoc(c.b[j], c.a[i], k))
        return vsub(lhs, rhs)

    run.axiom("post-lie-condition-1", _triples(n), cond1, names)
    run.axiom("post-lie-condition-2", _triples(n), cond2, names)


@_checker
def check_bihom_lr(run: _Run, b: AlgebraBundle):
    _structure_maps(run, b, ["dot"])
    d = b.ops["dot"]
    c = _Ctx(b)
    names = [b.basis] * 3
    run.axiom("lr-condition-1", _triples(c.n),
              lambda i, j, k: vsub(bilinear_eval(d, d.c[i][j], c.a[k]), bilinear_eval(d, d.c[i][k], c.a[j])),
              names)
    run.axiom("lr-condition-2", _triples(c.n),
              lambda i, j, k: vsub(bilinear_eval(d, c.b[i], d.c[j][k]), bilinear_eval(d, c.b[j], d.c[i][k])),
              names)


TRIDEND_AXIOMS = (
    "tridend-prec-prec",
    "tridend-succ-prec",
    "tridend-succ-succ",
    "tridend-dot-succ",
    "tridend-succ-dot",
    "tridend-dot-prec",
    "tridend-dot-dot",
)


@_checker
def check_tridendriform(run: _Run, b: AlgebraBundle):
    """Structure maps for all three products and the seven splitting identities."""
    _structure_maps(run, b, ["prec", "succ", "dot"])
    P, S, D = b.ops["prec"], b.ops["succ"], b.ops["dot"]
    star = P + S + D
    c = _Ctx(b)
    names = [b.basis] * 3
    ev = bilinear_eval
    ids = {
        # (x < y) < b(z) = a(x) < (y * z)
        "tridend-prec-prec": lambda i, j, k: vsub(ev(P, P.c[i][j], c.b[k]), ev(P, c.a[i], star.c[j][k])),
        # (x > y) < b(z) = a(x) > (y < z)
        "tridend-succ-prec": lambda i, j, k: vsub(ev(P, S.c[i][j], c.b[k]), ev(S, c.a[i], P.c[j][k])),
        # a(x) > (y > z) = (x * y) > b(z)
        "tridend-succ-succ": lambda i, j, k: vsub(ev(S, c.a[i], S.c[j][k]), ev(S, star.c[i][j], c.b[k])),
        # a(x) . (y > z) = (x < y) . b(z)
        "tridend-dot-succ": lambda i, j, k: vsub(ev(D, c.a[i], S.c[j][k]), ev(D, P.c[i][j], c.b[k])),
        # a(x) > (y . z) = (x > y) . b(z)
        "tridend-succ-dot": lambda i, j, k: vsub(ev(S, c.a[i], D.c[j][k]), ev(D, S.c[i][j], c.b[k])),
        # a(x) . (y < z) = (x . y) < b(z)
        "tridend-dot-prec": lambda i, j, k: vsub(ev(D, c.a[i], P.c[j][k]), ev(P, D.c[i][j], c.b[k])),
        # a(x) . (y . z) = (x . y) . b(z)
        "tridend-dot-dot": lambda i, j, k: vsub(ev(D, c.a[i], D.c[j][k]), ev(D, D.c[i][j], c.b[k])),
    }
    for name in TRIDEND_AXIOMS:
        run.axiom(name, _triples(c.n), ids[name], names)


@_checker
def check_bihom_associative(run: _Run, b: AlgebraBundle, op: str = "dot"):
    """alpha(x) * (y * z) = (x * y) * beta(z) for the product ``op``."""
    _structure_maps(run, b, [op])
    t = b.ops[op]
    c = _Ctx(b)
    run.axiom("bihom-associative", _triples(c.n),
              lambda i, j, k: vsub(bilinear_eval(t, c.a[i], t.c[j][k]), bilinear_eval(t, t.c[i][j], c.b[k])),
              [b.basis] * 3)


@_checker
def check_admissible(run: _Run, b: AlgebraBundle, op: str = "dot"):
    """The commutator x*y - a^-1 b(y) * a b^-1(x) satisfies the BiHom-Lie axioms."""
    from .construct import commutator_tensor

    _structure_maps(run, b, [op])
    t = commutator_tensor(b.ops[op], *_inv_pair(b))
    lie = b.evolve(ops={"bracket": t}, kind="bihom-lie")
    _bihom_lie_axioms(run.nested("commutator:"), lie, t)


def _inv_pair(b: AlgebraBundle):
    ai, bi = regular_maps(b)
    return b.alpha, b.beta, ai, bi


# -- representations ---------------------------------------------------------


def _lie_rep_axioms(run: _Run, r: RepresentationBundle, bracket: StructureTensor):
    a = _Ctx(r.algebra)
    n = a.n
    A, V = r.algebra.basis, r.vbasis
    rho = r.rho
    rho_of = lambda x: combine(rho, x)
    phi, psi = r.phi, r.psi
    comm = phi @ psi - psi @ phi
    run.axiom("phi-psi-commute", [()], lambda: comm, [V])
    run.axiom("rep-alpha-phi", [(i,) for i in range(n)],
              lambda i: rho_of(a.a[i]) @ phi - phi @ rho[i], [A, V])
    run.axiom("rep-beta-psi", [(i,) for i in range(n)],
              lambda i: rho_of(a.b[i]) @ psi - psi @ rho[i], [A, V])

    def rep3(i, j):
        lhs = rho_of(bilinear_eval(bracket, a.b[i], a.e[j])) @ psi
        rhs = rho_of(a.ab[i]) @ rho[j] - rho_of(a.b[j]) @ rho_of(a.a[i])
        return lhs - rhs

    run.axiom("rep-bracket", _pairs(n), rep3, [A, A, V])


@_checker
def check_lie_representation(run: _Run, r: RepresentationBundle):
    """(V, rho, phi, psi) over the bracket of the base algebra (re-verified)."""
    _structure_maps(run.nested("algebra:"), r.algebra, ["bracket"])
    _bihom_lie_axioms(run.nested("algebra:"), r.algebra, r.algebra.bracket)
    _lie_rep_axioms(run, r, r.algebra.bracket)


def _module_compat(run: _Run, r: RepresentationBundle):
    a = _Ctx(r.algebra)
    n, v = a.n, r.vdim
    vb = r.vbracket
    rho_of = lambda x: combine(r.rho, x)
    psi_cols = r.psi.columns()
    rab = [rho_of(a.ab[i]) for i in range(n)]
    rb = [rho_of(a.b[i]) for i in range(n)]
    ra = [rho_of(a.a[i]) for i in range(n)]

    def compat(i, j, k):
        lhs = rab[i].apply(vb.c[j][k])
        r1 = bilinear_eval(vb, rb[i].column(j), psi_cols[k])
        r2 = bilinear_eval(vb, psi_cols[j], ra[i].column(k))
        return vsub(lhs, vadd(r1, r2))

    run.axiom("module-algebra-compat", itertools.product(range(n), range(v), range(v)), compat,
              [r.algebra.basis, r.vbasis, r.vbasis])


@_checker
def check_module_k_algebra(run: _Run, r: RepresentationBundle):
    if r.vbracket is None:
        raise ShapeError(["module K-algebra check needs vbracket"])
    m = r.module_algebra()
    _structure_maps(run.nested("module:"), m, ["bracket"])
    _bihom_lie_axioms(run.nested("module:"), m, m.bracket)
    check_lie_representation(r, _run=run)
    _module_compat(run, r)


@_checker
def check_o_operator(run: _Run, r: RepresentationBundle):
    """Intertwining T phi = alpha T, T psi = beta T, and the weighted O-operator identity."""
    if r.T is None:
        raise ShapeError(["O-operator check needs T"])
    lam = r.weight if r.weight is not None else ZERO
    if lam and r.vbracket is None:
        raise ShapeError(["nonzero weight needs vbracket"])
    for label, m in (("phi", r.phi), ("psi", r.psi)):
        if not determinant(m):
            raise SingularMatrix(f"{label} is singular")
    phi_i, psi_i = mat_inverse(r.phi), mat_inverse(r.psi)
    if r.vbracket is not None:
        check_module_k_algebra(r, _run=run.nested("module-algebra:"))
    else:
        check_lie_representation(r, _run=run.nested("representation:"))
    b = r.algebra
    T = r.T
    V = r.vbasis
    run.axiom("o-intertwine-phi", [()], lambda: T @ r.phi - b.alpha @ T, [V])
    run.axiom("o-intertwine-psi", [()], lambda: T @ r.psi - b.beta @ T, [V])
    br = b.bracket
    Tc = T.columns()
    vdim = r.vdim
    rho_T = [combine(r.rho, Tc[k]) for k in range(vdim)]
    twist_v = (phi_i @ r.psi).columns()    # phi^-1 psi (v)
    twist_u = (r.phi @ psi_i).columns()    # phi psi^-1 (u)

    def identity(j, k):
        lhs = bilinear_eval(br, Tc[j], Tc[k])
        inner = vsub(rho_T[j].column(k), combine(r.rho, T.apply(twist_v[k])).apply(twist_u[j]))
        if lam:
            inner = vadd(inner, vscale(lam, r.vbracket.c[j][k]))
        return vsub(lhs, T.apply(inner))

    run.axiom("o-operator-identity", _pairs(vdim), identity, [V, V])


def adjoint_module(b: AlgebraBundle, T: MatrixS | None = None, weight: Scalar | None = None) -> RepresentationBundle:
    """(A, [.,.], ad, alpha, beta) as an A-module K-algebra."""
    n = b.dim
    ad = [b.bracket.left_matrix(basis_vector(n, i)) for i in range(n)]
    return RepresentationBundle(
        algebra=b, vdim=n, rho=ad, phi=b.alpha, psi=b.beta, vbracket=b.bracket,
        T=T, weight=weight, name=f"ad({b.name})", vbasis=b.basis,
    )


@_checker
def check_rota_baxter(run: _Run, b: AlgebraBundle, weight: Scalar | int = 0):
    """Rota-Baxter operator ``R`` of the given weight, via the adjoint O-operator form.

    With singular structure maps only weight 0 is accepted, and the direct
    form [R x, R y] = R([R x, y] + [x, R y]) is used.
    """
    weight = Scalar.of(weight)
    if "R" not in b.maps:
        raise ShapeError(["bundle has no map R"])
    R = b.maps["R"]
    if check_regular(b):
        check_o_operator(adjoint_module(b, R, weight), _run=run)
        return
    if weight:
        regular_maps(b)  # raises naming the singular map
    run.note("structure maps are singular: weight-0 identity checked in direct form")
    n = b.dim
    br = b.bracket
    names = [b.basis] * 2
    run.axiom("rb-commute-alpha", [()], lambda: R @ b.alpha - b.alpha @ R, [b.basis])
    run.axiom("rb-commute-beta", [()], lambda: R @ b.beta - b.beta @ R, [b.basis])
    Rc = R.columns()
    e = [basis_vector(n, i) for i in range(n)]
    run.axiom(
        "rota-baxter-identity", _pairs(n),
        lambda i, j: vsub(bilinear_eval(br, Rc[i], Rc[j]),
                          R.apply(vadd(bilinear_eval(br, Rc[i], e[j]), bilinear_eval(br, e[i], Rc[j])))),
        names,
    )


@_checker
def check_post_lie_representation(run: _Run, r: RepresentationBundle, nu_bracket_form: str = "semidirect"):
    """Intertwining, the Lie representation axioms over the torsion, and four mixed identities.

    ``nu_bracket_form`` selects the identity for nu of a bracket: "semidirect"
    (default) is the form forced by the semidirect product and needs regular
    alpha, beta; "printed" is the untwisted form
    nu([x,y]) phi psi = rho(b x) nu(y) phi - rho(b y) nu(x) psi, which agrees
    with it when alpha = beta and phi = psi.
    """
    if nu_bracket_form not in ("semidirect", "printed"):
        raise ValueError(f"unknown nu_bracket_form {nu_bracket_form!r}")
    if r.mu is None or r.nu is None:
        raise ShapeError(["post-Lie representation needs mu and nu"])
    b = r.algebra
    check_bihom_post_lie(b, _run=run.nested("algebra:"))
    _lie_rep_axioms(run, r, b.bracket)
    c = _Ctx(b)
    n = c.n
    A, V = b.basis, r.vbasis
    phi, psi = r.phi, r.psi
    mu, nu, rho = r.mu, r.nu, r.rho
    M = lambda x: combine(mu, x)
    N = lambda x: combine(nu, x)
    P = lambda x: combine(rho, x)
    singles = [(i,) for i in range(n)]
    run.axiom("mu-alpha-phi", singles, lambda i: M(c.a[i]) @ phi - phi @ mu[i], [A, V])
    run.axiom("mu-beta-psi", singles, lambda i: M(c.b[i]) @ psi - psi @ mu[i], [A, V])
    run.axiom("nu-alpha-phi", singles, lambda i: N(c.a[i]) @ phi - phi @ nu[i], [A, V], note=NU_ALPHA_READING)
    run.axiom("nu-beta-psi", singles, lambda i: N(c.b[i]) @ psi - psi @ nu[i], [A, V])
    run.note(NU_ALPHA_READING)
    br, tr = b.bracket, b.triangle
    ev = bilinear_eval
    phipsi = phi @ psi
    names = [A, A, V]

    if nu_bracket_form == "printed":
        def nu_bracket(i, j):
            # nu([x,y]) phi psi = rho(b x) nu(y) phi - rho(b y) nu(x) psi
            return N(br.c[i][j]) @ phipsi - (P(c.b[i]) @ nu[j] @ phi - P(c.b[j]) @ nu[i] @ psi)
    else:
        ai, bi = regular_maps(b)
        left = (ai @ c.be @ c.be).columns()   # a^-1 b^2 (y)
        right = (c.al @ bi).columns()         # a b^-1 (x)

        def nu_bracket(i, j):
            # nu([x,y]) phi psi = rho(b x) nu(y) phi - rho(a^-1 b^2 y) nu(a b^-1 x) phi
            return N(br.c[i][j]) @ phipsi - (P(c.b[i]) @ nu[j] @ phi - P(left[j]) @ N(right[i]) @ phi)

    def rho_triangle(i, j):
        # rho(b x > y) psi = mu(ab x) rho(y) - rho(b y) mu(a x)
        return P(ev(tr, c.b[i], c.e[j])) @ psi - (M(c.ab[i]) @ rho[j] - P(c.b[j]) @ M(c.a[i]))

    def mu_bracket(i, j):
        # mu([b x, a y]) psi = mu(ab x) mu(a y) - mu(b x > a y) psi - mu(ab y) mu(a x) + mu(b y > a x) psi
        lhs = M(ev(br, c.b[i], c.a[j])) @ psi
        rhs = (M(c.ab[i]) @ M(c.a[j]) - M(ev(tr, c.b[i], c.a[j])) @ psi
               - M(c.ab[j]) @ M(c.a[i]) + M(ev(tr, c.b[j], c.a[i])) @ psi)
        return lhs - rhs

    def nu_rho(i, j):
        # nu(b y) rho(b x) phi = mu(ab x) nu(y) phi - nu(b y) mu(b x) phi
        #                        - nu(a x > y) phi psi + nu(b y) nu(a x) psi
        lhs = N(c.b[j]) @ P(c.b[i]) @ phi
        rhs = (M(c.ab[i]) @ nu[j] @ phi - N(c.b[j]) @ M(c.b[i]) @ phi
               - N(ev(tr, c.a[i], c.e[j])) @ phipsi + N(c.b[j]) @ N(c.a[i]) @ psi)
        return lhs - rhs

    run.axiom("postrep-nu-bracket", _pairs(n), nu_bracket, names)
    run.axiom("postrep-rho-triangle", _pairs(n), rho_triangle, names)
    run.axiom("postrep-mu-bracket", _pairs(n), mu_bracket, names)
    run.axiom("postrep-nu-rho", _pairs(n), nu_rho, names)
