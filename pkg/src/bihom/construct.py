"""Constructions between BiHom structures.

Each constructor re-verifies the preconditions it needs and raises
:class:`PreconditionError` (or :class:`SingularMatrix` for non-regular maps)
rather than trusting a bundle's kind tag. Outputs are fresh bundles; whether
they satisfy their target axioms is left to the checkers.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .linalg import (MatrixS, SingularMatrix, StructureTensor, basis_vector, bilinear_eval, determinant,
                     is_morphism, mat_inverse, maps_commute, rank, solve_columns, transform, vscale, vsub,
                     zero_vector)
from .models import AlgebraBundle, RepresentationBundle
from .scalar import ONE, ZERO, Scalar
from .verify import (check_bihom_lie, check_bihom_lr, check_bihom_post_lie,
                     check_lie_representation, check_o_operator, check_post_lie_representation,
                     check_rota_baxter, check_tridendriform, combine, regular_maps)

PI_READING = "pi reads the source term mu(u) as mu(x)"


class PreconditionError(ValueError):
    """A construction precondition fails; the message names it."""


class CertificationError(RuntimeError):
    """A post-condition that the construction guarantees did not hold."""


def _require(report, what: str):
    if not report.ok:
        raise PreconditionError(f"{what}: failing axioms {', '.join(report.failed())}")


def _require_twists(t: StructureTensor, a: MatrixS, b: MatrixS, label: str):
    if not maps_commute(a, b):
        raise PreconditionError("twist maps do not commute")
    for name, m in (("first", a), ("second", b)):
        if not is_morphism(t, m):
            raise PreconditionError(f"{name} twist map is not a morphism of the {label}")


def _is_identity_pair(b: AlgebraBundle) -> bool:
    return b.alpha.is_identity() and b.beta.is_identity()


def commutator_tensor(t: StructureTensor, alpha: MatrixS, beta: MatrixS,
                      alpha_inv: MatrixS, beta_inv: MatrixS) -> StructureTensor:
    """(x, y) -> x*y - a^-1 b(y) * a b^-1(x)."""
    left = (alpha_inv @ beta).columns()
    right = (alpha @ beta_inv).columns()
    return StructureTensor.from_function(
        t.dim, lambda i, j: vsub(t.c[i][j], bilinear_eval(t, left[j], right[i])))


def _regular_commutator(b: AlgebraBundle, t: StructureTensor) -> StructureTensor:
    ai, bi = regular_maps(b)
    return commutator_tensor(t, b.alpha, b.beta, ai, bi)


def _bundle(src: AlgebraBundle, name: str, kind: str, ops, maps=None, **kw) -> AlgebraBundle:
    if maps is None:
        maps = {"alpha": src.alpha, "beta": src.beta}
    return AlgebraBundle(name=name, dim=kw.get("dim", src.dim), basis=kw.get("basis", src.basis),
                         parameters=src.parameters, ops=ops, maps=maps, kind=kind)


# -- twisting ----------------------------------------------------------------


def twist_lie(lie: AlgebraBundle, a: MatrixS, b: MatrixS) -> AlgebraBundle:
    """[x, y]' = [a(x), b(y)] from a Lie algebra and two commuting morphisms."""
    if not _is_identity_pair(lie):
        raise PreconditionError("input must have identity structure maps")
    _require(check_bihom_lie(lie), "input is not a Lie algebra")
    _require_twists(lie.bracket, a, b, "bracket")
    return _bundle(lie, f"{lie.name}-twisted", "bihom-lie",
                   {"bracket": transform(lie.bracket, a, b)}, {"alpha": a, "beta": b})


def twist_post_lie(post: AlgebraBundle, a: MatrixS, b: MatrixS) -> AlgebraBundle:
    if not _is_identity_pair(post):
        raise PreconditionError("input must have identity structure maps")
    _require(check_bihom_post_lie(post), "input is not a post-Lie algebra")
    _require_twists(post.bracket, a, b, "bracket")
    _require_twists(post.triangle, a, b, "triangle")
    ops = {"bracket": transform(post.bracket, a, b), "triangle": transform(post.triangle, a, b)}
    return _bundle(post, f"{post.name}-twisted", "bihom-post-lie", ops, {"alpha": a, "beta": b})


# -- post-Lie structures from other structures -------------------------------


def flip_post_lie(lie: AlgebraBundle) -> AlgebraBundle:
    """x > y = [y, x] with torsion the original bracket."""
    _require(check_bihom_lie(lie), "input is not a BiHom-Lie algebra")
    ops = {"bracket": lie.bracket, "triangle": lie.bracket.opposite()}
    return _bundle(lie, f"{lie.name}-flip", "bihom-post-lie", ops)


def sub_adjacent_tensor(post: AlgebraBundle) -> StructureTensor:
    return _regular_commutator(post, post.triangle) + post.bracket


def sub_adjacent(post: AlgebraBundle) -> AlgebraBundle:
    """{x, y} = x > y - a^-1 b(y) > a b^-1(x) + [x, y]."""
    return _bundle(post, f"{post.name}-subadjacent", "bihom-lie", {"bracket": sub_adjacent_tensor(post)})


def admissible_product(post: AlgebraBundle) -> AlgebraBundle:
    """x o y = x > y + 1/2 [x, y]."""
    regular_maps(post)
    half = Scalar.of(1) / 2
    return _bundle(post, f"{post.name}-admissible", "bihom-product",
                   {"dot": post.triangle + post.bracket.scale(half)})


def commutator_bihom_lie(prod: AlgebraBundle, op: str = "dot") -> AlgebraBundle:
    return _bundle(prod, f"{prod.name}-commutator", "bihom-lie",
                   {"bracket": _regular_commutator(prod, prod.ops[op])})


def black_transform(post: AlgebraBundle) -> AlgebraBundle:
    """Torsion -[x, y] and x >> y = x > y + [x, y]."""
    _require(check_bihom_post_lie(post), "input is not a BiHom-post-Lie algebra")
    ops = {"bracket": -post.bracket, "triangle": post.triangle + post.bracket}
    name = post.name[:-6] if post.name.endswith("-black") else f"{post.name}-black"
    return _bundle(post, name, "bihom-post-lie", ops)


def _rename(names: Sequence[str], taken: Sequence[str], suffix: str) -> Tuple[str, ...]:
    taken = set(taken)
    out = []
    for n in names:
        m = n
        while m in taken:
            m = m + suffix
        taken.add(m)
        out.append(m)
    return tuple(out)


def _semidirect(lie: AlgebraBundle, r: RepresentationBundle, vbracket: StructureTensor | None,
                triangle_parts=None, post: AlgebraBundle | None = None, name: str = "") -> AlgebraBundle:
    n, v = lie.dim, r.vdim
    if r.algebra.dim != n:
        raise PreconditionError("representation is over an algebra of another dimension")
    ai, bi = regular_maps(lie)
    for label, m in (("phi", r.phi), ("psi", r.psi)):
        if not determinant(m):
            raise SingularMatrix(f"{label} is singular")
    psi_i = mat_inverse(r.psi)
    twist_u = r.phi @ psi_i
    shift = (ai @ lie.beta).columns()
    N = n + v

    def emb_a(x):
        return tuple(x) + (ZERO,) * v

    def emb_v(u):
        return (ZERO,) * n + tuple(u)

    def bracket(i, j):
        if i < n and j < n:
            return emb_a(lie.bracket.c[i][j])
        if i < n:
            return emb_v(r.rho[i].column(j - n))
        if j < n:
            # -rho(a^-1 b(y)) phi psi^-1 (u)
            m = combine(r.rho, shift[j])
            return emb_v(vscale(-ONE, m.apply(twist_u.column(i - n))))
        if vbracket is None:
            return zero_vector(N)
        return emb_v(vbracket.c[i - n][j - n])

    ops = {"bracket": StructureTensor.from_function(N, bracket)}
    if triangle_parts is not None:
        mu, nu = triangle_parts

        def triangle(i, j):
            if i < n and j < n:
                return emb_a(post.triangle.c[i][j])
            if i < n:
                return emb_v(mu[i].column(j - n))
            if j < n:
                return emb_v(nu[j].column(i - n))
            return zero_vector(N)

        ops["triangle"] = StructureTensor.from_function(N, triangle)
    basis = lie.basis + _rename(r.vbasis, lie.basis, "_V")
    maps = {"alpha": lie.alpha.block_diag(r.phi), "beta": lie.beta.block_diag(r.psi)}
    kind = "bihom-post-lie" if triangle_parts is not None else "bihom-lie"
    return AlgebraBundle(name=name, dim=N, basis=basis, parameters=lie.parameters,
                         ops=ops, maps=maps, kind=kind)


def semidirect_lie(lie: AlgebraBundle, r: RepresentationBundle) -> AlgebraBundle:
    """[x+u, y+v] = [x, y] + rho(x)v - rho(a^-1 b(y)) phi psi^-1 (u)."""
    return _semidirect(lie, r, None, name=f"{lie.name}|x|{r.name}")


def semidirect_module_algebra(lie: AlgebraBundle, r: RepresentationBundle) -> AlgebraBundle:
    """semidirect_lie plus the {u, v} term of the module algebra."""
    if r.vbracket is None:
        raise PreconditionError("representation has no vbracket")
    return _semidirect(lie, r, r.vbracket, name=f"{lie.name}|x|{r.name}")


def semidirect_post_lie(post: AlgebraBundle, r: RepresentationBundle) -> AlgebraBundle:
    """Bracket as semidirect_lie, (x+u) > (y+v) = x > y + mu(x)v + nu(y)u."""
    if r.mu is None or r.nu is None:
        raise PreconditionError("representation needs mu and nu")
    return _semidirect(post, r, None, (r.mu, r.nu), post, name=f"{post.name}|x|{r.name}")


def left_module(post: AlgebraBundle) -> RepresentationBundle:
    """(A, [.,.], L_>, alpha, beta) as a module algebra over the sub-adjacent algebra."""
    sub = sub_adjacent(post)
    n = post.dim
    left = [post.triangle.left_matrix(basis_vector(n, i)) for i in range(n)]
    return RepresentationBundle(algebra=sub, vdim=n, rho=left, phi=post.alpha, psi=post.beta,
                                vbracket=post.bracket, name=f"L({post.name})", vbasis=post.basis)


def double_bracket(post: AlgebraBundle) -> AlgebraBundle:
    """[[(a,x),(b,y)]] = ({a,b}, a > y - a^-1 b(b) > a b^-1(x) + [x,y]) on A x A."""
    regular_maps(post)
    lm = left_module(post)
    out = semidirect_module_algebra(lm.algebra, lm)
    basis = tuple(f"{e}_1" for e in post.basis) + tuple(f"{e}_2" for e in post.basis)
    return out.evolve(name=f"{post.name}-double", basis=basis)


def lr_to_post(lr: AlgebraBundle) -> AlgebraBundle:
    """x > y = -x.y with the commutator bracket."""
    regular_maps(lr)
    _require(check_bihom_lr(lr), "input is not a BiHom-LR algebra")
    d = lr.ops["dot"]
    ops = {"bracket": _regular_commutator(lr, d), "triangle": -d}
    return _bundle(lr, f"{lr.name}-post", "bihom-post-lie", ops)


def tridend_to_post(td: AlgebraBundle) -> AlgebraBundle:
    """[x,y] from the commutator of dot, x > y = x succ y - a^-1 b(y) prec a b^-1(x)."""
    ai, bi = regular_maps(td)
    _require(check_tridendriform(td), "input is not a BiHom-tri-dendriform algebra")
    P, S = td.ops["prec"], td.ops["succ"]
    left = (ai @ td.beta).columns()
    right = (td.alpha @ bi).columns()
    tri = StructureTensor.from_function(td.dim, lambda i, j: vsub(S.c[i][j], bilinear_eval(P, left[j], right[i])))
    ops = {"bracket": commutator_tensor(td.ops["dot"], td.alpha, td.beta, ai, bi), "triangle": tri}
    return _bundle(td, f"{td.name}-post", "bihom-post-lie", ops)


def tridend_to_assoc(td: AlgebraBundle) -> AlgebraBundle:
    _require(check_tridendriform(td), "input is not a BiHom-tri-dendriform algebra")
    star = td.ops["prec"] + td.ops["succ"] + td.ops["dot"]
    return _bundle(td, f"{td.name}-assoc", "bihom-product", {"dot": star})


# -- O-operators and Rota-Baxter operators -----------------------------------


def _weight(r: RepresentationBundle) -> Scalar:
    return r.weight if r.weight is not None else ZERO


def o_operator_induced(r: RepresentationBundle) -> AlgebraBundle:
    """On V: {u, v} = weight [u, v]_V and u > v = rho(T(u)) v."""
    _require(check_o_operator(r), "T is not an O-operator")
    lam = _weight(r)
    v = r.vdim
    Tc = r.T.columns()
    acting = [combine(r.rho, Tc[k]) for k in range(v)]
    tri = StructureTensor.from_function(v, lambda i, j: acting[i].column(j))
    if r.vbracket is not None and lam:
        br = r.vbracket.scale(lam)
    else:
        br = StructureTensor.zero(v)
    return AlgebraBundle(name=f"{r.name}-induced", dim=v, basis=r.vbasis, parameters=r.algebra.parameters,
                         ops={"bracket": br, "triangle": tri}, maps={"alpha": r.phi, "beta": r.psi},
                         kind="bihom-post-lie")


def induced_on_image(r: RepresentationBundle) -> AlgebraBundle:
    """The induced structure transported to T(V), in the basis T(v_1), ..., T(v_n)."""
    if r.T is None or rank(r.T) != r.vdim:
        raise PreconditionError("T is not injective")
    on_v = o_operator_induced(r)
    T = r.T
    v = r.vdim

    def transport(t: StructureTensor) -> StructureTensor:
        images = [T.apply(t.c[i][j]) for i in range(v) for j in range(v)]
        coords = solve_columns(T, images)
        return StructureTensor.from_function(v, lambda i, j: coords[i * v + j])

    def restrict(f: MatrixS) -> MatrixS:
        return MatrixS.from_columns(solve_columns(T, (f @ T).columns()))

    basis = _rename(tuple(f"T_{e}" for e in r.vbasis), (), "_")
    return AlgebraBundle(
        name=f"{r.name}-image", dim=v, basis=basis, parameters=r.algebra.parameters,
        ops={k: transport(t) for k, t in on_v.ops.items()},
        maps={"alpha": restrict(r.algebra.alpha), "beta": restrict(r.algebra.beta)},
        kind="bihom-post-lie",
    )


def compatible_from_invertible_o(r: RepresentationBundle) -> AlgebraBundle:
    """{x, y} = weight T[T^-1 x, T^-1 y]_V and x > y = T(rho(x) T^-1 y) on A.

    The result is certified compatible: its sub-adjacent bracket is the
    bracket of A.
    """
    if r.T is None or not r.T.is_square():
        raise PreconditionError("T must be square")
    if not determinant(r.T):
        raise SingularMatrix("T is singular")
    _require(check_o_operator(r), "T is not an O-operator")
    A = r.algebra
    T = r.T
    Ti = mat_inverse(T)
    lam = _weight(r)
    n = A.dim
    Ti_cols = Ti.columns()
    tri = StructureTensor.from_function(n, lambda i, j: T.apply(r.rho[i].apply(Ti_cols[j])))
    if r.vbracket is not None and lam:
        br = StructureTensor.from_function(
            n, lambda i, j: vscale(lam, T.apply(bilinear_eval(r.vbracket, Ti_cols[i], Ti_cols[j]))))
    else:
        br = StructureTensor.zero(n)
    out = _bundle(A, f"{r.name}-compatible", "bihom-post-lie", {"bracket": br, "triangle": tri})
    if sub_adjacent_tensor(out) != A.bracket:
        raise CertificationError("sub-adjacent bracket differs from the bracket of A")
    return out


def rota_baxter_induced(lie: AlgebraBundle, weight) -> AlgebraBundle:
    """{x, y} = weight [x, y] and x > y = [R(x), y]."""
    weight = Scalar.of(weight, lie.parameters)
    _require(check_rota_baxter(lie, weight), f"R is not a Rota-Baxter operator of weight {weight}")
    ops = {"bracket": lie.bracket.scale(weight), "triangle": transform(lie.bracket, lie.maps["R"])}
    return _bundle(lie, f"{lie.name}-rb", "bihom-post-lie", ops)


def splitting_rota_baxter(lie: AlgebraBundle, split: Tuple[Sequence[int], Sequence[int]], weight) -> MatrixS:
    """R = -weight * (projection onto span I2 along span I1) for a basis splitting."""
    i1, i2 = (sorted(set(s)) for s in split)
    n = lie.dim
    if set(i1) & set(i2) or sorted(i1 + i2) != list(range(n)):
        raise PreconditionError("split is not a partition of the basis indices")
    for part, label in ((i1, "first"), (i2, "second")):
        outside = [k for k in range(n) if k not in part]
        for i in part:
            for m in ("alpha", "beta"):
                col = lie.maps[m].column(i)
                if any(col[k] for k in outside):
                    raise PreconditionError(f"{label} span is not invariant under {m}")
            for j in part:
                if any(lie.bracket.c[i][j][k] for k in outside):
                    raise PreconditionError(f"{label} span is not a subalgebra")
    w = Scalar.of(weight, lie.parameters)
    return MatrixS.diag([-w if k in i2 else ZERO for k in range(n)])


# -- representations ---------------------------------------------------------


def _require_rep_intertwining(family, a, b, f, g, label):
    """family(a x) f = f family(x) and family(b x) g = g family(x) on basis x."""
    acols, bcols = a.columns(), b.columns()
    for i, m in enumerate(family):
        if combine(family, acols[i]) @ f != f @ m or combine(family, bcols[i]) @ g != g @ m:
            raise PreconditionError(f"twist maps do not intertwine {label}")


def _twist_family(family, a: MatrixS, g: MatrixS):
    acols = a.columns()
    return [combine(family, acols[i]) @ g for i in range(len(family))]


def twist_lie_representation(r: RepresentationBundle, a: MatrixS, b: MatrixS,
                             f: MatrixS, g: MatrixS) -> RepresentationBundle:
    """rho~(x) = rho(a(x)) g over the twisted algebra, with phi = f, psi = g."""
    if not (r.phi.is_identity() and r.psi.is_identity()):
        raise PreconditionError("input representation must have identity maps")
    _require(check_lie_representation(r), "input is not a representation")
    if not maps_commute(f, g):
        raise PreconditionError("module twist maps do not commute")
    _require_rep_intertwining(r.rho, a, b, f, g, "rho")
    alg = twist_lie(r.algebra, a, b)
    return RepresentationBundle(algebra=alg, vdim=r.vdim, rho=_twist_family(r.rho, a, g), phi=f, psi=g,
                                name=f"{r.name}-twisted", vbasis=r.vbasis)


def twist_post_lie_representation(r: RepresentationBundle, a: MatrixS, b: MatrixS,
                                  f: MatrixS, g: MatrixS, nu_form: str = "semidirect") -> RepresentationBundle:
    """rho~, mu~ as in the Lie case; nu~(y) = nu(b(y)) f.

    The nu twist is read off the twisted classical semidirect product, where
    (a x + f u) > (b y + g v) contributes nu(b y) f u. ``nu_form="printed"``
    gives nu(a(y)) g instead, which fails on twisted adjoint data.
    """
    if nu_form not in ("semidirect", "printed"):
        raise ValueError(f"unknown nu_form {nu_form!r}")
    if not (r.phi.is_identity() and r.psi.is_identity()):
        raise PreconditionError("input representation must have identity maps")
    _require(check_post_lie_representation(r), "input is not a post-Lie representation")
    if not maps_commute(f, g):
        raise PreconditionError("module twist maps do not commute")
    for label, fam in (("rho", r.rho), ("mu", r.mu), ("nu", r.nu)):
        _require_rep_intertwining(fam, a, b, f, g, label)
    alg = twist_post_lie(r.algebra, a, b)
    return RepresentationBundle(
        algebra=alg, vdim=r.vdim, rho=_twist_family(r.rho, a, g), mu=_twist_family(r.mu, a, g),
        nu=_twist_family(r.nu, b, f) if nu_form == "semidirect" else _twist_family(r.nu, a, g), phi=f, psi=g, name=f"{r.name}-twisted", vbasis=r.vbasis)


def pi_representation(r: RepresentationBundle, verify: bool = True) -> RepresentationBundle:
    """pi(x) = rho(x) + mu(x) - nu(a b^-1(x)) phi^-1 psi over the sub-adjacent algebra."""
    post = r.algebra
    ai, bi = regular_maps(post)
    for label, m in (("phi", r.phi), ("psi", r.psi)):
        if not determinant(m):
            raise SingularMatrix(f"{label} is singular")
    if verify:
        _require(check_post_lie_representation(r), "input is not a post-Lie representation")
    shift = (post.alpha @ bi).columns()
    tail = mat_inverse(r.phi) @ r.psi
    pi = [r.rho[i] + r.mu[i] - combine(r.nu, shift[i]) @ tail for i in range(post.dim)]
    return RepresentationBundle(algebra=sub_adjacent(post), vdim=r.vdim, rho=pi, phi=r.phi, psi=r.psi,
                                name=f"pi({r.name})", vbasis=r.vbasis)


def adjoint_representation(b: AlgebraBundle) -> RepresentationBundle:
    n = b.dim
    ad = [b.bracket.left_matrix(basis_vector(n, i)) for i in range(n)]
    return RepresentationBundle(algebra=b, vdim=n, rho=ad, phi=b.alpha, psi=b.beta,
                                name=f"ad({b.name})", vbasis=b.basis)


def adjoint_post_representation(post: AlgebraBundle) -> RepresentationBundle:
    """(A, ad, L_>, R_>, alpha, beta)."""
    n = post.dim
    e = [basis_vector(n, i) for i in range(n)]
    return RepresentationBundle(
        algebra=post, vdim=n, rho=[post.bracket.left_matrix(x) for x in e],
        mu=[post.triangle.left_matrix(x) for x in e], nu=[post.triangle.right_matrix(x) for x in e],
        phi=post.alpha, psi=post.beta, name=f"postad({post.name})", vbasis=post.basis)


def canonical_representations(b: AlgebraBundle) -> List[RepresentationBundle]:
    """Adjoint for BiHom-Lie; adjoint, post-adjoint and L_> (when regular) for post-Lie."""
    if b.kind == "bihom-lie":
        return [adjoint_representation(b)]
    if b.kind != "bihom-post-lie":
        raise PreconditionError(f"no canonical representations for kind {b.kind}")
    out = [adjoint_representation(b), adjoint_post_representation(b)]
    from .verify import check_regular

    if check_regular(b):
        lm = left_module(b)
        out.append(lm.evolve(vbracket=None, name=f"L({b.name})"))
    return out
