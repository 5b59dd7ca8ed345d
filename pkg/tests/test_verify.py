"""Axiom checkers: worked examples, mutations, and structural properties."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihom import construct as C
from bihom import verify as V
from bihom.catalog import SL2_PARAMS, emit, sl2_classical
from bihom.expr import parse_scalar
from bihom.linalg import MatrixS, SingularMatrix, StructureTensor, bilinear_eval, vadd
from bihom.models import AlgebraBundle, RepresentationBundle, ShapeError
from bihom.scalar import Scalar
from strategies import small_fraction

X, Y, H = 0, 1, 2


def S(text, params=SL2_PARAMS):
    return parse_scalar(text, params)


def labels(rep, axiom):
    return [w.labels for w in rep.entry(axiom).witnesses]


def edit(t: StructureTensor, i, j, f) -> StructureTensor:
    """Copy of t with the product of basis i and j replaced by f(old vector)."""
    return StructureTensor.from_function(t.dim, lambda a, b: list(f(t.product(a, b))) if (a, b) == (i, j)
                                         else t.product(a, b))


def algebra(name, kind, n, ops, alpha=None, beta=None, params=()):
    ident = MatrixS.identity(n)
    return AlgebraBundle(name=name, dim=n, basis=tuple(f"e{k + 1}" for k in range(n)), parameters=params,
                         ops=ops, maps={"alpha": alpha or ident, "beta": beta or ident}, kind=kind)


# -- structure maps and BiHom-Lie --------------------------------------------


def test_structure_maps(sl2):
    assert V.check_structure_maps(sl2).ok
    assert V.check_structure_maps(sl2_classical()).ok


def test_corrupted_beta_fails_multiplicativity(sl2):
    cols = sl2.beta.columns()
    cols[X] = (cols[X][0], Scalar.of(1, SL2_PARAMS), cols[X][2])  # beta(X) gains a Y component
    rep = V.check_structure_maps(sl2.with_maps(beta=MatrixS.from_columns(cols)))
    assert "beta-multiplicative" in rep.failed()
    assert ("H", "X") in labels(rep, "beta-multiplicative")
    assert "alpha-multiplicative" not in rep.failed()


def test_sl2_family_is_bihom_lie(sl2):
    rep = V.check_bihom_lie(sl2)
    assert rep.ok and rep.complete
    assert {"bihom-skew", "bihom-jacobi", "alpha-beta-commute"} <= set(rep.axioms())


def test_zero_bracket_any_commuting_maps():
    a = MatrixS.diag([2, 3])
    b = MatrixS.diag([5, Fraction(1, 7)])
    assert V.check_bihom_lie(algebra("z", "bihom-lie", 2, {"bracket": StructureTensor.zero(2)}, a, b)).ok


def test_jacobi_mutation(sl2):
    # [H, X] = 2 gamma^2 X becomes 3 gamma^2 X
    br = edit(sl2.bracket, H, X, lambda v: [c * Fraction(3, 2) for c in v])
    assert br.product(H, X)[X] == S("3*gamma^2")
    rep = V.check_bihom_lie(sl2.with_ops(bracket=br))
    assert "bihom-jacobi" in rep.failed()
    jac = rep.entry("bihom-jacobi")
    assert jac.witnesses and all(len(w.indices) == 3 for w in jac.witnesses)
    assert ("X", "Y", "H") in labels(rep, "bihom-jacobi")
    assert all(any(c for c in w.residual) for w in jac.witnesses)


def _cyclic_jacobi(b, x, y, z):
    """Jacobi cyclic sum on vectors, independent of the checker."""
    al, be = b.alpha, b.beta
    br = b.bracket
    total = None
    for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
        term = bilinear_eval(br, be.apply(be.apply(u)), bilinear_eval(br, be.apply(v), al.apply(w)))
        total = term if total is None else vadd(total, term)
    return total


def test_basis_sufficiency_on_random_vectors(sl2, sl2_post):
    rng = random.Random(7)

    def rv():
        return tuple(Scalar.of(Fraction(rng.randint(-5, 5), rng.randint(1, 3)), SL2_PARAMS) for _ in range(3))

    al, be, tr, br = sl2_post.alpha, sl2_post.beta, sl2_post.triangle, sl2_post.bracket
    for _ in range(4):
        x, y, z = rv(), rv(), rv()
        assert not any(_cyclic_jacobi(sl2, x, y, z))
        skew = vadd(bilinear_eval(sl2.bracket, sl2.beta.apply(x), sl2.alpha.apply(y)),
                    bilinear_eval(sl2.bracket, sl2.beta.apply(y), sl2.alpha.apply(x)))
        assert not any(skew)
        # post-Lie condition 1 on vectors
        lhs = bilinear_eval(tr, al.apply(be.apply(x)), bilinear_eval(br, y, z))
        rhs = vadd(bilinear_eval(br, bilinear_eval(tr, be.apply(x), y), be.apply(z)),
                   bilinear_eval(br, be.apply(y), bilinear_eval(tr, al.apply(x), z)))
        assert lhs == rhs


def test_reports_are_deterministic(sl2):
    br = edit(sl2.bracket, H, X, lambda v: [c * 3 for c in v])
    bad = sl2.with_ops(bracket=br)
    assert V.check_bihom_lie(bad) == V.check_bihom_lie(bad)


def test_witness_cap_and_fail_fast(sl2):
    bad = sl2.with_ops(bracket=edit(sl2.bracket, H, X, lambda v: [c * 3 for c in v]))
    rep = V.check_bihom_lie(bad, witness_cap=1)
    jac = rep.entry("bihom-jacobi")
    assert len(jac.witnesses) == 1 and jac.failures > 1
    ff = V.check_bihom_lie(bad, fail_fast=True)
    assert not ff.complete and len(ff.failed()) == 1


def test_witness_order_is_lexicographic(sl2):
    bad = sl2.with_ops(bracket=edit(sl2.bracket, H, X, lambda v: [c * 3 for c in v]))
    idx = [w.indices for w in V.check_bihom_lie(bad).entry("bihom-jacobi").witnesses]
    assert idx == sorted(idx)


# -- post-Lie ----------------------------------------------------------------


def test_induced_sl2_is_post_lie(sl2_post):
    rep = V.check_bihom_post_lie(sl2_post)
    assert rep.ok
    assert {"post-lie-condition-1", "post-lie-condition-2", "alpha-multiplicative[triangle]"} <= set(rep.axioms())


def test_degenerate_post_lie():
    z = StructureTensor.zero(2)
    assert V.check_bihom_post_lie(algebra("z", "bihom-post-lie", 2, {"bracket": z, "triangle": z})).ok


def _classical_post_lie_failures(br, tr, n):
    """Brute-force classical post-Lie conditions with plain fractions."""
    def prod(t, u, v):
        return [sum((u[i] * v[j] * t.c[i][j][k].constant_value() for i in range(n) for j in range(n)),
                    Fraction(0)) for k in range(n)]

    def add(*vs):
        return [sum(c) for c in zip(*vs)]

    def neg(u):
        return [-c for c in u]

    e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    bad = set()
    for i, j, k in itertools.product(range(n), repeat=3):
        x, y, z = e[i], e[j], e[k]
        c1 = add(prod(tr, x, prod(br, y, z)), neg(prod(br, prod(tr, x, y), z)), neg(prod(br, y, prod(tr, x, z))))
        if any(c1):
            bad.add("post-lie-condition-1")

        def assoc(a, b, c):
            return add(prod(tr, a, prod(tr, b, c)), neg(prod(tr, prod(tr, a, b), c)))

        c2 = add(prod(tr, prod(br, x, y), z), neg(assoc(x, y, z)), assoc(y, x, z))
        if any(c2):
            bad.add("post-lie-condition-2")
    return bad


@pytest.fixture(scope="module")
def classical_post():
    lie = sl2_classical().with_maps(R=MatrixS.diag([0, 1, 1]))  # splitting span{X} + span{Y, H}, weight -1
    return C.rota_baxter_induced(lie, -1)


def test_classical_post_lie_matches_brute_force(classical_post):
    assert V.check_bihom_post_lie(classical_post).ok
    assert not _classical_post_lie_failures(classical_post.bracket, classical_post.triangle, 3)


@pytest.mark.parametrize("i,j,k", [(H, X, X), (Y, H, Y), (H, Y, H), (X, X, H)])
def test_classical_triangle_mutation(classical_post, i, j, k):
    one = Scalar.of(1)
    tr = edit(classical_post.triangle, i, j, lambda v: [c + one if m == k else c for m, c in enumerate(v)])
    mutated = classical_post.with_ops(triangle=tr)
    failed = set(V.check_bihom_post_lie(mutated).failed())
    assert failed
    assert failed <= {"post-lie-condition-1", "post-lie-condition-2"}
    assert failed == _classical_post_lie_failures(mutated.bracket, tr, 3)


def test_identity_maps_collapse_to_classical_lie():
    lie = sl2_classical()
    assert V.check_bihom_lie(lie).ok
    # antisymmetry and Jacobi for the classical bracket directly
    br = lie.bracket
    for i, j in itertools.product(range(3), repeat=2):
        assert not any(vadd(br.product(i, j), br.product(j, i)))


@st.composite
def commutative_in_bihom_sense(draw):
    """Random regular diagonal maps and x > y := s(b^-1 x, a^-1 y) with s symmetric."""
    n = 2
    nz = small_fraction.filter(bool)
    a = MatrixS.diag([draw(nz) for _ in range(n)])
    b = MatrixS.diag([draw(nz) for _ in range(n)])
    sym = {}
    for i in range(n):
        for j in range(i, n):
            sym[(i, j)] = sym[(j, i)] = [Scalar.of(draw(small_fraction)) for _ in range(n)]
    s = StructureTensor.from_table(n, sym)
    br = StructureTensor.from_function(n, lambda i, j: [Scalar.of(draw(small_fraction)) for _ in range(n)])
    ai, bi = a.inverse(), b.inverse()
    tr = StructureTensor.from_function(n, lambda i, j: bilinear_eval(s, bi.column(i), ai.column(j)))
    return algebra("c", "bihom-post-lie", n, {"bracket": br, "triangle": tr}, a, b)


@given(commutative_in_bihom_sense())
@settings(max_examples=30)
def test_bihom_commutative_triangle_gives_torsion(p):
    for i, j in itertools.product(range(p.dim), repeat=2):
        lhs = bilinear_eval(p.triangle, p.beta.column(i), p.alpha.column(j))
        assert lhs == bilinear_eval(p.triangle, p.beta.column(j), p.alpha.column(i))
    assert C.sub_adjacent(p).bracket == p.bracket


# -- LR and tri-dendriform ---------------------------------------------------


def test_lr_zero_passes():
    assert V.check_bihom_lr(algebra("z", "bihom-lr", 2, {"dot": StructureTensor.zero(2)})).ok


def test_lr_nilpotent_passes():
    dot = StructureTensor.from_table(2, {(0, 0): [0, 1]})
    assert V.check_bihom_lr(algebra("n", "bihom-lr", 2, {"dot": dot})).ok


def test_lr_listed_counterexample_actually_passes():
    # e1.e2 = e1: every triple product vanishes or is symmetric, so both conditions hold
    dot = StructureTensor.from_table(2, {(0, 1): [1, 0]})
    assert V.check_bihom_lr(algebra("m", "bihom-lr", 2, {"dot": dot})).ok


def test_lr_failure():
    dot = StructureTensor.from_table(2, {(0, 0): [1, 0], (0, 1): [0, 1]})
    rep = V.check_bihom_lr(algebra("f", "bihom-lr", 2, {"dot": dot}))
    assert "lr-condition-1" in rep.failed()
    assert ("e1", "e1", "e2") in labels(rep, "lr-condition-1")


def test_tridend_catalog_passes(tridend):
    rep = V.check_tridendriform(tridend)
    assert rep.ok
    assert [a for a in rep.axioms() if a.startswith("tridend-")] == list(V.TRIDEND_AXIOMS)


def test_tridend_zero_passes():
    z = StructureTensor.zero(2)
    assert V.check_tridendriform(algebra("z", "bihom-tridendriform", 2, {"prec": z, "succ": z, "dot": z})).ok


def test_tridend_sign_mutation_breaks_nothing(tridend):
    # e2.e2 = -a e1 becomes +a e1; every triple product lands in the annihilated e1 line
    dot = edit(tridend.ops["dot"], 1, 1, lambda v: [-c for c in v])
    rep = V.check_tridendriform(tridend.with_ops(dot=dot))
    assert rep.failed() == []


# -- representations ---------------------------------------------------------


def test_adjoint_representation(sl2):
    assert V.check_lie_representation(C.adjoint_representation(sl2)).ok


def test_zero_representation(sl2):
    r = RepresentationBundle(algebra=sl2, vdim=2, rho=[MatrixS.zeros(2)] * 3,
                             phi=MatrixS.identity(2), psi=MatrixS.identity(2))
    assert V.check_lie_representation(r).ok


def test_corrupted_rho_fails_bracket_relation(sl2):
    adj = C.adjoint_representation(sl2)
    rho = list(adj.rho)
    rho[H] = rho[H].scale(2)
    rep = V.check_lie_representation(adj.evolve(rho=rho))
    assert rep.failed() == ["rep-bracket"]
    assert any(lab[:2] == ("H", "X") for lab in labels(rep, "rep-bracket"))


def test_module_k_algebra(sl2):
    assert V.check_module_k_algebra(V.adjoint_module(sl2)).ok
    mod = V.adjoint_module(sl2)
    zero = mod.evolve(vbracket=StructureTensor.zero(3))
    assert V.check_module_k_algebra(zero).ok
    scaled = mod.evolve(vbracket=edit(mod.vbracket, X, Y, lambda v: [c * 2 for c in v]))
    rep = V.check_module_k_algebra(scaled)
    assert "module-algebra-compat" in rep.failed()
    w = rep.entry("module-algebra-compat").witnesses[0]
    assert len(w.indices) == 3 and any(w.residual)


def test_identity_o_operator_weights(sl2, sl2_post):
    ident = MatrixS.identity(3)
    adj = V.adjoint_module(sl2, ident, Scalar.of(-1, SL2_PARAMS))
    assert V.check_o_operator(adj).ok
    assert "o-operator-identity" in V.check_o_operator(adj.evolve(weight=Scalar.of(1, SL2_PARAMS))).failed()
    # over the sub-adjacent algebra with the left multiplication module the identity has weight 1
    lm = C.left_module(sl2_post).evolve(T=ident, weight=Scalar.of(1, SL2_PARAMS))
    assert V.check_o_operator(lm).ok


def test_zero_o_operator(sl2):
    assert V.check_o_operator(V.adjoint_module(sl2, MatrixS.zeros(3), Scalar.of(0, SL2_PARAMS))).ok


def test_rota_baxter_examples(sl2):
    assert V.check_rota_baxter(sl2, -4).ok
    assert V.check_rota_baxter(sl2.with_maps(R=MatrixS.zeros(3)), 0).ok
    assert not V.check_rota_baxter(sl2, 4).ok
    R = C.splitting_rota_baxter(sl2, ((X, H), (Y,)), 3)
    assert V.check_rota_baxter(sl2.with_maps(R=R), 3).ok


def test_o_operator_errors(sl2):
    with pytest.raises(ShapeError):
        V.check_o_operator(C.adjoint_representation(sl2))
    sing = V.adjoint_module(sl2, MatrixS.identity(3), Scalar.of(0, SL2_PARAMS)).evolve(
        phi=MatrixS.zeros(3), psi=MatrixS.zeros(3))
    with pytest.raises(SingularMatrix):
        V.check_o_operator(sing)


def test_adjoint_post_representation(sl2_post):
    rep = V.check_post_lie_representation(C.adjoint_post_representation(sl2_post))
    assert rep.ok
    assert V.NU_ALPHA_READING in rep.notes
    assert rep.entry("nu-alpha-phi").note == V.NU_ALPHA_READING


def test_zero_post_representation():
    z = StructureTensor.zero(2)
    post = algebra("z", "bihom-post-lie", 2, {"bracket": z, "triangle": z})
    zeros = [MatrixS.zeros(2)] * 2
    r = RepresentationBundle(algebra=post, vdim=2, rho=zeros, mu=zeros, nu=zeros,
                             phi=MatrixS.identity(2), psi=MatrixS.identity(2))
    assert V.check_post_lie_representation(r).ok


def test_nu_swapped_for_mu(sl2_post):
    ap = C.adjoint_post_representation(sl2_post)
    rep = V.check_post_lie_representation(ap.evolve(nu=ap.mu))
    assert "postrep-nu-rho" in rep.failed()
    assert rep.entry("postrep-nu-rho").witnesses


def test_printed_nu_bracket_form_fails_on_adjoint(sl2_post):
    ap = C.adjoint_post_representation(sl2_post)
    rep = V.check_post_lie_representation(ap, nu_bracket_form="printed")
    assert rep.failed() == ["postrep-nu-bracket"]
    # the semidirect product built from the same data is a post-Lie algebra
    assert V.check_bihom_post_lie(C.semidirect_post_lie(sl2_post, ap)).ok


def test_printed_form_agrees_when_maps_coincide(classical_post):
    ap = C.adjoint_post_representation(classical_post)
    assert V.check_post_lie_representation(ap, nu_bracket_form="printed").ok


def test_check_regular(sl2):
    assert V.check_regular(sl2)
    z = StructureTensor.zero(2)
    assert not V.check_regular(algebra("s", "bihom-lie", 2, {"bracket": z}, MatrixS([[1, 0], [0, 0]])))
    assert not V.check_regular(algebra("s", "bihom-lie", 2, {"bracket": z}, MatrixS([[1, 1], [1, 1]])))


def test_regular_maps_names_the_map():
    z = StructureTensor.zero(2)
    with pytest.raises(SingularMatrix, match="beta is singular"):
        V.regular_maps(algebra("s", "bihom-lie", 2, {"bracket": z}, None, MatrixS([[1, 1], [1, 1]])))


def test_catalog_kinds_pass():
    for name in ("sl2-bihom", "sl2-post-lie", "tridend-2dim", "splitting-rb", "heisenberg-3"):
        b = emit(name)
        check = {"bihom-lie": V.check_bihom_lie, "bihom-post-lie": V.check_bihom_post_lie,
                 "bihom-tridendriform": V.check_tridendriform}[b.kind]
        assert check(b).ok, name

