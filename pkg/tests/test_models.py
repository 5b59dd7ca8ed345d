"""Shape validation of bundles and report bookkeeping."""

import pytest

from bihom import construct as C
from bihom.catalog import CATALOG, emit
from bihom.linalg import MatrixS, StructureTensor
from bihom.models import (AlgebraBundle, AxiomResult, RepresentationBundle, ShapeError, ViolationReport,
                          Witness, validate_bundle)
from bihom.scalar import Scalar


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_bundles_validate(name):
    validate_bundle(emit(name))


def test_constructor_outputs_validate(sl2, sl2_post, tridend):
    outs = [
        C.sub_adjacent(sl2_post), C.admissible_product(sl2_post), C.black_transform(sl2_post),
        C.double_bracket(sl2_post), C.tridend_to_post(tridend), C.tridend_to_assoc(tridend),
        C.flip_post_lie(sl2), C.adjoint_representation(sl2), C.adjoint_post_representation(sl2_post),
        C.pi_representation(C.adjoint_post_representation(sl2_post)),
        C.semidirect_lie(sl2, C.adjoint_representation(sl2)),
    ]
    for b in outs:
        validate_bundle(b)


def test_missing_triangle(sl2):
    b = sl2.evolve(kind="bihom-post-lie")
    with pytest.raises(ShapeError) as e:
        validate_bundle(b)
    assert any("missing op" in i and "triangle" in i for i in e.value.issues)


def test_issues_are_itemized(sl2):
    b = AlgebraBundle(name="bad", dim=2, basis=("a",), parameters=(), kind="bihom-lie",
                      ops={"bracket": StructureTensor.zero(3)}, maps={"alpha": MatrixS.identity(2)})
    with pytest.raises(ShapeError) as e:
        validate_bundle(b)
    text = "\n".join(e.value.issues)
    assert len(e.value.issues) == 3
    assert "basis has 1 names" in text and "dimension 3" in text and "missing map 'beta'" in text


def test_phi_psi_must_commute(sl2):
    # abelian 1-dim algebra acting trivially on a 2-dim space
    alg = emit("abelian-1")
    r = RepresentationBundle(algebra=alg, vdim=2, rho=[MatrixS.zeros(2)],
                             phi=MatrixS([[1, 1], [0, 1]]), psi=MatrixS([[1, 0], [1, 1]]))
    with pytest.raises(ShapeError) as e:
        validate_bundle(r)
    assert "phi psi do not commute" in e.value.issues


def test_rep_shapes(sl2):
    r = C.adjoint_representation(sl2)
    validate_bundle(r)
    with pytest.raises(ShapeError) as e:
        validate_bundle(r.evolve(rho=r.rho[:2], T=MatrixS.identity(2)))
    assert len(e.value.issues) == 2


def test_report_bookkeeping():
    w = Witness((0, 1), ("X", "Y"), (Scalar.of(1),))
    rep = ViolationReport("demo", [AxiomResult("a", True), AxiomResult("b", False, [w], 1)])
    assert not rep.ok and not rep
    assert rep.failed() == ["b"] and rep.axioms() == ["a", "b"]
    assert rep.entry("b").status == "fail" and rep.entry("a").status == "pass"
    assert "1 of 2 axioms fail" in rep.summary()
    with pytest.raises(KeyError):
        rep.entry("c")
