"""Document format and the command line front end."""

import json

import pytest

from bihom import construct as C
from bihom import verify as V
from bihom.catalog import CATALOG, emit
from bihom.cli import main
from bihom.io import DocumentError, dumps, format_combination, loads, parse_combination, specialize
from bihom.scalar import Scalar

LG = ("lambda", "gamma")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def doc(tmp_path):
    def write(bundle_or_text, name="doc.json"):
        p = tmp_path / name
        p.write_text(bundle_or_text if isinstance(bundle_or_text, str) else dumps(bundle_or_text))
        return str(p)
    return write


# -- serialization -----------------------------------------------------------


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_round_trip_is_byte_identical(name):
    text = dumps(emit(name))
    back = loads(text)
    assert back == emit(name)
    assert dumps(back) == text


@pytest.mark.parametrize("make", [
    lambda: C.adjoint_representation(emit("sl2-bihom")),
    lambda: C.adjoint_post_representation(emit("sl2-post-lie")),
    lambda: V.adjoint_module(emit("sl2-bihom"), emit("sl2-bihom").maps["R"], Scalar.of(-4, LG)),
])
def test_representation_round_trip(make):
    r = make()
    text = dumps(r)
    assert dumps(loads(text)) == text
    assert json.loads(text)["kind"] == "representation"


def test_combinations():
    basis = ("X", "Y", "H")
    v = parse_combination("2*gamma^2*X - H/lambda", basis, LG)
    assert v == (parse_combination("2*gamma^2*X", basis, LG)[0], Scalar.of(0, LG), -Scalar.param("lambda", LG).inverse())
    assert parse_combination(format_combination(v, basis), basis, LG) == v
    assert format_combination(parse_combination("0", basis, LG), basis) == "0"
    for bad in ("X*Y", "X + 1", "gamma", "X^2", "1/X"):
        with pytest.raises(DocumentError):
            parse_combination(bad, basis, LG)


def test_unknown_basis_name_in_table():
    d = json.loads(dumps(emit("sl2-bihom")))
    d["operations"]["bracket"]["X,Q"] = "H"
    with pytest.raises(DocumentError):
        loads(json.dumps(d))


def test_specialize():
    b = specialize(emit("sl2-bihom"), {"lambda": 1, "gamma": 2})
    assert b.parameters == ()
    assert b.bracket.product(2, 0)[0] == Scalar.of(8)
    assert V.check_bihom_lie(b).ok
    with pytest.raises(DocumentError):
        specialize(emit("sl2-bihom"), {"mu": 1})


# -- CLI ---------------------------------------------------------------------


def test_catalog_then_check(capsys, doc):
    code, out, _ = run(capsys, "catalog", "sl2-bihom")
    assert code == 0 and json.loads(out)["dimension"] == 3
    path = doc(out)
    code, out, _ = run(capsys, "check", path, "--kind", "bihom-lie")
    assert code == 0 and "all" in out and "axioms pass" in out


def test_catalog_tridend(capsys):
    code, out, _ = run(capsys, "catalog", "tridend-2dim")
    d = json.loads(out)
    assert code == 0 and d["dimension"] == 2 and d["parameters"] == ["a"]


def test_catalog_unknown(capsys):
    code, _, err = run(capsys, "catalog", "unknown-name")
    assert code == 2 and "unknown catalog name" in err


def test_check_unknown_basis_name(capsys, doc):
    d = json.loads(dumps(emit("sl2-bihom")))
    d["operations"]["bracket"]["X,Q"] = "H"
    code, _, err = run(capsys, "check", doc(json.dumps(d)))
    assert code == 2 and "Q" in err


def test_check_parse_error_reports_offset(capsys, doc):
    d = json.loads(dumps(emit("sl2-bihom")))
    d["operations"]["bracket"]["H,X"] = "2*gamma^^2*X"
    code, _, err = run(capsys, "check", doc(json.dumps(d)))
    assert code == 2 and "offset" in err


def test_check_mutated_document(capsys, doc):
    d = json.loads(dumps(emit("sl2-bihom")))
    assert d["operations"]["bracket"]["H,X"] == "2*gamma^2*X"
    d["operations"]["bracket"]["H,X"] = "3*gamma^2*X"
    path = doc(json.dumps(d))
    code, out, _ = run(capsys, "check", path)
    assert code == 1
    assert "FAIL bihom-jacobi" in out and "at (" in out
    code, out, _ = run(capsys, "check", path, "--format", "json", "--witness-cap", "2")
    rep = json.loads(out)
    assert code == 1 and rep["ok"] is False
    jac = next(e for e in rep["entries"] if e["axiom"] == "bihom-jacobi")
    assert jac["status"] == "fail" and len(jac["witnesses"]) == 2
    code, out, _ = run(capsys, "check", path, "--fail-fast", "--format", "json")
    assert code == 1 and json.loads(out)["complete"] is False


def test_shape_error_exit(capsys, doc):
    d = json.loads(dumps(emit("sl2-bihom")))
    d["kind"] = "bihom-post-lie"
    code, _, err = run(capsys, "check", doc(json.dumps(d)))
    assert code == 2 and "missing op" in err


def test_construct_rota_baxter_induced_matches_catalog(capsys, doc, tmp_path):
    src = doc(emit("sl2-bihom"))
    out_path = tmp_path / "post.json"
    code, out, _ = run(capsys, "construct", "rota-baxter-induced", src, "--weight=-4", "--out", str(out_path))
    assert code == 0 and "axioms pass" in out
    built = loads(out_path.read_text())
    assert built.evolve(name="sl2-post-lie") == emit("sl2-post-lie")


def test_construct_sub_adjacent(capsys, doc):
    code, out, err = run(capsys, "construct", "sub-adjacent", doc(emit("sl2-post-lie")))
    assert code == 0 and json.loads(out)["kind"] == "bihom-lie" and "axioms pass" in err


def test_construct_double_bracket_non_regular(capsys, doc):
    d = json.loads(dumps(emit("sl2-post-lie")))
    d["maps"]["alpha"] = [["1", "1", "0"], ["1", "1", "0"], ["0", "0", "1"]]
    code, _, err = run(capsys, "construct", "double-bracket", doc(json.dumps(d)))
    assert code == 2 and "alpha is singular" in err


def test_construct_precondition_failure(capsys, doc):
    code, _, err = run(capsys, "construct", "rota-baxter-induced", doc(emit("sl2-bihom")), "--weight", "4")
    assert code == 2 and "Rota-Baxter" in err


def test_param_specialization(capsys, doc):
    code, out, _ = run(capsys, "catalog", "sl2-bihom", "--param", "lambda=2", "--param", "gamma=1/3")
    d = json.loads(out)
    assert code == 0 and d["parameters"] == [] and d["operations"]["bracket"]["H,X"] == "2/9*X"
    code, _, err = run(capsys, "check", doc(emit("sl2-bihom")), "--param", "gamma=0")
    assert code == 2


def test_representation_document(capsys, doc):
    path = doc(C.adjoint_post_representation(emit("sl2-post-lie")))
    code, out, _ = run(capsys, "check", path)
    assert code == 0 and "note:" in out
    code, _, _ = run(capsys, "construct", "pi-representation", path)
    assert code == 0


def test_rota_baxter_kind(capsys, doc):
    path = doc(emit("sl2-bihom"))
    assert run(capsys, "check", path, "--kind", "rota-baxter", "--weight", "-4")[0] == 0
    assert run(capsys, "check", path, "--kind", "rota-baxter", "--weight", "4")[0] == 1


def test_usage_errors(capsys, doc):
    assert run(capsys, "check", "/nonexistent/file.json")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "construct", "no-such", doc(emit("sl2-bihom")))[0] == 2
    assert run(capsys, "check", doc("{not json"))[0] == 2
    assert run(capsys, "check", doc(emit("sl2-bihom")), "--kind", "post-lie-rep")[0] == 2


def test_exit_code_is_a_function_of_the_report(capsys, doc):
    path = doc(emit("tridend-2dim"))
    codes = {run(capsys, "check", path)[0] for _ in range(3)}
    assert codes == {0}
