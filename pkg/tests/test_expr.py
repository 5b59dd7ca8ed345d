"""Expression grammar, error offsets and the pretty-printer round trip."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihom.expr import (BinOp, ExprSyntaxError, Neg, Num, Pow, UnknownIdentifier, Var, parse_scalar,
                        parse_scalar_expr, pretty, to_scalar)
from bihom.scalar import Scalar

LG = ("lambda", "gamma")


def test_product_node():
    assert parse_scalar_expr("2*gamma^2", LG) == BinOp("*", Num(Fraction(2)), Pow(Var("gamma"), 2))


def test_negated_rational():
    assert parse_scalar_expr("-(4/3)", LG) == Neg(Num(Fraction(4, 3)))


def test_quotient_node_value():
    node = parse_scalar_expr("lambda^2/gamma^2", LG)
    assert isinstance(node, BinOp) and node.op == "/"
    lam, gam = Scalar.param("lambda", LG), Scalar.param("gamma", LG)
    assert to_scalar(node, LG) == lam * lam / (gam * gam)


def test_precedence_and_associativity():
    # ^ binds tighter than unary minus, which binds tighter than * and /
    assert parse_scalar_expr("-gamma^2", LG) == Neg(Pow(Var("gamma"), 2))
    assert parse_scalar_expr("1 - 2 - 3", LG) == BinOp("-", BinOp("-", Num(1), Num(2)), Num(3))
    assert parse_scalar_expr("8 / 2 / 2", LG) == BinOp("/", BinOp("/", Num(8), Num(2)), Num(2))
    assert parse_scalar("8 / 2 / 2", LG) == Scalar.of(2)
    assert parse_scalar("1 + 2*3", LG) == Scalar.of(7)


def test_negative_exponent_is_lowered():
    node = parse_scalar_expr("gamma^-2", LG)
    assert node == BinOp("/", Num(Fraction(1)), Pow(Var("gamma"), 2))
    assert parse_scalar("gamma^-2 * gamma^2", LG) == Scalar.of(1)


@pytest.mark.parametrize("text,offset", [
    ("1 + * 2", 4),
    ("(lambda", 7),
    ("2 $ 3", 2),
    ("gamma^x", 6),
    ("1 2", 2),
])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as e:
        parse_scalar_expr(text, LG)
    assert e.value.offset == offset
    assert f"byte offset {offset}" in str(e.value)


def test_offsets_count_bytes():
    with pytest.raises(ExprSyntaxError) as e:
        parse_scalar_expr("1 + λ", LG)
    assert e.value.offset == 4
    with pytest.raises(ExprSyntaxError) as e:
        parse_scalar_expr("(1 + 2) é", LG)
    assert e.value.offset == 8


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as e:
        parse_scalar_expr("lambda + mu", LG)
    assert e.value.name == "mu" and e.value.offset == 9


@pytest.mark.parametrize("text", ["", "   "])
def test_empty_text_rejected(text):
    with pytest.raises(ExprSyntaxError):
        parse_scalar_expr(text, LG)


# -- round trip --------------------------------------------------------------

leaves = st.one_of(
    st.builds(lambda p, q: Num(Fraction(p, q)), st.integers(0, 20), st.integers(1, 9)),
    st.sampled_from([Var("lambda"), Var("gamma")]),
)


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(0, 4)),
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
    )


asts = st.recursive(leaves, _extend, max_leaves=12)


@given(asts)
@settings(max_examples=300)
def test_pretty_parse_fixed_point(node):
    text = pretty(node)
    assert parse_scalar_expr(text, LG) == node
    assert pretty(parse_scalar_expr(text, LG)) == text
