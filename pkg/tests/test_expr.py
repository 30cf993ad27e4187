import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trapgauss.errors import DomainError, ExpressionSyntaxError, UnknownIdentifier
from trapgauss.expr import BinOp, Call, Const, Neg, Num, Var, eval_jet, eval_real, parse, to_text

leaves = st.one_of(
    st.builds(Num, st.floats(0, 5, allow_nan=False).map(lambda x: round(x, 3))),
    st.sampled_from([Var("u"), Var("v"), Const("pi"), Const("e")]),
)
trees = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.builds(Neg, kids),
        st.builds(BinOp, st.sampled_from("+-*/^"), kids, kids),
        st.builds(Call, st.sampled_from(["sin", "cos", "sinh", "cosh", "exp", "ln", "sqrt"]), kids),
    ),
    max_leaves=8,
)
# smooth trees that stay finite on (0.2, 0.8)^2
safe = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.builds(Neg, kids),
        st.builds(BinOp, st.sampled_from("+-*"), kids, kids),
        st.builds(Call, st.sampled_from(["sin", "cos"]), kids),
    ),
    max_leaves=6,
)


@given(trees)
def test_print_parse_round_trip(tree):
    text = to_text(tree)
    again = parse(text)
    assert again == tree
    assert to_text(again) == text


@given(safe, st.floats(0.2, 0.8), st.floats(0.2, 0.8))
def test_degree_zero_jet_equals_real_evaluation(tree, u, v):
    real = eval_real(tree, u, v)
    assert abs(eval_jet(tree, u, v, 0).value - real) <= 1e-12 * (1 + abs(real))


@given(safe, st.floats(0.2, 0.8), st.floats(0.2, 0.8))
def test_jet_derivatives_match_finite_differences(tree, u, v):
    step = 1e-6
    j = eval_jet(tree, u, v, 1)
    fu = (eval_real(tree, u + step, v) - eval_real(tree, u - step, v)) / (2 * step)
    fv = (eval_real(tree, u, v + step) - eval_real(tree, u, v - step)) / (2 * step)
    scale = 1 + abs(eval_real(tree, u, v))
    assert abs(j.deriv(1, 0) - fu) <= 1e-6 * max(scale, abs(fu))
    assert abs(j.deriv(0, 1) - fv) <= 1e-6 * max(scale, abs(fv))


@pytest.mark.parametrize(
    "text, value",
    [
        ("-u^2", -4.0),
        ("2^3^2", 512.0),
        ("1 - 2 - 3", -4.0),
        ("8/4/2", 1.0),
        ("-2^2", -4.0),
        ("2*-u", -4.0),
        ("sin(pi/2) + e", 1 + math.e),
        ("1.5e1 + .5", 15.5),
    ],
)
def test_precedence_and_associativity(text, value):
    assert math.isclose(eval_real(parse(text), 2.0, 0.0), value)


@pytest.mark.parametrize(
    "text, offset",
    [("u +", 3), ("(u", 2), ("u $ v", 2), ("sin u", 4), ("u v", 2), ("", 0), ("2*)", 2)],
)
def test_syntax_errors_carry_offsets(text, offset):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset
    assert info.value.exit_code == 20


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as info:
        parse("u + tan(v)")
    assert info.value.offset == 4
    assert info.value.exit_code == 21


def test_domain_error_names_the_subexpression():
    with pytest.raises(DomainError) as info:
        eval_jet(parse("1 + ln(u - 1)"), 0.5, 0.5)
    assert "ln" in info.value.subexpression


def test_array_evaluation():
    out = eval_real(parse("u*v + 1"), np.array([1.0, 2.0]), np.array([3.0, 4.0]))
    np.testing.assert_array_equal(out, [4.0, 9.0])
