import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from trapgauss import jets
from trapgauss.errors import DegreeExhausted, DivisionNearZero, DomainError
from trapgauss.expr import eval_jet, parse
from trapgauss.jets import Jet

U, V = sp.symbols("u v")
MONOMIALS = [(a, t - a) for t in range(4) for a in range(t + 1)]
small = st.floats(-2, 2, allow_nan=False)


def test_coefficient_count_and_value():
    j = Jet.variable(0.3, -0.2, "u", degree=4)
    assert j.coeffs.size == 15
    assert j.value == 0.3
    assert j.coeffs[0] == j.value


@given(st.lists(st.integers(-5, 5), min_size=10, max_size=10), small, small)
def test_polynomials_match_symbolic_derivatives(coefs, u0, v0):
    poly = sum(c * U**a * V**b for c, (a, b) in zip(coefs, MONOMIALS))
    text = " + ".join(f"({c})*u^{a}*v^{b}" for c, (a, b) in zip(coefs, MONOMIALS))
    j = eval_jet(parse(text), u0, v0, 3)
    for a, b in MONOMIALS:
        exact = float(sp.diff(poly, U, a, V, b).subs({U: u0, V: v0})) if a + b else float(poly.subs({U: u0, V: v0}))
        assert abs(j.deriv(a, b) - exact) <= 1e-12 * (1 + abs(exact)) * 100


SMOOTH = [
    "sin(u)*exp(v/2) + u*v",
    "exp(1/(u+v))",
    "sin(pi*u)*sin(pi*v)",
    "cosh(u)*ln(2+v) - sqrt(1+u^2)",
    "u^2.5 + sinh(v)",
]


@pytest.mark.parametrize("text", SMOOTH)
def test_first_and_second_partials_match_finite_differences(text, rng):
    e = parse(text)
    step = 1e-5
    f = lambda a, b: eval_jet(e, a, b, 0).value
    for u0, v0 in rng.uniform(0.3, 0.9, size=(5, 2)):
        j = eval_jet(e, u0, v0, 3)
        fu = (f(u0 + step, v0) - f(u0 - step, v0)) / (2 * step)
        fv = (f(u0, v0 + step) - f(u0, v0 - step)) / (2 * step)
        gu = lambda a, b: eval_jet(e, a, b, 1).deriv(1, 0)
        fuu = (gu(u0 + step, v0) - gu(u0 - step, v0)) / (2 * step)
        fuv = (gu(u0, v0 + step) - gu(u0, v0 - step)) / (2 * step)
        for got, want in [(j.deriv(1, 0), fu), (j.deriv(0, 1), fv), (j.deriv(2, 0), fuu), (j.deriv(1, 1), fuv)]:
            assert abs(got - want) <= 1e-6 * max(1.0, abs(want))


def _random_jet(draw_coeffs):
    return Jet(np.array(draw_coeffs), 3, (0.1, 0.2))


coeffs = st.lists(small, min_size=10, max_size=10)


@given(coeffs, coeffs, coeffs)
def test_multiplication_commutative_associative(a, b, c):
    x, y, z = map(_random_jet, (a, b, c))
    np.testing.assert_allclose((x * y).coeffs, (y * x).coeffs, atol=1e-14)
    np.testing.assert_allclose(((x * y) * z).coeffs, (x * (y * z)).coeffs, atol=1e-12)


def test_elementary_functions_against_sympy():
    u0, v0 = 0.4, 0.7
    cases = {
        "sin(u*v)": sp.sin(U * V),
        "cos(u+v)": sp.cos(U + V),
        "exp(u)*sinh(v)": sp.exp(U) * sp.sinh(V),
        "cosh(u-v)": sp.cosh(U - V),
        "ln(u+v)": sp.log(U + V),
        "sqrt(u+2*v)": sp.sqrt(U + 2 * V),
        "1/(u+v)": 1 / (U + V),
        "u^v": U**V,
    }
    for text, sym in cases.items():
        j = eval_jet(parse(text), u0, v0, 3)
        for a, b in MONOMIALS:
            exact = float(sp.diff(sym, U, a, V, b).subs({U: u0, V: v0})) if a + b else float(sym.subs({U: u0, V: v0}))
            assert math.isclose(j.deriv(a, b), exact, rel_tol=1e-11, abs_tol=1e-11), (text, a, b)


def test_partial_lowers_degree():
    u = Jet.variable(1.0, 2.0, "u")
    p = jets.partial(u * u, "u")
    assert p.degree == 2
    assert p.value == 2.0
    with pytest.raises(DegreeExhausted):
        jets.partial(Jet.constant(1.0, degree=0), "u")


def test_mixed_degrees_truncate_to_the_lower():
    a = Jet.variable(0.0, 0.0, "u", 3)
    b = Jet.variable(0.0, 0.0, "v", 1)
    assert (a + b).degree == 1


def test_coefficient_beyond_degree():
    with pytest.raises(DegreeExhausted):
        Jet.variable(0.0, 0.0, "u", 2).coeff(2, 1)


def test_division_and_domain_errors():
    zero = Jet.variable(0.0, 1.0, "u")
    with pytest.raises(DivisionNearZero):
        1.0 / zero
    with pytest.raises(DomainError):
        jets.log(zero)
    with pytest.raises(DomainError):
        jets.sqrt(zero - 1.0)


def test_exact_sum_cancels_large_terms():
    big = Jet.constant(1e16, degree=1)
    tiny = Jet.constant(1.0, degree=1)
    assert jets.exact_sum([big, tiny, -big]).value == 1.0


def test_worked_examples():
    u = Jet.variable(1.0, 2.0, "u")
    v = Jet.variable(1.0, 2.0, "v")
    p = u * v
    assert (p.value, p.deriv(1, 0), p.deriv(0, 1), p.deriv(1, 1)) == (2.0, 2.0, 1.0, 1.0)
    assert not (p + (-p)).coeffs.any()
    q = eval_jet(parse("1/(u+v)"), 0.25, 0.25)
    assert q.value == pytest.approx(2.0) and q.deriv(1, 0) == pytest.approx(-4.0)
    r = eval_jet(parse("exp(1/(u+v))"), 0.25, 0.25)
    assert r.value == pytest.approx(math.e**2) and r.deriv(1, 0) == pytest.approx(-4 * math.e**2)
    s = eval_jet(parse("sin(pi*u)*sin(pi*v)"), 0.5, 0.5)
    assert s.value == pytest.approx(1.0)
    assert s.deriv(1, 0) == pytest.approx(0.0, abs=1e-15)
    assert s.deriv(2, 0) == pytest.approx(-math.pi**2)
    assert jets.exp(Jet.constant(0.0)).coeffs.tolist() == [1.0] + [0.0] * 9


def test_partial_examples():
    sq = jets.partial(eval_jet(parse("u^2"), 0.3, 0.1), "u")
    np.testing.assert_allclose(sq.coeffs, [0.6, 2.0, 0.0, 0, 0, 0], atol=1e-15)
    s = eval_jet(parse("sin(pi*u)"), 0.3, 0.0)
    s2 = jets.partial(jets.partial(s, "u"), "u")
    assert s2.degree == 1
    assert s2.value == pytest.approx(-math.pi**2 * math.sin(0.3 * math.pi))
    assert not jets.partial(Jet.constant(4.0), "u").coeffs.any()
