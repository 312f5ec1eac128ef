from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from syzlab.cli import parse_polynomial
from syzlab.errors import DegreeTooHigh, NotHomogeneous, PolySyntaxError
from syzlab.field import PrimeField
from syzlab.poly import (Poly, chebyshev_poly, degrevlex_key, dehomogenize, evaluate,
                         graded_monomials, homogenize, jacobian, parse_poly)


@st.composite
def homogeneous_polys(draw, max_vars=4, max_degree=4):
    nvars = draw(st.integers(1, max_vars))
    d = draw(st.integers(0, max_degree))
    monos = graded_monomials(nvars, d).monomials
    picked = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=6, unique=True))
    coeffs = draw(st.lists(st.integers(-9, 9).filter(bool) | st.fractions(-5, 5, max_denominator=4).filter(bool),
                           min_size=len(picked), max_size=len(picked)))
    return Poly(nvars, dict(zip(picked, coeffs)))


@pytest.mark.parametrize("nvars,k,size", [(4, 2, 10), (4, 0, 1), (4, 46, 18424), (3, -1, 0)])
def test_graded_monomial_counts(nvars, k, size):
    assert len(graded_monomials(nvars, k).monomials) == size


def test_degrevlex_order():
    monos = graded_monomials(3, 2).monomials
    assert monos[0] == (2, 0, 0)
    assert monos == tuple(sorted(monos, key=degrevlex_key, reverse=True))
    # degrevlex: x0*x2 < x1^2
    assert monos.index((1, 1, 0)) < monos.index((0, 2, 0)) < monos.index((1, 0, 1))


def test_jacobian_fermat():
    f = parse_poly("x0^3 + x1^3 + x2^3 + x3^3")
    assert jacobian(f) == [Poly(4, {tuple(2 if i == j else 0 for i in range(4)): 3}) for j in range(4)]


def test_jacobian_cubic_surface_last_partial():
    f = parse_poly("x3*x0^2 + x3*x1^2 + x3*x2^2 + x0^3")
    assert jacobian(f)[3] == parse_poly("x0^2 + x1^2 + x2^2", 4)


@settings(max_examples=60)
@given(homogeneous_polys())
def test_euler_identity(f):
    total = sum((Poly.variable(f.nvars, i) * g for i, g in enumerate(jacobian(f))), Poly(f.nvars, {}))
    assert total == f * Poly.constant(f.nvars, f.degree)


def test_evaluate_examples():
    assert evaluate(parse_poly("x0^2 + x1^2"), (1, 0)) == 1
    assert evaluate(parse_poly("x0*x1 - x2^2"), (1, 1, 1)) == 0
    F = PrimeField(13)
    assert evaluate(parse_poly("x0^2 + x1^2"), (5, 1), F) == 0


def test_chebyshev_polynomials():
    assert chebyshev_poly(2) == Poly(1, {(2,): 2, (0,): -1})
    assert chebyshev_poly(3) == Poly(1, {(3,): 4, (1,): -3})
    for d in range(1, 12):
        T = chebyshev_poly(d)
        assert T.leading_term()[1] == 2 ** (d - 1)
        assert evaluate(T, (1,)) == 1


def test_homogenize_examples():
    g = Poly(1, {(2,): 1, (0,): 1})
    assert homogenize(g, 2) == Poly(2, {(0, 2): 1, (2, 0): 1})
    cubic = homogenize(chebyshev_poly(3), 3)
    assert cubic == Poly(2, {(0, 3): 4, (2, 1): -3})
    with pytest.raises(DegreeTooHigh):
        homogenize(chebyshev_poly(3), 2)


@settings(max_examples=40)
@given(homogeneous_polys(max_vars=3))
def test_homogenize_round_trip(f):
    g = dehomogenize(f, 0)
    assert homogenize(g, f.degree, 0) == f


@settings(max_examples=80)
@given(homogeneous_polys())
def test_text_round_trip(f):
    assert parse_poly(f.to_text(), f.nvars) == f
    assert Poly.from_json(f.to_json()) == f
    g = parse_poly(f.to_text(), f.nvars)
    assert g.to_text() == f.to_text()


def test_json_format():
    f = parse_poly("x3*x0^2 - 1/2*x1^3")
    obj = f.to_json()
    assert obj["nvars"] == 4
    assert {"c": "-1/2", "e": [0, 3, 0, 0]} in obj["terms"]
    assert parse_polynomial('{"nvars":2,"terms":[{"c":"3","e":[1,1]}]}') == Poly(2, {(1, 1): 3})


def test_parse_fermat():
    f = parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3")
    assert (f.degree, f.nvars) == (3, 4)


def test_parse_not_homogeneous():
    with pytest.raises(NotHomogeneous):
        parse_polynomial("x0^2 + x1")


@pytest.mark.parametrize("text,offset", [("x0^^2", 3), ("x0 + + x1", 5), ("3*", 2), ("y0", 0)])
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly(text)
    assert exc.value.offset == offset


def test_parse_coefficients_and_signs():
    f = parse_poly("-2*x0*x1 + 3/4*x1^2 - x0^2")
    assert f.coeffs == {(1, 1): -2, (0, 2): Fraction(3, 4), (2, 0): -1}


def test_reduce_mod_p():
    F = PrimeField(13)
    f = parse_poly("1/2*x0 + 13*x1")
    assert f.reduce(F).coeffs == {(1, 0): 7}


def test_arithmetic():
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    assert (x + y) ** 2 == x * x + Poly.constant(2, 2) * x * y + y * y
    assert (x - x).coeffs == {}
    assert (x * y).derivative(0) == y


def test_dimension_sanity():
    assert len(graded_monomials(4, 5).monomials) == comb(8, 3)
