from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncpoisson.exactlin import ArityError, MPoly, mpoly_arith

F = Fraction


def xy():
    return MPoly.var(2, 0), MPoly.var(2, 1)


def test_mul_square_of_sum():
    x, y = xy()
    assert (x + y) * (x + y) == x * x + 2 * (x * y) + y * y


def test_add_zero_identity():
    x, y = xy()
    p = 3 * x * y - y
    assert mpoly_arith("add", p, MPoly.zero(2)) == p


def test_eval_point():
    x, y = xy()
    p = x * x * y
    assert mpoly_arith("eval", p, (2, 3)) == 12


def test_arity_mismatch():
    with pytest.raises(ArityError):
        MPoly.var(2, 0) + MPoly.var(3, 0)
    with pytest.raises(ArityError):
        MPoly.var(2, 0).eval((1,))


def test_partial_derivative():
    x, y = xy()
    p = x * x * y + 3 * y
    assert p.partial(0) == 2 * (x * y)
    assert p.partial(1) == x * x + MPoly.const(2, 3)


def test_render_graded_lex():
    x, y = xy()
    p = x * x + x * y + y + MPoly.const(2, 1)
    assert p.render(["x", "y"]) == "x^2 + x*y + y + 1"
    assert MPoly.zero(2).render() == "0"
    assert (-(x * y)).render(["x", "y"]) == "-x*y"


@st.composite
def polys(draw, nvars=3, max_terms=5, max_deg=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(
            draw(st.integers(0, max_deg // nvars + 1)) for _ in range(nvars)
        )
        terms[exps] = draw(st.fractions(min_value=-4, max_value=4, max_denominator=4))
    return MPoly(nvars, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_mul_commutes(p, q):
    assert p * q == q * p


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_eval_is_additive_and_multiplicative(p, q, point):
    assert (p + q).eval(point) == p.eval(point) + q.eval(point)
    assert (p * q).eval(point) == p.eval(point) * q.eval(point)


@settings(max_examples=40, deadline=None)
@given(polys(nvars=4, max_deg=5), polys(nvars=4, max_deg=5))
def test_product_rule(p, q):
    for i in range(4):
        assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)
