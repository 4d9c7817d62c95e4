import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncpoisson.ncalg import (
    NCPoly,
    Signature,
    SignatureMismatchError,
    TensorPoly,
    cyclic_project,
    enumerate_words,
    mu,
    nc_mul,
    tensor,
    tensor_act,
)

GROUP = Signature.make(("u", "v"), invertible=True)
U = NCPoly.gen(GROUP, "u")
V = NCPoly.gen(GROUP, "v")
UINV = NCPoly.monomial(GROUP, ((0, -1),))
VINV = NCPoly.monomial(GROUP, ((1, -1),))
ONE = NCPoly.one(GROUP)


def test_mul_basic():
    assert (U + V) * U == U * U + V * U
    assert str((U + V) * U) == "u^2 + v*u"


def test_mul_unit():
    a = 3 * U * V - V
    assert a * ONE == a
    assert ONE * a == a


def test_mul_inverse_cancels():
    assert UINV * U == ONE
    assert nc_mul(U * V, VINV) == U


def test_signature_mismatch():
    other = Signature.make(("u", "v"))
    with pytest.raises(SignatureMismatchError):
        nc_mul(U, NCPoly.gen(other, "u"))


def test_tensor_act_outer_left():
    t = tensor(U, V)
    b = V * U
    assert tensor_act("outer-left", t, b) == tensor(b * U, V)


def test_tensor_act_inner():
    # (1 (x) a1) t (a2 (x) 1) = t' a2 (x) a1 t''
    t = tensor(U, V)
    a1, a2 = V, U * U
    assert tensor_act("inner", t, a1, a2) == tensor(U * a2, a1 * V)


def test_tensor_act_outer_right_identity():
    t = tensor(U, V)
    assert tensor_act("outer-right", t, ONE) == t


def test_mu():
    assert mu(tensor(-(V * U), ONE)) == -(V * U)
    assert mu(tensor(U, UINV)) == ONE
    assert mu(TensorPoly.zero(GROUP)) == NCPoly.zero(GROUP)


def test_mu_intertwines_actions():
    rng = random.Random(1)
    words = enumerate_words(GROUP, 3)
    for _ in range(30):
        t = tensor(
            NCPoly.monomial(GROUP, rng.choice(words)),
            NCPoly.monomial(GROUP, rng.choice(words)),
        )
        a = NCPoly.monomial(GROUP, rng.choice(words))
        assert mu(tensor_act("outer-left", t, a)) == a * mu(t)
        assert mu(tensor_act("outer-right", t, a)) == mu(t) * a


def test_cyclic_project_commutator():
    assert cyclic_project(U * V - V * U).is_zero()


def test_cyclic_project_conjugation():
    p = U * V * UINV
    assert cyclic_project(p) == cyclic_project(V)


def test_rendering_canonical():
    p = Fraction(3, 2) * (U * V) - 2 * V + ONE
    assert str(p) == "1 - 2*v + 3/2*u*v"
    t = tensor(-(V * U), ONE) + tensor(U, V)
    assert str(t) == "u (x) v - v*u (x) 1"


word_lists = st.lists(
    st.tuples(st.integers(0, 1), st.sampled_from([-1, 1, 2])), max_size=4
)


@st.composite
def ncpolys(draw, max_terms=4):
    from ncpoisson.ncalg import word_reduce

    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        word = word_reduce(draw(word_lists), GROUP)
        coeff = draw(st.fractions(min_value=-3, max_value=3, max_denominator=3))
        if coeff:
            terms[word] = coeff
    return NCPoly(GROUP, terms)


@settings(max_examples=60, deadline=None)
@given(ncpolys(), ncpolys(), ncpolys())
def test_mul_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(ncpolys(), ncpolys())
def test_action_compatibility(a, b):
    # (b (x) 1)((a (x) 1) t) = (ba (x) 1) t and the mirrored law
    t = tensor(U + V, V)
    left_twice = tensor_act("outer-left", tensor_act("outer-left", t, a), b)
    assert left_twice == tensor_act("outer-left", t, b * a)
    right_twice = tensor_act("outer-right", tensor_act("outer-right", t, a), b)
    assert right_twice == tensor_act("outer-right", t, a * b)


@settings(max_examples=60, deadline=None)
@given(ncpolys(), ncpolys())
def test_cyclic_project_kills_commutators(a, b):
    assert cyclic_project(a * b - b * a).is_zero()
