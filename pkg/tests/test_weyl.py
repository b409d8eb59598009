from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitloop.exact import DimensionMismatch
from orbitloop.weyl import Polynomial, WeylOperator, apply, commutator, multiply

from conftest import small_rationals

W = WeylOperator
q1, d1 = W.q(1, 0), W.d(1, 0)
lam1 = W.lam(1)


def test_multiply_examples():
    assert multiply(d1, q1) == q1 * d1 + W.scalar(1)
    assert q1 * d1 == W(1, {((1,), (1,), 0): 1})
    qd = q1 * d1
    assert multiply(qd, qd) == W(1, {((2,), (2,), 0): 1, ((1,), (1,), 0): 1})
    assert multiply(lam1 * d1, q1) - multiply(q1, lam1 * d1) == lam1


def test_commutator_examples():
    for k in (1, 2, 3):
        for i in range(k):
            for j in range(k):
                expected = W.lam(k) if i == j else W.zero(k)
                assert commutator(W.d(k, i).times_lambda(), W.q(k, j)) == expected
    A = W.q(2, 0) * W.d(2, 1)
    B = W.q(2, 1) * W.d(2, 0)
    assert commutator(A, A).is_zero()
    assert commutator(A, B) == W.q(2, 0) * W.d(2, 0) - W.q(2, 1) * W.d(2, 1)


def test_apply_examples():
    p = Polynomial(1, {(2,): 1})
    assert apply(d1.times_lambda(), p, 1) == Polynomial(1, {(1,): 2})
    assert apply(q1, Polynomial.constant(1), 7) == Polynomial.variable(1, 0)
    # image of the central generator is the scalar lambda
    z = commutator(d1.times_lambda(), q1)
    p = Polynomial(1, {(3,): 2, (0,): Fraction(-1, 2)})
    assert apply(z, p, 5) == p * 5


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        multiply(W.q(1, 0), W.q(2, 0))
    with pytest.raises(DimensionMismatch):
        apply(W.q(2, 0), Polynomial.constant(1), 1)


def test_negative_lambda_power_needs_nonzero_lambda():
    op = W.q(1, 0).times_lambda(-1)
    assert apply(op, Polynomial.constant(1), 2) == Polynomial(1, {(1,): Fraction(1, 2)})
    with pytest.raises(ZeroDivisionError):
        apply(op, Polynomial.constant(1), 0)


def test_rendering_and_parse_roundtrip():
    op = W(1, {((2,), (1,), 1): Fraction(3, 2), ((0,), (0,), 0): -1})
    assert str(op) == "-1 + 3/2*l^1*q1^2*d1^1"
    assert W.parse(str(op), 1) == op
    assert W.from_json_dict(op.to_json_dict()) == op
    assert str(W.zero(2)) == "0"


K = 2


def operators(max_terms=3, max_deg=2):
    key = st.tuples(
        st.tuples(*[st.integers(0, max_deg)] * K),
        st.tuples(*[st.integers(0, max_deg)] * K),
        st.integers(0, 1),
    )
    return st.dictionaries(key, small_rationals, max_size=max_terms).map(lambda t: W(K, t))


def polynomials():
    return st.dictionaries(st.tuples(*[st.integers(0, 3)] * K), small_rationals, max_size=4).map(
        lambda t: Polynomial(K, t)
    )


@settings(max_examples=50, deadline=None)
@given(operators(), operators(), operators())
def test_associativity(a, b, c):
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@settings(max_examples=50, deadline=None)
@given(operators(), operators(), polynomials(), small_rationals)
def test_apply_is_a_representation(a, b, p, lv):
    lhs = apply(commutator(a, b), p, lv)
    rhs = apply(a, apply(b, p, lv), lv) - apply(b, apply(a, p, lv), lv)
    assert lhs == rhs
    assert apply(multiply(a, b), p, lv) == apply(a, apply(b, p, lv), lv)


@settings(max_examples=50, deadline=None)
@given(operators(), operators())
def test_q_degree_bound(a, b):
    prod = multiply(a, b)
    if not prod.is_zero():
        assert prod.degree_q() <= a.degree_q() + b.degree_q()
        assert prod.degree_d() <= a.degree_d() + b.degree_d()


@settings(max_examples=30, deadline=None)
@given(operators())
def test_str_parse_roundtrip(a):
    assert W.parse(str(a), K) == a
