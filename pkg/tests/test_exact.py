from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from truncw.exact import (
    ExactMatrix,
    Poly,
    RationalFunction,
    SparseMatrix,
    fraction_str,
    inverse,
    leibniz,
    matrix_kron,
    nullspace,
    rank,
    ratfun_equal,
    solve,
    w_key,
)

W011 = w_key(1, 1, 0)
W112 = w_key(1, 2, 1)
W111 = w_key(1, 1, 1)

keys = st.sampled_from([w_key(a, b, j) for a in (1, 2) for b in (1, 2) for j in (0, 1)])
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
monos = st.lists(keys, max_size=3).map(lambda ks: tuple(sorted(ks)))
polys = st.dictionaries(monos, fracs, max_size=5).map(Poly)


def test_additive_inverse():
    x = Poly.gen(W011)
    assert (x + (-x)).is_zero()


def test_unit_coefficient_product():
    prod = Poly.gen(W011) * Poly.gen(W112)
    assert prod.terms == {tuple(sorted((W011, W112))): Fraction(1)}


def test_square_of_binomial():
    x = Poly.gen(W011) * Fraction(1, 2) + Poly.gen(W111)
    want = {
        (W011, W011): Fraction(1, 4),
        tuple(sorted((W011, W111))): Fraction(1),
        (W111, W111): Fraction(1),
    }
    assert (x * x).terms == want
    assert x ** 2 == x * x


def test_fraction_strings():
    assert fraction_str(Fraction(3)) == "3/1"
    assert fraction_str(Fraction(-2, 6)) == "-1/3"


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Poly()


@given(polys, polys)
def test_leibniz_with_commuting_bracket_is_zero(a, b):
    assert leibniz(a, b, lambda g, h: Poly()).is_zero()


@given(polys, keys)
def test_derivative_product_rule(a, k):
    x = Poly.gen(k)
    assert (a * x).derivative(k) == a.derivative(k) * x + a


def test_subs_and_evaluate():
    x = Poly.gen(W011) * 2 + Poly.gen(W112) * Poly.gen(W011)
    assert x.evaluate({W011: 3, W112: Fraction(1, 3)}) == 7
    y = x.subs({W112: Poly.const(1)})
    assert y == Poly.gen(W011) * 3


def test_trace_of_matrix_units():
    E12 = ExactMatrix.unit(2, 0, 1)
    E21 = ExactMatrix.unit(2, 1, 0)
    assert E12.matmul(E21).trace() == 1


def test_kron_trace():
    p = 3
    E11 = ExactMatrix.unit(2, 0, 0)
    assert matrix_kron(E11, ExactMatrix.identity(p)).trace() == p


@settings(max_examples=30)
@given(st.lists(fracs, min_size=27, max_size=27))
def test_trace_is_cyclic(vals):
    A, B, C = (ExactMatrix([vals[9 * t + 3 * i: 9 * t + 3 * i + 3] for i in range(3)]) for t in range(3))
    assert A.matmul(B).matmul(C).trace() == C.matmul(A).matmul(B).trace()


def test_shape_mismatch_raises():
    with pytest.raises(Exception):
        ExactMatrix.identity(2).matmul(ExactMatrix.identity(3))


def test_linalg():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = inverse(a)
    assert inv == [[1, -1], [-1, 2]]
    assert solve(a, [Fraction(3), Fraction(2)]) == [1, 1]
    assert rank([[1, 2], [2, 4]]) == 1
    ns = nullspace([[1, 2], [2, 4]])
    assert len(ns) == 1 and ns[0][0] + 2 * ns[0][1] == 0


def test_sparse_matches_dense():
    a = SparseMatrix.from_dense(ExactMatrix([[1, 2], [0, 3]]))
    b = SparseMatrix.from_dense(ExactMatrix([[0, 1], [1, 0]]))
    assert a.matmul(b).to_dense().data == [[2, 1], [3, 0]]
    assert a.kron(b).trace() == 0
    assert a.commutator(a).is_zero()


def test_rational_functions():
    u, v = RationalFunction.u(), RationalFunction.v()
    one = RationalFunction.const(1)
    assert ratfun_equal((u * u - one) / (u - one), u + one)
    assert not ratfun_equal(one / (u - v), one / (v - u))
    assert ratfun_equal((one + one / u) * (one - one / u), one - one / (u * u))
