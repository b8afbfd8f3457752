from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from truncw.exact import ExactMatrix, Poly, j_key, solve
from truncw.glnp import (
    PContext,
    a_coeff,
    identity_suite,
    build_Mab,
    build_Mjm,
    cg,
    cg_table,
    cg_trace,
    closed_forms_check,
    epsilon,
    eta,
    generating_function_check,
    glnp_commutator,
    linear_to_matrix,
    sl2_triple,
)

P_RANGE = [1, 2, 3, 4, 5]


def E(p, k, l):
    return ExactMatrix.unit(p, k - 1, l - 1)


def test_a_coeff_spot_values():
    assert a_coeff(PContext(2), 1, 1, 1) == 1
    for p in P_RANGE:
        assert build_Mjm(PContext(p), 0, 0) == ExactMatrix.identity(p)


def test_p2_basis_matrices():
    ctx = PContext(2)
    assert build_Mjm(ctx, 1, 1) == E(2, 1, 2)
    assert build_Mjm(ctx, 1, -1) == E(2, 2, 1).scale(-2)
    assert build_Mjm(ctx, 1, 0) == ExactMatrix([[-1, 0], [0, 1]])


@pytest.mark.parametrize("p", P_RANGE)
def test_raising_operator_is_half_m11(p):
    ctx = PContext(p)
    ep, _, _ = sl2_triple(ctx)
    for k in range(1, p):
        assert ep[k - 1, k] == Fraction(k * (p - k), 2)
    if p > 1:
        assert ep == build_Mjm(ctx, 1, 1).scale(Fraction(1, 2))


@pytest.mark.parametrize("p", P_RANGE)
def test_weights_and_lowest_vectors(p):
    ctx = PContext(p)
    _, e0, em = sl2_triple(ctx)
    for j in range(p):
        top = build_Mjm(ctx, j, j)
        assert e0.commutator(top) == top.scale(j)
        assert em.commutator(build_Mjm(ctx, j, -j)).is_zero()


def test_eta_values():
    assert eta(PContext(2), 1) == 2
    assert -build_Mjm(PContext(2), 1, 1).matmul(build_Mjm(PContext(2), 1, -1)).trace() == 2
    for p in P_RANGE:
        assert eta(PContext(p), 0) == p


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_orthogonality_exhaustive(p):
    ctx = PContext(p)
    for j, m in ctx.multiplets():
        for l, n in ctx.multiplets():
            t = build_Mjm(ctx, j, m).matmul(build_Mjm(ctx, l, n)).trace()
            if j != l or m + n != 0:
                assert t == 0


def _expansion_by_solve(ctx, j, m, l, n):
    """Coefficients of M_j,m M_l,n in the M basis, from a linear solve on entries."""
    basis = list(ctx.multiplets())
    cols = [sum(build_Mjm(ctx, r, s).data, []) for r, s in basis]
    rows = [[cols[c][i] for c in range(len(basis))] for i in range(ctx.p ** 2)]
    rhs = sum(build_Mjm(ctx, j, m).matmul(build_Mjm(ctx, l, n)).data, [])
    return dict(zip(basis, solve(rows, rhs)))


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_cg_table_matches_linear_solve(p):
    ctx = PContext(p)
    for j, m in ctx.multiplets():
        for l, n in ctx.multiplets():
            coeffs = _expansion_by_solve(ctx, j, m, l, n)
            for (r, s), c in coeffs.items():
                assert cg(ctx, j, m, l, n, r, s) == c


def test_cg_frozen_values():
    # frozen from the linear-solve oracle above
    assert cg(PContext(2), 1, -1, 1, 1, 1, 0) == -1
    assert cg(PContext(2), 1, -1, 1, 1, 0, 0) == -1
    assert cg(PContext(3), 1, 1, 1, -1, 0, 0) == Fraction(-8, 3)
    assert cg(PContext(3), 1, 1, 1, -1, 1, 0) == 1
    assert cg(PContext(3), 1, 1, 1, -1, 2, 0) == Fraction(1, 6)


def test_cg_identity_row():
    ctx = PContext(3)
    for j, m in ctx.multiplets():
        for r, s in ctx.multiplets():
            assert cg(ctx, 0, 0, j, m, r, s) == int((j, m) == (r, s))


def test_cg_first_closed_form_and_c1():
    for p in P_RANGE:
        ctx = PContext(p)
        for k in range(p):
            for j in range(p - k):
                for r in range(p):
                    want = (-1) ** k * eta(ctx, j + k) / eta(ctx, j) if r == j + k else 0
                    assert cg(ctx, k, k, r, -r, j, -j) == want
        if p >= 2:
            assert cg(ctx, 1, 1, 1, 0, 1, 1) == 1


def test_selection_rules():
    ctx = PContext(4)
    for (j, m, l, n, r, s) in cg_table(ctx):
        assert abs(j - l) <= r <= min(j + l, ctx.p - 1)
        assert s == m + n


def test_cg_matches_trace_formula_spot():
    ctx = PContext(3)
    assert cg(ctx, 1, 1, 1, -1, 0, 0) == cg_trace(ctx, 1, 1, 1, -1, 0, 0)


@pytest.mark.parametrize("p", P_RANGE)
def test_identity_suite(p):
    for rep in identity_suite(PContext(p)):
        assert rep.ok, rep.to_dict()


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_printed_signs_of_two_closed_forms_fail(p):
    assert not closed_forms_check(PContext(p), printed_signs=True).ok


def test_p1_printed_variant_is_vacuous():
    assert closed_forms_check(PContext(1), printed_signs=True).ok


@pytest.mark.parametrize("p", [1, 2, 3])
def test_generating_function(p):
    assert generating_function_check(PContext(p)).ok


def test_bad_labels_raise():
    with pytest.raises(ValueError):
        build_Mjm(PContext(2), 2, 0)
    with pytest.raises(ValueError):
        eta(PContext(2), 2)
    with pytest.raises(ValueError):
        PContext(0)


def test_embedded_gln():
    ctx = PContext(2, 2)
    for a in (1, 2):
        for b in (1, 2):
            for c in (1, 2):
                for d in (1, 2):
                    got = glnp_commutator(ctx, (a, b, 0, 0), (c, d, 0, 0))
                    want = Poly()
                    if b == c:
                        want = want + Poly.gen(j_key(a, d, 0, 0))
                    if a == d:
                        want = want - Poly.gen(j_key(c, b, 0, 0))
                    assert got == want


def test_raising_on_gl_np_generators():
    ctx = PContext(3, 2)
    ep = epsilon(ctx, "+")
    for j, m in ctx.multiplets():
        if m < j:
            lhs = ep.commutator(build_Mab(ctx, 1, 2, j, m))
            want = build_Mab(ctx, 1, 2, j, m + 1).scale(Fraction(j * (j + 1) - m * (m + 1), 2))
            assert lhs == want


labels = st.tuples(st.integers(1, 2), st.integers(1, 2)).flatmap(
    lambda ab: st.integers(0, 2).flatmap(lambda j: st.integers(-j, j).map(lambda m: ab + (j, m)))
)


@given(labels, labels)
def test_commutator_matches_matrices(x, y):
    ctx = PContext(3, 2)
    lhs = build_Mab(ctx, *x).commutator(build_Mab(ctx, *y))
    assert linear_to_matrix(ctx, glnp_commutator(ctx, x, y)) == lhs


def test_eta_closed_form():
    for p in P_RANGE:
        for j in range(p):
            assert eta(PContext(p), j) == factorial(2 * j) * factorial(j) ** 2 * comb(p + j, 2 * j + 1)
