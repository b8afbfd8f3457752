from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from truncw.exact import ExactMatrix, Poly, j_key, w_key
from truncw.glnp import PContext, build_Mab, eta, linear_to_matrix
from truncw.reduction import (
    KAPPA,
    W,
    build_delta,
    current_bracket,
    delta_checks,
    dirac_bracket,
    dirac_bracket_hbar,
    dirac_compatibility,
    dirac_soldering_check,
    dirac_w_bracket,
    fit_normalization,
    loop_w_bracket,
    normalization,
    pb_currents,
    pb_w0,
    pb_w1,
    solder_solve,
    soldering_bracket,
    soldering_closed_form_check,
    w_bracket,
    w_generators,
)


def J(a, b, j, m):
    return Poly.gen(j_key(a, b, j, m))


def test_embedded_gln_currents():
    ctx = PContext(2, 2)
    got = pb_currents(ctx, (1, 2, 0, 0), (2, 1, 0, 0))
    assert got == J(1, 1, 0, 0) - J(2, 2, 0, 0)


def _labels(ctx):
    return [(a, b, j, m) for j, m in ctx.multiplets() for a in range(1, ctx.N + 1) for b in range(1, ctx.N + 1)]


def test_n1_p2_current_table_matches_matrices():
    ctx = PContext(2, 1)
    for x in _labels(ctx):
        for y in _labels(ctx):
            lhs = linear_to_matrix(ctx, pb_currents(ctx, x, y))
            assert lhs == build_Mab(ctx, *x).commutator(build_Mab(ctx, *y))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_current_antisymmetry(p):
    ctx = PContext(p, 2)
    for x in _labels(ctx):
        for y in _labels(ctx):
            assert pb_currents(ctx, x, y) == -pb_currents(ctx, y, x)


def test_invalid_current_index():
    with pytest.raises(ValueError):
        pb_currents(PContext(2, 1), (1, 1, 2, 0), (1, 1, 0, 0))


def test_pinned_value():
    assert KAPPA == Fraction(1, 2)


def test_nilpotency_n1_p2():
    dm = build_delta(PContext(2, 1))
    assert dm.nilpotency_index() <= 3


def test_field_free_inverse_is_diagonal_pattern():
    ctx = PContext(3, 1)
    dm = build_delta(ctx)
    for x, (j, m, a, b) in enumerate(dm.labels):
        for y, (k, l, c, d) in enumerate(dm.labels):
            if dm.Dinv[x][y]:
                assert j == k and m + l + 1 == 0
    # with every W set to zero the field part vanishes
    zero = {w_key(a, b, j): Poly() for (a, b, j) in w_generators(ctx)}
    assert dm.hat.map(lambda v: Poly.const(v) if not isinstance(v, Poly) else v.subs(zero)).is_zero()


@pytest.mark.parametrize("N,p", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)])
def test_delta_checks(N, p):
    for rep in delta_checks(PContext(p, N)):
        assert rep.ok, rep.to_dict()


def test_delta_inverse_n2_p2():
    dm = build_delta(PContext(2, 2))
    assert dm.delta.matmul(dm.bar) == ExactMatrix.identity(dm.size)


@pytest.mark.parametrize("N,p", [(1, 2), (2, 2), (3, 1)])
def test_dirac_compatibility(N, p):
    assert dirac_compatibility(PContext(p, N)).ok


def test_dirac_gln_covariance():
    ctx = PContext(3, 2)
    for j in range(3):
        got = dirac_w_bracket(ctx, (1, 2, 0), (2, 1, j))
        # gl(N) rotation acts linearly on W_j, up to the normalization of W_0
        assert got.degree() == 1
        assert set(got.gens()) <= {w_key(1, 1, j), w_key(2, 2, j)}
        assert got.coeff((w_key(1, 1, j),)) == -got.coeff((w_key(2, 2, j),)) != 0


def test_dirac_jacobi_n1_p2():
    ctx = PContext(2, 1)
    xs = [J(1, 1, 0, 0), J(1, 1, 1, 1)]
    for x in xs:
        for y in xs:
            assert dirac_bracket(ctx, x, y) == -dirac_bracket(ctx, y, x)
    # two generators: Jacobi is vacuous, but the bracket on the surface must be closed
    v = dirac_bracket(ctx, xs[0], xs[1])
    assert all(k in (w_key(1, 1, 0), w_key(1, 1, 1)) for k in v.gens())


def test_hbar_leading_term_is_loop_bracket():
    ctx = PContext(2, 2)
    for left in [(1, 2, 0), (2, 1, 1), (1, 1, 0)]:
        for right in [(2, 1, 1), (1, 2, 1), (2, 2, 0)]:
            graded = dirac_bracket_hbar(ctx, left, right)
            assert min(graded, default=0) >= 0
            assert graded.get(0, Poly()) == loop_w_bracket(ctx, left, right)


def test_hbar_high_modes_vanish_at_order_zero():
    ctx = PContext(3, 2)
    graded = dirac_bracket_hbar(ctx, (1, 2, 1), (2, 1, 2))
    assert graded.get(0, Poly()).is_zero()


def test_hbar_n1_nonnegative_orders():
    ctx = PContext(2, 1)
    for g in w_generators(ctx):
        for h in w_generators(ctx):
            assert all(r >= 0 for r in dirac_bracket_hbar(ctx, g, h))


def test_soldering_w0_spot_value():
    ctx = PContext(2, 2)
    want = (W(1, 1, 1) - W(2, 2, 1)) * Fraction(1, 2)
    assert pb_w0(ctx, 1, 2, 1, 2, 1) == want
    assert soldering_bracket(ctx, (1, 2, 0), (2, 1, 1)) == want


def test_n1_brackets_vanish():
    ctx = PContext(3, 1)
    for g in w_generators(ctx):
        for h in w_generators(ctx):
            assert soldering_bracket(ctx, g, h).is_zero()


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_pb1j_leading_coefficient(p):
    ctx = PContext(p, 2)
    for j in range(p):
        v = pb_w1(ctx, 1, 2, j, 2, 1)
        want = Fraction(3 * (j + 1) * (p * p - (j + 1) ** 2), p * (p * p - 1) * (2 * j + 3))
        got = v.coeff((w_key(1, 1, j + 1),)) if j + 1 < p else Fraction(0)
        assert got == want
    # at j = p-1 the formula itself vanishes, so dropping W_p is consistent
    j = p - 1
    assert (j + 1) * (p * p - (j + 1) ** 2) == 0


def test_pb_w1_rejects_p1():
    with pytest.raises(ValueError):
        pb_w1(PContext(1, 2), 1, 1, 0, 1, 1)


@pytest.mark.parametrize("N,p", [(1, 1), (1, 2), (2, 2), (1, 3), (1, 4), (2, 3)])
def test_soldering_closed_forms(N, p):
    ctx = PContext(p, N)
    assert solder_solve(ctx).residual().is_zero()
    assert soldering_closed_form_check(ctx).ok


def test_soldering_triangularity():
    ctx = PContext(3, 1)
    sol = solder_solve(ctx)
    for (a, b, j, m), v in sol.lam.items():
        for mono in v.terms:
            for key in mono:
                from truncw.exact import GenIndex

                g = GenIndex.from_key(key)
                if g.family.name == "LAMBDA":
                    # free parameters lambda_{k,-k} feed grade j+m only from below
                    assert 0 <= j + m
                    assert g.mode + g.m == 0


@pytest.mark.parametrize("N,p", [(2, 2), (2, 3)])
def test_soldering_jacobi_on_generators(N, p):
    ctx = PContext(p, N)
    gens = [W(*g) for g in w_generators(ctx)]
    for x in gens[::3]:
        for y in gens[1::3]:
            for z in gens[2::3]:
                s = (
                    w_bracket(ctx, x, w_bracket(ctx, y, z))
                    + w_bracket(ctx, y, w_bracket(ctx, z, x))
                    + w_bracket(ctx, z, w_bracket(ctx, x, y))
                )
                assert s.is_zero()


@pytest.mark.parametrize("p", [2, 3, 4])
def test_normalization_fit_matches_closed_form(p):
    ctx = PContext(p, 2)
    fitted = fit_normalization(ctx)
    assert fitted == [normalization(ctx, j) for j in range(p)]
    assert fitted[0] == Fraction(1, p)


def test_normalization_formula():
    ctx = PContext(3, 2)
    e1 = eta(ctx, 1)
    for j in range(3):
        want = Fraction((-1) ** j * factorial(2 * j), 2 ** j) / (e1 ** j * eta(ctx, j))
        assert normalization(ctx, j) == want


def test_fit_needs_n2():
    with pytest.raises(ValueError):
        fit_normalization(PContext(2, 1))


@pytest.mark.parametrize("N,p", [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (2, 3)])
def test_dirac_equals_soldering(N, p):
    assert dirac_soldering_check(PContext(p, N)).ok


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(w_generators(PContext(2, 2))), st.sampled_from(w_generators(PContext(2, 2))))
def test_soldering_antisymmetry(g, h):
    ctx = PContext(2, 2)
    assert soldering_bracket(ctx, g, h) == -soldering_bracket(ctx, h, g)


def test_current_bracket_leibniz():
    ctx = PContext(2, 2)
    x, y, z = J(1, 2, 1, 0), J(2, 1, 1, 1), J(1, 1, 0, 0)
    assert current_bracket(ctx, x, y * z) == current_bracket(ctx, x, y) * z + y * current_bracket(ctx, x, z)
