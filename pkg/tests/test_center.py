from fractions import Fraction
from itertools import permutations

import pytest

from truncw.center import (
    casimirs_from_det,
    center_tower,
    centrality_check,
    charpoly,
    gauge_fixed_current,
    h_centrality_report,
    h_residues,
    independence_check,
    jacobian_rank,
    triangularity_check,
)
from truncw.exact import ExactMatrix, Poly, psum
from truncw.glnp import PContext
from truncw.reduction import W

CASES = [(1, 2), (2, 1), (2, 2)]


def _sign(w):
    s = 1
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] > w[j]:
                s = -s
    return s


def _det_leibniz(rows):
    """Permutation-sum determinant; an oracle independent of Faddeev-LeVerrier."""
    n = len(rows)
    out = []
    for w in permutations(range(n)):
        term = Poly.const(_sign(w))
        for i in range(n):
            term = term * rows[i][w[i]]
        out.append(term)
    return psum(out)


@pytest.mark.parametrize("N,p", CASES)
def test_casimirs_central(N, p):
    cs = casimirs_from_det(PContext(p, N))
    assert len(cs) == N * p
    assert centrality_check(cs).ok


@pytest.mark.parametrize("N,p", CASES)
def test_casimirs_independent(N, p):
    cs = casimirs_from_det(PContext(p, N))
    assert jacobian_rank(cs) == N * p
    assert independence_check(cs, seed=3).ok


@pytest.mark.parametrize("N,p", CASES)
def test_triangularity(N, p):
    assert triangularity_check(casimirs_from_det(PContext(p, N))).ok


def test_charpoly_constant_matrix():
    A = ExactMatrix([[Poly.const(2), Poly.const(1)], [Poly.const(0), Poly.const(3)]])
    # det(xI - A) = x^2 - 5x + 6
    assert charpoly(A) == [Poly.const(6), Poly.const(-5), Poly.const(1)]


@pytest.mark.parametrize("N,p", [(1, 2), (2, 2)])
def test_charpoly_matches_leibniz_determinant(N, p):
    A = gauge_fixed_current(PContext(p, N))
    n = A.shape[0]
    x = Fraction(7, 3)
    shifted = [[A[i, j] - Poly.const(x * int(i == j)) for j in range(n)] for i in range(n)]
    direct = _det_leibniz(shifted)
    cs = casimirs_from_det(PContext(p, N))
    via = Poly.const((-1) ** n * x ** n) + psum(cs[m] * x ** (n - m) for m in range(1, n + 1))
    assert direct == via


def test_p1_casimirs_are_det_of_w0():
    ctx = PContext(1, 2)
    cs = casimirs_from_det(ctx)
    w = [[W(a, b, 0) for b in (1, 2)] for a in (1, 2)]
    # det(W0 - x) = x^2 - tr(W0) x + det(W0)
    assert cs[1] == -(w[0][0] + w[1][1])
    assert cs[2] == w[0][0] * w[1][1] - w[0][1] * w[1][0]


def test_casimir_index_bounds():
    cs = casimirs_from_det(PContext(2, 1))
    with pytest.raises(IndexError):
        cs[0]
    with pytest.raises(IndexError):
        cs[3]


def test_to_strings_keys():
    assert set(casimirs_from_det(PContext(2, 1)).to_strings()) == {"C1", "C2"}


@pytest.mark.parametrize("N,p", [(1, 1), (2, 2), (3, 2)])
def test_center_tower_counts(N, p):
    assert center_tower(PContext(p, N), 0)["count"] == N * p
    assert center_tower(PContext(p, N), N * p)["count"] == 0
    for r in range(N * p + 1):
        t = center_tower(PContext(p, N), r)
        assert len(t["generators"]) == t["count"] == N * p - r


def test_center_tower_spot():
    t = center_tower(PContext(2, 2), 1)
    assert t["count"] == 3 and t["generators"] == ["C2", "C3", "C4"]


@pytest.mark.parametrize("r", [-1, 5])
def test_center_tower_range(r):
    with pytest.raises(ValueError):
        center_tower(PContext(2, 2), r)


def test_h_residue_poles():
    res = h_residues(2, 2, [0, Fraction(1, 3)], lambda i, j, r: Poly.const(int(i == j)) if r == 0 else Poly())
    assert [x for x, _ in res] == [1, Fraction(4, 3), 2, Fraction(7, 3)]


def test_h_residues_need_generic_parameters():
    with pytest.raises(ValueError):
        h_residues(2, 2, [0, 1], lambda *a: Poly())
    with pytest.raises(ValueError):
        h_residues(2, 2, [0], lambda *a: Poly())


def test_h_residues_not_central_for_n2():
    # recorded behaviour: these residues are not Poisson-central at N=2
    assert not h_centrality_report(2, 2, [0, Fraction(1, 3)]).ok


def test_h_residues_central_for_n1():
    assert h_centrality_report(1, 2, [0, Fraction(1, 3)]).ok
