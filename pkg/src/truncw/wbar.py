"""The two generator families W̄^± of the finite W-algebra.

Each family is a list of N x N matrices of polynomials in the soldering-normalized
generators ``W_j``.  ``W̄_0 = p W_0`` and ``W̄_1`` are seeded explicitly; higher
members are sums of matrix words

    W̄_{j} = sum_n sum_{|s| = j+1-n} alpha_s (W_{s_1} ... W_{s_n})

with rational ``alpha`` fixed by requiring

    {W̄_1^{ab}, W̄_j^{cd}} = d^{cb} W̄^{ad}_{j+1} - d^{ad} W̄^{cb}_{j+1}
                            + W̄^{cb}_0 W̄^{ad}_j - W̄^{cb}_j W̄^{ad}_0.

That relation fixes ``W̄_{j+1}`` only up to a multiple of the identity; the word
ansatz carries no such term, which removes the ambiguity.  The ``alpha`` do not
depend on ``N``; they are solved at ``N = max(N, 2)`` because for ``N = 1`` every
bracket vanishes and the relation is empty.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exact import Poly, psum, solve, t_key, w_key
from .glnp import PContext, Report
from .reduction import W, w_bracket
from .yangian import YangianContext, poisson_bracket_gen

SIGNS = ("+", "-")


def _sign(sign: str) -> int:
    if sign not in SIGNS:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return 1 if sign == "+" else -1


def compositions(total: int, n: int, top: int) -> list:
    """Tuples of ``n`` integers in ``[0, top)`` summing to ``total``."""
    if n == 0:
        return [()] if total == 0 else []
    out = []
    for s in range(min(total, top - 1) + 1):
        for rest in compositions(total - s, n - 1, top):
            out.append((s,) + rest)
    return out


def words(p: int, j: int) -> list:
    """Words allowed in ``W̄_j``: ``n = 1..j+1`` letters with ``|s| = j+1-n``."""
    return [s for n in range(1, j + 2) for s in compositions(j + 1 - n, n, p)]


def _zero(N: int) -> list:
    return [[Poly()] * N for _ in range(N)]


def matmul(x: list, y: list) -> list:
    n = len(x)
    return [[psum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def madd(x: list, y: list, c=1) -> list:
    return [[x[i][j] + y[i][j] * c for j in range(len(x))] for i in range(len(x))]


def wmatrix(ctx: PContext, j: int) -> list:
    if not 0 <= j < ctx.p:
        return _zero(ctx.N)
    return [[W(a, b, j) for b in range(1, ctx.N + 1)] for a in range(1, ctx.N + 1)]


def word_matrix(ctx: PContext, s: tuple) -> list:
    return _word_matrix(ctx, tuple(s))


@lru_cache(maxsize=None)
def _word_matrix(ctx: PContext, s: tuple) -> list:
    if len(s) == 1:
        return wmatrix(ctx, s[0])
    return matmul(_word_matrix(ctx, s[:-1]), wmatrix(ctx, s[-1]))


def combine(ctx: PContext, alpha: dict) -> list:
    out = _zero(ctx.N)
    for s, c in alpha.items():
        if c:
            out = madd(out, word_matrix(ctx, s), c)
    return out


def seed_alphas(p: int, sign: str) -> list:
    """Word coefficients of ``W̄_0`` and ``W̄_1``."""
    e = _sign(sign)
    a0 = {(0,): Fraction(p)}
    a1 = {(0, 0): Fraction(p * (p + e), 2)}
    if p > 1:
        a1[(1,)] = Fraction(e * p * (p * p - 1), 6)
    return [a0, a1]


class WBarFamily:
    """One family ``W̄^±_j`` for ``j = 0..j_max`` on a fixed context."""

    def __init__(self, ctx: PContext, sign: str, alphas: list):
        self.ctx = ctx
        self.sign = sign
        self.alphas = alphas
        self.gens = [combine(ctx, a) for a in alphas]

    @property
    def j_max(self) -> int:
        return len(self.gens) - 1

    def __getitem__(self, j: int) -> list:
        if j < 0:
            raise IndexError(j)
        return self.gens[j]

    def entry(self, a: int, b: int, j: int) -> Poly:
        """``W̄^{ab}_j`` with 1-based ``a, b``."""
        return self.gens[j][a - 1][b - 1]

    def leading_coefficient(self, j: int) -> Fraction:
        return self.alphas[j].get((j,), Fraction(0))

    def w0_power_coefficient(self, j: int) -> Fraction:
        return self.alphas[j].get((0,) * (j + 1), Fraction(0))

    def to_strings(self) -> dict:
        N = self.ctx.N
        return {
            f"{j}:{a}{b}": self.entry(a, b, j).to_string()
            for j in range(len(self.gens))
            for a in range(1, N + 1)
            for b in range(1, N + 1)
        }


def _pbn_rhs(ctx: PContext, w1: list, wj: list, w0: list, a, b, c, d) -> Poly:
    """``{W̄_1^{ab}, W̄_j^{cd}} - W̄^{cb}_0 W̄^{ad}_j + W̄^{cb}_j W̄^{ad}_0`` (0-based indices)."""
    br = w_bracket(ctx, w1[a][b], wj[c][d])
    return br - w0[c][b] * wj[a][d] + wj[c][b] * w0[a][d]


@lru_cache(maxsize=None)
def _solve_alphas(p: int, sign: str, j_max: int, n_aux: int) -> tuple:
    ctx = PContext(p, n_aux)
    alphas = seed_alphas(p, sign)[: j_max + 1]
    gens = [combine(ctx, a) for a in alphas]
    rng = range(n_aux)
    for j in range(1, j_max):
        cand = words(p, j + 1)
        rows: dict = {}
        rhs: dict = {}
        for a in rng:
            for b in rng:
                for c in rng:
                    for d in rng:
                        r = _pbn_rhs(ctx, gens[1], gens[j], gens[0], a, b, c, d)
                        for mono, v in r.terms.items():
                            rhs[(a, b, c, d, mono)] = v
                        for k, s in enumerate(cand):
                            wm = word_matrix(ctx, s)
                            lhs = wm[a][d] * int(c == b) - wm[c][b] * int(a == d)
                            for mono, v in lhs.terms.items():
                                rows.setdefault((a, b, c, d, mono), {})[k] = v
        keys = sorted(set(rows) | set(rhs))
        A = [[rows.get(key, {}).get(k, Fraction(0)) for k in range(len(cand))] for key in keys]
        B = [rhs.get(key, Fraction(0)) for key in keys]
        x = solve(A, B)
        if x is None:
            raise ArithmeticError(f"no word solution for W̄_{j + 1} (p={p}, sign {sign})")
        alpha = {s: v for s, v in zip(cand, x) if v}
        alphas.append(alpha)
        gens.append(combine(ctx, alpha))
    return tuple(alphas)


def wbar_build(ctx: PContext, sign: str, j_max: int | None = None) -> WBarFamily:
    """Build ``W̄^±_j`` for ``j <= j_max`` (default ``p``)."""
    _sign(sign)
    if j_max is None:
        j_max = ctx.p
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    alphas = _solve_alphas(ctx.p, sign, j_max, max(ctx.N, 2))
    return WBarFamily(ctx, sign, list(alphas))


# checks --------------------------------------------------------------------


def pbn_check(fam: WBarFamily, j_top: int | None = None) -> Report:
    """Closed brackets of ``W̄_0`` and ``W̄_1`` with ``W̄_j``, ``1 <= j < j_max``, all indices."""
    ctx = fam.ctx
    rep = Report(f"W̄{fam.sign} brackets N={ctx.N} p={ctx.p}")
    top = fam.j_max - 1 if j_top is None else j_top
    rng = range(ctx.N)
    w0 = fam[0]
    for j in range(0, top + 1):
        wj = fam[j]
        for a in rng:
            for b in rng:
                for c in rng:
                    for d in rng:
                        got0 = w_bracket(ctx, w0[a][b], wj[c][d])
                        want0 = wj[a][d] * int(c == b) - wj[c][b] * int(a == d)
                        rep.check(got0 == want0, ("W0", j, a, b, c, d))
                        if j >= 1:
                            nxt = fam[j + 1]
                            got = _pbn_rhs(ctx, fam[1], wj, w0, a, b, c, d)
                            want = nxt[a][d] * int(c == b) - nxt[c][b] * int(a == d)
                            rep.check(got == want, ("W1", j, a, b, c, d, str(got - want)))
    return rep


def endpoint_check(fam: WBarFamily, j_top: int | None = None) -> Report:
    """Leading ``(±1)^j (j!)^2 C(p+j, 2j+1)`` and pure-``W_0`` coefficients
    (``C(p, j+1)`` for ``-``, ``C(p+j, j+1)`` for ``+``)."""
    p = fam.ctx.p
    e = _sign(fam.sign)
    rep = Report(f"W̄{fam.sign} endpoint coefficients p={p}")
    top = min(fam.j_max, p - 1) if j_top is None else j_top
    for j in range(top + 1):
        lead = Fraction(e ** j * factorial(j) ** 2 * comb(p + j, 2 * j + 1))
        if j < p:
            rep.check(fam.leading_coefficient(j) == lead, ("lead", j, str(fam.leading_coefficient(j))))
        tail = comb(p, j + 1) if e < 0 else comb(p + j, j + 1)
        rep.check(fam.w0_power_coefficient(j) == tail, ("tail", j, str(fam.w0_power_coefficient(j))))
    return rep


def truncation_check(ctx: PContext) -> Report:
    """``W̄^-_p = 0`` identically and ``W̄^+_p != 0``."""
    rep = Report(f"truncation N={ctx.N} p={ctx.p}")
    minus = wbar_build(ctx, "-", ctx.p)
    plus = wbar_build(ctx, "+", ctx.p)
    for a in range(ctx.N):
        for b in range(ctx.N):
            rep.check(minus[ctx.p][a][b].is_zero(), ("minus", a + 1, b + 1))
    rep.check(any(plus[ctx.p][a][b] for a in range(ctx.N) for b in range(ctx.N)), "plus vanishes")
    return rep


def change_of_basis(fam_from: WBarFamily, j: int) -> list:
    """``sum_{n=1}^{j+1} (-1)^{j+n+1} sum_{|s|=j+1-n} (W̄_{s_1} ... W̄_{s_n})`` in the given family.

    This is the other family's ``W̄_j``.
    """
    ctx = fam_from.ctx
    out = _zero(ctx.N)
    for n in range(1, j + 2):
        sign = (-1) ** ((j + n + 1) % 2)
        for s in compositions(j + 1 - n, n, j + 1):
            prod = fam_from[s[0]]
            for t in s[1:]:
                prod = matmul(prod, fam_from[t])
            out = madd(out, prod, sign)
    return out


def change_of_basis_check(ctx: PContext, j_top: int | None = None) -> Report:
    rep = Report(f"change of basis N={ctx.N} p={ctx.p}")
    top = ctx.p if j_top is None else j_top
    fams = {s: wbar_build(ctx, s, top) for s in SIGNS}
    for src, dst in (("+", "-"), ("-", "+")):
        for j in range(top + 1):
            rep.check(change_of_basis(fams[src], j) == fams[dst][j], (src, j))
    return rep


def mixed_bracket_check(ctx: PContext, j_top: int | None = None) -> Report:
    """``{W̄^±_1, W̄^∓_j} = d^{bc}((W̄_0 W̄^∓_j)^{ad} - W̄^∓_{j+1}^{ad})
    - d^{ad}((W̄^∓_j W̄_0)^{cb} - W̄^∓_{j+1}^{cb})``."""
    rep = Report(f"mixed brackets N={ctx.N} p={ctx.p}")
    top = ctx.p if j_top is None else j_top
    fams = {s: wbar_build(ctx, s, top + 1) for s in SIGNS}
    rng = range(ctx.N)
    for s, o in (("+", "-"), ("-", "+")):
        one = fams[s][1]
        other = fams[o]
        w0 = other[0]
        for j in range(top + 1):
            left = matmul(w0, other[j])
            right = matmul(other[j], w0)
            for a in rng:
                for b in rng:
                    for c in rng:
                        for d in rng:
                            got = w_bracket(ctx, one[a][b], other[j][c][d])
                            want = (left[a][d] - other[j + 1][a][d]) * int(b == c) - (
                                right[c][b] - other[j + 1][c][b]
                            ) * int(a == d)
                            rep.check(got == want, (s, j, a, b, c, d))
    return rep


def _tr(m: list) -> Poly:
    return psum(m[i][i] for i in range(len(m)))


def w2wj_check(fam: WBarFamily) -> Report:
    """The auxiliary identity for ``N {W̄_2^{cb}, W̄_{j}^{ad}}`` used in the recursion, ``1 <= j < j_max``."""
    ctx = fam.ctx
    N = ctx.N
    rep = Report(f"W2Wj identity{fam.sign} N={N} p={ctx.p}")
    rng = range(N)
    br = lambda x, y: w_bracket(ctx, x, y)  # noqa: E731
    w0, w1, w2 = fam[0], fam[1], fam[2]
    for j in range(1, fam.j_max):
        wj, wn = fam[j], fam[j + 1]
        tr_n, tr_0 = _tr(wn), _tr(w0)
        com0 = madd(matmul(w0, wn), matmul(wn, w0), -1)
        com1 = madd(matmul(w1, wj), matmul(wj, w1), -1)

        def B(x, y):
            return psum(br(w1[x][e], wn[e][y]) for e in rng) + w0[x][y] * tr_n - tr_0 * wn[x][y]

        for a in rng:
            for b in rng:
                for c in rng:
                    for d in rng:
                        lhs = br(w2[c][b], wj[a][d]) * N
                        rhs = -(br(w1[a][b], wn[c][d]) + br(w1[c][d], wn[a][b]))
                        rhs += (w1[a][b] * wj[c][d] - w1[c][d] * wj[a][b]) * N
                        rhs += (w0[a][b] * wn[c][d] - w0[c][d] * wn[a][b]) * N
                        if a == b:
                            rhs += B(c, d)
                        if c == d:
                            rhs += -psum(br(wn[a][e], w1[e][b]) for e in rng) + tr_0 * wn[a][b] - w0[a][b] * tr_n
                        if c == b:
                            rhs += br(_tr(w2), wj[a][d]) - com0[a][d] - com1[a][d]
                        rep.check(lhs == rhs, (j, a + 1, b + 1, c + 1, d + 1, str(lhs - rhs)))
    return rep


def vanishing_claims_check(fam: WBarFamily) -> Report:
    """Claims that make the trace terms of the recursion drop out.

    * ``{W̄_1^{aa}, W̄_j^{cc}}`` has no ``d^{ab}``/``d^{cd}`` part: for ``a != c`` it
      reduces to ``W̄_0^{ca} W̄_j^{ac} - W̄_j^{ca} W̄_0^{ac}``;
    * ``{tr W̄_1, tr W̄_j} = 0`` and ``{W̄_1^{ef}, W̄_j^{fe}} = 0`` (summed);
    * ``{W̄_1^{ab}, tr W̄_j} + [W̄_0, W̄_j]^{ab} = 0``;
    * ``{tr W̄_1, tr P} = 0`` for every matrix word ``P`` with ``|s| + n <= p``.
    """
    ctx = fam.ctx
    rep = Report(f"vanishing claims{fam.sign} N={ctx.N} p={ctx.p}")
    rng = range(ctx.N)
    br = lambda x, y: w_bracket(ctx, x, y)  # noqa: E731
    w0, w1 = fam[0], fam[1]
    t1 = _tr(w1)
    for j in range(1, fam.j_max + 1):
        wj = fam[j]
        for a in rng:
            for c in rng:
                if a != c:
                    got = br(w1[a][a], wj[c][c])
                    rep.check(got == w0[c][a] * wj[a][c] - wj[c][a] * w0[a][c], ("no-delta", j, a, c))
        rep.check(br(t1, _tr(wj)).is_zero(), ("trace-trace", j))
        rep.check(psum(br(w1[e][f], wj[f][e]) for e in rng for f in rng).is_zero(), ("contracted", j))
        com = madd(matmul(w0, wj), matmul(wj, w0), -1)
        trj = _tr(wj)
        for a in rng:
            for b in rng:
                rep.check((br(w1[a][b], trj) + com[a][b]).is_zero(), ("trace-line", j, a, b))
    for j in range(ctx.p):
        for s in words(ctx.p, j):
            rep.check(br(t1, _tr(word_matrix(ctx, s))).is_zero(), ("word", s))
    return rep


# identification with the truncated Yangian --------------------------------------


def yangian_dictionary(fam: WBarFamily) -> dict:
    """``T^{ab}_n -> W̄^{ab}_{n-1}`` for ``n = 1..p``."""
    ctx = fam.ctx
    return {
        t_key(a, b, n): fam.entry(a, b, n - 1)
        for n in range(1, ctx.p + 1)
        for a in range(1, ctx.N + 1)
        for b in range(1, ctx.N + 1)
    }


def identify_with_yangian(ctx: PContext, pairs: list | None = None) -> Report:
    """Every bracket ``{W̄_j^{ab}, W̄_l^{cd}}`` equals the truncated Yangian bracket
    ``{T^{ab}_{j+1}, T^{cd}_{l+1}}`` pushed through the dictionary."""
    fam = wbar_build(ctx, "-", ctx.p)
    yctx = YangianContext(ctx.N, ctx.p)
    sub = yangian_dictionary(fam)
    rep = Report(f"W = Y identification N={ctx.N} p={ctx.p}")
    rng = range(1, ctx.N + 1)
    if pairs is None:
        pairs = [(j, l) for j in range(ctx.p) for l in range(ctx.p)]
    for j, l in pairs:
        for a in rng:
            for b in rng:
                for c in rng:
                    for d in rng:
                        got = w_bracket(ctx, fam.entry(a, b, j), fam.entry(c, d, l))
                        want = poisson_bracket_gen(yctx, (a, b, j + 1), (c, d, l + 1)).subs(sub)
                        rep.check(got == want, ((a, b, j), (c, d, l), str(got - want)))
    return rep


def inverse_dictionary(ctx: PContext) -> dict:
    """``W_j`` as polynomials in ``T`` (triangular inversion of the ``-`` family)."""
    fam = wbar_build(ctx, "-", ctx.p - 1)
    out: dict = {}
    for j in range(ctx.p):
        lead = fam.leading_coefficient(j)
        for a in range(1, ctx.N + 1):
            for b in range(1, ctx.N + 1):
                rest = fam.entry(a, b, j) - W(a, b, j) * lead
                out[w_key(a, b, j)] = (Poly.gen(t_key(a, b, j + 1)) - rest.subs(out)) / lead
    return out
