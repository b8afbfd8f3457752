"""Center of W_p(N) from the characteristic polynomial of the gauge-fixed current.

``det(J_gf - x I) = (-1)^{Np} x^{Np} + sum_{n<Np} C_{Np-n} x^n`` with
``J_gf = eps_- + sum W^{ab}_j M^{jj}_{ab}`` (soldering normalization).  The
coefficients are gl(Np) Casimirs restricted to the gauge slice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .exact import ExactMatrix, Poly, psum, rank, t_key, w_key
from .glnp import PContext, Report, epsilon
from .reduction import _wmatrix, w_bracket, w_generators, W
from .wbar import inverse_dictionary


def gauge_fixed_current(ctx: PContext) -> ExactMatrix:
    em = epsilon(ctx, "-")
    wm = _wmatrix(ctx)
    return wm + em.map(Poly.const)


def charpoly(A: ExactMatrix) -> list:
    """Coefficients ``c_0..c_n`` of ``det(x I - A)`` by Faddeev-LeVerrier."""
    n = A.shape[0]
    c = [Poly()] * (n + 1)
    c[n] = Poly.const(1)
    M = ExactMatrix([[Poly()] * n for _ in range(n)])
    ident = ExactMatrix([[Poly.const(int(i == j)) for j in range(n)] for i in range(n)])
    for k in range(1, n + 1):
        M = A.matmul(M) + ident.map(lambda x, s=c[n - k + 1]: x * s)
        c[n - k] = A.matmul(M).trace() * Fraction(-1, k)
    return c


@dataclass
class CasimirSet:
    ctx: PContext
    C: list  # C[0] is C_1

    def __len__(self):
        return len(self.C)

    def __getitem__(self, n: int) -> Poly:
        """``C_n`` for ``n = 1..Np``."""
        if not 1 <= n <= len(self.C):
            raise IndexError(n)
        return self.C[n - 1]

    def to_strings(self) -> dict:
        return {f"C{n}": c.to_string() for n, c in enumerate(self.C, start=1)}


def casimirs_from_det(ctx: PContext) -> CasimirSet:
    A = gauge_fixed_current(ctx)
    n = A.shape[0]
    c = charpoly(A)
    sign = (-1) ** (n % 2)
    # det(A - xI) = (-1)^n det(xI - A), so C_m multiplies x^{n-m}
    return CasimirSet(ctx, [c[n - m] * sign for m in range(1, n + 1)])


def centrality_check(cs: CasimirSet) -> Report:
    ctx = cs.ctx
    rep = Report(f"casimir centrality N={ctx.N} p={ctx.p}")
    for n, c in enumerate(cs.C, start=1):
        for g in w_generators(ctx):
            rep.check(w_bracket(ctx, c, W(*g)).is_zero(), (f"C{n}", g))
    return rep


def jacobian_rank(cs: CasimirSet, seed: int = 0, tries: int = 5) -> int:
    """Rank of ``dC_n / dW`` at a random rational point (best of ``tries`` draws)."""
    ctx = cs.ctx
    keys = [w_key(*g) for g in w_generators(ctx)]
    rng = random.Random(seed)
    best = 0
    for _ in range(tries):
        point = {k: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for k in keys}
        rows = []
        for c in cs.C:
            d = c.partials()
            rows.append([d[k].evaluate(point) if k in d else Fraction(0) for k in keys])
        best = max(best, rank(rows))
        if best == len(cs.C):
            break
    return best


def independence_check(cs: CasimirSet, seed: int = 0) -> Report:
    rep = Report(f"casimir independence N={cs.ctx.N} p={cs.ctx.p}")
    r = jacobian_rank(cs, seed)
    rep.check(len(cs.C) == cs.ctx.N * cs.ctx.p, ("count", len(cs.C)))
    rep.check(r == cs.ctx.N * cs.ctx.p, ("jacobian rank", r))
    return rep


def center_tower(ctx: PContext, r: int) -> dict:
    """Central generators surviving for the quotient by the first ``r`` center modes."""
    total = ctx.N * ctx.p
    if not 0 <= r <= total:
        raise ValueError(f"r must lie in [0, {total}], got {r}")
    return {
        "N": ctx.N,
        "p": ctx.p,
        "r": r,
        "count": total - r,
        "generators": [f"C{n}" for n in range(r + 1, total + 1)],
    }


def casimirs_in_yangian(cs: CasimirSet) -> list:
    """``C_n`` rewritten in the truncated Yangian generators ``T_n``."""
    sub = inverse_dictionary(cs.ctx)
    return [c.subs(sub) for c in cs.C]


def triangularity_check(cs: CasimirSet) -> Report:
    """For ``n <= p``, the linear part of ``C_n`` in the ``T`` basis is a nonzero
    multiple of ``tr T_n``; the rest is polynomial in lower modes (homogeneity)."""
    ctx = cs.ctx
    rep = Report(f"casimir triangularity N={ctx.N} p={ctx.p}")
    for n, c in enumerate(casimirs_in_yangian(cs), start=1):
        lin = c.homogeneous_part(1)
        if n <= ctx.p:
            tr = psum(Poly.gen(t_key(a, a, n)) for a in range(1, ctx.N + 1))
            lam = lin.coeff((t_key(1, 1, n),))
            rep.check(lam != 0 and lin == tr * lam, (n, str(lin)))
            for mono in c.terms:
                if len(mono) > 1:
                    rep.check(all(_t_mode(k) < n for k in mono), (n, mono))
        else:
            rep.check(lin.is_zero(), (n, str(lin)))
    return rep


def _t_mode(key: int) -> int:
    from .exact.gens import GenIndex

    return GenIndex.from_key(key).mode


# principal-part generating function (formal parameters) ----------------------------


def h_residues(N: int, p: int, u: list, T) -> list:
    """Residues of the generating function at its poles ``x = j + u_k``.

    ``H(x) = sum_w sgn(w) sum_r T^{w(1)1}_{r_1}..T^{w(N)N}_{r_N}
    prod_j (x-j)^{p-1-r_j} / prod_k (x - j - u_k)``, ``r_j = 0..p-1``, with
    ``T(i, j, r)`` supplying the generator polynomials (``r = 0`` the identity).
    The ``u_k`` are formal; pass distinct rationals with all ``j + u_k`` distinct.
    Returns ``[(pole, residue)]``.
    """
    u = [Fraction(x) for x in u]
    if len(u) != p:
        raise ValueError("need p parameters")
    poles = sorted({j + uk for j in range(1, N + 1) for uk in u})
    if len(poles) != N * p:
        raise ValueError("parameters are not generic: poles collide")

    def factor(j, r, x):
        """``(x-j)^{p-1-r} / prod_k (x-j-u_k)`` evaluated away from its poles."""
        den = Fraction(1)
        for uk in u:
            den *= x - j - uk
        return (x - j) ** (p - 1 - r) / den

    out = []
    for j0 in range(1, N + 1):
        for k0, uk0 in enumerate(u):
            x0 = j0 + uk0
            terms = []
            for w in permutations(range(1, N + 1)):
                sgn = _perm_sign(w)
                for rs in _tuples(N, p):
                    coeff = Fraction(sgn)
                    for j, r in zip(range(1, N + 1), rs):
                        if j == j0:
                            den = Fraction(1)
                            for k, uk in enumerate(u):
                                if k != k0:
                                    den *= uk0 - uk
                            coeff *= (x0 - j) ** (p - 1 - r) / den
                        else:
                            coeff *= factor(j, r, x0)
                    prod = Poly.const(coeff)
                    for j, r in zip(range(1, N + 1), rs):
                        prod = prod * T(w[j - 1], j, r)
                    terms.append(prod)
            out.append((x0, psum(terms)))
    return out


def _tuples(n: int, p: int):
    if n == 0:
        yield ()
        return
    for r in range(p):
        for rest in _tuples(n - 1, p):
            yield (r,) + rest


def _perm_sign(w: tuple) -> int:
    s = 1
    w = list(w)
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] > w[j]:
                s = -s
    return s


def h_centrality_report(N: int, p: int, u: list) -> Report:
    """Poisson centrality of the residues in the truncated Poisson Yangian.

    Informational: the generating function's parameters are not pinned down, so
    failures here are reported, not treated as defects.
    """
    from .yangian import YangianContext, poisson_bracket, t_mode

    yctx = YangianContext(N, p)
    res = h_residues(N, p, u, t_mode)
    rep = Report(f"H(x) residue centrality N={N} p={p}")
    for x0, r in res:
        for g in yctx.generators():
            rep.check(poisson_bracket(yctx, r, t_mode(*g)).is_zero(), (str(x0), g))
    return rep
