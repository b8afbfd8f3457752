"""The gl(p) basis adapted to the principal sl(2) and its gl(Np) extension.

Matrices ``M[j, m]`` (0 <= j < p, -j <= m <= j) span gl(p); they form sl(2)
multiplets under the principal embedding with the non-symmetric
normalization ``[e+, M_jm] = (j(j+1) - m(m+1))/2 M_j,m+1``,
``[e-, M_jm] = M_j,m-1``.  Row indices ``k`` are one-based as in the usual
matrix-unit notation ``E_{k,l}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exact import ExactMatrix, Poly, j_key


@dataclass(frozen=True)
class PContext:
    p: int
    N: int = 1

    def __post_init__(self):
        if self.p < 1 or self.N < 1:
            raise ValueError(f"need p >= 1 and N >= 1, got p={self.p}, N={self.N}")

    def multiplets(self):
        for j in range(self.p):
            for m in range(-j, j + 1):
                yield j, m


def _check_jm(ctx: PContext, j: int, m: int) -> None:
    if not (0 <= j < ctx.p and -j <= m <= j):
        raise ValueError(f"invalid multiplet index (j={j}, m={m}) for p={ctx.p}")


def a_top(p: int, j: int, k: int) -> Fraction:
    """Coefficient of E_{k,k+j} in M_{j,j}; zero outside 1 <= k <= p-j."""
    if k < 1 or k > p - j:
        return Fraction(0)
    return Fraction(factorial(k + j - 1) * factorial(p - k), factorial(k - 1) * factorial(p - k - j))


def a_coeff(ctx: PContext, j: int, m: int, k: int) -> Fraction:
    """Coefficient of E_{k,k+m} (m >= 0) or E_{k-m,k} (m <= 0) in M_{j,m}."""
    _check_jm(ctx, j, m)
    p = ctx.p
    hi = p - m if m >= 0 else p + m
    if not 1 <= k <= hi:
        raise ValueError(f"row index k={k} outside 1..{hi}")
    shift = 0 if m >= 0 else -m
    return sum(
        (Fraction((-1) ** (i + j + m) * comb(j - m, i)) * a_top(p, j, k - i + shift) for i in range(j - m + 1)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def _mjm(p: int, j: int, m: int) -> ExactMatrix:
    ctx = PContext(p)
    out = ExactMatrix.zeros(p)
    if m >= 0:
        for k in range(1, p - m + 1):
            out.data[k - 1][k + m - 1] = a_coeff(ctx, j, m, k)
    else:
        for k in range(1, p + m + 1):
            out.data[k - m - 1][k - 1] = a_coeff(ctx, j, m, k)
    return out


def build_Mjm(ctx: PContext, j: int, m: int) -> ExactMatrix:
    _check_jm(ctx, j, m)
    return _mjm(ctx.p, j, m).map(lambda x: x)


def sl2_triple(ctx: PContext) -> tuple:
    """``(e+, e0, e-)`` as p x p matrices."""
    p = ctx.p
    ep = ExactMatrix.zeros(p)
    em = ExactMatrix.zeros(p)
    e0 = ExactMatrix.zeros(p)
    for k in range(1, p):
        ep.data[k - 1][k] = Fraction(k * (p - k), 2)
        em.data[k][k - 1] = Fraction(1)
    for k in range(1, p + 1):
        e0.data[k - 1][k - 1] = Fraction(p + 1, 2) - k
    return ep, e0, em


def eta(ctx: PContext, j: int) -> Fraction:
    if not 0 <= j < ctx.p:
        raise ValueError(f"invalid j={j} for p={ctx.p}")
    return Fraction(factorial(2 * j) * factorial(j) ** 2 * comb(ctx.p + j, 2 * j + 1))


@lru_cache(maxsize=None)
def _cg_table(p: int) -> dict:
    ctx = PContext(p)
    mats = {jm: _mjm(p, *jm) for jm in ctx.multiplets()}
    etas = [eta(ctx, r) for r in range(p)]
    table = {}
    for (j, m), A in mats.items():
        for (l, n), B in mats.items():
            AB = A.matmul(B)
            for r in range(abs(j - l), min(j + l, p - 1) + 1):
                s = m + n
                if abs(s) > r:
                    continue
                t = AB.matmul(mats[(r, -s)]).trace()
                if t:
                    table[(j, m, l, n, r, s)] = Fraction((-1) ** (s % 2)) * t / etas[r]
    return table


def cg(ctx: PContext, j: int, m: int, l: int, n: int, r: int, s: int) -> Fraction:
    """<j,m; l,n | r,s>: coefficient of M_{r,s} in M_{j,m} M_{l,n}."""
    for jj, mm in ((j, m), (l, n), (r, s)):
        _check_jm(ctx, jj, mm)
    return _cg_table(ctx.p).get((j, m, l, n, r, s), Fraction(0))


def cg_table(ctx: PContext) -> dict:
    """All nonzero coefficients keyed by ``(j, m, l, n, r, s)``."""
    return dict(_cg_table(ctx.p))


def cg_trace(ctx: PContext, j, m, l, n, r, s) -> Fraction:
    """The same coefficient computed directly from the trace formula."""
    t = build_Mjm(ctx, j, m).matmul(build_Mjm(ctx, l, n)).matmul(build_Mjm(ctx, r, -s)).trace()
    return Fraction((-1) ** (s % 2)) * t / eta(ctx, r)


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, detail) -> None:
        self.checked += 1
        if not cond:
            self.failures.append(detail)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "pass": self.ok,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures[:5]],
        }
        if self.info:
            out["info"] = {k: str(v) for k, v in self.info.items()}
        return out


def sl2_relations_check(ctx: PContext) -> Report:
    rep = Report(f"sl2-action p={ctx.p}")
    ep, e0, em = sl2_triple(ctx)
    rep.check(e0.commutator(ep) == ep, "[e0,e+]")
    rep.check(e0.commutator(em) == -em, "[e0,e-]")
    rep.check(ep.commutator(em) == e0, "[e+,e-]")
    if ctx.p > 1:
        rep.check(ep == build_Mjm(ctx, 1, 1).scale(Fraction(1, 2)), "e+ = M11/2")
        rep.check(e0 == build_Mjm(ctx, 1, 0).scale(Fraction(-1, 2)), "e0 = -M10/2")
        rep.check(em == build_Mjm(ctx, 1, -1).scale(Fraction(-1, 2)), "e- = -M1-1/2")
    zero = ExactMatrix.zeros(ctx.p)
    for j, m in ctx.multiplets():
        M = build_Mjm(ctx, j, m)
        up = build_Mjm(ctx, j, m + 1) if m < j else zero
        down = build_Mjm(ctx, j, m - 1) if m > -j else zero
        rep.check(ep.commutator(M) == up.scale(Fraction(j * (j + 1) - m * (m + 1), 2)), ("e+", j, m))
        rep.check(em.commutator(M) == down, ("e-", j, m))
        rep.check(e0.commutator(M) == M.scale(m), ("e0", j, m))
    return rep


def orthogonality_check(ctx: PContext) -> Report:
    rep = Report(f"orthogonality p={ctx.p}")
    for j, m in ctx.multiplets():
        for l, n in ctx.multiplets():
            t = build_Mjm(ctx, j, m).matmul(build_Mjm(ctx, l, n)).trace()
            want = Fraction((-1) ** (m % 2)) * eta(ctx, j) if (j == l and m + n == 0) else 0
            rep.check(t == want, (j, m, l, n, t, want))
    return rep


def product_expansion_check(ctx: PContext) -> Report:
    rep = Report(f"product-expansion p={ctx.p}")
    table = _cg_table(ctx.p)
    for j, m in ctx.multiplets():
        for l, n in ctx.multiplets():
            lhs = build_Mjm(ctx, j, m).matmul(build_Mjm(ctx, l, n))
            rhs = ExactMatrix.zeros(ctx.p)
            for r, s in ctx.multiplets():
                c = table.get((j, m, l, n, r, s))
                if c:
                    rhs = rhs + build_Mjm(ctx, r, s).scale(c)
            rep.check(lhs == rhs, (j, m, l, n))
    return rep


def cg_symmetry_check(ctx: PContext) -> Report:
    """Both trace-cyclicity relations and the reflection relation, all tuples."""
    rep = Report(f"cg-symmetry p={ctx.p}")
    e = [eta(ctx, r) for r in range(ctx.p)]
    idx = list(ctx.multiplets())
    for j, m in idx:
        for l, n in idx:
            for r, s in idx:
                c = cg(ctx, j, m, l, n, r, s)
                c1 = Fraction((-1) ** ((s + m) % 2)) * e[j] / e[r] * cg(ctx, l, n, r, -s, j, -m)
                c2 = Fraction((-1) ** ((s + n) % 2)) * e[l] / e[r] * cg(ctx, r, -s, j, m, l, -n)
                refl = Fraction(
                    factorial(j - m) * factorial(l - n) * factorial(r + s),
                    factorial(j + m) * factorial(l + n) * factorial(r - s),
                ) * cg(ctx, l, -n, j, -m, r, -s)
                rep.check(c == c1, ("cyclic-1", j, m, l, n, r, s))
                rep.check(c == c2, ("cyclic-2", j, m, l, n, r, s))
                rep.check(c == refl, ("reflection", j, m, l, n, r, s))
    return rep


def closed_forms_check(ctx: PContext, printed_signs: bool = False) -> Report:
    """The twelve closed-form coefficient identities, wherever their labels are valid.

    The two identities with the ``delta_{r+1, j+k}`` factor are commonly
    printed with their signs exchanged; already at p=2,
    ``M_{1,-1} M_{1,1} = -2 E_22 = -M_00 - M_10`` gives ``<1,-1;1,1|1,0> = -1``.
    ``printed_signs=True`` checks the exchanged variant (and fails for p >= 2).
    """
    rep = Report(f"cg-closed-forms p={ctx.p}" + (" (printed signs)" if printed_signs else ""))
    flip = -1 if printed_signs else 1
    p = ctx.p

    def valid(*pairs):
        return all(0 <= jj < p and -jj <= mm <= jj for jj, mm in pairs)

    def et(x):
        return eta(ctx, x) if 0 <= x < p else Fraction(0)

    def sgn(k):
        return Fraction((-1) ** (k % 2))

    for j in range(p):
        for k in range(p):
            for r in range(p):
                d = Fraction(int(r == j + k))
                d1 = Fraction(int(r + 1 == j + k))
                ratio = et(j + k) / et(j)
                ratio1 = et(j + k - 1) / et(j) if j + k - 1 >= 0 else Fraction(0)
                if valid((r, -r), (k, k), (j, -j)):
                    rep.check(cg(ctx, r, -r, k, k, j, -j) == sgn(k) * ratio * d, ("1:1", r, k, j))
                    rep.check(cg(ctx, k, k, r, -r, j, -j) == sgn(k) * ratio * d, ("1:2", r, k, j))
                if j >= 1 and valid((r, 1 - r), (k, k), (j, 1 - j)):
                    w = sgn(k) * Fraction(j, j + k) * ratio * d
                    rep.check(cg(ctx, r, 1 - r, k, k, j, 1 - j) == w, ("1:3", r, k, j))
                    rep.check(cg(ctx, k, k, r, 1 - r, j, 1 - j) == w, ("1:4", r, k, j))
                if j >= 1 and valid((r, -r), (k, k), (j, 1 - j)):
                    rep.check(cg(ctx, r, -r, k, k, j, 1 - j) == flip * sgn(k) * k * j * ratio1 * d1, ("1:5", r, k, j))
                    rep.check(cg(ctx, k, k, r, -r, j, 1 - j) == -flip * sgn(k) * k * j * ratio1 * d1, ("1:6", r, k, j))
    if p >= 2:
        e1 = eta(ctx, 1)
        for k in range(1, p):
            ck = -sgn(k) * eta(ctx, k) / e1
            rep.check(cg(ctx, k, k, k, 1 - k, 1, 1) == ck, ("2:1", k))
            rep.check(cg(ctx, k, 1 - k, k, k, 1, 1) == -ck, ("2:2", k))
            if valid((k - 1, 1 - k)):
                rep.check(cg(ctx, k, k, k - 1, 1 - k, 1, 1) == ck / (k * (2 * k - 1)), ("2:3", k))
                rep.check(cg(ctx, k - 1, 1 - k, k, k, 1, 1) == ck / (k * (2 * k - 1)), ("2:4", k))
            w = -Fraction((k + 1) * (p * p - (k + 1) ** 2), 2 * k + 3) * ck
            if valid((k + 1, 1 - k)):
                rep.check(cg(ctx, k + 1, 1 - k, k, k, 1, 1) == w, ("2:5", k))
                rep.check(cg(ctx, k, k, k + 1, 1 - k, 1, 1) == w, ("2:6", k))
            else:
                # the right side carries p^2 - (k+1)^2 = 0 when k+1 = p
                rep.check(w == 0, ("2:5-edge", k))
    return rep


def generating_function_a(p: int, j: int, m: int, k: int) -> Fraction:
    """``a^k_{j,m}`` read off the four-variable generating function.

    For ``m < 0`` the generating function's index ``k`` labels the row of
    ``E_{k,k+m}``; callers wanting the column convention of :func:`a_coeff`
    pass ``k - m``.
    """
    from sympy import Poly as SPoly
    from sympy import symbols

    x, y, z, u = symbols("x y z u")
    n1 = j - m
    A = sum((-1) ** n * y**n * (1 - x) ** n for n in range(n1 + 1))
    B = sum(u ** (n + 1) * (1 + z + x * (1 - u)) ** n for n in range(p))
    c = SPoly((A * B).expand(), x, y, z, u).coeff_monomial(x ** (k - 1) * y**n1 * z**j * u**p)
    return Fraction(factorial(j) ** 2) * Fraction(int(c.p), int(c.q))


def generating_function_check(ctx: PContext) -> Report:
    rep = Report(f"generating-function p={ctx.p}")
    for j, m in ctx.multiplets():
        hi = ctx.p - abs(m)
        for k in range(1, hi + 1):
            kk = k if m >= 0 else k - m
            rep.check(generating_function_a(ctx.p, j, m, kk) == a_coeff(ctx, j, m, k), (j, m, k))
    return rep


def identity_suite(ctx: PContext) -> list:
    return [
        sl2_relations_check(ctx),
        orthogonality_check(ctx),
        product_expansion_check(ctx),
        cg_symmetry_check(ctx),
        closed_forms_check(ctx),
    ]


# gl(Np) = gl(N) (x) gl(p) ----------------------------------------------------


def build_Mab(ctx: PContext, a: int, b: int, j: int, m: int) -> ExactMatrix:
    """``E_ab (x) M_jm`` with one-based ``a, b``."""
    return ExactMatrix.unit(ctx.N, a - 1, b - 1).kron(build_Mjm(ctx, j, m))


def glnp_commutator(ctx: PContext, left: tuple, right: tuple) -> Poly:
    """``[Y^{jm}_{ab}, Y^{ln}_{cd}]`` as a linear polynomial in J-family generators."""
    a, b, j, m = left
    c, d, l, n = right
    out = {}
    for r, s in ctx.multiplets():
        if b == c:
            v = cg(ctx, j, m, l, n, r, s)
            if v:
                k = (j_key(a, d, r, s),)
                out[k] = out.get(k, 0) + v
        if a == d:
            v = cg(ctx, l, n, j, m, r, s)
            if v:
                k = (j_key(c, b, r, s),)
                out[k] = out.get(k, 0) - v
    return Poly(out)


def epsilon(ctx: PContext, which: str) -> ExactMatrix:
    """``1_N (x) e`` for ``which`` in ``{"+", "0", "-"}``."""
    ep, e0, em = sl2_triple(ctx)
    e = {"+": ep, "0": e0, "-": em}[which]
    return ExactMatrix.identity(ctx.N).kron(e)


def linear_to_matrix(ctx: PContext, x: Poly) -> ExactMatrix:
    """Image of a linear J-polynomial in the fundamental of gl(Np)."""
    from .exact.gens import GenIndex

    out = ExactMatrix.zeros(ctx.N * ctx.p)
    for mono, c in x.terms.items():
        if len(mono) != 1:
            raise ValueError("not a linear polynomial")
        g = GenIndex.from_key(mono[0])
        out = out + build_Mab(ctx, g.a, g.b, g.mode, g.m).scale(c)
    return out
