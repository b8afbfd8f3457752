"""Poisson Yangian of gl(N), its truncations, and the quantum commutator words.

Generators ``T[i,j,n]`` (one-based ``i, j``, mode ``n >= 1``) are polynomial
variables; mode 0 is the constant ``delta^{ij}`` and is substituted eagerly.
Brackets are derived from the matrix relation
``{T(u) (x), T(v)} = [P/(u-v), T(u) (x) T(v)]``, whose components read
``{T^{ij}(u), T^{kl}(v)} = (T^{kj}(u) T^{il}(v) - T^{il}(u) T^{kj}(v)) / (u - v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable

from .exact import Poly, leibniz, t_key
from .exact.gens import Family, GenIndex, family_of, mode_of
from .glnp import Report


@dataclass(frozen=True)
class YangianContext:
    N: int
    p: int | None = None  # None means untruncated

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.p is not None and self.p < 1:
            raise ValueError("truncation order must be >= 1")

    @property
    def truncated(self) -> bool:
        return self.p is not None

    def generators(self, max_mode: int | None = None) -> list:
        top = self.p if max_mode is None else max_mode
        if top is None:
            raise ValueError("untruncated context needs max_mode")
        return [(i, j, n) for n in range(1, top + 1) for i in range(1, self.N + 1) for j in range(1, self.N + 1)]

    def gen_poly(self, i, j, n) -> Poly:
        return t_mode(i, j, n)


def t_mode(i: int, j: int, n: int) -> Poly:
    """``T^{ij}_n`` as a polynomial; mode 0 is ``delta^{ij}``."""
    if n < 0:
        return Poly()
    if n == 0:
        return Poly.const(int(i == j))
    return Poly.gen(t_key(i, j, n))


def _check(ctx: YangianContext, g: tuple) -> None:
    i, j, n = g
    if not (1 <= i <= ctx.N and 1 <= j <= ctx.N and n >= 1):
        raise ValueError(f"invalid generator T[{i},{j},{n}] for N={ctx.N}")
    if ctx.p is not None and n > ctx.p:
        raise ValueError(f"T[{i},{j},{n}] exceeds truncation order {ctx.p}")


def truncate(x: Poly, p: int | None) -> Poly:
    """Quotient map: every T generator of mode > p goes to zero."""
    if p is None:
        return x
    return x.drop_gens(lambda k: family_of(k) is Family.T and mode_of(k) > p)


@lru_cache(maxsize=None)
def _bracket_recursive(i, j, k, l, m, n) -> Poly:
    """Untruncated ``{T^{ij}_m, T^{kl}_n}`` from the mode recursion of the
    matrix relation: ``X_{m,n} = X_{m-1,n+1} + N_{m-1,n}`` with
    ``N_{a,b} = A_a B_b - B_a A_b``, ``A = T^{kj}``, ``B = T^{il}``."""
    if m == 0 or n == 0:
        return Poly()
    prev = _bracket_recursive(i, j, k, l, m - 1, n + 1)
    a, b = m - 1, n
    nterm = t_mode(k, j, a) * t_mode(i, l, b) - t_mode(i, l, a) * t_mode(k, j, b)
    return prev + nterm


def bracket_closed_form(i, j, k, l, m, n) -> Poly:
    """Untruncated ``{T^{ij}_m, T^{kl}_n}`` as
    ``sum_{r<min(m,n)} (T^{kj}_r T^{il}_{m+n-1-r} - T^{kj}_{m+n-1-r} T^{il}_r)``."""
    out = Poly()
    for r in range(min(m, n)):
        s = m + n - 1 - r
        out = out + t_mode(k, j, r) * t_mode(i, l, s) - t_mode(k, j, s) * t_mode(i, l, r)
    return out


def poisson_bracket_gen(ctx: YangianContext, left: tuple, right: tuple) -> Poly:
    """``{T^{ij}_m, T^{kl}_n}`` in the (possibly truncated) Poisson Yangian."""
    _check(ctx, left)
    _check(ctx, right)
    (i, j, m), (k, l, n) = left, right
    return truncate(_bracket_recursive(i, j, k, l, m, n), ctx.p)


def _gen_bracket_fn(ctx: YangianContext):
    cache: dict = {}

    def gb(g: int, h: int) -> Poly:
        key = (g, h)
        v = cache.get(key)
        if v is None:
            a, b = GenIndex.from_key(g), GenIndex.from_key(h)
            if a.family is not Family.T or b.family is not Family.T:
                v = Poly()
            elif ctx.p is not None and (a.mode > ctx.p or b.mode > ctx.p):
                v = Poly()
            else:
                v = truncate(_bracket_recursive(a.a, a.b, b.a, b.b, a.mode, b.mode), ctx.p)
            cache[key] = v
        return v

    return gb


def poisson_bracket(ctx: YangianContext, x: Poly, y: Poly) -> Poly:
    """Biderivation extension of the generator brackets."""
    return leibniz(truncate(x, ctx.p), truncate(y, ctx.p), _gen_bracket_fn(ctx))


def jacobi_check(ctx: YangianContext, triples: Iterable[tuple] | None = None) -> Report:
    """``{x,{y,z}} + cyclic = 0`` on each triple of polynomials (default: all
    generator triples of the truncated algebra)."""
    rep = Report(f"jacobi N={ctx.N} p={ctx.p}")
    gb = _gen_bracket_fn(ctx)
    if triples is None:
        gens = [t_mode(*g) for g in ctx.generators()]
        triples = combinations_with_replacement(gens, 3)
    for x, y, z in triples:
        s = (
            leibniz(x, leibniz(y, z, gb), gb)
            + leibniz(y, leibniz(z, x, gb), gb)
            + leibniz(z, leibniz(x, y, gb), gb)
        )
        rep.check(s.is_zero(), (str(x), str(y), str(z), str(s)))
    return rep


def antisymmetry_check(ctx: YangianContext) -> Report:
    rep = Report(f"antisymmetry N={ctx.N} p={ctx.p}")
    gens = ctx.generators()
    for g in gens:
        for h in gens:
            s = poisson_bracket_gen(ctx, g, h) + poisson_bracket_gen(ctx, h, g)
            rep.check(s.is_zero(), (g, h))
    return rep


def quotient_check(ctx: YangianContext, max_mode: int | None = None) -> Report:
    """Bracket-then-truncate equals truncate-then-bracket on all generator
    pairs with modes up to ``max_mode`` (default ``2p``)."""
    if ctx.p is None:
        raise ValueError("quotient check needs a truncated context")
    top = 2 * ctx.p if max_mode is None else max_mode
    full = YangianContext(ctx.N, None)
    rep = Report(f"quotient N={ctx.N} p={ctx.p}")
    gens = full.generators(top)
    for g in gens:
        for h in gens:
            lhs = truncate(_bracket_recursive(g[0], g[1], h[0], h[1], g[2], h[2]), ctx.p)
            rhs = poisson_bracket(ctx, t_mode(*g), t_mode(*h))
            rep.check(lhs == rhs, (g, h))
    return rep


def bracket_table(ctx: YangianContext) -> list:
    """Every nonzero generator bracket as ``(lhs, rhs, value)`` triples."""
    rows = []
    for g in ctx.generators():
        for h in ctx.generators():
            v = poisson_bracket_gen(ctx, g, h)
            rows.append((g, h, v))
    return rows


# deformation grading ---------------------------------------------------------


def hbar_grade(m: int, n: int, mono: tuple) -> int:
    """Order in hbar of a monomial of ``{T_m, T_n}`` once every ``T_k`` is
    rescaled to ``hbar^{k-1} T_k``: ``(m + n - 2) - sum(mode - 1)``."""
    return (m + n - 2) - sum(mode_of(k) - 1 for k in mono)


def hbar_expand(ctx: YangianContext, left: tuple, right: tuple) -> dict:
    """Split ``{T^{ij}_m, T^{kl}_n}`` into its hbar-homogeneous parts ``{r: phi_r}``."""
    m, n = left[2], right[2]
    v = poisson_bracket_gen(ctx, left, right)
    out: dict = {}
    for mono, c in v.terms.items():
        r = hbar_grade(m, n, mono)
        out.setdefault(r, {})[mono] = c
    return {r: Poly(t, _trusted=True) for r, t in sorted(out.items())}


def loop_bracket(ctx: YangianContext, left: tuple, right: tuple) -> Poly:
    """Truncated loop-algebra bracket ``delta^{kj} T^{il}_{m+n-1} - delta^{il} T^{kj}_{m+n-1}``."""
    (i, j, m), (k, l, n) = left, right
    s = m + n - 1
    if ctx.p is not None and s > ctx.p:
        return Poly()
    return t_mode(i, l, s) * int(k == j) - t_mode(k, j, s) * int(i == l)


# quantum words ------------------------------------------------------------------

Letter = tuple  # (i, j, n)


def quantum_commutator_rhs(ctx: YangianContext, left: tuple, right: tuple) -> list:
    """Right side of ``[T^{ij}_m, T^{kl}_n]`` as ``(coeff, word)`` pairs.

    Words are tuples of letters ``(i, j, n)``; mode-0 letters are kept so the
    raw count is ``2 min(m, n)``.  Use :func:`collapse` to substitute them.
    """
    (i, j, m), (k, l, n) = left, right
    if m == 0 or n == 0:
        return []
    out = []
    for r in range(min(m, n)):
        s = m + n - 1 - r
        out.append((Fraction(1), ((k, j, r), (i, l, s))))
        out.append((Fraction(-1), ((k, j, s), (i, l, r))))
    return out


def collapse(terms: Iterable) -> list:
    """Substitute ``T_0 = delta`` in words and merge equal words (order kept)."""
    acc: dict = {}
    for c, word in terms:
        w = []
        for (a, b, n) in word:
            if n == 0:
                if a != b:
                    c = 0
                    break
            else:
                w.append((a, b, n))
        if c:
            key = tuple(w)
            acc[key] = acc.get(key, 0) + c
    return [(c, w) for w, c in acc.items() if c]


def rewrite_tail(ctx: YangianContext, word: tuple) -> list:
    """Rewrite a two-letter word ``T^{kj}_{hi} T^{il}_{lo}`` (``hi > lo``) as a
    sum of words in which the higher-mode letter of each pair is rightmost.

    Uses ``T^{kj}_a T^{il}_b = T^{il}_b T^{kj}_a + [T^{kj}_a, T^{il}_b]`` and
    recurses on the second half of the commutator, whose summation range is
    one shorter each time.
    """
    if len(word) != 2:
        raise ValueError("rewrite_tail expects a two-letter word")
    (k, j, a), (i, l, b) = word
    if a < b:
        raise ValueError("left letter must carry the higher mode")
    return collapse(_rewrite(k, j, a, i, l, b))


def _rewrite(k, j, a, i, l, b) -> list:
    out = [(Fraction(1), ((i, l, b), (k, j, a)))]
    if a == b or b == 0:
        if a == b:
            # equal modes: the commutator is needed in full but both orders qualify
            return [(Fraction(1), ((k, j, a), (i, l, b)))]
        return out
    # [T^{kj}_a, T^{il}_b] = sum_{s<b} (T^{ij}_s T^{kl}_{a+b-1-s} - T^{ij}_{a+b-1-s} T^{kl}_s)
    for s in range(b):
        t = a + b - 1 - s
        out.append((Fraction(1), ((i, j, s), (k, l, t))))
        for c, w in _rewrite(i, j, t, k, l, s):
            out.append((-c, w))
    return out


def words_to_string(terms: list) -> str:
    parts = []
    for c, w in terms:
        body = "*".join(f"T[{a},{b},{n}]" for a, b, n in w) or "1"
        parts.append(f"{c}*{body}")
    return " + ".join(parts) if parts else "0"
