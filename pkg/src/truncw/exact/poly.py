"""Sparse commutative polynomials with exact rational coefficients."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping

from .. import kernels
from .gens import GenIndex, key_name

Monomial = tuple


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def fraction_str(x: Fraction) -> str:
    """Exact ``num/den`` rendering used in every serialized output."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


class Poly:
    """Polynomial in commuting generators.

    ``terms`` maps sorted tuples of generator keys to nonzero ``Fraction``
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, *, _trusted: bool = False):
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms  # type: ignore[assignment]
        else:
            self.terms = normalize_terms(terms)
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        c = as_fraction(c)
        return cls({(): c}, _trusted=True) if c else cls()

    @classmethod
    def gen(cls, key: int, coeff=1) -> "Poly":
        c = as_fraction(coeff)
        return cls({(key,): c}, _trusted=True) if c else cls()

    @classmethod
    def monomial(cls, keys: Iterable[int], coeff=1) -> "Poly":
        c = as_fraction(coeff)
        return cls({tuple(sorted(keys)): c}, _trusted=True) if c else cls()

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def coeff(self, monomial: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(sorted(monomial)), Fraction(0))

    def gens(self) -> set:
        out = set()
        for m in self.terms:
            out.update(m)
        return out

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly({m: c for m, c in self.terms.items() if len(m) == d}, _trusted=True)

    def __len__(self) -> int:
        return len(self.terms)

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        acc = dict(self.terms)
        kernels.poly_axpy(acc, o.terms, 1)
        return Poly(acc, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        acc = dict(self.terms)
        kernels.poly_axpy(acc, o.terms, -1)
        return Poly(acc, _trusted=True)

    def __rsub__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.terms or not other.terms:
                return Poly()
            return Poly(kernels.poly_mul(self.terms, other.terms), _trusted=True)
        if isinstance(other, (int, Fraction, Rational)):
            c = as_fraction(other)
            if not c:
                return Poly()
            return Poly({m: v * c for m, v in self.terms.items()}, _trusted=True)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            c = as_fraction(other)
            if not c:
                raise ZeroDivisionError("polynomial divided by zero")
            return self * (1 / c)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # transformations ----------------------------------------------------
    def map_coeffs(self, fn: Callable[[Fraction], object]) -> "Poly":
        return Poly({m: fn(c) for m, c in self.terms.items()})

    def filter(self, keep: Callable[[Monomial], bool]) -> "Poly":
        return Poly({m: c for m, c in self.terms.items() if keep(m)}, _trusted=True)

    def drop_gens(self, dead: Callable[[int], bool]) -> "Poly":
        """Set every generator with ``dead(key)`` true to zero."""
        return self.filter(lambda m: not any(dead(k) for k in m))

    def subs(self, mapping: Mapping[int, object]) -> "Poly":
        """Substitute generators by polynomials or scalars."""
        if not mapping:
            return self
        images = {k: (v if isinstance(v, Poly) else Poly.const(v)) for k, v in mapping.items()}
        powers: dict = {}
        acc: dict = {}
        for mono, c in self.terms.items():
            kept = []
            factor = None
            for k, e in Counter(mono).items():
                if k in images:
                    pk = powers.get((k, e))
                    if pk is None:
                        pk = images[k] ** e
                        powers[(k, e)] = pk
                    factor = pk if factor is None else factor * pk
                    if not factor.terms:
                        break
                else:
                    kept.extend([k] * e)
            if factor is None:
                kernels.poly_axpy(acc, {tuple(sorted(kept)): c}, 1)
            elif factor.terms:
                kernels.poly_mul_axpy(acc, factor.terms, {tuple(sorted(kept)): c}, 1)
        return Poly(acc, _trusted=True)

    def derivative(self, key: int) -> "Poly":
        acc: dict = {}
        for mono, c in self.terms.items():
            e = mono.count(key)
            if e:
                i = mono.index(key)
                m2 = mono[:i] + mono[i + 1:]
                kernels.poly_axpy(acc, {m2: c * e}, 1)
        return Poly(acc, _trusted=True)

    def partials(self) -> dict:
        """All first partial derivatives, keyed by generator."""
        acc: dict = {}
        for mono, c in self.terms.items():
            prev = None
            for i, k in enumerate(mono):
                if k == prev:
                    continue
                prev = k
                e = mono.count(k)
                d = acc.setdefault(k, {})
                m2 = mono[:i] + mono[i + 1:]
                v = d.get(m2, 0) + c * e
                if v:
                    d[m2] = v
                else:
                    d.pop(m2, None)
        return {k: Poly(d, _trusted=True) for k, d in acc.items() if d}

    def evaluate(self, values: Mapping[int, object]) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            t = c
            for k in mono:
                t *= values[k]
            total += t
        return total

    # rendering ----------------------------------------------------------
    def to_string(self, namer: Callable[[int], str] = key_name) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[mono]
            factors = []
            for k, e in sorted(Counter(mono).items()):
                name = namer(k)
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            cs = str(c) if c.denominator == 1 else f"({c})"
            if not body:
                parts.append(cs)
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{cs}*{body}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({self.to_string()})"


def normalize_terms(terms: Mapping) -> dict:
    """Canonical term dict: sorted monomials, Fraction coefficients, no zeros."""
    acc: dict = {}
    for mono, c in terms.items():
        c = as_fraction(c)
        if not c:
            continue
        m = tuple(sorted(mono))
        v = acc.get(m, 0) + c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def normalize(p: Poly) -> Poly:
    return Poly(normalize_terms(p.terms), _trusted=True)


def psum(items: Iterable) -> Poly:
    acc: dict = {}
    for x in items:
        if isinstance(x, Poly):
            kernels.poly_axpy(acc, x.terms, 1)
        elif x:
            kernels.poly_axpy(acc, {(): as_fraction(x)}, 1)
    return Poly(acc, _trusted=True)


def leibniz(x: Poly, y: Poly, gen_bracket: Callable[[int, int], Poly]) -> Poly:
    """Extend a bracket on generators to polynomials as a biderivation."""
    if x.is_constant() or y.is_constant():
        return Poly()
    dx = x.partials()
    dy = y.partials()
    acc: dict = {}
    for g, pg in dx.items():
        for h, ph in dy.items():
            b = gen_bracket(g, h)
            if not b.terms:
                continue
            left = kernels.poly_mul(pg.terms, ph.terms)
            kernels.poly_mul_axpy(acc, left, b.terms, 1)
    return Poly(acc, _trusted=True)


def gen_name(g: GenIndex) -> str:
    return str(g)
