"""Rational functions of the spectral parameters ``u`` and ``v``.

Backed by sympy's sparse fraction field over QQ, which keeps every element
in lowest terms with a normalized denominator.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import QQ
from sympy.polys.fields import field

_FIELD, _U, _V = field("u,v", QQ)


def _to_qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


class RationalFunction:
    __slots__ = ("_f",)

    def __init__(self, f):
        if isinstance(f, RationalFunction):
            f = f._f
        elif isinstance(f, (int, Fraction)):
            f = _FIELD(_to_qq(f))
        self._f = f

    @classmethod
    def u(cls) -> "RationalFunction":
        return cls(_U)

    @classmethod
    def v(cls) -> "RationalFunction":
        return cls(_V)

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(_FIELD(_to_qq(c)))

    @staticmethod
    def _raw(x):
        if isinstance(x, RationalFunction):
            return x._f
        if isinstance(x, (int, Fraction)):
            return _FIELD(_to_qq(x))
        return None

    def __add__(self, o):
        r = self._raw(o)
        return NotImplemented if r is None else RationalFunction(self._f + r)

    __radd__ = __add__

    def __sub__(self, o):
        r = self._raw(o)
        return NotImplemented if r is None else RationalFunction(self._f - r)

    def __rsub__(self, o):
        r = self._raw(o)
        return NotImplemented if r is None else RationalFunction(r - self._f)

    def __mul__(self, o):
        r = self._raw(o)
        return NotImplemented if r is None else RationalFunction(self._f * r)

    __rmul__ = __mul__

    def __truediv__(self, o):
        r = self._raw(o)
        if r is None:
            return NotImplemented
        if not r:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self._f / r)

    def __rtruediv__(self, o):
        r = self._raw(o)
        if r is None:
            return NotImplemented
        if not self._f:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(r / self._f)

    def __neg__(self):
        return RationalFunction(-self._f)

    def __pow__(self, n: int):
        return RationalFunction(self._f**n)

    def is_zero(self) -> bool:
        return not self._f

    def __eq__(self, o):
        r = self._raw(o)
        if r is None:
            return NotImplemented
        # both sides are reduced, so cross-multiplication decides equality
        return self._f.numer * r.denom == r.numer * self._f.denom

    def __hash__(self):
        return hash(self._f)

    def numerator(self):
        return self._f.numer

    def denominator(self):
        return self._f.denom

    def evaluate(self, u=0, v=0) -> Fraction:
        pt = [_to_qq(u), _to_qq(v)]
        den = self._f.denom(*pt)
        if den == 0:
            raise ZeroDivisionError("pole at evaluation point")
        q = self._f.numer(*pt) / den
        return Fraction(int(q.numerator), int(q.denominator))

    def __str__(self):
        return str(self._f.as_expr())

    __repr__ = __str__


def ratfun_equal(f: RationalFunction, g: RationalFunction) -> bool:
    return f == g


def ratfun_eval(f: RationalFunction, u=0, v=0) -> Fraction:
    return f.evaluate(u, v)
