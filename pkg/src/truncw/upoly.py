"""Dense univariate polynomials over the rationals, as coefficient lists
(lowest degree first)."""

from __future__ import annotations

from fractions import Fraction
from math import comb


def trim(a: list) -> list:
    a = [Fraction(x) for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a: list, c) -> list:
    return trim([c * x for x in a])


def mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def shift(a: list, c) -> list:
    """Coefficients of ``a(u + c)``."""
    c = Fraction(c)
    out = [Fraction(0)] * len(a)
    for k, x in enumerate(a):
        if x:
            for i in range(k + 1):
                out[i] += x * comb(k, i) * c ** (k - i)
    return trim(out)


def linear(root_shift) -> list:
    """``u + c``."""
    return [Fraction(root_shift), Fraction(1)]


def from_roots_shifts(shifts) -> list:
    """``prod (u + c)`` over the given shifts."""
    out = [Fraction(1)]
    for c in shifts:
        out = mul(out, linear(c))
    return out


def evaluate(a: list, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def degree(a: list) -> int:
    return len(trim(a)) - 1


def series_div(num: list, den: list, terms: int) -> list:
    """First ``terms`` coefficients of the power series ``num/den`` (``den[0] != 0``)."""
    out = []
    rem = [Fraction(x) for x in num] + [Fraction(0)] * terms
    for k in range(terms):
        c = rem[k] / den[0]
        out.append(c)
        if c:
            for i, d in enumerate(den):
                if k + i < len(rem):
                    rem[k + i] -= c * d
    return out


def to_string(a: list, var: str = "u") -> str:
    a = trim(a)
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mon:
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{c}*{mon}")
    return " + ".join(parts).replace("+ -", "- ")
