"""Pure-Python sparse polynomial kernels.

A polynomial is a ``dict`` mapping a monomial to a nonzero coefficient.
A monomial is a sorted tuple of integer generator keys, repeated once per
power.  The compiled module ``truncw._kernels`` exposes the same functions.
"""

from heapq import merge as _heap_merge

IMPLEMENTATION = "python"


def monomial_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    if m1[-1] <= m2[0]:
        return m1 + m2
    if m2[-1] <= m1[0]:
        return m2 + m1
    return tuple(_heap_merge(m1, m2))


def poly_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = monomial_mul(ma, mb)
            c = get(m, 0) + ca * cb
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def poly_axpy(acc, x, scale):
    """In place ``acc += scale * x``; returns ``acc``."""
    if not scale:
        return acc
    get = acc.get
    for m, c in x.items():
        v = get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def poly_mul_axpy(acc, a, b, scale):
    """In place ``acc += scale * a * b``; returns ``acc``."""
    if not scale:
        return acc
    get = acc.get
    for ma, ca in a.items():
        sa = scale * ca
        for mb, cb in b.items():
            m = monomial_mul(ma, mb)
            v = get(m, 0) + sa * cb
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
    return acc
