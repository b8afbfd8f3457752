# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels (same contract as ``_kernels_py``)."""

from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM, PyTuple_GET_SIZE, PyTuple_GET_ITEM
from cpython.ref cimport Py_INCREF

IMPLEMENTATION = "cython"


cdef inline tuple _merge(tuple m1, tuple m2):
    cdef Py_ssize_t n1 = PyTuple_GET_SIZE(m1)
    cdef Py_ssize_t n2 = PyTuple_GET_SIZE(m2)
    cdef Py_ssize_t i = 0, j = 0, k = 0
    cdef object x, y
    cdef long long vx, vy
    if n1 == 0:
        return m2
    if n2 == 0:
        return m1
    cdef tuple out = PyTuple_New(n1 + n2)
    while i < n1 and j < n2:
        x = <object>PyTuple_GET_ITEM(m1, i)
        y = <object>PyTuple_GET_ITEM(m2, j)
        vx = x
        vy = y
        if vx <= vy:
            Py_INCREF(x)
            PyTuple_SET_ITEM(out, k, x)
            i += 1
        else:
            Py_INCREF(y)
            PyTuple_SET_ITEM(out, k, y)
            j += 1
        k += 1
    while i < n1:
        x = <object>PyTuple_GET_ITEM(m1, i)
        Py_INCREF(x)
        PyTuple_SET_ITEM(out, k, x)
        i += 1
        k += 1
    while j < n2:
        y = <object>PyTuple_GET_ITEM(m2, j)
        Py_INCREF(y)
        PyTuple_SET_ITEM(out, k, y)
        j += 1
        k += 1
    return out


def monomial_mul(tuple m1, tuple m2):
    return _merge(m1, m2)


def poly_mul(dict a, dict b):
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef tuple m
    cdef object c
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = _merge(<tuple>ma, <tuple>mb)
            c = out.get(m, 0) + ca * cb
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def poly_axpy(dict acc, dict x, scale):
    if not scale:
        return acc
    cdef object v
    for m, c in x.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def poly_mul_axpy(dict acc, dict a, dict b, scale):
    if not scale:
        return acc
    cdef tuple m
    cdef object v, sa
    for ma, ca in a.items():
        sa = scale * ca
        for mb, cb in b.items():
            m = _merge(<tuple>ma, <tuple>mb)
            v = acc.get(m, 0) + sa * cb
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
    return acc
