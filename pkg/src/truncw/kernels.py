"""Kernel selection.

The compiled extension is used when it was built and ``TRUNCW_PURE_PYTHON``
is unset; otherwise the pure-Python module is loaded.  Both expose
``monomial_mul``, ``poly_mul``, ``poly_axpy`` and ``poly_mul_axpy``.
"""

import os

from . import _kernels_py

if os.environ.get("TRUNCW_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

IMPLEMENTATION = _impl.IMPLEMENTATION
monomial_mul = _impl.monomial_mul
poly_mul = _impl.poly_mul
poly_axpy = _impl.poly_axpy
poly_mul_axpy = _impl.poly_mul_axpy

__all__ = ["IMPLEMENTATION", "monomial_mul", "poly_mul", "poly_axpy", "poly_mul_axpy"]
