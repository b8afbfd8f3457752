"""Sparse square-or-rectangular matrices with Fraction entries.

Representation matrices of tensor products are mostly zeros; storing rows as
``{col: value}`` dicts keeps products and commutators cheap.
"""

from __future__ import annotations

from fractions import Fraction

from .matrix import ExactMatrix, ShapeError


class SparseMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.data = {}
        if data:
            for i, row in data.items():
                r = {j: Fraction(v) for j, v in row.items() if v}
                if r:
                    self.data[i] = r

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "SparseMatrix":
        return cls(rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, n: int, c=1) -> "SparseMatrix":
        c = Fraction(c)
        if not c:
            return cls(n, n)
        m = cls(n, n)
        m.data = {i: {i: c} for i in range(n)}
        return m

    @classmethod
    def from_dense(cls, a) -> "SparseMatrix":
        if isinstance(a, ExactMatrix):
            rows, cols, src = a.rows, a.cols, a.data
        else:
            src = a
            rows, cols = len(a), len(a[0])
        return cls(rows, cols, {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(src)})

    def to_dense(self) -> ExactMatrix:
        out = ExactMatrix.zeros(self.rows, self.cols)
        for i, r in self.data.items():
            for j, v in r.items():
                out.data[i][j] = v
        return out

    def tolist(self) -> list:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for i, r in self.data.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.data.get(i, {}).get(j, Fraction(0))

    def is_zero(self) -> bool:
        return not self.data

    def nnz(self) -> int:
        return sum(len(r) for r in self.data.values())

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        out = SparseMatrix(self.rows, self.cols)
        data = {i: dict(r) for i, r in self.data.items()}
        for i, r in other.data.items():
            d = data.setdefault(i, {})
            for j, v in r.items():
                w = d.get(j, 0) + sign * v
                if w:
                    d[j] = w
                else:
                    d.pop(j, None)
            if not d:
                del data[i]
        out.data = data
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SparseMatrix":
        c = Fraction(c)
        out = SparseMatrix(self.rows, self.cols)
        if c:
            out.data = {i: {j: c * v for j, v in r.items()} for i, r in self.data.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, SparseMatrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = SparseMatrix(self.rows, other.cols)
        od = other.data
        data = {}
        for i, r in self.data.items():
            acc: dict = {}
            for k, v in r.items():
                orow = od.get(k)
                if not orow:
                    continue
                for j, w in orow.items():
                    acc[j] = acc.get(j, 0) + v * w
            acc = {j: x for j, x in acc.items() if x}
            if acc:
                data[i] = acc
        out.data = data
        return out

    __matmul__ = matmul

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector ``{index: value}``."""
        out: dict = {}
        for i, r in self.data.items():
            s = 0
            for k, v in r.items():
                x = vec.get(k)
                if x:
                    s += v * x
            if s:
                out[i] = s
        return out

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        out = SparseMatrix(self.rows * other.rows, self.cols * other.cols)
        data = {}
        for i, r in self.data.items():
            for k, s in other.data.items():
                row = {}
                for j, v in r.items():
                    base = j * other.cols
                    for l, w in s.items():
                        row[base + l] = v * w
                data[i * other.rows + k] = row
        out.data = data
        return out

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.cols, self.rows)
        data: dict = {}
        for i, r in self.data.items():
            for j, v in r.items():
                data.setdefault(j, {})[i] = v
        out.data = data
        return out

    def trace(self) -> Fraction:
        return sum((r.get(i, Fraction(0)) for i, r in self.data.items()), Fraction(0))

    def commutator(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.matmul(other) - other.matmul(self)

    def is_scalar(self) -> bool:
        if self.rows != self.cols:
            return False
        c = self[0, 0]
        return self == SparseMatrix.identity(self.rows, c)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"
