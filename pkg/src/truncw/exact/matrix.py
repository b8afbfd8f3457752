"""Dense matrices over exact scalars, polynomials or rational functions."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence


class ShapeError(ValueError):
    pass


def _is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    z = getattr(x, "is_zero", None)
    return z() if callable(z) else x == 0


class ExactMatrix:
    """Row-major dense matrix.  Entries may be any ring elements supporting
    ``+``, ``-`` and ``*`` with each other and with ``int``."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        rows = len(data)
        if rows == 0:
            raise ShapeError("matrix needs at least one row")
        cols = len(data[0])
        if cols == 0 or any(len(r) != cols for r in data):
            raise ShapeError("ragged or empty rows")
        self.rows = rows
        self.cols = cols
        self.data = [[(Fraction(x) if isinstance(x, int) else x) for x in r] for r in data]

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, zero=Fraction(0)) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls([[zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> "ExactMatrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "ExactMatrix":
        """Elementary matrix with a 1 at zero-based position (i, j)."""
        m = cls.zeros(n)
        m.data[i][j] = Fraction(1)
        return m

    @classmethod
    def from_function(cls, rows: int, cols: int, fn: Callable[[int, int], object]) -> "ExactMatrix":
        return cls([[fn(i, j) for j in range(cols)] for i in range(rows)])

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def entries(self) -> Iterable:
        for r in self.data:
            yield from r

    def is_zero(self) -> bool:
        return all(_is_zero(x) for x in self.entries())

    def map(self, fn: Callable) -> "ExactMatrix":
        return ExactMatrix([[fn(x) for x in r] for r in self.data])

    def _check_same(self, other: "ExactMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same(other)
        return ExactMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same(other)
        return ExactMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[c * x for x in r] for r in self.data])

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self.matmul(other)
        return ExactMatrix([[x * other for x in r] for r in self.data])

    def __rmul__(self, other):
        return ExactMatrix([[other * x for x in r] for r in self.data])

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        ocols = range(other.cols)
        odata = other.data
        for r in self.data:
            row = []
            for j in ocols:
                acc = None
                for k, x in enumerate(r):
                    if _is_zero(x):
                        continue
                    y = odata[k][j]
                    if _is_zero(y):
                        continue
                    t = x * y
                    acc = t if acc is None else acc + t
                row.append(Fraction(0) if acc is None else acc)
            out.append(row)
        return ExactMatrix(out)

    __matmul__ = matmul

    def trace(self):
        if self.rows != self.cols:
            raise ShapeError("trace of a non-square matrix")
        acc = Fraction(0)
        for i in range(self.rows):
            acc = acc + self.data[i][i]
        return acc

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.data)])

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        out = []
        for r in self.data:
            for s in other.data:
                out.append([x * y for x in r for y in s])
        return ExactMatrix(out)

    def commutator(self, other: "ExactMatrix") -> "ExactMatrix":
        return self.matmul(other) - other.matmul(self)

    def __pow__(self, n: int) -> "ExactMatrix":
        if self.rows != self.cols or n < 0:
            raise ShapeError("power needs a square matrix and n >= 0")
        out = ExactMatrix.identity(self.rows)
        for _ in range(n):
            out = out.matmul(self)
        return out

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            _is_zero(x - y) for x, y in zip(self.entries(), other.entries())
        )

    __hash__ = None  # type: ignore[assignment]

    def tolist(self) -> list:
        return [list(r) for r in self.data]

    def __repr__(self):
        rows = ["[" + ", ".join(str(x) for x in r) + "]" for r in self.data]
        return "ExactMatrix([" + ", ".join(rows) + "])"


def matrix_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a.matmul(b)


def matrix_trace(a: ExactMatrix):
    return a.trace()


def matrix_kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a.kron(b)
