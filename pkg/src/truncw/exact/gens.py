"""Generator labels packed into integers.

Every generator used by the library (``W``, ``T``, ``J``, gauge parameters
``L`` and auxiliary symbols such as the deformation parameter) is encoded
into a single non-negative ``int``.  Integer order coincides with the
lexicographic order on ``(family, mode, a, b, m)``, so sorted tuples of keys
are canonical monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum


class Family(IntEnum):
    W = 0
    T = 1
    J = 2
    LAMBDA = 3
    AUX = 4


_OFF = 2048
_AB_LIMIT = 1024


@dataclass(frozen=True, order=True)
class GenIndex:
    family: Family
    mode: int
    a: int = 0
    b: int = 0
    m: int = 0

    def key(self) -> int:
        if not (0 <= self.a < _AB_LIMIT and 0 <= self.b < _AB_LIMIT):
            raise ValueError(f"row/col index out of range: {self}")
        if not (-_OFF <= self.mode < _OFF and -_OFF <= self.m < _OFF):
            raise ValueError(f"mode out of range: {self}")
        return (
            (int(self.family) << 44)
            | ((self.mode + _OFF) << 32)
            | (self.a << 22)
            | (self.b << 12)
            | (self.m + _OFF)
        )

    @classmethod
    def from_key(cls, key: int) -> "GenIndex":
        fam = Family(key >> 44)
        mode = ((key >> 32) & 0xFFF) - _OFF
        a = (key >> 22) & 0x3FF
        b = (key >> 12) & 0x3FF
        m = (key & 0xFFF) - _OFF
        return cls(fam, mode, a, b, m)

    def __str__(self) -> str:
        f = self.family
        if f is Family.W:
            return f"W[{self.a},{self.b},{self.mode}]"
        if f is Family.T:
            return f"T[{self.a},{self.b},{self.mode}]"
        if f is Family.J:
            return f"J[{self.a},{self.b},{self.mode},{self.m}]"
        if f is Family.LAMBDA:
            return f"L[{self.a},{self.b},{self.mode},{self.m}]"
        return AUX_NAMES.get(self.mode, f"x{self.mode}")


AUX_NAMES = {0: "hbar", 1: "lam"}


def w_key(a: int, b: int, j: int) -> int:
    return GenIndex(Family.W, j, a, b).key()


def t_key(i: int, j: int, n: int) -> int:
    return GenIndex(Family.T, n, i, j).key()


def j_key(a: int, b: int, j: int, m: int) -> int:
    return GenIndex(Family.J, j, a, b, m).key()


def lam_key(a: int, b: int, j: int, m: int) -> int:
    return GenIndex(Family.LAMBDA, j, a, b, m).key()


def aux_key(i: int) -> int:
    return GenIndex(Family.AUX, i).key()


HBAR = aux_key(0)


def family_of(key: int) -> Family:
    return Family(key >> 44)


def mode_of(key: int) -> int:
    return ((key >> 32) & 0xFFF) - _OFF


def key_name(key: int) -> str:
    return str(GenIndex.from_key(key))
