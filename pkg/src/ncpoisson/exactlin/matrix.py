"""Dense matrices over the rationals with exact rank, determinant and inverse.

Entries are `fractions.Fraction`.  Rank and determinant go through
fraction-free Bareiss elimination on an integer matrix obtained by clearing
row denominators, so intermediate values stay integral and bounded.  No
floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class SingularMatrixError(ZeroDivisionError):
    """Inversion of a matrix with zero determinant."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class QMatrix:
    """Immutable rows x cols matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(_frac(x) for x in row) for row in entries)
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self.rows = len(rows)
        self.cols = width
        self.entries = rows

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        zero = Fraction(0)
        return cls([[zero] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"QMatrix[{body}]"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return QMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def __neg__(self) -> "QMatrix":
        return QMatrix([[-x for x in row] for row in self.entries])

    def scale(self, c) -> "QMatrix":
        c = _frac(c)
        return QMatrix([[c * x for x in row] for row in self.entries])

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.entries))
        return QMatrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in ot]
                for row in self.entries
            ]
        )

    def transpose(self) -> "QMatrix":
        return QMatrix(list(zip(*self.entries)))

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def _integer_rows(self) -> list[list[int]]:
        # Row scaling by the denominator lcm preserves rank and only rescales det.
        out = []
        for row in self.entries:
            m = lcm(*(x.denominator for x in row)) if row else 1
            out.append([int(x * m) for x in row])
        return out

    def rank(self) -> int:
        return _bareiss_rank(self._integer_rows())

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        scale = Fraction(1)
        int_rows = []
        for row in self.entries:
            m = lcm(*(x.denominator for x in row))
            scale *= m
            int_rows.append([int(x * m) for x in row])
        return Fraction(_bareiss_det(int_rows), 1) / scale

    def inverse(self) -> "QMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.entries)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return QMatrix([row[n:] for row in aug])

    def stack(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.cols:
            raise ValueError("shape mismatch")
        return QMatrix(self.entries + other.entries)

    def row(self, i: int) -> tuple:
        return self.entries[i]


def mat_rank_exact(m: QMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    return m.rank()


def mat_inverse(m: QMatrix) -> QMatrix:
    """Exact inverse; raises SingularMatrixError when det = 0."""
    return m.inverse()


def from_rows(rows: Iterable[Iterable]) -> QMatrix:
    return QMatrix([list(r) for r in rows])


def _bareiss_rank(m: list[list[int]]) -> int:
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            mi, mr, f = m[i], m[r], m[i][c]
            for j in range(c + 1, n_cols):
                mi[j] = (p * mi[j] - f * mr[j]) // prev
            mi[c] = 0
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            mi, mk, f = m[i], m[k], m[i][k]
            for j in range(k + 1, n):
                mi[j] = (p * mi[j] - f * mk[j]) // prev
            mi[k] = 0
        prev = p
    return sign * m[n - 1][n - 1]
