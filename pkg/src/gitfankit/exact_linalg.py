"""Exact rational vectors, matrices and the linear algebra used everywhere else.

All arithmetic is over ``fractions.Fraction`` (arbitrary-precision, always
reduced, positive denominator), so nothing here ever rounds.  Elimination is
fraction-free (Bareiss) on integer-cleared rows for rank, and reduced row
echelon form over the rationals for kernels and solving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Scalar = Union[int, str, Fraction]

ExactScalar = Fraction


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QVector:
    """Immutable vector of exact rationals."""

    entries: tuple[Fraction, ...]

    def __init__(self, entries: Iterable[Scalar]):
        object.__setattr__(self, "entries", tuple(_frac(x) for x in entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __add__(self, other: "QVector") -> "QVector":
        return QVector(a + b for a, b in zip(self.entries, other.entries, strict=True))

    def __sub__(self, other: "QVector") -> "QVector":
        return QVector(a - b for a, b in zip(self.entries, other.entries, strict=True))

    def __neg__(self) -> "QVector":
        return QVector(-a for a in self.entries)

    def scale(self, c: Scalar) -> "QVector":
        c = _frac(c)
        return QVector(c * a for a in self.entries)

    def dot(self, other: "QVector") -> Fraction:
        return sum(
            (a * b for a, b in zip(self.entries, other.entries, strict=True)),
            Fraction(0),
        )

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def as_ints(self) -> tuple[int, ...]:
        """Entries as plain ints; raises if any entry is non-integral."""
        out = []
        for a in self.entries:
            if a.denominator != 1:
                raise ValueError(f"entry {a} is not an integer")
            out.append(a.numerator)
        return tuple(out)


@dataclass(frozen=True)
class QMatrix:
    """Immutable row-major matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        ent = tuple(_frac(x) for x in entries)
        if len(ent) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, row_list: Sequence[Sequence[Scalar]]) -> "QMatrix":
        row_list = [list(r) for r in row_list]
        rows = len(row_list)
        cols = len(row_list[0]) if row_list else 0
        if any(len(r) != cols for r in row_list):
            raise ValueError("ragged rows")
        return cls(rows, cols, [x for r in row_list for x in r])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def row(self, i: int) -> QVector:
        return QVector(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> QVector:
        return QVector(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list[list[Fraction]]:
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]

    def transpose(self) -> "QMatrix":
        return QMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def matvec(self, v: QVector) -> QVector:
        if v.dim != self.cols:
            raise ValueError("dimension mismatch")
        return QVector(self.row(i).dot(v) for i in range(self.rows))

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ent = []
        ocols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                ent.append(r.dot(c))
        return QMatrix(self.rows, other.cols, ent)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)


def content(values: Iterable[int]) -> int:
    g = 0
    for x in values:
        g = math.gcd(g, abs(x))
        if g == 1:
            return 1
    return g


def primitive_vector(v: Iterable[Scalar]) -> tuple[int, ...]:
    """Scale a rational vector to primitive integer form (content 1).

    The direction is preserved: scaling is by a positive rational only.
    """
    fr = [_frac(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = content(ints)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _integer_rows(m: QMatrix) -> list[list[int]]:
    out = []
    for i in range(m.rows):
        row = list(m.row(i).entries)
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(m: QMatrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    a = _integer_rows(m)
    rows, cols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def rref(m: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    a = [list(m.row(i).entries) for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a[:r], pivots


def kernel_basis(m: QMatrix) -> QMatrix:
    """Basis of {x : Mx = 0} as rows, primitive integer, deterministic.

    One basis row per free column, taken in ascending column order, with the
    free variable set to one before integer scaling.  For the weight matrices
    used downstream this reproduces the fixture Gale duals exactly.
    """
    rows, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        vec = [Fraction(0)] * m.cols
        vec[free] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -rows[i][free]
        basis.append(primitive_vector(vec))
    return QMatrix.from_rows(basis) if basis else QMatrix.zero(0, m.cols)


def solve(m: QMatrix, b: QVector) -> Optional[QVector]:
    """One exact solution of Mx = b with free variables zeroed, or None."""
    if b.dim != m.rows:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    aug = QMatrix(
        m.rows,
        m.cols + 1,
        [
            m.entries[i * m.cols + j] if j < m.cols else b[i]
            for i in range(m.rows)
            for j in range(m.cols + 1)
        ],
    )
    rows, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][m.cols]
    return QVector(x)


def gale_dual(q: QMatrix) -> QMatrix:
    """A Gale dual P of Q, i.e. P with P Q^t = 0 spanning the kernel of Q.

    Requires Q to have full row rank; rows of P are primitive integer vectors.
    """
    if rank(q) != q.rows:
        raise ValueError("weight matrix is rank deficient")
    p = kernel_basis(q)
    prod = p.matmul(q.transpose())
    if not prod.is_zero():
        raise AssertionError("Gale dual failed the P Q^t = 0 check")
    return p
