"""Exact linear algebra over the rationals.

Dense matrices of :class:`fractions.Fraction` entries together with the
elimination kernels the rest of the package relies on: determinants,
linear solves, one-dimensional nullspaces and stationary distributions
of row-stochastic matrices.  Every operation is exact; no floating
point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionError, RankError, SingularMatrixError, StochasticityError

__all__ = [
    "QMatrix",
    "det",
    "dot",
    "mat_vec",
    "nullspace_1d",
    "solve",
    "stationary",
    "vec_mat",
]

Scalar = Fraction | int


def _q(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QMatrix:
    """Immutable dense matrix with exact rational entries.

    Entries are stored row-major as ``Fraction`` values, which keeps
    every number reduced with a positive denominator and arbitrary
    precision.  Arithmetic (`+`, `-`, `*`) is exact.
    """

    __slots__ = ("_data",)

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        data = tuple(tuple(_q(x) for x in row) for row in rows)
        if not data:
            raise DimensionError("matrix needs at least one row")
        width = len(data[0])
        if width == 0:
            raise DimensionError("matrix needs at least one column")
        if any(len(row) != width for row in data):
            raise DimensionError("rows have unequal lengths")
        self._data = data

    @staticmethod
    def identity(n: int) -> "QMatrix":
        one, zero = Fraction(1), Fraction(0)
        return QMatrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "QMatrix":
        zero = Fraction(0)
        return QMatrix([[zero] * cols for _ in range(rows)])

    @property
    def rows(self) -> int:
        return len(self._data)

    @property
    def cols(self) -> int:
        return len(self._data[0])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._data)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._data[i][j]

    def transpose(self) -> "QMatrix":
        return QMatrix(zip(*self._data))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)]
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)]
        )

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            cols = other.transpose()._data
            return QMatrix(
                [[dot(row, col) for col in cols] for row in self._data]
            )
        if isinstance(other, (int, Fraction)):
            f = _q(other)
            return QMatrix([[x * f for x in row] for row in self._data])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._data)
        return f"QMatrix[{body}]"

    def _same_shape(self, other: "QMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def _require_square(self) -> int:
        if self.rows != self.cols:
            raise DimensionError(f"matrix is {self.rows}x{self.cols}, expected square")
        return self.rows


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_mat(v: Sequence[Fraction], m: QMatrix) -> tuple[Fraction, ...]:
    """Row vector times matrix."""
    if len(v) != m.rows:
        raise DimensionError(f"vector length {len(v)} does not match {m.rows} rows")
    return tuple(dot(v, m.column(j)) for j in range(m.cols))


def mat_vec(m: QMatrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Matrix times column vector."""
    if len(v) != m.cols:
        raise DimensionError(f"vector length {len(v)} does not match {m.cols} columns")
    return tuple(dot(row, v) for row in m._data)


def det(m: QMatrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Each row is first scaled by the least common multiple of its
    denominators so that the elimination itself runs on plain integers;
    the Bareiss divisions are exact by construction.  O(n^3) ring
    operations.
    """
    n = m._require_square()
    denom = 1
    a: list[list[int]] = []
    for row in m._data:
        scale = lcm(*(x.denominator for x in row))
        a.append([int(x * scale) for x in row])
        denom *= scale
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], denom)


def solve(a: QMatrix, b: QMatrix) -> QMatrix:
    """Solve ``a @ x = b`` exactly by Gauss-Jordan elimination.

    Raises :class:`SingularMatrixError` carrying the rank when ``a`` is
    singular.
    """
    n = a._require_square()
    if b.rows != n:
        raise DimensionError(f"right-hand side has {b.rows} rows, expected {n}")
    width = n + b.cols
    aug = [list(a.row(i)) + list(b.row(i)) for i in range(n)]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        pv = aug[rank][col]
        aug[rank] = [x / pv for x in aug[rank]]
        for r in range(n):
            if r != rank and aug[r][col] != 0:
                f = aug[r][col]
                row_r, row_p = aug[r], aug[rank]
                aug[r] = [row_r[j] - f * row_p[j] for j in range(width)]
        rank += 1
    if rank < n:
        raise SingularMatrixError(rank)
    return QMatrix([row[n:] for row in aug])


def nullspace_1d(a: QMatrix, side: str = "right") -> tuple[Fraction, ...]:
    """The one-dimensional nullspace of a square matrix.

    ``side="right"`` solves ``a v = 0``; ``side="left"`` solves
    ``v a = 0``.  The result is scaled so its first nonzero entry is 1.
    Raises :class:`RankError` with the actual dimension when the
    nullspace is not exactly one-dimensional.
    """
    if side == "left":
        return nullspace_1d(a.transpose(), "right")
    if side != "right":
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    n = a._require_square()
    rows = [list(r) for r in a._data]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                row_i, row_r = rows[i], rows[r]
                rows[i] = [row_i[j] - f * row_r[j] for j in range(n)]
        pivots.append((r, c))
        r += 1
    dimension = n - r
    if dimension != 1:
        raise RankError(dimension)
    pivot_cols = {c for _, c in pivots}
    free = next(c for c in range(n) if c not in pivot_cols)
    v = [Fraction(0)] * n
    v[free] = Fraction(1)
    for ri, ci in pivots:
        v[ci] = -rows[ri][free]
    first = next(x for x in v if x != 0)
    return tuple(x / first for x in v)


def stationary(p: QMatrix) -> tuple[Fraction, ...]:
    """The unique stationary distribution of a row-stochastic matrix.

    Validates that every row is nonnegative and sums to exactly 1
    (:class:`StochasticityError` otherwise), then extracts the left
    fixed vector and normalizes it to total mass 1.  A chain with more
    than one recurrent class surfaces as :class:`RankError`.
    """
    n = p._require_square()
    one = Fraction(1)
    for i in range(n):
        row = p.row(i)
        if any(x < 0 for x in row):
            raise StochasticityError(f"row {i} has a negative entry")
        total = sum(row)
        if total != one:
            raise StochasticityError(f"row {i} sums to {total}, not 1")
    v = nullspace_1d(p - QMatrix.identity(n), side="left")
    mass = sum(v)
    return tuple(x / mass for x in v)
