"""Exact integer matrix kernel.

Everything here works on Python ints (or :class:`fractions.Fraction` where a
rational intermediate is unavoidable), so results are bit-exact regardless of
entry size.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ShapeError(ValueError):
    """Raised when matrix dimensions do not fit the requested operation."""


class SingularError(ValueError):
    """Raised when a non-degenerate form or invertible matrix is required."""


class IntMatrix:
    """Dense immutable matrix of arbitrary-precision integers.

    Rows and columns are tracked explicitly so that empty matrices such as
    a ``6 x 0`` kernel basis keep their shape.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        table = tuple(tuple(operator.index(x) for x in row) for row in data)
        n_rows = len(table) if rows is None else rows
        if len(table) != n_rows:
            raise ShapeError(f"expected {n_rows} rows, got {len(table)}")
        if cols is None:
            cols = len(table[0]) if table else 0
        for row in table:
            if len(row) != cols:
                raise ShapeError("ragged matrix rows")
        self.rows = n_rows
        self.cols = cols
        self._data = table

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> IntMatrix:
        cols = rows if cols is None else cols
        return cls(((0,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(((int(i == j) for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> IntMatrix:
        n = len(values)
        return cls(((values[i] if i == j else 0 for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls(((col[i] for col in columns) for i in range(rows)), rows, len(columns))

    @classmethod
    def block_diag(cls, *blocks: IntMatrix) -> IntMatrix:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[r0 + i][c0:c0 + b.cols] = b._data[i]
            r0 += b.rows
            c0 += b.cols
        return cls(out, rows, cols)

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == self._data[j][i]
            for i in range(self.rows) for j in range(i))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix(((self._data[i][j] for j in cols) for i in rows), len(rows), len(cols))

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ShapeError("hstack needs equal row counts")
        return IntMatrix((a + b for a, b in zip(self._data, other._data)),
                         self.rows, self.cols + other.cols)

    # -- arithmetic ---------------------------------------------------------
    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self._data) if self.rows else (), self.cols, self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = other.columns()
        return IntMatrix(
            ((sum(a * b for a, b in zip(row, c)) for c in other_cols) for row in self._data),
            self.rows, other.cols)

    def _check_same(self, other: IntMatrix) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix((tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
                         self.rows, self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix((tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
                         self.rows, self.cols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(((-a for a in r) for r in self._data), self.rows, self.cols)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(((k * a for a in r) for r in self._data), self.rows, self.cols)

    def __pow__(self, k: int) -> IntMatrix:
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative powers are not supported")
        result, base = IntMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"[] ({self.rows}x{self.cols})"
        width = max(len(str(x)) for r in self._data for x in r)
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self._data)


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


# ---------------------------------------------------------------------------
# determinant / characteristic polynomial
# ---------------------------------------------------------------------------

def det(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = as_matrix(m)
    if not m.is_square():
        raise ShapeError(f"determinant of non-square {m.shape} matrix")
    n = m.rows
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def char_poly(m) -> tuple[int, ...]:
    """Characteristic polynomial ``det(xI - m)``, coefficients leading first.

    Faddeev-LeVerrier; the division by ``k`` is exact over the integers.
    """
    m = as_matrix(m)
    if not m.is_square():
        raise ShapeError(f"characteristic polynomial of non-square {m.shape} matrix")
    n = m.rows
    coeffs = [1]
    aux = IntMatrix.zeros(n)
    ident = IntMatrix.identity(n)
    for k in range(1, n + 1):
        aux = m @ aux + ident.scale(coeffs[-1])
        prod = m @ aux
        trace = sum(prod[i, i] for i in range(n))
        coeffs.append(-trace // k)
    return tuple(coeffs)


def poly_eval(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Division of integer polynomials by a monic divisor (leading-first)."""
    if not den or den[0] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    if len(rem) < len(den):
        return (0,), tuple(rem)
    quot = []
    for i in range(len(rem) - len(den) + 1):
        c = rem[i]
        quot.append(c)
        if c:
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    tail = rem[len(quot):]
    while len(tail) > 1 and tail[0] == 0:
        tail.pop(0)
    return tuple(quot), tuple(tail) if tail else (0,)


# ---------------------------------------------------------------------------
# Smith normal form and kernels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ M @ right == diag`` padded to the shape of ``M``."""

    left: IntMatrix
    diag: tuple[int, ...]
    right: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)

    def diagonal_matrix(self) -> IntMatrix:
        rows, cols = self.left.rows, self.right.cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(self.diag):
            out[i][i] = d
        return IntMatrix(out, rows, cols)


def smith_normal_form(m) -> SmithDecomposition:
    """Smith normal form with unimodular transforms, ``left @ m @ right = D``.

    The diagonal has ``min(rows, cols)`` entries, non-negative, with each
    entry dividing the next (zeros trail).
    """
    m = as_matrix(m)
    rows, cols = m.shape
    a = m.tolist()
    left = [[int(i == j) for j in range(rows)] for i in range(rows)]
    right = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in right:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                clean &= a[i][t] == 0
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    return SmithDecomposition(IntMatrix(left, rows, rows), diag, IntMatrix(right, cols, cols))


def invariant_factors(m) -> tuple[int, ...]:
    """Nontrivial invariant factors (entries > 1) of a non-singular matrix."""
    return tuple(d for d in smith_normal_form(m).diag if d != 1)


def hermite_rows(m) -> IntMatrix:
    """Row-style Hermite normal form of a full-row-rank matrix.

    Only used to canonicalize lattice bases, so rows are assumed independent.
    """
    a = as_matrix(m).tolist()
    rows = len(a)
    cols = len(a[0]) if a else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            done = True
            for i in range(r + 1, rows):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                done &= a[i][c] == 0
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return IntMatrix(a, rows, cols)


def integer_kernel(m) -> IntMatrix:
    """Basis (as columns) of the saturated integer kernel ``{x : m x = 0}``.

    The basis comes out in Hermite normal form, which keeps entries small and
    makes the output deterministic.
    """
    m = as_matrix(m)
    snf = smith_normal_form(m)
    rank = snf.rank
    cols = [snf.right.col(j) for j in range(rank, m.cols)]
    if not cols:
        return IntMatrix.zeros(m.cols, 0)
    basis = hermite_rows(IntMatrix(cols, len(cols), m.cols))
    return basis.T


def congruent_diagonalize(g) -> tuple[int, int]:
    """Signature ``(n_plus, n_minus)`` via exact congruent diagonalization."""
    g = as_matrix(g)
    if not g.is_symmetric():
        raise ShapeError("form must be a symmetric square matrix")
    n = g.rows
    a = [[Fraction(x) for x in row] for row in g.tolist()]
    plus = minus = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
            if j is None:
                raise SingularError("degenerate form")
            if a[j][j] != 0:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                # b_k <- b_k + b_j gives pivot 2 <b_k, b_j>
                for i in range(n):
                    a[k][i] += a[j][i]
                for i in range(n):
                    a[i][k] += a[i][j]
        p = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
                for r in range(k, n):
                    a[r][i] -= f * a[r][k]
        if p > 0:
            plus += 1
        else:
            minus += 1
    return plus, minus


def rational_inverse(m) -> list[list[Fraction]]:
    """Exact inverse over the rationals (Gauss-Jordan)."""
    m = as_matrix(m)
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.tolist())]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise SingularError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]
