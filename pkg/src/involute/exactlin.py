"""Exact dense linear algebra over the rationals.

Entries are ``fractions.Fraction``.  Pivots are chosen as the first nonzero
entry scanning top to bottom, left to right, so every reduction is
reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction


class InconsistentSystem(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


def to_q(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Matrix:
    """Immutable rows x cols rational matrix."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(to_q(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged matrix")
        else:
            width = cols or 0
        if cols is not None and data and width != cols:
            raise ValueError("column count mismatch")
        self.rows = len(data)
        self.cols = width
        self._e = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(list(zip(*columns)), cols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._e]

    def __iter__(self):
        return iter(self._e)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._e)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def T(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self._e)], cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], cols=self.cols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = to_q(c)
        return Matrix([[c * a for a in r] for r in self._e], cols=self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = list(zip(*other._e)) if other.rows else [()] * other.cols
        out = []
        for r in self._e:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols])
        return Matrix(out, cols=other.cols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [to_q(x) for x in v]
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self._e)

    def is_zero(self) -> bool:
        return all(not x for r in self._e for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self._e[i][j] for j in cols] for i in rows], cols=len(cols))


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def vstack(*ms: Matrix) -> Matrix:
    ms = [m for m in ms if m.rows]
    if not ms:
        return Matrix.zeros(0, 0)
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("column mismatch in vstack")
    return Matrix([r for m in ms for r in m], cols=cols)


def hstack(*ms: Matrix) -> Matrix:
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ValueError("row mismatch in hstack")
    return Matrix([sum((m.row(i) for m in ms), ()) for i in range(rows)], cols=sum(m.cols for m in ms))


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place reduction; returns pivot columns."""
    pivots: list[int] = []
    top = 0
    nrows = len(rows)
    for col in range(ncols):
        if top == nrows:
            break
        piv = next((i for i in range(top, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        lead = rows[top][col]
        if lead != 1:
            rows[top] = [x / lead for x in rows[top]]
        prow = rows[top]
        for i in range(nrows):
            if i != top:
                f = rows[i][col]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(col)
        top += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows = m.tolist()
    pivots = _rref_rows(rows, m.cols)
    return Matrix(rows, cols=m.cols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of {x : m x = 0}, one vector per free column, free entry set to 1."""
    red, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        basis.append(tuple(v))
    return basis


def row_space(m: Matrix) -> Matrix:
    """Nonzero rows of the rref: a canonical basis of the row space."""
    red, pivots = rref(m)
    return Matrix([red.row(i) for i in range(len(pivots))], cols=m.cols)


def span_rank(vectors: Sequence[Sequence], dim: int) -> int:
    if not vectors:
        return 0
    return rank(Matrix(vectors, cols=dim))


def in_span(vectors: Sequence[Sequence], v: Sequence, dim: int) -> bool:
    return span_rank(list(vectors) + [v], dim) == span_rank(vectors, dim)


def complete_basis(vectors: Sequence[Sequence], dim: int) -> list[tuple]:
    """Extend independent ``vectors`` to a basis of Q^dim with standard vectors."""
    out = [tuple(to_q(x) for x in v) for v in vectors]
    current = span_rank(out, dim)
    if current != len(out):
        raise ValueError("vectors are dependent")
    for j in range(dim):
        e = tuple(Fraction(int(i == j)) for i in range(dim))
        if span_rank(out + [e], dim) > current:
            out.append(e)
            current += 1
    return out


def det_bareiss(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = m.tolist()
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return Matrix([r[n:] for r in aug], cols=n)


def solve(m: Matrix, b: Sequence) -> tuple:
    """One solution of m x = b (free variables set to zero)."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    aug = [list(r) + [to_q(x)] for r, x in zip(m, b)]
    pivots = _rref_rows(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        raise InconsistentSystem("no solution")
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = aug[i][m.cols]
    return tuple(x)


def solve_matrix(m: Matrix, rhs: Matrix) -> Matrix:
    """Solve m X = rhs column by column."""
    cols = [solve(m, rhs.column(j)) for j in range(rhs.cols)]
    return Matrix.from_columns(cols, rows=m.cols) if cols else Matrix.zeros(m.cols, 0)


def format_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
