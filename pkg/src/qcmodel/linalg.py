"""Dense exact matrices over the rationals.

Entries are Python ints or ``fractions.Fraction``; integral results are kept
as ints so that the common 0/1 matrices stay cheap.  Row reduction is done
by the integer kernel (compiled when available).
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

if os.environ.get("QCMODEL_PURE_PYTHON"):
    from qcmodel._kernel_py import echelon as _echelon

    KERNEL = "python"
else:
    try:
        from qcmodel._kernel import echelon as _echelon

        KERNEL = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        from qcmodel._kernel_py import echelon as _echelon

        KERNEL = "python"


def q(x) -> int | Fraction:
    """Normalize a rational: integral values become ints."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    return q(Fraction(x))


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        qq, r = divmod(a, b)
        return qq if r == 0 else Fraction(a, b)
    return q(Fraction(a) / b)


class Mat:
    """Immutable rational matrix with explicit shape."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], nrows: int | None = None, ncols: int | None = None):
        data = tuple(tuple(q(x) for x in r) for r in rows)
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise ValueError(f"ragged matrix data for shape {nrows}x{ncols}")
        self.rows = data
        self.nrows = nrows
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, nrows: int, ncols: int) -> "Mat":
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = nrows
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, m: int, n: int) -> "Mat":
        return cls._raw(tuple((0,) * n for _ in range(m)), m, n)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._raw(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Mat":
        return cls._raw(tuple(tuple(q(c[i]) for c in cols) for i in range(nrows)), nrows, len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __repr__(self) -> str:
        return f"Mat({[list(r) for r in self.rows]!r}, shape={self.shape})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Mat":
        return Mat._raw(tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols)), self.ncols, self.nrows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        n = other.ncols
        if self.ncols == 0:
            return Mat.zeros(self.nrows, n)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            if not nz:
                out.append((0,) * n)
                continue
            row = []
            for c in cols:
                s = 0
                for k, a in nz:
                    b = c[k]
                    if b:
                        s += a * b
                row.append(q(s) if isinstance(s, Fraction) else s)
            out.append(tuple(row))
        return Mat._raw(tuple(out), self.nrows, n)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Mat._raw(
            tuple(tuple(q(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Mat._raw(
            tuple(tuple(q(a - b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __neg__(self) -> "Mat":
        return Mat._raw(tuple(tuple(-a for a in r) for r in self.rows), self.nrows, self.ncols)

    def scale(self, c) -> "Mat":
        c = q(c)
        return Mat._raw(tuple(tuple(q(c * a) for a in r) for r in self.rows), self.nrows, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(rows), len(cols))

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    # -- reductions ---------------------------------------------------------

    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form (nonzero rows only) and pivot columns."""
        return rref_rows(self.rows, self.ncols)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "Mat":
        """Columns form a basis of {v : self @ v = 0}."""
        return nullspace_rows(self.rows, self.ncols)

    def solve(self, b: "Mat") -> "Mat | None":
        """Some X with self @ X = b, or None if inconsistent."""
        if b.nrows != self.nrows:
            raise ValueError("right-hand side has wrong number of rows")
        n = self.ncols
        aug = [r + s for r, s in zip(self.rows, b.rows)]
        red, piv = rref_rows(aug, n + b.ncols)
        if piv and piv[-1] >= n:
            return None
        x = [[0] * b.ncols for _ in range(n)]
        for i, p in enumerate(piv):
            row = red.rows[i]
            x[p] = list(row[n:])
        return Mat._raw(tuple(tuple(r) for r in x), n, b.ncols)

    def inverse(self) -> "Mat":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(Mat.identity(self.nrows))
        if x is None or self.rank() != self.nrows:
            raise ZeroDivisionError("matrix is singular")
        return x


def rref_rows(rows: Sequence[Sequence], ncols: int) -> tuple[Mat, list[int]]:
    ints = []
    for r in rows:
        d = 1
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                d = lcm(d, x.denominator)
        if d == 1:
            ints.append([x if isinstance(x, int) else x.numerator for x in r])
        else:
            ints.append([(x.numerator * (d // x.denominator)) if isinstance(x, Fraction) else x * d for x in r])
    red, piv = _echelon(ints, ncols)
    out = []
    for row, p in zip(red, piv):
        a = row[p]
        if a == 1:
            out.append(tuple(row))
        else:
            out.append(tuple(_div(x, a) if x else 0 for x in row))
    return Mat._raw(tuple(out), len(out), ncols), list(piv)


def nullspace_rows(rows: Sequence[Sequence], ncols: int) -> Mat:
    red, piv = rref_rows(rows, ncols)
    pivset = set(piv)
    free = [j for j in range(ncols) if j not in pivset]
    cols = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(piv):
            v[p] = -red.rows[i][f]
        cols.append(v)
    return Mat.from_columns(cols, ncols)


def rank_rows(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref_rows(rows, ncols)[1])


def hstack(mats: Sequence[Mat], nrows: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(nrows or 0, 0)
    m = mats[0].nrows
    if any(x.nrows != m for x in mats):
        raise ValueError("hstack row mismatch")
    return Mat._raw(tuple(tuple(x for M in mats for x in M.rows[i]) for i in range(m)), m, sum(M.ncols for M in mats))


def vstack(mats: Sequence[Mat], ncols: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(0, ncols or 0)
    n = mats[0].ncols
    if any(x.ncols != n for x in mats):
        raise ValueError("vstack column mismatch")
    return Mat._raw(tuple(r for M in mats for r in M.rows), sum(M.nrows for M in mats), n)


def block_diag(mats: Sequence[Mat]) -> Mat:
    m = sum(M.nrows for M in mats)
    n = sum(M.ncols for M in mats)
    out = []
    c0 = 0
    for M in mats:
        for r in M.rows:
            out.append((0,) * c0 + r + (0,) * (n - c0 - M.ncols))
        c0 += M.ncols
    return Mat._raw(tuple(out), m, n)


def kron(a: Mat, b: Mat) -> Mat:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(q(x * y) for x in ra for y in rb))
    return Mat._raw(tuple(rows), a.nrows * b.nrows, a.ncols * b.ncols)


def pivot_columns(m: Mat) -> list[int]:
    return m.rref()[1]


def complement_coordinates(w: Mat) -> list[int]:
    """Standard basis indices spanning a complement of the column space of w."""
    piv = set(rref_rows(w.T.rows, w.nrows)[1]) if w.ncols else set()
    return [i for i in range(w.nrows) if i not in piv]


def column_basis(w: Mat) -> Mat:
    """A basis (as columns) of the column space of w, taken from w's columns."""
    piv = pivot_columns(w)
    return w.submatrix(range(w.nrows), piv)
