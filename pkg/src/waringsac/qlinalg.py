"""Exact rational matrices: reduced row-echelon form, rank and kernels.

Rationals are :class:`fractions.Fraction` (arbitrary precision, normalized
after every operation).  Matrices are immutable and stored row-major.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

# Large prime below 2**31 so that products of residues fit in int64.
_PRIME = 2147483629


def as_fraction(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        entries = tuple(as_fraction(x) for r in rows for x in r)
        return cls(len(rows), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        v = [as_fraction(x) for x in vector]
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))

    def scale_row(self, i: int, c) -> "Matrix":
        c = as_fraction(c)
        rows = self.to_rows()
        rows[i] = [c * x for x in rows[i]]
        return Matrix.from_rows(rows, self.cols)

    def scale_column(self, j: int, c) -> "Matrix":
        c = as_fraction(c)
        rows = self.to_rows()
        for r in rows:
            r[j] *= c
        return Matrix.from_rows(rows, self.cols)

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Return ``(R, rank, pivot_columns)`` for the reduced row-echelon form of ``m``.

    The pivot in each column is the first nonzero entry at or below the
    current pivot row, so the elimination is fully deterministic.
    """
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        if inv != 1:
            a[r] = [x * inv for x in a[r]]
        pivot_row = a[r]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pivot_row)]
        pivots.append(c)
        r += 1
    return Matrix.from_rows(a, ncols), r, pivots


def kernel_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{v : m v = 0}``, one vector per free column of the rref.

    The vector for free column ``f`` has a 1 in position ``f``, zeros at the
    other free columns and ``-R[i][f]`` at the ``i``-th pivot column.
    """
    r, rank, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(tuple(v))
    return basis


def _integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [as_fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def _modular_rank(rows: list[list[int]], ncols: int) -> int:
    a = np.array([[x % _PRIME for x in r] for r in rows], dtype=np.int64).reshape(len(rows), ncols)
    nrows = a.shape[0]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        inv = pow(int(a[r, c]), _PRIME - 2, _PRIME)
        a[r] = (a[r] * inv) % _PRIME
        below = a[r + 1:, c].copy()
        if below.any():
            a[r + 1:] = (a[r + 1:] - (below[:, None] * a[r][None, :]) % _PRIME) % _PRIME
        r += 1
    return r


def _exact_integer_rank(rows: list[list[int]], ncols: int) -> int:
    a = [list(r) for r in rows]
    nrows = len(a)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pivot_row = a[r]
        pv = pivot_row[c]
        for i in range(r + 1, nrows):
            x = a[i][c]
            if x == 0:
                continue
            g = gcd(pv, x)
            mp, mx = pv // g, x // g
            row = [mp * u - mx * w for u, w in zip(a[i], pivot_row)]
            g = 0
            for u in row:
                if u:
                    g = gcd(g, u)
                    if g == 1:
                        break
            if g > 1:
                row = [u // g for u in row]
            a[i] = row
        r += 1
    return r


def rank(m: Matrix | Sequence[Sequence]) -> int:
    """Exact rank.

    Accepts a :class:`Matrix` or a list of rows.  A modular rank is computed
    first; it never exceeds the rational rank, so a full-rank modular answer
    is final.  Otherwise fraction-free integer elimination decides.
    """
    if isinstance(m, Matrix):
        rows, ncols = m.to_rows(), m.cols
    else:
        rows = [list(r) for r in m]
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return 0
    if len(rows) > ncols:
        rows = [list(c) for c in zip(*rows)]
        ncols = len(rows[0])
    ints = _integer_rows(rows)
    full = min(len(ints), ncols)
    if _modular_rank(ints, ncols) == full:
        return full
    return _exact_integer_rank(ints, ncols)


def solve(m: Matrix, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``m x = rhs`` (free variables set to zero), or None."""
    aug = Matrix.from_rows([list(m.row(i)) + [as_fraction(rhs[i])] for i in range(m.rows)], m.cols + 1)
    r, rk, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = r[i, m.cols]
    return tuple(x)


def primitive(vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale a nonzero rational vector to coprime integers with positive leading entry."""
    v = [as_fraction(x) for x in vector]
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)
