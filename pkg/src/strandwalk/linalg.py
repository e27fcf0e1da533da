"""Exact dense linear algebra over LaurentPoly, RatFunc, or Fraction entries.

Determinants are computed fraction-free (Bareiss) over Laurent polynomials,
where the ring has no division, and by ordinary Gaussian elimination over
field entries.  Exterior powers are matrices of minors indexed by subsets in
lexicographic order of their increasing member tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadGrade,
    DimensionMismatch,
    NotSquare,
    Singular,
    SingularL,
    SizeMismatch,
)
from .ring import LaurentPoly, RatFunc


def _zero_like(x):
    if isinstance(x, LaurentPoly):
        return LaurentPoly.zero()
    if isinstance(x, RatFunc):
        return RatFunc.zero()
    return Fraction(0)


def _one_like(x):
    if isinstance(x, LaurentPoly):
        return LaurentPoly.one()
    if isinstance(x, RatFunc):
        return RatFunc.one()
    return Fraction(1)


# ---------------------------------------------------------------------------
# subsets of {1..n}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubsetIndex:
    """Strictly increasing subset of {1..n}, the index of a wedge-basis form."""

    n: int
    members: tuple

    def __post_init__(self):
        m = tuple(self.members)
        object.__setattr__(self, "members", m)
        if any(not (1 <= x <= self.n) for x in m):
            raise ValueError(f"members {m} out of range 1..{self.n}")
        if any(m[i] >= m[i + 1] for i in range(len(m) - 1)):
            raise ValueError(f"members {m} not strictly increasing")

    def __len__(self):
        return len(self.members)

    def complement(self):
        inside = set(self.members)
        return SubsetIndex(self.n, tuple(x for x in range(1, self.n + 1) if x not in inside))


def subsets(n, k):
    """Size-k subsets of {1..n} as increasing tuples, in lexicographic order."""
    return list(itertools.combinations(range(1, n + 1), k))


def shuffle_sign(s):
    """Sign of the shuffle sorting (S, S^c) into ascending order.

    With this sign the full top form satisfies tau_n = sign * tau_S ^ tau_Sc.
    """
    if isinstance(s, SubsetIndex):
        seq = s.members + s.complement().members
    else:
        raise TypeError("shuffle_sign expects a SubsetIndex")
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Immutable row-major dense matrix over one of the exact rings.

    Zero-size blocks (rows or cols equal to 0) are allowed so that closure
    presentations with no closed strands keep uniform code paths.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(entries)
        if rows < 0 or cols < 0:
            raise DimensionMismatch("negative matrix dimensions")
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rows(cls, rows):
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged rows")
        return cls(r, c, [x for row in rows for x in row])

    @classmethod
    def identity(cls, n, one, zero):
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows, cols, zero):
        return cls(rows, cols, [zero] * (rows * cols))

    def identity_like(self):
        if self.rows == 0:
            raise DimensionMismatch("cannot infer ring from an empty matrix")
        one = _one_like(self.entries[0])
        zero = _zero_like(self.entries[0])
        return Matrix.identity(self.rows, one, zero)

    # -- access ---------------------------------------------------------------

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def is_square(self):
        return self.rows == self.cols

    def submatrix(self, row_idx, col_idx):
        """Submatrix from 0-based row and column index sequences."""
        return Matrix(
            len(row_idx),
            len(col_idx),
            [self.entry(i, j) for i in row_idx for j in col_idx],
        )

    def block(self, r0, r1, c0, c1):
        """Contiguous block with rows r0..r1-1 and cols c0..c1-1 (0-based)."""
        return self.submatrix(range(r0, r1), range(c0, c1))

    @staticmethod
    def assemble(grid):
        """Glue a 2d grid of blocks into one matrix."""
        row_heights = [grid[i][0].rows for i in range(len(grid))]
        col_widths = [b.cols for b in grid[0]]
        for i, brow in enumerate(grid):
            if len(brow) != len(col_widths):
                raise DimensionMismatch("ragged block grid")
            for j, b in enumerate(brow):
                if b.rows != row_heights[i] or b.cols != col_widths[j]:
                    raise DimensionMismatch("inconsistent block sizes")
        out = []
        for i, brow in enumerate(grid):
            for r in range(row_heights[i]):
                for b in brow:
                    out.extend(b.row(r))
        return Matrix(sum(row_heights), sum(col_widths), out)

    def map_entries(self, fn):
        return Matrix(self.rows, self.cols, [fn(x) for x in self.entries])

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return Matrix(
            self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return Matrix(
            self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return self.map_entries(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            out = []
            for i in range(self.rows):
                ri = self.row(i)
                for j in range(other.cols):
                    acc = None
                    for k in range(self.cols):
                        term = ri[k] * other.entry(k, j)
                        acc = term if acc is None else acc + term
                    if acc is None:
                        raise DimensionMismatch("inner dimension 0 product needs a ring hint")
                    out.append(acc)
            return Matrix(self.rows, other.cols, out)
        return self.map_entries(lambda x: x * other)

    def __rmul__(self, other):
        return self.map_entries(lambda x: other * x)

    def transpose(self):
        return Matrix(
            self.cols,
            self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    # -- comparison / rendering ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for a, b in zip(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __str__(self):
        rows = [
            "[" + ", ".join(str(self.entry(i, j)) for j in range(self.cols)) + "]"
            for i in range(self.rows)
        ]
        return "[" + ",\n ".join(rows) + "]"

    def __repr__(self):
        return f"Matrix({self.rows}, {self.cols}, {list(self.entries)!r})"

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [_entry_json(x) for x in self.entries],
        }


def _entry_json(x):
    if isinstance(x, (LaurentPoly, RatFunc)):
        return x.to_json()
    f = Fraction(x)
    return [[0, f.numerator, f.denominator]] if f else []


# ---------------------------------------------------------------------------
# determinants and inverses
# ---------------------------------------------------------------------------

def det(a, one=None):
    """Exact determinant; Bareiss over LaurentPoly, elimination over fields."""
    if not a.is_square():
        raise NotSquare(f"determinant of a {a.rows}x{a.cols} matrix")
    if a.rows == 0:
        if one is None:
            raise DimensionMismatch("det of an empty matrix needs a ring hint")
        return one
    if isinstance(a.entries[0], LaurentPoly):
        return _det_bareiss(a)
    return _det_gauss(a)


def _det_bareiss(a):
    n = a.rows
    m = [list(a.row(i)) for i in range(n)]
    sign = 1
    prev = LaurentPoly.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return LaurentPoly.zero()
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = (pkk * m[i][j] - mik * m[k][j]).exact_div(prev)
            m[i][k] = LaurentPoly.zero()
        prev = pkk
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def _det_gauss(a):
    n = a.rows
    m = [list(a.row(i)) for i in range(n)]
    one = _one_like(a.entries[0])
    acc = one
    sign = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if not _is_zero(m[i][k])), None)
        if pivot is None:
            return _zero_like(a.entries[0])
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        p = m[k][k]
        acc = acc * p
        for i in range(k + 1, n):
            f = m[i][k] / p
            if _is_zero(f):
                continue
            for j in range(k, n):
                m[i][j] = m[i][j] - f * m[k][j]
    return -acc if sign < 0 else acc


def _is_zero(x):
    if isinstance(x, (LaurentPoly, RatFunc)):
        return x.is_zero()
    return x == 0


def inverse(a):
    """Inverse over a field (RatFunc or Fraction entries)."""
    if not a.is_square():
        raise NotSquare("inverse of a non-square matrix")
    n = a.rows
    if n == 0:
        return a
    one = _one_like(a.entries[0])
    zero = _zero_like(a.entries[0])
    m = [list(a.row(i)) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if not _is_zero(m[i][k])), None)
        if pivot is None:
            raise Singular("matrix is singular")
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
        p = m[k][k]
        m[k] = [x / p for x in m[k]]
        for i in range(n):
            if i == k or _is_zero(m[i][k]):
                continue
            f = m[i][k]
            m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return Matrix(n, n, [m[i][j + n] for i in range(n) for j in range(n)])


# ---------------------------------------------------------------------------
# minors and exterior powers
# ---------------------------------------------------------------------------

def _as_members(idx):
    if isinstance(idx, SubsetIndex):
        return idx.members
    return tuple(idx)


def minor(a, rows, cols):
    """Determinant of the submatrix on 1-based index sets rows x cols."""
    r = _as_members(rows)
    c = _as_members(cols)
    if len(r) != len(c):
        raise SizeMismatch(f"minor with {len(r)} rows but {len(c)} cols")
    sub = a.submatrix([i - 1 for i in r], [j - 1 for j in c])
    return det(sub, one=_one_like(a.entries[0]) if a.entries else None)


def exterior_power(a, k):
    """Matrix of all k x k minors, indexed by subsets in lex order.

    Grade 0 is the 1x1 identity; grade 1 is the matrix itself.
    """
    if not a.is_square():
        raise NotSquare("exterior power of a non-square matrix")
    n = a.rows
    if not 0 <= k <= n:
        raise BadGrade(f"grade {k} out of range 0..{n}")
    if k == 0:
        one = _one_like(a.entries[0]) if a.entries else Fraction(1)
        return Matrix(1, 1, [one])
    idx = subsets(n, k)
    return Matrix(
        len(idx), len(idx), [minor(a, t, s) for t in idx for s in idx]
    )


def minor_table(a):
    """All minors of a square matrix, keyed by (rows, cols) 1-based tuples.

    Shares subproblems across sizes by cofactor expansion along the last
    column, which is much cheaper than independent determinants when every
    grade of the exterior algebra is needed at once.
    """
    if not a.is_square():
        raise NotSquare("minor table of a non-square matrix")
    n = a.rows
    one = _one_like(a.entries[0]) if a.entries else Fraction(1)
    table = {((), ()): one}
    for k in range(1, n + 1):
        idx = subsets(n, k)
        for rows in idx:
            for cols in idx:
                c = cols[-1]
                rest = cols[:-1]
                acc = None
                for pos, r in enumerate(rows):
                    entry = a.entry(r - 1, c - 1)
                    if _is_zero(entry):
                        continue
                    sub = table[(rows[:pos] + rows[pos + 1 :], rest)]
                    term = entry * sub
                    if (pos + k - 1) % 2:
                        term = -term
                    acc = term if acc is None else acc + term
                table[(rows, cols)] = acc if acc is not None else _zero_like(one)
    return table


# ---------------------------------------------------------------------------
# Schur complements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchurFactors:
    """Blocks of the UL factorization B = [[I, G], [0, I]] * [[D, 0], [K, L]]."""

    d: Matrix
    g: Matrix
    l: Matrix
    k: Matrix

    def upper(self):
        n, m = self.d.rows, self.l.rows
        one = _one_like(self.d.entries[0]) if self.d.entries else _one_like(self.l.entries[0])
        zero = _zero_like(one)
        return Matrix.assemble(
            [
                [Matrix.identity(n, one, zero), self.g],
                [Matrix.zeros(m, n, zero), Matrix.identity(m, one, zero)],
            ]
        )

    def lower(self):
        n, m = self.d.rows, self.l.rows
        one = _one_like(self.d.entries[0]) if self.d.entries else _one_like(self.l.entries[0])
        zero = _zero_like(one)
        return Matrix.assemble([[self.d, Matrix.zeros(n, m, zero)], [self.k, self.l]])


def schur_complement(b, split):
    """Schur complement D = H - J L^-1 K of the bottom-right block L.

    ``split = (n, m)`` cuts b into [[H, J], [K, L]] with H of size n and L of
    size m.  Entries must lie in a field; raises SingularL when L is not
    invertible.
    """
    n, m = split
    if b.rows != n + m or b.cols != n + m:
        raise DimensionMismatch(f"split {split} does not match a {b.rows}x{b.cols} matrix")
    h = b.block(0, n, 0, n)
    j = b.block(0, n, n, n + m)
    k = b.block(n, n + m, 0, n)
    l = b.block(n, n + m, n, n + m)
    if m == 0:
        return SchurFactors(d=h, g=j, l=l, k=k)
    try:
        linv = inverse(l)
    except Singular as exc:
        raise SingularL("bottom-right block is singular") from exc
    g = j * linv
    d = h - g * k
    return SchurFactors(d=d, g=g, l=l, k=k)
