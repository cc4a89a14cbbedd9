"""Exact linear algebra over Q and Z.

Rationals are :class:`fractions.Fraction`.  Nothing here touches floating
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import Singular

__all__ = [
    "RationalMatrix", "rank", "solve", "solve_unitriangular",
    "integer_kernel_basis", "hermite_rows", "format_rational", "parse_rational",
]


def format_rational(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text):
    return Fraction(text)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense rational matrix with optional row/column labels."""

    entries: tuple[tuple[Fraction, ...], ...]
    row_labels: tuple = ()
    col_labels: tuple = ()

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        if self.row_labels and len(self.row_labels) != len(rows):
            raise ValueError("row label count does not match row count")
        if self.col_labels and len(self.col_labels) != width:
            raise ValueError("column label count does not match column count")

    @classmethod
    def from_rows(cls, rows, row_labels=(), col_labels=()):
        return cls(tuple(tuple(r) for r in rows), tuple(row_labels), tuple(col_labels))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self):
        return RationalMatrix(tuple(zip(*self.entries)) if self.entries else (),
                              self.col_labels, self.row_labels)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        return RationalMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col))
                                          for col in cols) for row in self.entries),
                              self.row_labels, other.col_labels)

    def tolist(self):
        return [list(r) for r in self.entries]

    def to_strings(self):
        return [[format_rational(x) for x in r] for r in self.entries]

    def is_integral(self):
        return all(x.denominator == 1 for r in self.entries for x in r)


def _as_rows(M):
    if isinstance(M, RationalMatrix):
        return M.tolist()
    return [[Fraction(x) for x in row] for row in M]


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators; row rank is unchanged."""
    out = []
    for row in rows:
        d = lcm(1, *(Fraction(x).denominator for x in row))
        out.append([int(Fraction(x) * d) for x in row])
    return out


def rank(M):
    """Rank over Q by fraction-free (Bareiss) elimination with full pivoting."""
    a = _integer_rows(_as_rows(M))
    m = len(a)
    n = len(a[0]) if a else 0
    prev = 1
    r = 0
    while r < min(m, n):
        pivot = None
        best = None
        for i in range(r, m):
            row = a[i]
            for j in range(r, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    pivot, best = (i, j), abs(v)
        if pivot is None:
            break
        pi, pj = pivot
        a[r], a[pi] = a[pi], a[r]
        if pj != r:
            for row in a:
                row[r], row[pj] = row[pj], row[r]
        p = a[r][r]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[r]
            for j in range(r + 1, n):
                ai[j] = (p * ai[j] - f * a[r][j]) // prev
            ai[r] = 0
        prev = p
        r += 1
    return r


def solve(M, target):
    """Unique solution of M x = target by exact Gauss-Jordan elimination."""
    a = _as_rows(M)
    n = len(a)
    if any(len(row) != n for row in a):
        raise Singular("matrix is not square")
    if len(target) != n:
        raise ValueError("target length does not match matrix")
    aug = [row + [Fraction(t)] for row, t in zip(a, target)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n] for row in aug]


def solve_unitriangular(M, target):
    """Solve M x = target exactly.

    Triangular systems (the table of marks) are solved by substitution; any
    other invertible matrix falls back to :func:`solve`.
    """
    a = _as_rows(M)
    n = len(a)
    if any(len(row) != n for row in a) or len(target) != n:
        raise Singular("matrix is not square or target has wrong length")
    lower = all(a[i][j] == 0 for i in range(n) for j in range(i + 1, n))
    upper = all(a[i][j] == 0 for i in range(n) for j in range(i))
    if not (lower or upper):
        return solve(a, target)
    if any(a[i][i] == 0 for i in range(n)):
        raise Singular("zero on the diagonal of a triangular matrix")
    x = [Fraction(0)] * n
    order = range(n) if lower else range(n - 1, -1, -1)
    for i in order:
        s = Fraction(target[i]) - sum(a[i][j] * x[j] for j in range(n) if j != i and a[i][j])
        x[i] = s / a[i][i]
    return x


def _ext_gcd(a, b):
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_rows(rows: Sequence[Sequence[int]], width=None):
    """Row-style Hermite normal form of the integer row lattice.

    Pivots are the first nonzero entry of each row, strictly increasing,
    positive, and entries above a pivot are reduced into ``[0, pivot)``.
    Zero rows are dropped.
    """
    a = [[int(x) for x in r] for r in rows]
    n = width if width is not None else (len(a[0]) if a else 0)
    r = 0
    pivots = []
    for c in range(n):
        # gcd-combine everything below r into row r
        for i in range(r + 1, len(a)):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = _ext_gcd(x, y)
            u, v = x // g, y // g
            ra, rb = a[r], a[i]
            a[r] = [s * p + t * q for p, q in zip(ra, rb)]
            a[i] = [-v * p + u * q for p, q in zip(ra, rb)]
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            pivots.append(c)
            r += 1
            if r == len(a):
                break
    a = a[:r]
    for k, c in enumerate(pivots):
        p = a[k][c]
        for i in range(k):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[k])]
    return a


def integer_kernel_basis(A, ncols=None):
    """Hermite-form basis of the integer lattice {x in Z^k : A x = 0}.

    ``ncols`` is needed only when ``A`` has no rows.
    """
    A = [[int(x) for x in row] for row in A]
    k = len(A[0]) if A else ncols
    if k is None:
        raise ValueError("ncols required for a matrix with no rows")
    m = len(A)
    # rows of [A^T | I]; unimodular row ops keep the right block a basis
    aug = [[A[i][j] for i in range(m)] + [int(j == c) for c in range(k)] for j in range(k)]
    reduced = hermite_rows(aug, width=m + k)
    kernel = [row[m:] for row in reduced if all(v == 0 for v in row[:m])]
    return hermite_rows(kernel, width=k)
