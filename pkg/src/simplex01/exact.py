"""Exact rational scalars, vectors and matrices.

Scalars are ``fractions.Fraction`` (arbitrary-precision, always canonical:
positive denominator, gcd(|num|, den) = 1).  Vectors and matrices are plain
tuples of Fractions; the kernels below (rank, square solve, inverse,
lexicographic comparison) are the only linear algebra the rest of the
package uses.  Everything is exact: there is no floating point anywhere in
this module.

Rank uses fraction-free (Bareiss) elimination on an integer-scaled copy of
the matrix, which keeps intermediate entries as single integers and bounds
their growth by minors of the input.  That matters because the ordered
shadow rule feeds us auxiliary vectors with entries up to (||c||_1 + 2)^n.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction

RatVector = tuple[Fraction, ...]
RatMatrix = tuple[RatVector, ...]


class SingularMatrixError(ValueError):
    """Square system has no unique solution (rank < order)."""


def frac(value: int | str | Fraction, den: int | None = None) -> Fraction:
    """Build a canonical rational; accepts ints, 'p/q' strings and Fractions."""
    if den is not None:
        return Fraction(value, den)
    return Fraction(value)


def vec(entries: Iterable[int | str | Fraction]) -> RatVector:
    return tuple(Fraction(e) for e in entries)


def mat(rows: Iterable[Iterable[int | str | Fraction]]) -> RatMatrix:
    out = tuple(vec(row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def mat_shape(m: RatMatrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def mat_vec(m: RatMatrix, v: Sequence[Fraction]) -> RatVector:
    return tuple(dot(row, v) for row in m)


def transpose(m: RatMatrix) -> RatMatrix:
    return tuple(zip(*m)) if m else ()


def _integer_rows(m: Sequence[Sequence[Fraction | int]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    rows = []
    for row in m:
        scale = 1
        for e in row:
            d = e.denominator if isinstance(e, Fraction) else 1
            scale = scale * d // gcd(scale, d)
        rows.append([int(e * scale) if isinstance(e, Fraction) else int(e) * scale for e in row])
    return rows


def rank(m: Sequence[Sequence[Fraction | int]]) -> int:
    """Exact rank via fraction-free (Bareiss) Gaussian elimination."""
    rows = _integer_rows(m)
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    r = 0
    prev = 1
    for col in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, n_rows):
            # Sylvester's identity makes the division exact (entries are minors).
            f = rows[i][col]
            ri, rr = rows[i], rows[r]
            rows[i] = [(p * ri[c] - f * rr[c]) // prev for c in range(n_cols)]
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def solve_square(m: RatMatrix, b: Sequence[Fraction]) -> RatVector:
    """Exact solution of m @ x = b for square m.

    Raises SingularMatrixError when rank(m) < order, which in the solver
    signals an invalid basis.
    """
    n = len(m)
    if any(len(row) != n for row in m) or len(b) != n:
        raise ValueError("solve_square needs a square matrix and matching vector")
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"singular matrix (column {col})")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        row_c = aug[col]
        for i in range(col + 1, n):
            f = aug[i][col]
            if f:
                f = f / p
                aug[i] = [aug[i][k] - f * row_c[k] for k in range(n + 1)]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = aug[i][n] - sum((aug[i][k] * x[k] for k in range(i + 1, n)), Fraction(0))
        x[i] = s / aug[i][i]
    return tuple(x)


def invert(m: RatMatrix) -> RatMatrix:
    """Exact inverse of a square matrix (Gauss-Jordan)."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("invert needs a square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"singular matrix (column {col})")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        if p != 1:
            inv_p = 1 / p
            aug[col] = [e * inv_p for e in aug[col]]
        row_c = aug[col]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [aug[i][k] - f * row_c[k] for k in range(2 * n)]
    return tuple(tuple(row[n:]) for row in aug)


def lex_positive(v: Sequence[Fraction]) -> bool:
    """True iff the first nonzero entry is positive (all-zero is not positive)."""
    for e in v:
        if e:
            return e > 0
    return False


def lex_compare(a: Sequence[Fraction], b: Sequence[Fraction]) -> int:
    """Total order by first differing entry: -1 if a < b, 0 if equal, +1 if a > b."""
    if len(a) != len(b):
        raise ValueError("lex_compare needs equal-length vectors")
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    return 0
