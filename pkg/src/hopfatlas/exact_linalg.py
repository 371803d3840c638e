"""Exact integer and rational linear algebra.

Rationals are :class:`fractions.Fraction`, which is always stored in lowest
terms with a positive denominator. Matrices are plain nested sequences of
integers (or rationals where noted); results are returned as tuples so that
they can be hashed and compared structurally.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotSymmetricError, SingularMatrixError

Rational = Fraction
IntMatrix = Sequence[Sequence[int]]

__all__ = [
    "Rational",
    "IntMatrix",
    "as_matrix",
    "identity",
    "is_symmetric",
    "mat_vec",
    "mat_mul",
    "transpose",
    "det",
    "solve",
    "signature",
    "inertia",
]


def as_matrix(M: IntMatrix) -> tuple[tuple[int, ...], ...]:
    """Return ``M`` as a tuple of tuples after checking that it is square."""
    rows = tuple(tuple(row) for row in M)
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError(f"matrix is not square: row of length {len(row)} in {n}x{n}")
    return rows


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M):
    return tuple(zip(*M)) if M else ()


def is_symmetric(M) -> bool:
    n = len(M)
    return all(M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n))


def mat_vec(M, v):
    return tuple(sum((a * b for a, b in zip(row, v)), 0) for row in M)


def mat_mul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), 0) for col in Bt) for row in A)


def det(M: IntMatrix) -> int:
    """Determinant by Bareiss fraction-free elimination.

    Every intermediate value is an exact integer (a minor of ``M``), so the
    work stays polynomial in the bit size of the entries.
    """
    a = [list(row) for row in as_matrix(M)]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def solve(M: IntMatrix, b: Sequence) -> tuple[Fraction, ...]:
    """Solve ``M x = b`` exactly over the rationals.

    Raises :class:`SingularMatrixError` when ``det(M) == 0``.
    """
    rows = as_matrix(M)
    n = len(rows)
    if len(b) != n:
        raise ValueError(f"right-hand side has length {len(b)}, expected {n}")
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(rows, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pivot_row = aug[col]
        inv = 1 / pivot_row[col]
        for j in range(col, n + 1):
            pivot_row[j] *= inv
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                row = aug[r]
                for j in range(col, n + 1):
                    row[j] -= f * pivot_row[j]
    return tuple(row[n] for row in aug)


def inertia(M: IntMatrix) -> tuple[int, int, int]:
    """Return ``(positive, negative, zero)`` counts of a symmetric matrix.

    Uses congruence diagonalisation over the rationals. A nonzero diagonal
    entry is used as a 1x1 pivot; when the remaining diagonal is zero but an
    off-diagonal entry ``a`` is not, the hyperbolic block ``[[0, a], [a, 0]]``
    is split off and contributes one positive and one negative square.
    """
    rows = as_matrix(M)
    if not is_symmetric(rows):
        raise NotSymmetricError("signature requires a symmetric matrix")
    a = [[Fraction(x) for x in row] for row in rows]
    pos = neg = zero = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is not None:
            d = a[k][k]
            if d > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != k]
            a = [[a[i][j] - a[i][k] * a[k][j] / d for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
        if pair is None:
            zero += n
            break
        i, j = pair
        pos += 1
        neg += 1
        h = a[i][j]
        rest = [r for r in range(n) if r not in pair]
        # Schur complement of the block [[0, h], [h, 0]], whose inverse is [[0, 1/h], [1/h, 0]]
        a = [
            [a[r][c] - (a[r][i] * a[j][c] + a[r][j] * a[i][c]) / h for c in rest]
            for r in rest
        ]
    return pos, neg, zero


def signature(M: IntMatrix) -> int:
    """Number of positive minus number of negative eigenvalues of ``M``."""
    pos, neg, _ = inertia(M)
    return pos - neg
