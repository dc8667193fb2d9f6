"""Exact arithmetic on small square integer matrices.

Chart dimensions in this package never exceed 4, so naive Laplace
expansion and adjugates are both exact and fast.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def freeze(rows: Iterable[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if not m or any(len(row) != len(m) for row in m):
        raise ValueError("matrix must be square and nonempty")
    return m


def identity(d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_vec(m: Matrix, v: Vector) -> Vector:
    if len(v) != len(m):
        raise ValueError("dimension mismatch")
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def vec_mat(v: Vector, m: Matrix) -> Vector:
    if len(v) != len(m):
        raise ValueError("dimension mismatch")
    return tuple(sum(v[i] * m[i][j] for i in range(len(m))) for j in range(len(m)))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    if len(b) != n:
        raise ValueError("dimension mismatch")
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _minor(m: Matrix, i: int, j: int) -> Matrix:
    return tuple(
        tuple(x for cj, x in enumerate(row) if cj != j)
        for ri, row in enumerate(m)
        if ri != i
    )


def det(m: Matrix) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            total += (-1) ** j * m[0][j] * det(_minor(m, 0, j))
    return total


def adjugate(m: Matrix) -> Matrix:
    n = len(m)
    if n == 1:
        return ((1,),)
    cof = tuple(
        tuple((-1) ** (i + j) * det(_minor(m, i, j)) for j in range(n))
        for i in range(n)
    )
    return transpose(cof)


def inverse_unimodular(m: Matrix) -> Matrix:
    """Invert an integer matrix with determinant +-1 (adj(M)/det stays integral)."""
    d = det(m)
    if abs(d) != 1:
        raise ValueError(f"matrix is not unimodular (det = {d})")
    adj = adjugate(m)
    if d == 1:
        return adj
    return tuple(tuple(-x for x in row) for row in adj)
