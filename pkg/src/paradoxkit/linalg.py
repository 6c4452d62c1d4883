"""Tiny exact 3x3 linear algebra over Python ints and Fractions.

Matrices are tuples of row tuples, vectors are 3-tuples.  Nothing here
rounds; entries keep whatever exact type they were built from.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple, tuple, tuple]
Vector = tuple


IDENTITY: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat(rows: Sequence[Sequence]) -> Matrix:
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("expected a 3x3 matrix")
    return tuple(tuple(r) for r in rows)  # type: ignore[return-value]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3))
        for i in range(3)
    )  # type: ignore[return-value]


def matvec(a: Matrix, v: Vector) -> Vector:
    return tuple(a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2] for i in range(3))


def transpose(a: Matrix) -> Matrix:
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))  # type: ignore[return-value]


def scale(k, a: Matrix) -> Matrix:
    return tuple(tuple(k * x for x in row) for row in a)  # type: ignore[return-value]


def det(a: Matrix):
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def mat_mod(a: Matrix, m: int) -> Matrix:
    return tuple(tuple(x % m for x in row) for row in a)  # type: ignore[return-value]


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vscale(k, v: Vector) -> Vector:
    return tuple(k * x for x in v)


def dot(u: Vector, v: Vector):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def norm2(v: Vector):
    return dot(v, v)


def to_fraction_matrix(a: Sequence[Sequence]) -> Matrix:
    return mat([[Fraction(x) for x in row] for row in a])


def to_fraction_vector(v: Sequence) -> Vector:
    if len(v) != 3:
        raise ValueError("expected a 3-vector")
    return tuple(Fraction(x) for x in v)


def is_rotation(a: Matrix) -> bool:
    """Exact test for membership in SO(3)."""
    return matmul(transpose(a), a) == IDENTITY and det(a) == 1
