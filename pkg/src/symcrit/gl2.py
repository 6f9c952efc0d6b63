"""Small 2x2 matrix helpers over F_p.

Matrices are tuples ((a, b), (c, d)) with entries reduced to [0, p).
"""

from __future__ import annotations

from itertools import product

Matrix = tuple


def mat(a, b, c, d, p: int) -> Matrix:
    return ((a % p, b % p), (c % p, d % p))


def identity(p: int) -> Matrix:
    return ((1, 0), (0, 1))


def mul(A: Matrix, B: Matrix, p: int) -> Matrix:
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return mat(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, p)


def det(A: Matrix, p: int) -> int:
    (a, b), (c, d) = A
    return (a * d - b * c) % p


def trace(A: Matrix, p: int) -> int:
    return (A[0][0] + A[1][1]) % p


def inv(A: Matrix, p: int) -> Matrix:
    (a, b), (c, d) = A
    di = pow(det(A, p), -1, p)
    return mat(d * di, -b * di, -c * di, a * di, p)


def is_scalar(A: Matrix) -> bool:
    return A[0][1] == 0 and A[1][0] == 0 and A[0][0] == A[1][1]


def order(A: Matrix, p: int) -> int:
    """Multiplicative order of an invertible matrix (divides (p^2-1)(p^2-p))."""
    n = (p * p - 1) * (p * p - p)
    from sympy import factorint

    one = identity(p)
    for r, e in factorint(n).items():
        for _ in range(e):
            if power(A, n // r, p) == one:
                n //= r
            else:
                break
    return n


def power(A: Matrix, n: int, p: int) -> Matrix:
    R = identity(p)
    while n:
        if n & 1:
            R = mul(R, A, p)
        A = mul(A, A, p)
        n >>= 1
    return R


def conjugate(A: Matrix, B: Matrix, p: int) -> bool:
    """GL_2(F_p)-conjugacy: equal characteristic polynomial and both or
    neither scalar (the rational canonical form of a 2x2 matrix is fixed by
    these two data)."""
    if trace(A, p) != trace(B, p) or det(A, p) != det(B, p):
        return False
    return is_scalar(A) == is_scalar(B)


def all_invertible(p: int):
    for a, b, c, d in product(range(p), repeat=4):
        if (a * d - b * c) % p:
            yield ((a, b), (c, d))


def commutant_basis(A: Matrix, B: Matrix, p: int) -> list:
    """Basis of {M in M_2(F_p) : M B = A M} by Gaussian elimination."""
    # unknowns m = (m00, m01, m10, m11); equations (M B - A M)_{ij} = 0
    rows = []
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    # (MB)_{00} = m00 e + m01 g ; (AM)_{00} = a m00 + b m10
    rows.append([e - a, g, -b, 0])
    # (MB)_{01} = m00 f + m01 h ; (AM)_{01} = a m01 + b m11
    rows.append([f, h - a, 0, -b])
    # (MB)_{10} = m10 e + m11 g ; (AM)_{10} = c m00 + d m10
    rows.append([-c, 0, e - d, g])
    # (MB)_{11} = m10 f + m11 h ; (AM)_{11} = c m01 + d m11
    rows.append([0, -c, f, h - d])
    return _nullspace([[x % p for x in r] for r in rows], 4, p)


def _nullspace(rows, n, p):
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        iv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * iv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(((v[0], v[1]), (v[2], v[3])))
    return basis
