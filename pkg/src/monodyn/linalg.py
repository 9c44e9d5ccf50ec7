"""Exact integer linear algebra: characteristic polynomial and rank."""

from __future__ import annotations

from typing import Sequence

Matrix = Sequence[Sequence[int]]


def charpoly(a: Matrix) -> list[int]:
    """Coefficients of det(lambda I - A), highest degree first.

    Berkowitz's division-free recurrence: the characteristic polynomial of each
    leading principal submatrix is a Toeplitz matrix times the previous one.
    """
    n = len(a)
    poly = [1]
    for k in range(n):
        # A_{k+1} = [[A_k, c], [r, a_kk]]
        r = [a[k][j] for j in range(k)]
        c = [a[i][k] for i in range(k)]
        col = [1, -a[k][k]]
        v = c
        for _ in range(k):
            col.append(-sum(x * y for x, y in zip(r, v)))
            v = [sum(a[i][j] * v[j] for j in range(k)) for i in range(k)]
        # lower-triangular Toeplitz (k+2) x (k+1) applied to poly
        poly = [sum(col[i - j] * poly[j] for j in range(min(i, k) + 1) if i - j < len(col)) for i in range(k + 2)]
    return poly


def rank(a: Matrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def root_multiplicity(poly: list[int], root: int) -> int:
    """Multiplicity of an integer root, by repeated synthetic division."""
    p = list(poly)
    mult = 0
    while len(p) > 1:
        q = [p[0]]
        for coef in p[1:]:
            q.append(coef + root * q[-1])
        if q[-1] != 0:
            break
        p = q[:-1]
        mult += 1
    return mult


def poly_from_roots(roots: dict[int, int]) -> list[int]:
    """Monic integer polynomial with the given root multiplicities."""
    poly = [1]
    for root, mult in roots.items():
        for _ in range(mult):
            poly = [x - root * y for x, y in zip(poly + [0], [0] + poly)]
    return poly
