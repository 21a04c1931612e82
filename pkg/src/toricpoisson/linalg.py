"""Exact integer and Gaussian-rational matrix helpers."""

from __future__ import annotations

from typing import List, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix


def integer_kernel(A: Sequence[Sequence[int]]) -> List[List[int]]:
    """Z-basis of ``{x in Z^n : A x = 0}`` as a list of column vectors.

    Row-reduces ``[A^T | I]`` by unimodular integer row operations; the rows
    whose ``A^T`` part vanishes carry a basis of the kernel in their identity
    part.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [[A[r][c] for r in range(m)] + [int(c == j) for j in range(n)] for c in range(n)]
    pivot_row = 0
    for col in range(m):
        while True:
            nz = [r for r in range(pivot_row, n) if rows[r][col]]
            if not nz:
                break
            best = min(nz, key=lambda r: abs(rows[r][col]))
            rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
            piv = rows[pivot_row][col]
            done = True
            for r in range(pivot_row + 1, n):
                if rows[r][col]:
                    q = rows[r][col] // piv
                    rows[r] = [x - q * y for x, y in zip(rows[r], rows[pivot_row])]
                    if rows[r][col]:
                        done = False
            if done:
                pivot_row += 1
                break
    return [row[m:] for row in rows[pivot_row:]]


def column_hnf(columns: Sequence[Sequence[int]]) -> List[List[int]]:
    """Hermite normal form of the lattice spanned by ``columns`` (as rows of a matrix)."""
    M = Matrix([list(c) for c in columns]).T
    return hermite_normal_form(M).tolist()


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over ``Q(i)``; entries are ints, Fractions or QQ_I elements."""
    if not rows or not rows[0]:
        return 0
    from .polys import to_gq

    data = [[to_gq(x) for x in row] for row in rows]
    return DomainMatrix(data, (len(data), len(data[0])), QQ_I).rank()


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> List[List[int]]:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
