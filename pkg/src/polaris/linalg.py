"""Gaussian elimination over exact fields.

Entries may be GaussianRational or RationalFunction; anything with field
operations and truthiness-as-nonzero works.
"""

from __future__ import annotations

from typing import List, Sequence


def _copy(M):
    return [list(r) for r in M]


def row_echelon(M):
    """Return (echelon matrix, pivot columns)."""
    A = _copy(M)
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M) -> int:
    return len(row_echelon(M)[1]) if M else 0


def det(M):
    n = len(M)
    A = _copy(M)
    sign = 1
    out = None
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return A[0][0] * 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        piv = A[c][c]
        out = piv if out is None else out * piv
        inv = 1 / piv
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    if out is None:
        return 1
    return out if sign == 1 else -out


def nullspace(M, ncols: int = None) -> List[list]:
    """Basis of ``{v : M v = 0}``."""
    if not M:
        raise ValueError("nullspace of an empty matrix needs ncols")
    A, pivots = row_echelon(M)
    cols = len(M[0])
    zero = M[0][0] * 0
    one = zero + 1
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        v = [zero] * cols
        v[free] = one
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][free]
        basis.append(v)
    return basis


def solve(M, b):
    """Unique solution of the square system ``M x = b``."""
    n = len(M)
    aug = [list(r) + [bi] for r, bi in zip(M, b)]
    A, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [A[i][n] for i in range(n)]


def transpose(M: Sequence[Sequence]):
    return [list(r) for r in zip(*M)]
