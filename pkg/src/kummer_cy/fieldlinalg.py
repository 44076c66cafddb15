"""Gauss-Jordan elimination over an exact field.

Works for any element type supporting + - * / and comparison with 0: Fraction,
Cyc (Q(mu)) and QBeta (Q(sqrt v)) all qualify.
"""

from __future__ import annotations


def _is_zero(x) -> bool:
    return x == 0


def rref(rows, zero, one):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [list(r) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if not _is_zero(M[i][c])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and not _is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def field_rank(rows, zero, one) -> int:
    return len(rref(rows, zero, one)[1])


def field_solve(A, B, zero, one):
    """Solve A X = B for square invertible A; B is a matrix (list of rows)."""
    n = len(A)
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    M, pivots = rref(aug, zero, one)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [row[n:] for row in M]


def field_inverse(A, zero, one):
    n = len(A)
    ident = [[one if i == j else zero for j in range(n)] for i in range(n)]
    return field_solve(A, ident, zero, one)


def matmul(A, B, zero):
    Bt = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in Bt:
            s = zero
            for a, b in zip(row, col):
                s = s + a * b
            new.append(s)
        out.append(new)
    return out
