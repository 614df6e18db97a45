"""Exact Gaussian elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)


def rref(rows, n_cols):
    """Reduced row echelon form of ``rows``; returns ``(matrix, pivot_columns)``."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows, n_cols):
    return len(rref(rows, n_cols)[1])


def nullspace(rows, n_cols):
    """Basis of ``{x : rows @ x = 0}`` as a list of tuples."""
    mat, pivots = rref(rows, n_cols)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [_ZERO] * n_cols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -mat[i][f]
        basis.append(tuple(vec))
    return basis


def solve_affine(rows, rhs, n_cols):
    """Parametrize ``{x : rows @ x = rhs}`` as ``x0 + N z``.

    Returns ``(x0, basis)`` or ``None`` when the system is inconsistent.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    mat, pivots = rref(aug, n_cols + 1)
    if n_cols in pivots:
        return None
    x0 = [_ZERO] * n_cols
    for i, p in enumerate(pivots):
        x0[p] = mat[i][n_cols]
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [_ZERO] * n_cols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -mat[i][f]
        basis.append(tuple(vec))
    return tuple(x0), basis
