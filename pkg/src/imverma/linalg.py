"""Gaussian elimination over the Scalar field (determinants, kernels)."""

from __future__ import annotations

from typing import List, Sequence

from .qcoeff import ONE, ZERO, Scalar


def _copy(rows: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    return [list(r) for r in rows]


def determinant(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    a = _copy(rows)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    det = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if not a[i][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        inv = p.inverse()
        for i in range(col + 1, n):
            if a[i][col].is_zero():
                continue
            f = a[i][col] * inv
            a[i] = [a[i][j] - f * a[col][j] if j >= col else a[i][j] for j in range(n)]
    return det


def row_echelon(rows: Sequence[Sequence[Scalar]], ncols: int):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    a = [r for r in _copy(rows) if any(not x.is_zero() for x in r)]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if not a[i][col].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][col].is_zero():
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> List[List[Scalar]]:
    """Basis of ``{x : rows @ x == 0}``, one vector per free column."""
    ech, pivots = row_echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for row, p in zip(ech, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis
