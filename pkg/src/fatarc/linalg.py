"""Exact dense linear algebra over a coefficient field object."""
from __future__ import annotations

from typing import Sequence


def rref(rows: Sequence[Sequence], field):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [[field(v) for v in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    norm = field.norm
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [norm(v * inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, field) -> int:
    return len(rref(rows, field)[1])


def inverse(mat, field):
    n = len(mat)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    red, piv = rref(aug, field)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def mat_vec(mat, vec, field):
    norm = field.norm
    return [norm(sum((a * b for a, b in zip(row, vec)), field(0))) for row in mat]


def nullspace(rows, field):
    """Basis of {v : rows . v = 0}."""
    if not rows:
        return []
    red, piv = rref(rows, field)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for fcol in free:
        v = [field(0)] * ncols
        v[fcol] = field(1)
        for i, pc in enumerate(piv):
            v[pc] = field.norm(-red[i][fcol])
        out.append(v)
    return out
