"""Positive-characteristic operations: bracket powers and Frobenius transforms."""
from __future__ import annotations

import numpy as np

from .errors import CharacteristicError, ContainmentError
from .fatpoints import FatPoint
from .finite import FiniteAlgebra, split_prime_power
from .ideals import Ideal, ideal_membership
from .motifs import whole

__all__ = ["bracket_power", "frobenius_transform", "relative_frobenius_map",
           "frobenius_adjunction_counts"]


def _char(ring, p: int | None = None) -> int:
    c = ring.field.characteristic
    if c == 0 and p is None:
        raise CharacteristicError("Frobenius operations need a prime field (use --char p)")
    if p is not None and c not in (0, p):
        raise CharacteristicError(f"ring has characteristic {c}, not {p}")
    return p or c


def bracket_power(I: Ideal, n: int = 1) -> Ideal:
    """I^[p^n]: generated by the p^n-th powers of the generators."""
    p = _char(I.ring)
    if n < 0:
        raise ValueError("n must be nonnegative")
    e = p ** n
    return Ideal(I.ring, [g ** e for g in I.generators])


def frobenius_transform(Y: Ideal, X: Ideal, n: int = 1) -> Ideal:
    """Y^[n]_X = I_X + (generators of I_Y)^[p^n]; n = 0 returns Y."""
    p = _char(Y.ring)
    if Y.ring != X.ring:
        raise ContainmentError("Y and X live in different rings")
    for g in X.generators:
        if not ideal_membership(g, Y):
            raise ContainmentError(f"{g} lies in I_X but not in I_Y")
    if n == 0:
        return Y
    lifted = [g for g in Y.generators if not ideal_membership(g, X)]
    e = p ** n
    return Ideal(Y.ring, list(X.generators) + [g ** e for g in lifted])


def relative_frobenius_map(Y: Ideal, p: int | None = None):
    """Transform ideal (f_i(x^p)) and the map x -> x^p as a dict of images."""
    p = _char(Y.ring, p)
    ring = Y.ring
    images = {v: ring.var(v) ** p for v in ring.names}
    return Ideal(ring, [g.subs(images) for g in Y.generators]), images


def frobenius_adjunction_counts(Y: Ideal, fp: FatPoint, q: int) -> tuple[int, int]:
    """(lhs, rhs) for the Frobenius adjunction on R_q = F_q (x) R.

    lhs: distinct coordinatewise p-th powers of the R_q-solutions of the
    relative Frobenius transform.  rhs: R_q^p-points of Y, found by brute
    force over the subring of p-th powers.
    """
    p, _ = split_prime_power(q)
    transform, _ = relative_frobenius_map(Y, p)
    alg = FiniteAlgebra.from_fat_point(fp, q)
    n = Y.ring.nvars
    frob = alg.power_table(p)
    N = alg.size
    images = set()
    for cols in alg.chunks(n):
        mask = whole(transform).mask(alg, cols)
        code = np.zeros(int(mask.sum()), dtype=np.int64)
        for c in reversed(cols):
            code = code * N + frob[c[mask]]
        images.update(code.tolist())
    lhs = len(images)

    sub = np.unique(frob)
    rhs = 0
    total = len(sub) ** n
    alg.budget(n)
    for start in range(0, total, 1 << 18):
        idx = np.arange(start, min(total, start + (1 << 18)), dtype=np.int64)
        cols = []
        for _ in range(n):
            cols.append(sub[idx % len(sub)])
            idx //= len(sub)
        rhs += int(whole(Y).mask(alg, cols).sum())
    return lhs, rhs
