"""Independent oracles that share no code with the library's algebra."""
import itertools
from fractions import Fraction


def rank_mod_p(rows, p):
    rows = [r[:] for r in rows]
    rank, col, ncols = 0, 0, len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def hk_oracle(f_terms: dict, p: int, n: int) -> int:
    """Length of k[x,y]/(f, x^q, y^q), q = p^n, by a rank count in k[x,y]/(x^q, y^q)."""
    q = p ** n
    basis = [(a, b) for a in range(q) for b in range(q)]
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for (a, b) in basis:
        row = [0] * len(basis)
        for (i, j), c in f_terms.items():
            if a + i < q and b + j < q:
                row[index[(a + i, b + j)]] = (row[index[(a + i, b + j)]] + c) % p
        rows.append(row)
    return q * q - rank_mod_p(rows, p)


def brute_count(polys, p, nvars):
    """F_p-points of V(polys) by plain Python loops."""
    n = 0
    for pt in itertools.product(range(p), repeat=nvars):
        if all(int(f.evaluate([Fraction(c) for c in pt])) % p == 0 for f in polys):
            n += 1
    return n
