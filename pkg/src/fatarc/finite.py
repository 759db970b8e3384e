"""Finite fields GF(q) and finite algebras F_q (x) R used for point counting.

Elements are encoded as integers so that addition and multiplication are
table lookups; polynomials are then evaluated with numpy over whole
blocks of candidate tuples at once.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .config import get_limits
from .errors import CharacteristicError, ResourceLimitExceeded

__all__ = ["FiniteField", "FiniteAlgebra", "finite_field", "split_prime_power", "to_prime_field"]

_CHUNK = 1 << 18


def split_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def to_prime_field(c, p: int) -> int:
    """Reduce an exact rational (or integer residue) modulo p."""
    fr = Fraction(int(c.numerator), int(c.denominator)) if hasattr(c, "denominator") else Fraction(int(c))
    if fr.denominator % p == 0:
        raise CharacteristicError(f"coefficient {fr} is not defined in characteristic {p}")
    return fr.numerator * pow(fr.denominator, -1, p) % p


def _poly_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    e = len(mod) - 1
    for d in range(len(out) - 1, e - 1, -1):
        c = out[d]
        if c:
            for k in range(e + 1):
                out[d - e + k] = (out[d - e + k] - c * mod[k]) % p
    return (out + [0] * e)[:e]


def _irreducible(p: int, e: int) -> list[int]:
    """Monic irreducible polynomial of degree e over F_p (coefficients ascending)."""
    if e == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=e):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        # no roots and no factor of degree <= e/2: brute force over monic divisors
        ok = True
        for d in range(1, e // 2 + 1):
            for dt in itertools.product(range(p), repeat=d):
                div = list(dt) + [1]
                r = list(poly)
                for k in range(len(r) - 1, d - 1, -1):
                    c = r[k]
                    if c:
                        for j in range(d + 1):
                            r[k - d + j] = (r[k - d + j] - c * div[j]) % p
                if not any(r[:d]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return poly
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """GF(p^e) with elements 0..q-1 (base-p digits are polynomial coefficients)."""

    def __init__(self, q: int):
        p, e = split_prime_power(q)
        self.q, self.p, self.e = q, p, e
        self.modulus = _irreducible(p, e)
        digits = [[(x // p ** i) % p for i in range(e)] for x in range(q)]
        enc = lambda d: sum(c * p ** i for i, c in enumerate(d))
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = enc([(x + y) % p for x, y in zip(digits[a], digits[b])])
                mul[a, b] = enc(_poly_mulmod(digits[a], digits[b], self.modulus, p))
        self.add, self.mul = add, mul
        self.neg = np.array([enc([(-x) % p for x in d]) for d in digits], dtype=np.int64)

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    return FiniteField(q)


class FiniteAlgebra:
    """F_q^l with multiplication given by structure constants in F_p.

    Encoding: sum_i d_i q^i with digit d_i the coordinate on basis element
    i; basis element 0 must be the unit, so scalars encode as themselves and
    the residue of an element is its lowest digit.
    """

    def __init__(self, q: int, length: int, structure, name: str = ""):
        self.F = finite_field(q)
        self.q, self.p, self.l = q, self.F.p, length
        self.name = name
        N = q ** length
        self.size = N
        if N * N > 50_000_000:
            raise ResourceLimitExceeded(f"finite algebra of size {N} is too large to tabulate")
        codes = np.arange(N, dtype=np.int64)
        D = np.stack([(codes // q ** i) % q for i in range(length)], axis=1)
        self.digits = D
        F = self.F
        A = np.repeat(D[:, None, :], N, axis=1)
        B = np.repeat(D[None, :, :], N, axis=0)
        sumd = F.add[A, B]
        weights = q ** np.arange(length, dtype=np.int64)
        self.add = (sumd * weights).sum(axis=2)
        acc = np.zeros((N, N, length), dtype=np.int64)
        for a in range(length):
            for b in range(length):
                entries = structure[a][b]
                if not entries:
                    continue
                prod = F.mul[A[:, :, a], B[:, :, b]]
                for c, k in entries:
                    kk = to_prime_field(k, self.p)
                    if kk:
                        acc[:, :, c] = F.add[acc[:, :, c], F.mul[prod, kk]]
        self.mul = (acc * weights).sum(axis=2)
        self.neg = (F.neg[D] * weights).sum(axis=1)
        self._pow = {0: np.full(N, 1, dtype=np.int64), 1: codes}

    @classmethod
    def field(cls, q: int) -> "FiniteAlgebra":
        return cls(q, 1, [[[(0, 1)]]], name=f"F{q}")

    @classmethod
    def from_fat_point(cls, fp, q: int) -> "FiniteAlgebra":
        return cls(q, fp.length, fp.structure, name=f"{fp}@{q}")

    def __repr__(self):
        return f"FiniteAlgebra(q={self.q}, l={self.l})"

    def power_table(self, k: int) -> np.ndarray:
        if k not in self._pow:
            base = self.power_table(k // 2)
            t = self.mul[base, base]
            if k % 2:
                t = self.mul[t, self._pow[1]]
            self._pow[k] = t
        return self._pow[k]

    def scalar(self, c) -> int:
        return to_prime_field(c, self.p)

    def residue(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.q

    def units(self) -> np.ndarray:
        return self.residue(np.arange(self.size)) != 0

    def budget(self, nvars: int) -> int:
        total = self.size ** nvars
        lim = get_limits().max_enumeration
        if total > lim:
            raise ResourceLimitExceeded(
                f"enumeration of {total} tuples over {self} exceeds budget {lim}")
        return total

    def chunks(self, nvars: int):
        """Yield arrays (nvars x chunk) covering every tuple of elements."""
        total = self.budget(nvars)
        N = self.size
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            cols = []
            for _ in range(nvars):
                cols.append(idx % N)
                idx = idx // N
            yield cols

    def compile(self, f) -> list:
        """Terms of ``f`` as (encoded coefficient, [(var, exponent)])."""
        out = []
        for e, c in f.terms.items():
            cc = self.scalar(c)
            if cc:
                out.append((cc, [(i, k) for i, k in enumerate(e) if k]))
        return out

    def evaluate(self, compiled, cols) -> np.ndarray:
        n = len(cols[0]) if cols else 1
        acc = np.zeros(n, dtype=np.int64)
        for c, factors in compiled:
            mono = None
            for i, k in factors:
                v = self.power_table(k)[cols[i]]
                mono = v if mono is None else self.mul[mono, v]
            if mono is None:
                mono = np.full(n, c, dtype=np.int64)
            elif c != 1:
                mono = self.mul[c, mono]
            acc = self.add[acc, mono]
        return acc
