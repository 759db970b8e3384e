"""Grothendieck-class surrogates and the point-counting realization.

Three kinds of values are used:

* :class:`Fingerprint` - invariants of a fat point (distinguishes, never identifies);
* :class:`LValue` - exact rational functions in the Lefschetz symbol L;
* plain integers / fractions - point counts over F_q.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from . import linalg
from .errors import NotCertified, RingMismatch
from .fatpoints import FatPoint, fp_product
from .finite import FiniteAlgebra
from .ideals import Ideal, ideal_combine, length
from .motifs import ConstructibleMotif, whole

__all__ = [
    "Fingerprint", "LValue", "ClassExpr", "L", "fp_fingerprint", "point_count_scheme",
    "point_count_fat", "count_on_algebra", "inclusion_exclusion", "class_arith",
]

_Lsym = sympy.Symbol("L")


# ------------------------------------------------------------ fingerprints

@dataclass(frozen=True)
class Fingerprint:
    length: int
    embdim: int
    hilbert: tuple
    socle: int
    monomial_form: tuple | None = None

    def to_json(self) -> dict:
        return {"length": self.length, "embdim": self.embdim, "hilbert": list(self.hilbert),
                "socle": self.socle,
                "monomial_form": None if self.monomial_form is None else [list(e) for e in self.monomial_form]}


def _hilbert_function(fp: FatPoint) -> tuple:
    ring = fp.ring
    m = Ideal(ring, list(ring.gens))
    lens = [0]
    k = 1
    while lens[-1] < fp.length:
        mk = ideal_combine("power", m, n=k)
        lens.append(length(Ideal(ring, list(fp.ideal.generators) + list(mk.generators))))
        k += 1
    return tuple(b - a for a, b in zip(lens, lens[1:]))


def _socle_dim(fp: FatPoint) -> int:
    rows = []
    for v in fp.ring.gens:
        cols = [fp.staircase_vector(fp.ring.monomial(e) * v) for e in fp.std]
        rows.extend([[cols[j][i] for j in range(len(cols))] for i in range(fp.length)])
    return len(linalg.nullspace(rows, fp.field))


def _monomial_form(fp: FatPoint):
    gb = fp.gb
    if not all(len(g) == 1 for g in gb.elements):
        return None
    n = fp.ring.nvars
    best = None
    for perm in itertools.permutations(range(n)):
        form = tuple(sorted(tuple(e[i] for i in perm) for e in gb.leading_exps))
        if best is None or form < best:
            best = form
    return best


def fp_fingerprint(fp: FatPoint) -> Fingerprint:
    hf = _hilbert_function(fp)
    return Fingerprint(fp.length, hf[1] if len(hf) > 1 else 0, hf, _socle_dim(fp), _monomial_form(fp))


# ------------------------------------------------------------ L-values

class LValue:
    """Reduced fraction of integer polynomials in L."""

    __slots__ = ("num", "den")

    def __init__(self, value=0):
        expr = value.expr if isinstance(value, LValue) else sympy.sympify(value)
        n, d = sympy.fraction(sympy.cancel(sympy.together(expr)))
        pn = sympy.Poly(n, _Lsym, domain="QQ")
        pd = sympy.Poly(d, _Lsym, domain="QQ")
        if pd.is_zero:
            raise ZeroDivisionError("LValue with zero denominator")
        # clear rational content so both sides are primitive integer polynomials
        g = sympy.gcd(pn, pd)
        pn, pd = pn.quo(g), pd.quo(g)
        cn = math.lcm(*[int(sympy.Rational(c).q) for c in pn.all_coeffs() + pd.all_coeffs()])
        pn, pd = pn * cn, pd * cn
        cg = math.gcd(*[int(c) for c in pn.all_coeffs() + pd.all_coeffs()])
        pn, pd = pn.quo_ground(cg), pd.quo_ground(cg)
        if pd.LC() < 0:
            pn, pd = -pn, -pd
        self.num = tuple(int(c) for c in reversed(pn.all_coeffs())) if not pn.is_zero else (0,)
        self.den = tuple(int(c) for c in reversed(pd.all_coeffs()))

    @classmethod
    def from_coeffs(cls, num: Sequence[int], den: Sequence[int] = (1,)) -> "LValue":
        n = sum(int(c) * _Lsym ** i for i, c in enumerate(num))
        d = sum(int(c) * _Lsym ** i for i, c in enumerate(den))
        return cls(n / d)

    @classmethod
    def power(cls, k: int) -> "LValue":
        return cls(_Lsym ** k)

    @property
    def expr(self):
        n = sum(c * _Lsym ** i for i, c in enumerate(self.num))
        d = sum(c * _Lsym ** i for i, c in enumerate(self.den))
        return n / d

    def __add__(self, other):
        return LValue(self.expr + LValue(other).expr)

    __radd__ = __add__

    def __sub__(self, other):
        return LValue(self.expr - LValue(other).expr)

    def __rsub__(self, other):
        return LValue(LValue(other).expr - self.expr)

    def __mul__(self, other):
        return LValue(self.expr * LValue(other).expr)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return LValue(self.expr / LValue(other).expr)

    def __neg__(self):
        return LValue(-self.expr)

    def __pow__(self, k: int):
        return LValue(self.expr ** k)

    def __eq__(self, other):
        if not isinstance(other, LValue):
            try:
                other = LValue(other)
            except (sympy.SympifyError, TypeError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def at(self, q) -> Fraction:
        n = sum(Fraction(c) * Fraction(q) ** i for i, c in enumerate(self.num))
        d = sum(Fraction(c) * Fraction(q) ** i for i, c in enumerate(self.den))
        return n / d

    def monomial_exponent(self) -> int | None:
        """k if the value is L^k, else None."""
        if self.num.count(0) == len(self.num) - 1 and self.den.count(0) == len(self.den) - 1:
            if self.num[-1] == 1 and self.den[-1] == 1:
                return (len(self.num) - 1) - (len(self.den) - 1)
        return None

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    @classmethod
    def from_json(cls, obj) -> "LValue":
        return cls.from_coeffs(obj["num"], obj["den"])

    def __str__(self):
        return str(self.expr)

    def __repr__(self):
        return f"LValue({self})"


L = LValue(_Lsym)


# ------------------------------------------------------------ class expressions

class ClassExpr:
    """Value in one realization: "fingerprint", "L" or ("q", q)."""

    def __init__(self, realization, value):
        self.realization = realization
        self.value = value

    @classmethod
    def of_fat_point(cls, fp: FatPoint, coeff: int = 1) -> "ClassExpr":
        return cls("fingerprint", {fp_fingerprint(fp): (coeff, fp)})

    @classmethod
    def of_lvalue(cls, v) -> "ClassExpr":
        return cls("L", LValue(v))

    @classmethod
    def of_count(cls, q: int, n) -> "ClassExpr":
        return cls(("q", q), Fraction(n))

    def __eq__(self, other):
        if not isinstance(other, ClassExpr) or self.realization != other.realization:
            return NotImplemented
        if self.realization == "fingerprint":
            a = {k: v[0] for k, v in self.value.items() if v[0]}
            b = {k: v[0] for k, v in other.value.items() if v[0]}
            return a == b
        return self.value == other.value

    def __repr__(self):
        if self.realization == "fingerprint":
            return "ClassExpr(" + " + ".join(f"{c}*[{fp}]" for c, fp in self.value.values()) + ")"
        return f"ClassExpr({self.realization}, {self.value})"


def class_arith(op: str, a: ClassExpr, b: ClassExpr) -> ClassExpr:
    if a.realization != b.realization:
        raise RingMismatch(f"realizations {a.realization} and {b.realization} differ")
    r = a.realization
    if r != "fingerprint":
        if op == "add":
            return ClassExpr(r, a.value + b.value)
        if op == "sub":
            return ClassExpr(r, a.value - b.value)
        if op == "mul":
            return ClassExpr(r, a.value * b.value)
        raise ValueError(f"unknown op {op!r}")
    out = {}
    if op in ("add", "sub"):
        sign = 1 if op == "add" else -1
        for k, (c, fp) in a.value.items():
            out[k] = (c, fp)
        for k, (c, fp) in b.value.items():
            c0 = out.get(k, (0, fp))[0]
            out[k] = (c0 + sign * c, out.get(k, (0, fp))[1])
    elif op == "mul":
        for (c1, f1), (c2, f2) in itertools.product(a.value.values(), b.value.values()):
            prod = fp_product(f1, f2)
            k = fp_fingerprint(prod)
            c0 = out.get(k, (0, prod))[0]
            out[k] = (c0 + c1 * c2, out.get(k, (0, prod))[1])
    else:
        raise ValueError(f"unknown op {op!r}")
    return ClassExpr(r, {k: v for k, v in out.items() if v[0]})


# ------------------------------------------------------------ counting

def _as_motif(m) -> ConstructibleMotif:
    if isinstance(m, ConstructibleMotif):
        return m
    if isinstance(m, Ideal):
        return whole(m)
    if hasattr(m, "ideal") and isinstance(m.ideal, Ideal):   # ArcScheme
        return whole(m.ideal)
    raise TypeError(f"cannot count {type(m).__name__}")


def count_on_algebra(m, alg: FiniteAlgebra) -> int:
    """Number of tuples over ``alg`` satisfying the motif."""
    m = _as_motif(m)
    n = m.ring.nvars
    if n == 0:
        cols = []
        return int(m.mask(alg, cols).sum()) if m.clauses else 0
    total = 0
    for cols in alg.chunks(n):
        total += int(m.mask(alg, cols).sum())
    return total


def point_count_scheme(m, q: int) -> int:
    """Number of F_q-points of a scheme or constructible motif."""
    return count_on_algebra(m, FiniteAlgebra.field(q))


def point_count_fat(X, fp: FatPoint, q: int) -> int:
    """Number of R_q-points, R_q = F_q (x) (coordinate ring of fp)."""
    return count_on_algebra(X, FiniteAlgebra.from_fat_point(fp, q))


def inclusion_exclusion(pieces: Iterable[tuple], q: int | None = None):
    """Alternating sum over the nonempty index sets of an open cover.

    ``pieces`` holds (index set, value) where value is a scheme/motif (counted
    over F_q) or an already known number/LValue.  The set with |I| members
    contributes with sign (-1)^(|I|+1).
    """
    total = None
    for idx, val in pieces:
        k = len(tuple(idx))
        if k == 0:
            raise ValueError("index sets must be nonempty")
        if isinstance(val, (ConstructibleMotif, Ideal)) or hasattr(val, "ideal"):
            if q is None:
                raise NotCertified("symbolic class of a chart is unknown; give q")
            val = point_count_scheme(val, q)
        term = val if k % 2 else -val
        total = term if total is None else total + term
    return 0 if total is None else total
