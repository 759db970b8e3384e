"""Exact sparse multivariate polynomials over QQ and prime fields.

A polynomial is an immutable map from exponent tuples to nonzero
coefficients.  Exponent tuples always have one slot per ring variable,
which keeps monomial comparison and hashing cheap.

Rationals are ``gmpy2.mpq``; prime-field residues are Python ints in
``[0, p)``.
"""
from __future__ import annotations

import dataclasses
import functools
import operator
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .errors import ParseError, RingMismatch

__all__ = [
    "QQ", "GF", "RationalField", "PrimeField", "PolyRing", "Polynomial",
    "MonomialOrder", "Lex", "GrevLex", "Block", "lex", "grevlex", "order_from_name",
    "poly_parse", "poly_arith", "poly_substitute", "mono_cmp",
]


# ---------------------------------------------------------------- fields

class RationalField:
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, str):
            return mpq(Fraction(x))
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    def div(self, a, b):
        return a / b

    def inv(self, a):
        return 1 / mpq(a)

    def norm(self, v):
        return v

    def to_fraction(self, a) -> Fraction:
        a = mpq(a)
        return Fraction(int(a.numerator), int(a.denominator))

    def format(self, c) -> str:
        c = mpq(c)
        if c.denominator == 1:
            return str(int(c.numerator))
        return f"{int(c.numerator)}/{int(c.denominator)}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    def __init__(self, p: int):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.p = p

    def __call__(self, x):
        p = self.p
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, int):
            return x % p
        num, den = int(x.numerator), int(x.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes modulo {p}")
        return num * pow(den, -1, p) % p

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def norm(self, v):
        return v % self.p

    def to_fraction(self, a) -> Fraction:
        return Fraction(a)

    def format(self, c) -> str:
        return str(c)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ------------------------------------------------------- monomial orders

class MonomialOrder:
    """Total multiplicative well-order on exponent tuples.

    ``key`` grows with the monomial; ``neg_key`` shrinks with it, which is
    what a min-heap wants.
    """

    def key(self, e):
        raise NotImplementedError

    def neg_key(self, e):
        raise NotImplementedError

    def cmp(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


@dataclasses.dataclass(frozen=True)
class Lex(MonomialOrder):
    def key(self, e):
        return e

    def neg_key(self, e):
        return tuple([-x for x in e])

    def __str__(self):
        return "lex"


@dataclasses.dataclass(frozen=True)
class GrevLex(MonomialOrder):
    def key(self, e):
        return (sum(e),) + tuple([-x for x in reversed(e)])

    def neg_key(self, e):
        return (-sum(e),) + tuple(reversed(e))

    def __str__(self):
        return "grevlex"


@dataclasses.dataclass(frozen=True)
class Block(MonomialOrder):
    """Block order: compare the first ``sizes[0]`` variables with the first
    inner order, ties broken by the next block, and so on."""

    sizes: tuple
    orders: tuple

    def __post_init__(self):
        if len(self.sizes) != len(self.orders):
            raise ValueError("one inner order per block")

    def _slices(self, e):
        start = 0
        for n in self.sizes:
            yield e[start:start + n]
            start += n

    def key(self, e):
        out = ()
        for part, o in zip(self._slices(e), self.orders):
            out += o.key(part)
        return out

    def neg_key(self, e):
        out = ()
        for part, o in zip(self._slices(e), self.orders):
            out += o.neg_key(part)
        return out

    def __str__(self):
        return "block(" + ", ".join(f"{n}:{o}" for n, o in zip(self.sizes, self.orders)) + ")"


lex = Lex()
grevlex = GrevLex()


def order_from_name(name: str) -> MonomialOrder:
    if name == "lex":
        return lex
    if name == "grevlex":
        return grevlex
    raise ValueError(f"unknown monomial order {name!r}")


def mono_cmp(order: MonomialOrder, a: Sequence[int], b: Sequence[int]) -> str:
    c = order.cmp(tuple(a), tuple(b))
    return {-1: "less", 0: "equal", 1: "greater"}[c]


# ------------------------------------------------------------------ rings

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_~]*\Z")


class PolyRing:
    """Polynomial ring over ``field`` in the named variables (value object)."""

    def __init__(self, names: Iterable[str], field=QQ):
        names = tuple(names)
        for n in names:
            if not _VAR_RE.match(n):
                raise ValueError(f"bad variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.field = field
        self.nvars = len(names)
        self.index = {n: i for i, n in enumerate(names)}
        self._zero_exp = (0,) * self.nvars
        self._hash = hash((names, field))

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.field!r})"

    # constructors
    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None
        return self.monomial(_unit(self.nvars, i))

    @property
    def gens(self) -> tuple:
        return tuple(self.var(n) for n in self.names)

    def monomial(self, exp, coeff=1) -> "Polynomial":
        return self.from_terms({tuple(exp): coeff})

    def from_terms(self, terms: Mapping) -> "Polynomial":
        f = self.field
        out = {}
        for e, c in terms.items():
            c = f(c)
            if c:
                e = tuple(e)
                if len(e) != self.nvars:
                    raise ValueError("exponent length does not match ring")
                out[e] = c
        return Polynomial(self, out)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise RingMismatch(f"{x.ring} vs {self}")
            return x
        if isinstance(x, str):
            return poly_parse(x, self)
        return self.const(x)

    def parse(self, text: str) -> "Polynomial":
        return poly_parse(text, self)

    # ring surgery
    def with_field(self, field) -> "PolyRing":
        return PolyRing(self.names, field)

    def extend(self, names: Iterable[str], front=False) -> "PolyRing":
        names = tuple(names)
        return PolyRing(names + self.names if front else self.names + names, self.field)

    def drop(self, names: Iterable[str]) -> "PolyRing":
        gone = set(names)
        return PolyRing([n for n in self.names if n not in gone], self.field)

    def fresh_name(self, base: str) -> str:
        name, k = base, 0
        while name in self.index:
            k += 1
            name = f"{base}{k}"
        return name


def _unit(n, i, k=1):
    e = [0] * n
    e[i] = k
    return tuple(e)



# ------------------------------------------------------------ polynomials

class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        # terms must already be clean: no zero coefficients, normalized
        self.ring = ring
        self.terms = terms
        self._hash = None

    # ---- basic protocol
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        return self.format()

    def __len__(self):
        return len(self.terms)

    # ---- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = norm(v + c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Polynomial(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero
            norm = self.ring.field.norm
            return Polynomial(self.ring, {e: norm(v * c) for e, v in self.terms.items()})
        other = self._coerce(other)
        norm = self.ring.field.norm
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(operator.add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return Polynomial(self.ring, {e: v for e, v in ((e, norm(v)) for e, v in out.items()) if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        return self * c

    # ---- inspection
    @property
    def field(self):
        return self.ring.field

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.ring.index[var]
        return max((e[i] for e in self.terms), default=-1)

    def support(self) -> set:
        """Indices of variables that occur."""
        s = set()
        for e in self.terms:
            s.update(i for i, k in enumerate(e) if k)
        return s

    def variables(self) -> tuple:
        return tuple(self.ring.names[i] for i in sorted(self.support()))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_exp(self, order: MonomialOrder):
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder):
        return self.terms[self.leading_exp(order)]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        return self * self.ring.field.inv(self.leading_coeff(order))

    def sorted_terms(self, order: MonomialOrder = grevlex):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # ---- substitution / evaluation
    def subs(self, assignment: Mapping, target: PolyRing | None = None) -> "Polynomial":
        return poly_substitute(self, assignment, target)

    def evaluate(self, point: Sequence):
        """Value at a point with coordinates in the coefficient field."""
        f = self.ring.field
        pt = [f(v) for v in point]
        total = f(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t = t * v ** k
            total = f.norm(total + t)
        return total

    def to_ring(self, ring: PolyRing, mapping: Mapping[str, str] | None = None) -> "Polynomial":
        """Re-embed into ``ring`` matching variables by name (optionally renamed)."""
        mapping = mapping or {}
        pos = []
        for i, name in enumerate(self.ring.names):
            target = mapping.get(name, name)
            pos.append(ring.index.get(target))
        n = ring.nvars
        src, dst = self.ring.field, ring.field
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    j = pos[i]
                    if j is None:
                        raise RingMismatch(f"variable {self.ring.names[i]!r} missing from {ring}")
                    ne[j] += k
            ne = tuple(ne)
            if src != dst:
                c = dst(src.to_fraction(c))
            out[ne] = out.get(ne, 0) + c
        return Polynomial(ring, {e: v for e, v in ((e, dst.norm(v)) for e, v in out.items()) if v})

    # ---- printing
    def format(self, order: MonomialOrder = grevlex) -> str:
        if not self.terms:
            return "0"
        fmt = self.ring.field.format
        names = self.ring.names
        pieces = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
            s = fmt(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out


# ------------------------------------------------------------ operations

def poly_arith(op: str, f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def poly_substitute(f: Polynomial, assignment: Mapping, target: PolyRing | None = None) -> Polynomial:
    """Compose ``f`` with ``assignment`` (variable name or index -> polynomial).

    Unassigned variables map to the same-named variable of the target ring
    and are an error if it has none.  Scalars are allowed as values when
    ``target`` is given or another value fixes the ring.
    """
    names = f.ring.names
    vals = {}
    for k, v in assignment.items():
        i = k if isinstance(k, int) else f.ring.index.get(k)
        if i is None:
            raise ValueError(f"unknown variable {k!r}")
        vals[i] = v
    if target is None:
        for v in vals.values():
            if isinstance(v, Polynomial):
                target = v.ring
                break
        else:
            target = f.ring
    for i in f.support():
        if i not in vals:
            if names[i] not in target.index:
                raise ValueError(f"variable {names[i]!r} is not assigned")
            vals[i] = target.var(names[i])
    vals = {i: target(v) for i, v in vals.items()}
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        p = powers.get(key)
        if p is None:
            p = vals[i] if k == 1 else power(i, k // 2) * power(i, k - k // 2)
            powers[key] = p
        return p

    src, dst = f.ring.field, target.field
    out = target.zero
    for e, c in f.terms.items():
        cc = c if src == dst else dst(src.to_fraction(c))
        if not cc:
            continue
        term = target.const(cc)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


# ----------------------------------------------------------------- parser

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_~]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            toks.append(("INT", int(m.group(1)), m.start(1)))
        elif m.group(2):
            toks.append(("VAR", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("EOF", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            raise ParseError(f"expected {kind}, found {t[1]!r}", t[2])
        self.i += 1
        return t

    def expr(self):
        neg = False
        if self.peek()[0] in "+-":
            neg = self.take()[0] == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or f.is_zero():
                    raise ParseError("division only by a nonzero constant", pos)
                acc = acc * self.ring.field.inv(f.constant_term())
        return acc

    def factor(self):
        base = self.atom()
        while self.peek()[0] == "^":
            self.take()
            t = self.take()
            if t[0] != "INT":
                raise ParseError("exponent must be a nonnegative integer", t[2])
            base = base ** t[1]
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "INT":
            return self.ring.const(val)
        if kind == "VAR":
            if val not in self.ring.index:
                raise ParseError(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if kind == "(":
            e = self.expr()
            self.take(")")
            return e
        if kind == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {val!r}", pos)


def poly_parse(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` into ``ring``; integers reduce modulo p in GF(p)."""
    p = _Parser(text, ring)
    if p.peek()[0] == "EOF":
        raise ParseError("empty expression", 0)
    out = p.expr()
    t = p.peek()
    if t[0] != "EOF":
        raise ParseError(f"trailing input {t[1]!r}", t[2])
    return out
