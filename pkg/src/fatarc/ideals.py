"""Groebner-basis kernel.

Buchberger's algorithm with sugar selection and the Gebauer-Moeller
criteria, plus the derived ideal operations: normal forms, membership,
radical membership, elimination, intersection, Krull dimension and
staircases.

Polynomials are handled internally as plain ``{exponent: coefficient}``
dicts; the public surface speaks :class:`~fatarc.polycore.Polynomial`.
"""
from __future__ import annotations

import heapq
import operator
from typing import Iterable, Sequence

from .config import get_limits
from .errors import InfiniteStaircase, ResourceLimitExceeded, RingMismatch
from .polycore import Block, MonomialOrder, PolyRing, Polynomial, grevlex, order_from_name

__all__ = [
    "Ideal", "GroebnerBasis", "Staircase", "groebner_basis", "normal_form",
    "ideal_membership", "radical_membership", "eliminate", "ideal_intersect",
    "ideal_combine", "krull_dim", "standard_monomials", "length", "is_unit_ideal",
    "ideals_equal", "kill_nilpotent_variables",
]

_add = operator.add


class _Elem:
    """A monic basis element with cached leading data."""

    __slots__ = ("lm", "pos", "terms", "tail", "sugar", "deg")

    def __init__(self, terms: dict, lm, sugar):
        self.terms = terms
        self.lm = lm
        self.pos = [(i, k) for i, k in enumerate(lm) if k]
        self.tail = [(e, c) for e, c in terms.items() if e != lm]
        self.sugar = sugar
        self.deg = sum(lm)


def _divides(pos, m) -> bool:
    for i, k in pos:
        if m[i] < k:
            return False
    return True


def _lcm(a, b):
    return tuple(map(max, a, b))


def _disjoint(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _mono_divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _reduce(f: dict, basis: Sequence[_Elem], order: MonomialOrder, field, top_only=False) -> dict:
    """Fully reduce ``f`` (a dict, consumed) by monic ``basis`` elements."""
    if not f or not basis:
        return f
    nkey = order.neg_key
    norm = field.norm
    heap = [(nkey(m), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        for g in basis:
            if _divides(g.pos, m):
                break
        else:
            rem[m] = c
            if top_only:
                rem.update(f)
                return rem
            continue
        shift = tuple(map(operator.sub, m, g.lm))
        for ge, gc in g.tail:
            nm = tuple(map(_add, ge, shift))
            v = f.get(nm)
            if v is None:
                f[nm] = norm(-c * gc)
                heapq.heappush(heap, (nkey(nm), nm))
            else:
                v = norm(v - c * gc)
                if v:
                    f[nm] = v
                else:
                    del f[nm]
    return rem


def _make_monic(f: dict, order: MonomialOrder, field):
    lm = max(f, key=order.key)
    c = f[lm]
    if c != 1:
        inv = field.inv(c)
        norm = field.norm
        f = {e: norm(v * inv) for e, v in f.items()}
    return f, lm


def _buchberger(polys: Sequence[dict], order: MonomialOrder, field) -> list[dict]:
    lim = get_limits()
    key = order.key
    norm = field.norm
    basis: list[_Elem] = []
    active: list[int] = []
    live: set = set()
    heap: list = []
    processed = 0

    def active_elems():
        return [basis[i] for i in active]

    def update(h: int):
        nonlocal active
        hl = basis[h].lm
        cands = list(active)
        kept = []
        while cands:
            g1 = cands.pop()
            g1l = basis[g1].lm
            if _disjoint(hl, g1l):
                kept.append(g1)
                continue
            l1 = _lcm(hl, g1l)
            if any(_mono_divides(_lcm(hl, basis[g2].lm), l1) for g2 in cands):
                continue
            if any(_mono_divides(_lcm(hl, basis[g2].lm), l1) for g2 in kept):
                continue
            kept.append(g1)
        for pair in list(live):
            g1, g2 = pair
            a, b = basis[g1].lm, basis[g2].lm
            l12 = _lcm(a, b)
            if _mono_divides(hl, l12) and _lcm(a, hl) != l12 and _lcm(hl, b) != l12:
                live.discard(pair)
        for g in kept:
            gl = basis[g].lm
            if _disjoint(hl, gl):
                continue
            l = _lcm(hl, gl)
            sug = max(basis[h].sugar + sum(l) - basis[h].deg, basis[g].sugar + sum(l) - basis[g].deg)
            pair = (g, h)
            live.add(pair)
            heapq.heappush(heap, (sug, key(l), g, h))
        active = [g for g in active if not _mono_divides(hl, basis[g].lm)] + [h]

    def insert(f: dict, sugar):
        f, lm = _make_monic(f, order, field)
        if sum(lm) > lim.max_gb_degree:
            raise ResourceLimitExceeded(f"Groebner degree budget {lim.max_gb_degree} exceeded")
        basis.append(_Elem(f, lm, sugar))
        update(len(basis) - 1)

    for f in sorted(polys, key=lambda p: key(max(p, key=key))):
        if not f:
            continue
        r = _reduce(dict(f), active_elems(), order, field)
        if r:
            insert(r, max(sum(e) for e in f))
            if not any(basis[-1].lm):
                return [{basis[-1].lm: field(1)}]

    while heap:
        sug, _, i, j = heapq.heappop(heap)
        if (i, j) not in live:
            continue
        live.discard((i, j))
        processed += 1
        if processed > lim.max_gb_pairs:
            raise ResourceLimitExceeded(f"Groebner pair budget {lim.max_gb_pairs} exceeded")
        a, b = basis[i], basis[j]
        l = _lcm(a.lm, b.lm)
        sa = tuple(map(operator.sub, l, a.lm))
        sb = tuple(map(operator.sub, l, b.lm))
        s = {}
        for e, c in a.tail:
            s[tuple(map(_add, e, sa))] = c
        for e, c in b.tail:
            ne = tuple(map(_add, e, sb))
            v = norm(s.get(ne, 0) - c)
            if v:
                s[ne] = v
            else:
                s.pop(ne, None)
        r = _reduce(s, active_elems(), order, field)
        if r:
            insert(r, sug)
            if not any(basis[-1].lm):
                return [{basis[-1].lm: field(1)}]

    # interreduce the minimal basis
    elems = active_elems()
    out = []
    for g in elems:
        others = [h for h in elems if h is not g]
        tail = _reduce(dict(g.tail), others, order, field)
        tail[g.lm] = field(1)
        out.append(tail)
    out.sort(key=lambda p: key(max(p, key=key)))
    return out


# ------------------------------------------------------------------ types

class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed monomial order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, elements: list[dict]):
        self.ring = ring
        self.order = order
        self._raw = elements
        self.elements = tuple(Polynomial(ring, dict(e)) for e in elements)
        self.leading_exps = tuple(max(e, key=order.key) for e in elements)
        self._elems = [_Elem(dict(e), lm, 0) for e, lm in zip(elements, self.leading_exps)]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_unit(self) -> bool:
        return len(self.leading_exps) == 1 and not any(self.leading_exps[0])

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        return Polynomial(self.ring, _reduce(dict(f.terms), self._elems, self.order, self.ring.field))

    def leading_monomials(self) -> list[Polynomial]:
        return [self.ring.monomial(e) for e in self.leading_exps]

    def __repr__(self):
        return f"GroebnerBasis({self.order}, [{', '.join(map(str, self.elements))}])"


class Ideal:
    """Finitely generated ideal with a write-once Groebner cache per order."""

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        gens = []
        seen = set()
        for g in generators:
            g = ring(g)
            if g and g not in seen:
                seen.add(g)
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: dict = {}

    @classmethod
    def parse(cls, ring: PolyRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    def __repr__(self):
        return f"Ideal<{', '.join(map(str, self.generators)) or '0'}>"

    def __str__(self):
        return "<" + (", ".join(map(str, self.generators)) or "0") + ">"

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        if order is None:
            order = order_from_name(get_limits().order)
        gb = self._gb.get(order)
        if gb is None:
            raw = _buchberger([g.terms for g in self.generators], order, self.ring.field)
            gb = self._gb.setdefault(order, GroebnerBasis(self.ring, order, raw))
        return gb

    def __contains__(self, f) -> bool:
        return ideal_membership(self.ring(f), self)

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_combine("sum", self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_combine("product", self, other)

    def to_ring(self, ring: PolyRing, mapping=None) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring, mapping) for g in self.generators])

    def subs(self, assignment, target: PolyRing | None = None) -> "Ideal":
        target = target or self.ring
        return Ideal(target, [g.subs(assignment, target) for g in self.generators])


def _as_ideal(I, ring=None) -> Ideal:
    if isinstance(I, Ideal):
        return I
    I = list(I)
    if ring is None:
        ring = I[0].ring
    return Ideal(ring, I)


# -------------------------------------------------------------- operations

def groebner_basis(I: Ideal, order: MonomialOrder | None = None) -> GroebnerBasis:
    gb = I.groebner(order)
    # re-verify membership of the input generators
    for g in I.generators:
        if gb.reduce(g):
            raise AssertionError(f"generator {g} not reduced to zero by its own Groebner basis")
    return gb


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(f)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if I.is_zero():
        return f.is_zero()
    return not I.groebner().reduce(f)


def is_unit_ideal(I: Ideal) -> bool:
    if I.is_zero():
        return False
    return I.groebner().is_unit()


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    """Equality by mutual membership of generators."""
    return all(ideal_membership(g, J) for g in I.generators) and all(
        ideal_membership(g, I) for g in J.generators)


def kill_nilpotent_variables(gens: Sequence[Polynomial]):
    """Repeatedly find generators ``c * v^k`` and set ``v = 0``.

    Such a variable lies in the radical, so the radical (hence dimension and
    radical membership) is unchanged by substituting it away.  Returns the
    set of killed variable indices, the surviving nonzero generators (still
    in the original ring) and a flag telling whether a nonzero constant
    showed up (unit ideal).
    """
    killed: set = set()
    cur = [dict(g.terms) for g in gens if g]
    ring = gens[0].ring if gens else None
    while True:
        hit = None
        for t in cur:
            if len(t) == 1:
                (e,) = t
                nz = [i for i, k in enumerate(e) if k]
                if not nz:
                    return killed, [], True
                if len(nz) == 1:
                    hit = nz[0]
                    break
        if hit is None:
            break
        killed.add(hit)
        nxt = []
        for t in cur:
            t2 = {e: c for e, c in t.items() if not e[hit]}
            if t2:
                nxt.append(t2)
        cur = nxt
    return killed, [Polynomial(ring, t) for t in cur], False


def _restrict(polys: Sequence[Polynomial], killed: set, ring: PolyRing):
    """Drop killed variables (assumed absent) and move into the smaller ring."""
    names = [n for i, n in enumerate(ring.names) if i not in killed]
    sub = PolyRing(names, ring.field)
    keep = [i for i in range(ring.nvars) if i not in killed]
    out = []
    for p in polys:
        out.append(Polynomial(sub, {tuple(e[i] for i in keep): c for e, c in p.terms.items()}))
    return sub, out


def _zero_out(f: Polynomial, killed: set) -> Polynomial:
    return Polynomial(f.ring, {e: c for e, c in f.terms.items() if not any(e[i] for i in killed)})


def radical_membership(f: Polynomial, I: Ideal, power_tries: int = 3) -> bool:
    """``f`` in the radical of ``I`` (Rabinowitsch trick after cheap checks)."""
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    killed, gens, unit = kill_nilpotent_variables(I.generators)
    if unit:
        return True
    f = _zero_out(f, killed)
    if not f:
        return True
    if not gens:
        return False
    sub, rest = _restrict(list(gens) + [f], killed, I.ring)
    J = Ideal(sub, rest[:-1])
    g = rest[-1]
    gb = J.groebner(grevlex)
    if gb.is_unit():
        return True
    power = g
    for _ in range(power_tries):
        if not gb.reduce(power):
            return True
        power = power * g
    t = sub.fresh_name("t")
    ext = sub.extend([t])
    tv = ext.var(t)
    gens_ext = [h.to_ring(ext) for h in J.generators] + [ext.one - tv * g.to_ring(ext)]
    return is_unit_ideal(Ideal(ext, gens_ext))


def eliminate(I: Ideal, drop: Iterable[str]) -> Ideal:
    """``I`` intersected with the subring on the surviving variables."""
    drop = [v for v in drop]
    for v in drop:
        if v not in I.ring.index:
            raise ValueError(f"unknown variable {v!r}")
    if not drop:
        return I
    keep = [n for n in I.ring.names if n not in set(drop)]
    work = PolyRing(list(drop) + keep, I.ring.field)
    order = Block((len(drop), len(keep)), (grevlex, grevlex))
    J = Ideal(work, [g.to_ring(work) for g in I.generators])
    gb = J.groebner(order)
    target = PolyRing(keep, I.ring.field)
    nd = len(drop)
    out = []
    for g, lm in zip(gb.elements, gb.leading_exps):
        if not any(lm[:nd]):
            out.append(g.to_ring(target))
    return Ideal(target, out)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    t = ring.fresh_name("t")
    ext = ring.extend([t], front=True)
    tv = ext.var(t)
    gens = [tv * g.to_ring(ext) for g in I.generators]
    gens += [(ext.one - tv) * g.to_ring(ext) for g in J.generators]
    res = eliminate(Ideal(ext, gens), [t])
    return Ideal(ring, [g.to_ring(ring) for g in res.generators])


def ideal_combine(mode: str, I: Ideal, J: Ideal | None = None, n: int | None = None) -> Ideal:
    ring = I.ring
    if J is not None and J.ring != ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    if mode == "sum":
        return Ideal(ring, I.generators + J.generators)
    if mode == "product":
        return Ideal(ring, [a * b for a in I.generators for b in J.generators])
    if mode == "power":
        if n is None or n < 1:
            raise ValueError("power needs n >= 1")
        out = I
        for _ in range(n - 1):
            out = Ideal(ring, [a * b for a in out.generators for b in I.generators])
        return out
    raise ValueError(f"unknown mode {mode!r}")


def _min_hitting_set(supports: list[int], bound: int) -> int:
    """Smallest set of variables meeting every support bitmask."""
    supports = sorted(set(supports), key=lambda s: bin(s).count("1"))
    best = [bound]

    def rec(chosen: int, size: int):
        if size >= best[0]:
            return
        for s in supports:
            if not s & chosen:
                bit = s
                while bit:
                    low = bit & -bit
                    rec(chosen | low, size + 1)
                    bit ^= low
                return
        best[0] = size

    rec(0, 0)
    return best[0]


def _dim_from_leading(lead: Sequence[tuple], nvars: int) -> int:
    supports = []
    for e in lead:
        mask = 0
        for i, k in enumerate(e):
            if k:
                mask |= 1 << i
        if mask == 0:
            return -1
        supports.append(mask)
    if not supports:
        return nvars
    return nvars - _min_hitting_set(supports, nvars)


def krull_dim(I: Ideal) -> int:
    """Krull dimension of the quotient ring (-1 for the unit ideal).

    Variables with a pure-power generator are nilpotent and are substituted
    away first; the dimension of the remaining ideal is read off the
    leading-term ideal of a grevlex basis.
    """
    killed, gens, unit = kill_nilpotent_variables(I.generators)
    if unit:
        return -1
    if not gens:
        return I.ring.nvars - len(killed)
    sub, rest = _restrict(gens, killed, I.ring)
    gb = Ideal(sub, rest).groebner(grevlex)
    return _dim_from_leading(gb.leading_exps, sub.nvars)


def krull_dim_plain(I: Ideal) -> int:
    """Same as :func:`krull_dim` without the nilpotent shortcut (for testing)."""
    if I.is_zero():
        return I.ring.nvars
    return _dim_from_leading(I.groebner(grevlex).leading_exps, I.ring.nvars)


class Staircase:
    """Monomials outside a leading-term ideal."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, leading_exps: Sequence[tuple]):
        self.ring = ring
        self.order = order
        self.leading_exps = tuple(leading_exps)
        self._pos = [[(i, k) for i, k in enumerate(e) if k] for e in self.leading_exps]
        self._mons = None

    def is_standard(self, e) -> bool:
        return not any(_divides(p, e) for p in self._pos)

    def is_finite(self) -> bool:
        if any(not p for p in self._pos):
            return True
        pure = {p[0][0] for p in self._pos if len(p) == 1}
        return len(pure) == self.ring.nvars

    def monomials(self) -> list[tuple]:
        """Standard exponents, sorted increasingly by the order."""
        if self._mons is None:
            if not self.is_finite():
                raise InfiniteStaircase("quotient is not finite-dimensional")
            n = self.ring.nvars
            zero = (0,) * n
            if not self.is_standard(zero):
                self._mons = []
                return self._mons
            seen = {zero}
            frontier = [zero]
            while frontier:
                nxt = []
                for e in frontier:
                    for i in range(n):
                        f = e[:i] + (e[i] + 1,) + e[i + 1:]
                        if f not in seen and self.is_standard(f):
                            seen.add(f)
                            nxt.append(f)
                frontier = nxt
            self._mons = sorted(seen, key=self.order.key)
        return self._mons

    def __len__(self):
        return len(self.monomials())

    def __iter__(self):
        return iter(self.monomials())

    def by_degree(self) -> list[int]:
        counts: dict = {}
        for e in self.monomials():
            counts[sum(e)] = counts.get(sum(e), 0) + 1
        return [counts.get(d, 0) for d in range(max(counts, default=-1) + 1)]


def standard_monomials(I: Ideal, order: MonomialOrder | None = None) -> Staircase:
    order = order or grevlex
    if I.is_zero():
        return Staircase(I.ring, order, [])
    gb = I.groebner(order)
    return Staircase(I.ring, order, gb.leading_exps)


def length(I: Ideal) -> int:
    """Vector-space dimension of the quotient; raises for infinite staircases."""
    return len(standard_monomials(I))
