"""Constructible motifs: boolean combinations of Closed and Cone atoms.

``Closed(J)`` holds at a point when every generator of J vanishes there;
``Cone(J)`` holds when the generators vanish at the point's center (its
residue).  Over a field the two coincide.  Motifs are stored in
disjunctive normal form over an ambient closed subscheme.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import RingMismatch
from .ideals import Ideal
from .polycore import PolyRing, Polynomial

__all__ = ["Atom", "Literal", "ConstructibleMotif", "closed", "cone", "whole", "empty"]


@dataclass(frozen=True)
class Atom:
    kind: str            # "closed" | "cone"
    gens: tuple          # Polynomials in the ambient ring

    def __post_init__(self):
        if self.kind not in ("closed", "cone"):
            raise ValueError(f"unknown atom kind {self.kind!r}")

    def sort_key(self):
        return (self.kind, tuple(str(g) for g in self.gens))

    def __str__(self):
        name = "Closed" if self.kind == "closed" else "Cone"
        return f"{name}(" + ", ".join(map(str, self.gens)) + ")"

    def mask(self, alg, cols, cache: dict) -> np.ndarray:
        key = ("atom", self)
        if key in cache:
            return cache[key]
        if self.kind == "cone":
            cols = cache.setdefault("residues", [alg.residue(c) for c in cols])
        n = len(cols[0]) if cols else 1
        ok = np.ones(n, dtype=bool)
        for g in self.gens:
            ok &= alg.evaluate(alg.compile(g), cols) == 0
        cache[key] = ok
        return ok


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def __invert__(self):
        return Literal(self.atom, not self.positive)

    def sort_key(self):
        return (self.atom.sort_key(), not self.positive)

    def __str__(self):
        return str(self.atom) if self.positive else f"not {self.atom}"


def _norm_clause(lits: Iterable[Literal]):
    s = set(lits)
    for l in s:
        if ~l in s:
            return None   # contradictory
    return tuple(sorted(s, key=Literal.sort_key))


class ConstructibleMotif:
    """A finite union of conjunctions of literals on V(ambient)."""

    def __init__(self, ambient: Ideal, clauses: Iterable[Iterable[Literal]] = ((),)):
        self.ambient = ambient
        norm = {c for c in (_norm_clause(cl) for cl in clauses) if c is not None}
        self.clauses = tuple(sorted(norm, key=lambda c: [l.sort_key() for l in c]))

    @property
    def ring(self) -> PolyRing:
        return self.ambient.ring

    def _check(self, other: "ConstructibleMotif"):
        if self.ring != other.ring:
            raise RingMismatch(f"motifs on {self.ring} and {other.ring}")

    def __or__(self, other):
        self._check(other)
        amb = self.ambient if self.ambient.generators == other.ambient.generators else None
        if amb is None:
            return _lift(self) | _lift(other)
        return ConstructibleMotif(amb, self.clauses + other.clauses)

    def __and__(self, other):
        self._check(other)
        if self.ambient.generators != other.ambient.generators:
            return _lift(self) & _lift(other)
        return ConstructibleMotif(self.ambient, [a + b for a in self.clauses for b in other.clauses])

    def __invert__(self):
        """Complement inside V(ambient)."""
        out = [()]
        for clause in self.clauses:
            out = [c + (~l,) for c in out for l in clause]
        return ConstructibleMotif(self.ambient, out)

    def __sub__(self, other):
        return self & ~other

    def atoms(self) -> list[Atom]:
        seen = {}
        for c in self.clauses:
            for l in c:
                seen[l.atom] = None
        return sorted(seen, key=Atom.sort_key)

    def is_empty_syntactically(self) -> bool:
        return not self.clauses

    def mask(self, alg, cols, cache: dict | None = None) -> np.ndarray:
        """Boolean mask of the tuples in ``cols`` lying on the motif."""
        cache = {} if cache is None else cache
        n = len(cols[0]) if cols else 1
        base = np.ones(n, dtype=bool)
        for g in self.ambient.generators:
            base &= alg.evaluate(alg.compile(g), cols) == 0
        out = np.zeros(n, dtype=bool)
        for clause in self.clauses:
            m = base.copy()
            for lit in clause:
                a = lit.atom.mask(alg, cols, cache)
                m &= a if lit.positive else ~a
            out |= m
        return out

    def __str__(self):
        if not self.clauses:
            return "empty"
        parts = []
        for c in self.clauses:
            parts.append(" and ".join(map(str, c)) if c else "all")
        body = " or ".join(f"({p})" if len(self.clauses) > 1 and " and " in p else p for p in parts)
        if self.ambient.generators:
            return f"{body} on V({', '.join(map(str, self.ambient.generators))})"
        return body

    __repr__ = __str__


def _lift(m: ConstructibleMotif) -> ConstructibleMotif:
    """Move the ambient condition into the clauses (ambient becomes the whole ring)."""
    amb = Ideal(m.ring, [])
    if not m.ambient.generators:
        return m
    lit = Literal(Atom("closed", m.ambient.generators))
    return ConstructibleMotif(amb, [c + (lit,) for c in m.clauses])


def _gens(ring: PolyRing, gens) -> tuple:
    if isinstance(gens, Ideal):
        gens = gens.generators
    if isinstance(gens, (str, Polynomial)):
        gens = [gens]
    return tuple(ring(g) for g in gens)


def whole(ambient: Ideal | PolyRing) -> ConstructibleMotif:
    if isinstance(ambient, PolyRing):
        ambient = Ideal(ambient, [])
    return ConstructibleMotif(ambient, [()])


def empty(ambient: Ideal | PolyRing) -> ConstructibleMotif:
    if isinstance(ambient, PolyRing):
        ambient = Ideal(ambient, [])
    return ConstructibleMotif(ambient, [])


def closed(ambient: Ideal | PolyRing, gens) -> ConstructibleMotif:
    if isinstance(ambient, PolyRing):
        ambient = Ideal(ambient, [])
    return ConstructibleMotif(ambient, [(Literal(Atom("closed", _gens(ambient.ring, gens))),)])


def cone(ambient: Ideal | PolyRing, gens) -> ConstructibleMotif:
    if isinstance(ambient, PolyRing):
        ambient = Ideal(ambient, [])
    return ConstructibleMotif(ambient, [(Literal(Atom("cone", _gens(ambient.ring, gens))),)])
