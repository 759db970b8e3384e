"""Split motivic integration of step functions.

A :class:`StepFunction` fixes a list of atoms on the ambient scheme and
assigns a value to each full sign vector over those atoms.  Distinct sign
vectors give disjoint cells, so disjointness holds by construction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arcs import arc_motif, arc_scheme, coordinate_affine
from .classes import LValue
from .errors import NotCertified, RingMismatch
from .fatpoints import FatPoint
from .finite import FiniteAlgebra
from .ideals import Ideal, krull_dim
from .motifs import Atom, ConstructibleMotif, Literal

__all__ = ["StepFunction", "char_function", "constant", "step_combine", "integrate",
           "integrate_local", "LocalIntegral"]


def _truth(m: ConstructibleMotif, assignment: dict) -> bool:
    return any(all(assignment[l.atom] == l.positive for l in c) for c in m.clauses)


class StepFunction:
    def __init__(self, ambient: Ideal, atoms: Sequence[Atom], cells: dict, dim: int | None = None):
        self.ambient = ambient
        self.atoms = tuple(atoms)
        self.cells = {k: v for k, v in cells.items() if v != 0}
        self.dim = krull_dim(ambient) if dim is None else dim

    @property
    def ring(self):
        return self.ambient.ring

    def fibers(self) -> list[tuple]:
        """(value, motif) pairs; motifs are pairwise disjoint."""
        out = []
        for signs, v in sorted(self.cells.items()):
            lits = tuple(Literal(a, s) for a, s in zip(self.atoms, signs))
            out.append((v, ConstructibleMotif(self.ambient, [lits])))
        return out

    def refine(self, atoms: Sequence[Atom]) -> "StepFunction":
        atoms = tuple(atoms)
        pos = [atoms.index(a) for a in self.atoms]
        extra = [i for i, a in enumerate(atoms) if a not in self.atoms]
        cells = {}
        for signs, v in self.cells.items():
            for fill in itertools.product((True, False), repeat=len(extra)):
                full = [None] * len(atoms)
                for i, s in zip(pos, signs):
                    full[i] = s
                for i, s in zip(extra, fill):
                    full[i] = s
                cells[tuple(full)] = v
        return StepFunction(self.ambient, atoms, cells, self.dim)

    def value_at(self, signs: dict):
        return self.cells.get(tuple(signs[a] for a in self.atoms), 0)

    def __repr__(self):
        return "StepFunction(" + ", ".join(f"{v} on {m}" for v, m in self.fibers()) + ")"


def char_function(m: ConstructibleMotif) -> StepFunction:
    atoms = m.atoms()
    cells = {}
    for signs in itertools.product((True, False), repeat=len(atoms)):
        if _truth(m, dict(zip(atoms, signs))):
            cells[signs] = 1
    return StepFunction(m.ambient, atoms, cells)


def constant(ambient: Ideal, value=1) -> StepFunction:
    return StepFunction(ambient, (), {(): value})


def _merge(s: StepFunction, t: StepFunction):
    if s.ring != t.ring or s.ambient.generators != t.ambient.generators:
        raise RingMismatch("step functions live on different ambient schemes")
    atoms = list(s.atoms) + [a for a in t.atoms if a not in s.atoms]
    atoms.sort(key=Atom.sort_key)
    return s.refine(atoms), t.refine(atoms)


def step_combine(op: str, s: StepFunction, t: StepFunction | None = None, g=None) -> StepFunction:
    if op == "scale":
        return StepFunction(s.ambient, s.atoms, {k: v * g for k, v in s.cells.items()}, s.dim)
    a, b = _merge(s, t)
    keys = set(a.cells) | set(b.cells)
    if op == "add":
        cells = {k: a.cells.get(k, 0) + b.cells.get(k, 0) for k in keys}
    elif op == "mul":
        cells = {k: a.cells.get(k, 0) * b.cells.get(k, 0) for k in keys}
    else:
        raise ValueError(f"unknown op {op!r}")
    return StepFunction(a.ambient, a.atoms, cells, a.dim)


def _as_number(v, q):
    if isinstance(v, LValue):
        return v.at(q)
    return Fraction(v)


def _fiber_counts(s: StepFunction, fp: FatPoint, q: int) -> dict:
    """Point counts of the arc motif of every cell, in one enumeration pass."""
    arcs = [arc_motif(ConstructibleMotif(s.ambient, [(Literal(a),)]), fp) for a in s.atoms]
    amb_arc = arc_scheme(s.ambient, fp).ideal
    arc_atoms = [m.clauses[0][0].atom if m.clauses and m.clauses[0] else None for m in arcs]
    alg = FiniteAlgebra.field(q)
    counts = dict.fromkeys(s.cells, 0)
    n = amb_arc.ring.nvars
    base = ConstructibleMotif(amb_arc, [()])
    for cols in alg.chunks(n):
        cache: dict = {}
        inside = base.mask(alg, cols, cache)
        masks = [a.mask(alg, cols, cache) for a in arc_atoms]
        for signs in s.cells:
            m = inside.copy()
            for mk, sg in zip(masks, signs):
                m &= mk if sg else ~mk
            counts[signs] += int(m.sum())
    return counts


def integrate(s: StepFunction, fp: FatPoint, q: int | None = None):
    """L^(-d l) sum_g g [arcs of s^-1(g)], realized at q or symbolically.

    Symbolic mode (q None) needs every fiber to be a closed subscheme whose
    arc scheme is an affine space up to nilpotents.
    """
    l = fp.length
    if q is not None:
        counts = _fiber_counts(s, fp, q)
        total = sum(_as_number(v, q) * counts[k] for k, v in s.cells.items())
        return Fraction(total) / Fraction(q) ** (s.dim * l)
    total = LValue(0)
    for signs, v in s.cells.items():
        if not all(signs) and s.atoms:
            raise NotCertified("fiber involves a negated atom; no certified class")
        gens = list(s.ambient.generators)
        for a in s.atoms:
            if a.kind != "closed":
                raise NotCertified("cone atoms have no certified symbolic class")
            gens.extend(a.gens)
        arc = arc_scheme(Ideal(s.ring, gens), fp)
        e = coordinate_affine(arc.ideal)
        if e is None:
            raise NotCertified(f"arc scheme of the fiber {gens} is not certified affine")
        total = total + LValue(v) * LValue.power(e)
    return total * LValue.power(-s.dim * l)


@dataclass
class LocalIntegral:
    local: object
    global_: object

    @property
    def agrees(self) -> bool:
        return self.local == self.global_


def integrate_local(s: StepFunction, fp: FatPoint, cover: Sequence[tuple], q: int | None = None) -> LocalIntegral:
    """Sum over nonempty index sets I of (-1)^(|I|+1) * integral of s on U_I.

    ``cover`` lists (index tuple, open motif U_I) for every nonempty I.
    """
    local = 0
    for idx, U in cover:
        k = len(tuple(idx))
        part = integrate(step_combine("mul", s, char_function(U)), fp, q)
        local = local + part if k % 2 else local - part
    return LocalIntegral(local, integrate(s, fp, q))
