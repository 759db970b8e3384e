"""Fat points: Artinian local quotients supported at the origin.

A :class:`FatPoint` carries its good ordered basis Delta together with the
structure constants of the algebra in that basis, which is all the arc
expansion needs.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from . import linalg
from .errors import FiltrationViolated, NotFinite, NotSupportedAtOrigin, RingMismatch
from .ideals import Ideal, ideal_combine, is_unit_ideal, length, radical_membership, standard_monomials
from .polycore import QQ, PolyRing, Polynomial, grevlex, poly_substitute

__all__ = [
    "FatPoint", "GoodBasis", "Germ", "make_fat_point", "good_basis", "fp_length",
    "fp_product", "jet", "strongly_connected", "line_point", "plane_jet",
]


@dataclass(frozen=True)
class GoodBasis:
    """Ordered basis Delta = (alpha_0 = 1, alpha_1, ...) of a fat point's ring.

    ``matrix`` has as column j the staircase coordinates of alpha_j;
    ``inverse`` maps staircase coordinates to Delta coordinates.
    ``is_filtration`` records whether the truncation ideals have the
    expected colengths (always true for the automatic construction).
    """

    elements: tuple
    matrix: tuple
    inverse: tuple
    is_filtration: bool
    var_order: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __str__(self):
        return "(" + ", ".join(map(str, self.elements)) + ")"


class FatPoint:
    """Spec of k[vars]/ideal, validated to be finite and supported at the origin."""

    def __init__(self, ideal: Ideal, basis: Sequence | None = None,
                 var_order: Sequence[str] | None = None, name: str | None = None):
        ring = ideal.ring
        stair = standard_monomials(ideal, grevlex)
        if not stair.is_finite():
            raise NotFinite(f"{ideal} does not define a fat point: not finite length")
        for v in ring.names:
            if not radical_membership(ring.var(v), ideal):
                raise NotSupportedAtOrigin(
                    f"{v} is not nilpotent modulo {ideal}: not supported at origin; "
                    "translate the point to the origin first")
        self.ring = ring
        self.ideal = ideal
        self.name = name
        self.gb = ideal.groebner(grevlex)
        self.staircase = stair
        self.std = list(stair.monomials())
        self._std_index = {e: i for i, e in enumerate(self.std)}
        self.length = len(self.std)
        if basis is None:
            self.basis = good_basis(self, var_order)
        else:
            self.basis = _user_basis(self, [ring(b) for b in basis], var_order)
        self._structure = None

    @property
    def vars(self) -> tuple:
        return self.ring.names

    @property
    def field(self):
        return self.ring.field

    def __repr__(self):
        return f"FatPoint({self.ideal}, length={self.length})"

    def __str__(self):
        return self.name or str(self.ideal)

    # -- coordinates
    def staircase_vector(self, r: Polynomial) -> list:
        nf = self.gb.reduce(r)
        vec = [self.field(0)] * self.length
        for e, c in nf.terms.items():
            vec[self._std_index[e]] = c
        return vec

    def coords(self, r: Polynomial) -> list:
        """Delta-coordinates of the class of ``r``."""
        if r.ring != self.ring:
            raise RingMismatch(f"{r.ring} vs {self.ring}")
        return linalg.mat_vec(self.basis.inverse, self.staircase_vector(r), self.field)

    def element(self, vec: Sequence) -> Polynomial:
        out = self.ring.zero
        for c, a in zip(vec, self.basis.elements):
            if c:
                out = out + a.scale(c)
        return out

    @property
    def structure(self) -> list:
        """Sparse structure constants: ``structure[a][b]`` lists (c, coeff)."""
        if self._structure is None:
            el = self.basis.elements
            tab = []
            for a in range(self.length):
                row = []
                for b in range(self.length):
                    if b < a:
                        row.append(tab[b][a])
                        continue
                    v = self.coords(el[a] * el[b])
                    row.append([(c, k) for c, k in enumerate(v) if k])
                tab.append(row)
            self._structure = tab
        return self._structure

    # -- arithmetic on Delta-vectors whose entries live in an arbitrary ring
    def vec_mul(self, u: Sequence, v: Sequence, zero):
        st = self.structure
        out = [zero] * self.length
        for a, ua in enumerate(u):
            if not ua:
                continue
            row = st[a]
            for b, vb in enumerate(v):
                if not vb:
                    continue
                p = ua * vb
                for c, k in row[b]:
                    out[c] = out[c] + (p if k == 1 else p.scale(k))
        return out

    def vec_add(self, u, v):
        return [a + b for a, b in zip(u, v)]


def _lex_key(perm):
    return lambda e: tuple(e[i] for i in perm)


def _monomials_outside(fp: FatPoint) -> list[tuple]:
    """Exponents of monomials not in the ideal (closed under division)."""
    n = fp.ring.nvars
    zero = (0,) * n
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                f = e[:i] + (e[i] + 1,) + e[i + 1:]
                if f not in seen and fp.gb.reduce(fp.ring.monomial(f)):
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    return list(seen)


def _resolve_order(fp: FatPoint, var_order) -> tuple:
    names = fp.ring.names
    if var_order is None:
        return tuple(names)
    var_order = tuple(var_order)
    if sorted(var_order) != sorted(names):
        raise ValueError(f"variable order {var_order} does not list {names}")
    return var_order


def _colength(fp: FatPoint, gens: Sequence[Polynomial]) -> int:
    return length(Ideal(fp.ring, list(fp.ideal.generators) + list(gens)))


def _filtration_ok(fp: FatPoint, elements: Sequence[Polynomial]) -> bool:
    l = len(elements)
    return all(_colength(fp, elements[i:]) == i for i in range(l))


def _finish(fp: FatPoint, elements: list[Polynomial], order: tuple, is_filtration: bool) -> GoodBasis:
    cols = [fp.staircase_vector(a) for a in elements]
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols))]
    inv = linalg.inverse(mat, fp.field)
    return GoodBasis(tuple(elements), tuple(map(tuple, mat)), tuple(map(tuple, inv)),
                     is_filtration, order)


def good_basis(fp: FatPoint, var_order: Sequence[str] | None = None) -> GoodBasis:
    """Lexicographic good basis.

    A monomial y^a is kept when it does not lie in the ideal generated by the
    fat-point ideal and all lex-larger monomials; the kept monomials, sorted
    increasingly, form Delta.  The truncation colengths are then verified.
    """
    order = _resolve_order(fp, var_order)
    ring = fp.ring
    perm = [ring.index[v] for v in order]
    key = _lex_key(perm)
    n = ring.nvars
    chosen = []
    for e in sorted(_monomials_outside(fp), key=key):
        gens = []
        for k, i in enumerate(perm):
            b = [0] * n
            for j in perm[:k]:
                b[j] = e[j]
            b[i] = e[i] + 1
            gens.append(ring.monomial(tuple(b)))
        J = Ideal(ring, list(fp.ideal.generators) + gens)
        if J.groebner(grevlex).reduce(ring.monomial(e)):
            chosen.append(ring.monomial(e))
    if len(chosen) != fp.length:
        raise FiltrationViolated(
            f"lexicographic construction produced {len(chosen)} elements, expected {fp.length}")
    if not _filtration_ok(fp, chosen):
        raise FiltrationViolated(f"truncation colengths fail for {fp.ideal}")
    return _finish(fp, chosen, order, True)


def _user_basis(fp: FatPoint, elements: list[Polynomial], var_order) -> GoodBasis:
    order = _resolve_order(fp, var_order)
    if len(elements) != fp.length:
        raise ValueError(f"basis has {len(elements)} elements, fat point has length {fp.length}")
    if fp.gb.reduce(elements[0] - fp.ring.one):
        raise ValueError("first basis element must be 1")
    for a in elements[1:]:
        if a.constant_term():
            raise ValueError(f"basis element {a} is not in the maximal ideal")
    try:
        return _finish(fp, elements, order, _filtration_ok(fp, elements))
    except ZeroDivisionError:
        raise ValueError("supplied elements are not a basis of the fat point") from None


def make_fat_point(vars: Sequence[str] | PolyRing, generators: Iterable, field=QQ,
                   basis: Sequence | None = None, var_order: Sequence[str] | None = None,
                   name: str | None = None) -> FatPoint:
    ring = vars if isinstance(vars, PolyRing) else PolyRing(vars, field)
    return FatPoint(Ideal(ring, list(generators)), basis=basis, var_order=var_order, name=name)


def fp_length(fp: FatPoint) -> int:
    return fp.length


def line_point(n: int, var: str = "xi", field=QQ) -> FatPoint:
    """The fat point l_n = Spec k[xi]/(xi^n)."""
    ring = PolyRing([var], field)
    return FatPoint(Ideal(ring, [ring.var(var) ** n]), name=f"l{n}")


def plane_jet(n: int, vars=("xi", "zeta"), field=QQ) -> FatPoint:
    """o_n = Spec k[xi, zeta]/(xi, zeta)^n."""
    ring = PolyRing(vars, field)
    m = Ideal(ring, list(ring.gens))
    return FatPoint(ideal_combine("power", m, n=n), name=f"o{n}")


def fp_product(a: FatPoint, b: FatPoint) -> FatPoint:
    """The fat point a x b, renaming b's variables on a clash."""
    if a.field != b.field:
        raise RingMismatch("fat points over different fields")
    names = list(a.ring.names)
    taken = set(names) | set(b.ring.names)
    rename = {}
    for v in b.ring.names:
        w, k = v, 0
        while w in names or (w != v and w in taken):
            k += 1
            w = f"{v}{k}"
        rename[v] = w
        names.append(w)
    ring = PolyRing(names, a.field)
    gens = [g.to_ring(ring) for g in a.ideal.generators]
    gens += [g.to_ring(ring, rename) for g in b.ideal.generators]
    return FatPoint(Ideal(ring, gens))


@dataclass
class Germ:
    """A closed germ (X, P) with P a rational point of X."""

    ideal: Ideal
    point: tuple = dc_field(default=None)
    name: str | None = None

    def __post_init__(self):
        ring = self.ideal.ring
        if self.point is None:
            self.point = (0,) * ring.nvars
        self.point = tuple(ring.field(c) for c in self.point)
        if len(self.point) != ring.nvars:
            raise ValueError("point dimension does not match the ring")
        for g in self.ideal.generators:
            if g.evaluate(self.point):
                raise ValueError(f"point {self.point} is not on V({g})")

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    def shifted(self) -> Ideal:
        """The ideal translated so that P sits at the origin."""
        ring = self.ring
        assignment = {v: ring.var(v) + ring.const(c) for v, c in zip(ring.names, self.point)}
        return Ideal(ring, [poly_substitute(g, assignment) for g in self.ideal.generators])


def jet(germ: Germ, n: int) -> FatPoint:
    """J^n_P(X): the ideal of X at P plus the n-th power of the maximal ideal."""
    if n < 1:
        raise ValueError("jet order must be positive")
    I = germ.shifted()
    m = Ideal(germ.ring, list(germ.ring.gens))
    mn = ideal_combine("power", m, n=n)
    return FatPoint(Ideal(germ.ring, list(I.generators) + list(mn.generators)),
                    name=f"J{n}({germ.name})" if germ.name else None)


def strongly_connected(components: Sequence[Ideal]) -> bool:
    """True iff the sum of the supplied associated primes is proper."""
    comps = list(components)
    if not comps:
        return True
    ring = comps[0].ring
    return not is_unit_ideal(Ideal(ring, [g for c in comps for g in c.generators]))
