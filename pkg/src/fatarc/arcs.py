"""Arc schemes along fat points.

Each source variable x is replaced by its generic arc
``x~0*alpha_0 + ... + x~(l-1)*alpha_(l-1)`` and the result is expanded in
the good basis Delta of the fat point; the coefficients generate the arc
ideal.  The expansion is done directly in the algebra k[x~] (x) R using the
structure constants of R in the basis Delta.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import ceil
from typing import Mapping, Sequence

from .errors import RingMismatch
from .fatpoints import FatPoint
from .ideals import (Ideal, eliminate, kill_nilpotent_variables, krull_dim,
                     radical_membership, _restrict)
from .motifs import Atom, ConstructibleMotif, Literal
from .polycore import PolyRing, Polynomial

__all__ = [
    "ArcScheme", "ArcDim", "arc_ring", "arc_var_name", "generic_arc_expand", "arc_scheme",
    "deformed_arc_scheme", "arc_motif", "arc_dim", "image_closure", "coordinate_affine",
]


def arc_var_name(var: str, j: int) -> str:
    return f"{var}~{j}"


def arc_ring(source: PolyRing, fp: FatPoint) -> PolyRing:
    """Arc variables in source-major, layer-minor order."""
    if source.field != fp.field:
        raise RingMismatch(f"source over {source.field}, fat point over {fp.field}")
    return PolyRing([arc_var_name(v, j) for v in source.names for j in range(fp.length)],
                    source.field)


@dataclass
class ArcScheme:
    source: Ideal
    point: FatPoint
    ring: PolyRing
    ideal: Ideal
    provenance: dict = dc_field(default_factory=dict)

    @property
    def generators(self) -> tuple:
        return self.ideal.generators

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def layer_vars(self, j: int) -> list[str]:
        l = self.point.length
        return [n for i, n in enumerate(self.ring.names) if i % l == j]

    def __str__(self):
        return str(self.ideal)


def _eval_in_algebra(f: Polynomial, vectors: Mapping[int, list], fp: FatPoint, target: PolyRing) -> list:
    """Evaluate ``f`` with variable i replaced by the Delta-vector vectors[i]."""
    zero = target.zero
    l = fp.length
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            if k == 1:
                powers[key] = vectors[i]
            else:
                half = power(i, k // 2)
                p = fp.vec_mul(half, half, zero)
                if k % 2:
                    p = fp.vec_mul(p, vectors[i], zero)
                powers[key] = p
        return powers[key]

    total = [zero] * l
    for e, c in f.terms.items():
        mono = None
        for i, k in enumerate(e):
            if k:
                pw = power(i, k)
                mono = pw if mono is None else fp.vec_mul(mono, pw, zero)
        if mono is None:
            total[0] = total[0] + target.const(c)
        else:
            total = [t + (m.scale(c) if c != 1 else m) for t, m in zip(total, mono)]
    return total


def _generic_vectors(source: PolyRing, fp: FatPoint, target: PolyRing, var_indices=None) -> dict:
    out = {}
    names = source.names
    for i, v in enumerate(names):
        if var_indices is not None and i not in var_indices:
            continue
        out[i] = [target.var(arc_var_name(v, j)) for j in range(fp.length)]
    return out


def generic_arc_expand(f: Polynomial, fp: FatPoint, target: PolyRing | None = None) -> list:
    """Coefficients (f~_0, ..., f~_(l-1)) of f on the generic arc."""
    target = target or arc_ring(f.ring, fp)
    vecs = _generic_vectors(f.ring, fp, target)
    return _eval_in_algebra(f, vecs, fp, target)


def arc_scheme(X: Ideal, fp: FatPoint) -> ArcScheme:
    target = arc_ring(X.ring, fp)
    gens = []
    for g in X.generators:
        gens.extend(generic_arc_expand(g, fp, target))
    return ArcScheme(X, fp, target, Ideal(target, gens),
                     {"kind": "arc", "source": str(X), "point": str(fp),
                      "basis": [str(a) for a in fp.basis]})


def deformed_arc_scheme(Y: Ideal, fp: FatPoint) -> ArcScheme:
    """Arcs of a family Y whose generators may involve the fat-point variables.

    The ring of Y must contain the fat-point variables; all other variables
    are source variables and receive generic arcs, while each fat-point
    variable is the constant element of R it denotes.
    """
    ring = Y.ring
    missing = [v for v in fp.vars if v not in ring.index]
    if missing:
        ring = ring.extend(missing)
        Y = Y.to_ring(ring)
    src_names = [n for n in ring.names if n not in set(fp.vars)]
    source = PolyRing(src_names, ring.field)
    target = arc_ring(source, fp)
    vecs = {}
    for i, n in enumerate(ring.names):
        if n in fp.ring.index:
            vecs[i] = [target.const(c) for c in fp.coords(fp.ring.var(n))]
        else:
            vecs[i] = [target.var(arc_var_name(n, j)) for j in range(fp.length)]
    gens = []
    for g in Y.generators:
        gens.extend(_eval_in_algebra(g, vecs, fp, target))
    return ArcScheme(Y, fp, target, Ideal(target, gens),
                     {"kind": "deformed-arc", "source": str(Y), "point": str(fp),
                      "basis": [str(a) for a in fp.basis]})


def arc_motif(m: ConstructibleMotif, fp: FatPoint) -> ConstructibleMotif:
    """Closed(J) goes to the arc ideal of J; Cone(J) to J on the 0-layer."""
    target = arc_ring(m.ring, fp)
    zero_layer = {v: target.var(arc_var_name(v, 0)) for v in m.ring.names}
    memo = {}

    def image(atom: Atom) -> Atom:
        if atom not in memo:
            if atom.kind == "closed":
                gens = [c for g in atom.gens for c in generic_arc_expand(g, fp, target)]
            else:
                gens = [g.subs(zero_layer, target) for g in atom.gens]
            memo[atom] = Atom("closed", tuple(g for g in gens if g))
        return memo[atom]

    amb = arc_scheme(m.ambient, fp).ideal if m.ambient.generators else Ideal(target, [])
    clauses = [[Literal(image(l.atom), l.positive) for l in c] for c in m.clauses]
    return ConstructibleMotif(amb, clauses)


@dataclass(frozen=True)
class ArcDim:
    dim: int
    defect: int
    coordinate_affine: int | None

    def __iter__(self):
        return iter((self.dim, self.defect, self.coordinate_affine))


def coordinate_affine(ideal: Ideal) -> int | None:
    """Number of free variables if the radical is generated by variables.

    Variables forced to be nilpotent by pure-power generators are removed
    iteratively; any remaining variable is tested by radical membership.
    Returns None when the radical is not of this shape.
    """
    ring = ideal.ring
    killed, gens, unit = kill_nilpotent_variables(ideal.generators)
    if unit:
        return None
    if not gens:
        return ring.nvars - len(killed)
    sub, rest = _restrict(gens, killed, ring)
    J = Ideal(sub, rest)
    more = [v for v in sub.names if radical_membership(sub.var(v), J)]
    zero = {v: (sub.zero if v in more else sub.var(v)) for v in sub.names}
    if any(g.subs(zero) for g in rest):
        return None
    return sub.nvars - len(more)


def arc_dim(X: Ideal | ArcScheme, fp: FatPoint | None = None, certify: bool = True) -> ArcDim:
    arc = X if isinstance(X, ArcScheme) else arc_scheme(X, fp)
    dim = krull_dim(arc.ideal)
    src = arc.source
    if arc.provenance.get("kind") == "arc":
        base = krull_dim(src)
    else:
        # dimension of the special fibre of the family
        fibre = [src.ring.var(v) for v in arc.point.vars if v in src.ring.index]
        base = krull_dim(Ideal(src.ring, list(src.generators) + fibre))
    defect = dim - base * arc.point.length
    ca = coordinate_affine(arc.ideal) if certify else None
    return ArcDim(dim, defect, ca)


def image_closure(source: Ideal, mapping: Mapping[str, Polynomial | str],
                  target_names: Sequence[str] | None = None) -> Ideal:
    """Zariski closure of the image of V(source) under target_i = mapping[target_i]."""
    target_names = list(target_names or mapping.keys())
    src = source.ring
    rename = {}
    taken = set(target_names) | set(src.names)
    for v in src.names:
        w, k = v, 0
        while w in target_names or (w != v and w in taken):
            k += 1
            w = f"{v}_{k}"
        rename[v] = w
    work = PolyRing([rename[v] for v in src.names] + target_names, src.field)
    gens = [g.to_ring(work, rename) for g in source.generators]
    for t in target_names:
        img = mapping[t]
        img = src(img) if isinstance(img, str) else img
        gens.append(work.var(t) - img.to_ring(work, rename))
    res = eliminate(Ideal(work, gens), [rename[v] for v in src.names])
    return res


def expected_line_dim(n: int, m: int) -> int:
    """Dimension n - ceil(n/m) of the arcs of l_m along l_n."""
    return n - ceil(n / m)
