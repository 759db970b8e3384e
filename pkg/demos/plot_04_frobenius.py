"""
Frobenius transforms in positive characteristic
===============================================

Lengths of the Frobenius transforms of the origin in the cusp y^2 = x^3
(the Hilbert-Kunz function), and the adjunction count identity.
"""

from fatarc import GF, Ideal, PolyRing, frobenius_adjunction_counts, frobenius_transform
from fatarc import hilbert_kunz_series, line_point
from fatarc.ideals import length

for p in (2, 3):
    R = PolyRing(["x", "y"], GF(p))
    origin = Ideal(R, [R("x"), R("y")])
    cusp = Ideal(R, [R("y^2 - x^3")])
    rep = hilbert_kunz_series(origin, cusp, 3)
    print(f"p={p}:", [c.jet_length for c in rep.coefficients])

R = PolyRing(["x", "y"], GF(2))
T = frobenius_transform(Ideal(R, [R("x"), R("y")]), Ideal(R, [R("y^2 - x^3")]), 1)
print("first transform:", T, "length", length(T))

# Both sides count the same set in two ways.
cross = Ideal(R, [R("x*y")])
for q in (2, 4):
    print(f"q={q}:", frobenius_adjunction_counts(cross, line_point(2, field=GF(2)), q))
