"""
Counting points over finite fat rings
=====================================

Points of X with values in F_q (x) R, counted by brute force, against
F_q-points of the arc scheme.  The two agree: the arc scheme represents
exactly these points.
"""

from fatarc import Ideal, PolyRing, arc_scheme, fp_fingerprint, line_point, make_fat_point
from fatarc import point_count_fat, point_count_scheme

R = PolyRing(["x", "y"])
node = Ideal(R, [R("y^2 - x^2 - x^3")])

points = {"l2": line_point(2), "l3": line_point(3),
          "sq": make_fat_point(("xi", "zeta"), ["xi^2", "zeta^2"])}

for name, fp in points.items():
    for q in (2, 3):
        direct = point_count_fat(node, fp, q)
        via_arcs = point_count_scheme(arc_scheme(node, fp), q)
        print(f"node over F_{q} (x) {name}: {direct} = {via_arcs}")

# Fingerprints separate fat points but never prove isomorphism.
for name, fp in points.items():
    print(name, fp_fingerprint(fp))
