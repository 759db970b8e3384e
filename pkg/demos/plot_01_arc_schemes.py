"""
Arc schemes along fat points
============================

Arcs of the coordinate cross xy = 0 along the line points <xi^n>, and a
look at which coordinates survive up to nilpotents.
"""

from fatarc import Ideal, PolyRing, arc_dim, arc_scheme, line_point, make_fat_point
from fatarc.ideals import radical_membership

R = PolyRing(["x", "y"])
cross = Ideal(R, [R("x*y")])

# Each arc variable x~j is the coordinate of x on the j-th basis element of
# the fat point.  Along <xi^3> the product xy expands into three equations.
for n in (1, 2, 3):
    arc = arc_scheme(cross, line_point(n))
    print(f"l{n}:", [str(g) for g in arc.generators])

# dimension, embedding-dimension defect, and the affine-space exponent when
# the reduced arc scheme is cut out by coordinate variables
for n in range(1, 6):
    print(f"l{n}:", arc_dim(arc_scheme(cross, line_point(n))))

# Every arc generator of the cusp along <xi^2, zeta^2> is a derivative of
# x^2 - y^3 in disguise.
sq = make_fat_point(("xi", "zeta"), ["xi^2", "zeta^2"], var_order=("zeta", "xi"))
cusp = arc_scheme(Ideal(R, [R("x^2 - y^3")]), sq)
for g in cusp.generators:
    print("  ", g)

# The leading equation is the cusp itself, so x~0 is not nilpotent.  On the
# arcs through the singular point it is: there x~0^2 = y~0^3 = 0.
A = cusp.ring
print("x~0 in radical:", radical_membership(A("x~0"), cusp.ideal))
print("x~0 in radical over the origin:",
      radical_membership(A("x~0"), Ideal(A, list(cusp.generators) + [A("y~0")])))
