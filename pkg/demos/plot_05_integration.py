"""
Integrating step functions over arcs
====================================

Step functions built from closed and cone atoms, integrated along a fat
point at a finite field and, where certified, symbolically in L.
"""

from fatarc import Ideal, PolyRing, char_function, closed, cone, constant, integrate
from fatarc import integrate_local, line_point, step_combine

R = PolyRing(["x", "y"])
l2 = line_point(2)

s = step_combine("add",
                 step_combine("scale", char_function(closed(R, "x")), g=2),
                 char_function(cone(R, "x")))
for v, m in s.fibers():
    print(f"  {v} on {m}")
print("integral over F_2:", integrate(s, l2, 2))
print("integral of 1:", integrate(constant(Ideal(R, [])), l2, 3))

# symbolic: the arcs of the line x = 0 along l2 form an affine space
print("integral of [x = 0] in L:", integrate(char_function(closed(R, "x")), l2))

# the same integral assembled from an open cover by inclusion-exclusion
U = [~closed(R, "x"), ~closed(R, "y"), ~closed(R, "x + y - 1")]
cover = [((0,), U[0]), ((1,), U[1]), ((2,), U[2]),
         ((0, 1), U[0] & U[1]), ((0, 2), U[0] & U[2]), ((1, 2), U[1] & U[2]),
         ((0, 1, 2), U[0] & U[1] & U[2])]
loc = integrate_local(s, l2, cover, 2)
print("local", loc.local, "global", loc.global_, "agree:", loc.agrees)
