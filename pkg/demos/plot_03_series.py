"""
Truncated generating series
===========================

Igusa-type series of <x^m> along the jets of the affine line, and jet
lengths of a plane germ with a polynomial tail fit.
"""

from fatarc import Germ, Ideal, PolyRing, hilbert_series, igusa_series
from fatarc.series import Lsym as L, t

S = PolyRing(["x"])
A1 = Germ(Ideal(PolyRing(["xi"]), []), name="A1")

# the coefficient of t^n is L^(n - ceil(n/m))
for m in (2, 3):
    rep = igusa_series(Ideal(S, [S("x") ** m]), A1, 8)
    print(f"m={m}:", [c.exponent for c in rep.coefficients])
    closed = sum(L ** (m - 1 - r) * t ** (m - r) for r in range(m)) / (1 - L ** (m - 1) * t ** m)
    print("   closed form", closed, "matches:", rep.check_closed_form(closed))

# the cusp germ: lengths of the n-th jets grow like 2n - 1
R = PolyRing(["x", "y"])
cusp = Germ(Ideal(R, [R("y^2 - x^3")]))
rep = hilbert_series(cusp, 6)
print("cusp jet lengths:", [c.jet_length for c in rep.coefficients])
print("tail fit (constant term first):", rep.extra["tail_fit"], rep.extra["tail_fit_ok"])
