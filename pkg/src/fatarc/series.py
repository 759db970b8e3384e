"""Truncated motivic generating series.

Every report lists per-coefficient provenance (jet length, dimension,
defect) and, when the arc scheme is certified to be an affine space up to
nilpotents, the normalized classical-image coefficient as an LValue.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import sympy

from .arcs import arc_dim, arc_scheme, deformed_arc_scheme
from .classes import Fingerprint, LValue, fp_fingerprint
from .errors import NotFinite
from .fatpoints import FatPoint, Germ, jet
from .frobchar import frobenius_transform
from .ideals import Ideal, krull_dim, standard_monomials
from .polycore import PolyRing, Polynomial

__all__ = ["SeriesCoeff", "SeriesReport", "igusa_series", "auto_igusa", "hilbert_series",
           "hilbert_kunz_series", "milnor_series", "expand_closed_form", "laurent_coefficients", "t", "Lsym"]

t = sympy.Symbol("t")
Lsym = sympy.Symbol("L")


@dataclass
class SeriesCoeff:
    n: int
    jet_length: int
    dim: int | None = None
    defect: int | None = None
    L_coeff: LValue | None = None
    exponent: int | None = None
    fingerprint: Fingerprint | None = None
    ideal: str | None = None

    def to_json(self) -> dict:
        out = {"n": self.n, "jet_length": self.jet_length}
        if self.dim is not None:
            out["dim"] = self.dim
        if self.defect is not None:
            out["defect"] = self.defect
        if self.exponent is not None:
            out["exponent"] = self.exponent
        if self.L_coeff is not None:
            out["L_coeff"] = self.L_coeff.to_json()
        if self.fingerprint is not None:
            out["fingerprint"] = self.fingerprint.to_json()
        return out


@dataclass
class SeriesReport:
    kind: str
    N: int
    coefficients: list
    closed_form: object = None
    closed_form_matches: bool | None = None
    extra: dict = dc_field(default_factory=dict)

    def L_coefficients(self) -> list:
        return [c.L_coeff for c in self.coefficients]

    def check_closed_form(self, expr) -> bool:
        """Attach ``expr`` (sympy, in L and t) and compare its expansion."""
        self.closed_form = sympy.sympify(expr)
        got = self.L_coefficients()
        if any(c is None for c in got):
            self.closed_form_matches = False
        else:
            co = laurent_coefficients(self.closed_form, self.N)
            self.closed_form_matches = (all(k >= 1 for k in co)
                                        and [co.get(k, LValue(0)) for k in range(1, self.N + 1)] == got)
        return self.closed_form_matches

    def to_json(self) -> dict:
        out = {"kind": self.kind, "N": self.N,
               "coefficients": [c.to_json() for c in self.coefficients]}
        if self.closed_form is not None:
            out["closed_form"] = str(self.closed_form)
            out["closed_form_matches"] = self.closed_form_matches
        out.update(self.extra)
        return out


def laurent_coefficients(expr, N: int) -> dict:
    """Nonzero coefficients of t^k, k <= N, of a rational function in t over Q(L)."""
    num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
    pn = sympy.Poly(sympy.expand(num), t)
    pd = sympy.Poly(sympy.expand(den), t)
    a = list(reversed(pn.all_coeffs()))
    b = list(reversed(pd.all_coeffs()))
    shift = next(i for i, c in enumerate(b) if c != 0)
    b = b[shift:]
    # expr = t^(-shift) * (sum a_k t^k) / (sum b_k t^k) with b_0 != 0
    coeffs = []
    for k in range(N + shift + 1):
        s = a[k] if k < len(a) else 0
        for i in range(1, min(k, len(b) - 1) + 1):
            s -= b[i] * coeffs[k - i]
        coeffs.append(sympy.cancel(s / b[0]))
    return {k - shift: LValue(c) for k, c in enumerate(coeffs) if c != 0}


def expand_closed_form(expr, N: int) -> list:
    """Coefficients of t^1..t^N; raises if the expansion has terms t^k, k <= 0."""
    co = laurent_coefficients(expr, N)
    bad = sorted(k for k in co if k <= 0)
    if bad:
        raise ValueError(f"expansion has terms of nonpositive degree {bad}")
    return [co.get(k, LValue(0)) for k in range(1, N + 1)]


def _germ_dim(germ: Germ) -> int:
    return krull_dim(germ.ideal)


def igusa_series(X: Ideal, germ: Germ, N: int, d: int | None = None) -> SeriesReport:
    """Coefficients L^(-d*l(j^n)) [arcs of X along the n-th jet]."""
    if N < 1:
        raise ValueError("N must be at least 1")
    d = krull_dim(X) if d is None else d
    coeffs = []
    for n in range(1, N + 1):
        j = jet(germ, n)
        ad = arc_dim(arc_scheme(X, j))
        c = SeriesCoeff(n, j.length, ad.dim, ad.defect)
        if ad.coordinate_affine is not None:
            c.exponent = ad.coordinate_affine - d * j.length
            c.L_coeff = LValue.power(c.exponent)
        coeffs.append(c)
    return SeriesReport("igusa", N, coeffs, extra={"d": d})


def auto_igusa(germ: Germ, N: int) -> SeriesReport:
    """Arcs of each jet along itself; records delta = dim and the normalized exponent."""
    d = _germ_dim(germ)
    coeffs = []
    for n in range(1, N + 1):
        j = jet(germ, n)
        ad = arc_dim(arc_scheme(j.ideal, j))
        c = SeriesCoeff(n, j.length, ad.dim, ad.defect, exponent=ad.dim - d * j.length)
        if ad.coordinate_affine is not None:
            c.L_coeff = LValue.power(ad.coordinate_affine - d * j.length)
        coeffs.append(c)
    return SeriesReport("auto-igusa", N, coeffs, extra={"d": d})


def _fit_polynomial(points: Sequence[tuple[int, int]], degree: int):
    """Exact interpolation through the first degree+1 points, checked on the rest."""
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    k = degree + 1
    if len(points) < k:
        return None, False
    x = sympy.Symbol("n")
    poly = sympy.interpolate(list(zip(map(sympy.Rational, xs[:k]), map(sympy.Rational, ys[:k]))), x)
    poly = sympy.expand(poly)
    ok = all(poly.subs(x, xi) == yi for xi, yi in zip(xs, ys))
    coeffs = [sympy.Rational(c) for c in reversed(sympy.Poly(poly, x).all_coeffs())]
    return [str(c) for c in coeffs], ok


def hilbert_series(germ: Germ, N: int) -> SeriesReport:
    d = _germ_dim(germ)
    coeffs = []
    for n in range(1, N + 1):
        j = jet(germ, n)
        coeffs.append(SeriesCoeff(n, j.length, fingerprint=fp_fingerprint(j)))
    lo = max(1, N - d - 2)
    pts = [(c.n, c.jet_length) for c in coeffs if c.n >= lo]
    fit, ok = _fit_polynomial(pts, d)
    return SeriesReport("hilbert", N, coeffs, extra={"d": d, "tail_fit": fit, "tail_fit_ok": ok})


def hilbert_kunz_series(Y: Ideal, X: Ideal, N: int, fingerprints: bool = False) -> SeriesReport:
    coeffs = []
    for n in range(1, N + 1):
        T = frobenius_transform(Y, X, n)
        st = standard_monomials(T)
        if not st.is_finite():
            raise NotFinite(f"Frobenius transform {T} has infinite length")
        c = SeriesCoeff(n, len(st), ideal=str(T))
        if fingerprints:
            c.fingerprint = fp_fingerprint(FatPoint(T))
        coeffs.append(c)
    return SeriesReport("hilbert-kunz", N, coeffs, extra={"p": Y.ring.field.characteristic})


def milnor_series(f: Polynomial, germ: Germ, N: int, params: Sequence[str] | None = None) -> SeriesReport:
    """Deformed arcs of f - (xi_1...xi_e)^(n-1) along y_n = germ + (xi_i^n)."""
    params = list(params or germ.ring.names)
    gring = germ.ring
    clash = set(f.ring.names) & set(gring.names)
    if clash:
        raise ValueError(f"hypersurface and germ share variables {sorted(clash)}")
    d = f.ring.nvars - 1
    shifted = germ.shifted()
    joint = PolyRing(list(f.ring.names) + list(gring.names), f.ring.field)
    prod = joint.one
    for v in params:
        prod = prod * joint.var(v)
    coeffs = []
    for n in range(1, N + 1):
        gens = list(shifted.generators) + [gring.var(v) ** n for v in params]
        y = FatPoint(Ideal(gring, gens))
        if y.length == 0:
            raise NotFinite("parameter system does not have finite colength")
        Y = Ideal(joint, [f.to_ring(joint) - prod ** (n - 1)])
        arc = deformed_arc_scheme(Y, y)
        ad = arc_dim(arc)
        c = SeriesCoeff(n, y.length, ad.dim, ad.defect, exponent=ad.dim - d * y.length,
                        ideal=str(arc.ideal))
        if ad.coordinate_affine is not None:
            c.L_coeff = LValue.power(ad.coordinate_affine - d * y.length)
        coeffs.append(c)
    return SeriesReport("milnor", N, coeffs, extra={"d": d})
