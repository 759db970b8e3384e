"""Acceptance criteria 1-13, exact comparisons throughout.

Each criterion prints one PASS/FAIL line (collected into the pytest
terminal summary, or printed directly when run as a script).  A criterion
fails if any check fails or its runtime bound is exceeded.
"""
import random
import sys
import time


from fatarc import (GF, Germ, Ideal, PolyRing, arc_dim, arc_scheme, char_function, closed, cone,
                    constant, frobenius_adjunction_counts, frobenius_transform, hilbert_series,
                    igusa_series, image_closure, inclusion_exclusion, integrate, integrate_local,
                    line_point, make_fat_point, plane_jet, point_count_fat, point_count_scheme,
                    step_combine, whole)
from fatarc.classes import count_on_algebra
from fatarc.fatpoints import FatPoint, jet
from fatarc.finite import FiniteAlgebra
from fatarc.ideals import ideal_intersect, ideals_equal, length, radical_membership
from fatarc.series import Lsym, t

from oracles import hk_oracle

RESULTS: list[str] = []


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.failures: list[str] = []

    def check(self, ok: bool, what: str):
        if not ok:
            self.failures.append(what)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        elapsed = time.perf_counter() - self.start
        if exc[0] is not None:
            self.failures.append(f"raised {exc[0].__name__}: {exc[1]}")
        if elapsed > self.limit:
            self.failures.append(f"runtime {elapsed:.2f}s > {self.limit:g}s")
        status = "PASS" if not self.failures else "FAIL"
        line = f"criterion {self.number:2d} {status}  {self.title}  [{elapsed:.2f}s]"
        if self.failures:
            line += "  -- " + "; ".join(self.failures)
        RESULTS.append(line)
        print(line)
        assert not self.failures, line
        return False


def corpus():
    return [line_point(1), line_point(2), line_point(3),
            make_fat_point(("xi", "zeta"), ["xi^2", "zeta^2"]),
            plane_jet(2),
            make_fat_point(("xi", "zeta"), ["xi^2", "xi*zeta^2", "zeta^3"])]


# ---------------------------------------------------------------- 1

TWO_LINES = {
    "x*y": (
        ["x~0*y~0", "x~0*y~1 + x~1*y~0", "x~0*y~2 + x~1*y~1 + x~2*y~0"],
        [["x~0*y~0"], ["x~0*y~1", "x~1*y~0"], ["x~0*y~2", "x~1*y~1", "x~2*y~0"]],
        (1, 2, 3)),
    "x^2*y": (
        ["x~0^2*y~0", "2*x~0*x~1*y~0 + x~0^2*y~1", "x~0^2*y~2 + 2*x~0*x~1*y~1 + (2*x~0*x~2 + x~1^2)*y~0"],
        [["x~0*y~0"], ["x~0*y~1"], ["x~0*y~2", "x~1*y~0"]],
        (1, 3, 4)),
    "x^2*y^3": (
        ["x~0^2*y~0^3", "2*x~0*x~1*y~0^3 + 3*x~0^2*y~0^2*y~1",
         "3*x~0^2*(y~0*y~1^2 + y~0^2*y~2) + 6*x~0*x~1*y~0^2*y~1 + (x~1^2 + 2*x~0*x~2)*y~0^3"],
        [["x~0*y~0"], [], ["x~1*y~0"]],
        (1, 3, 5)),
}


def test_criterion_01_two_lines_table():
    with Criterion(1, "arc ideals, reductions and dimensions over the coordinate axes", 10) as c:
        R = PolyRing(["x", "y"])
        for f, (rows, reduced, deltas) in TWO_LINES.items():
            X = Ideal(R, [R(f)])
            for l in (1, 2, 3):
                arc = arc_scheme(X, line_point(l))
                A = arc.ring
                listed = Ideal(A, [A(g) for g in rows[:l]])
                c.check(ideals_equal(arc.ideal, listed), f"{f} along l{l}: generators differ")
                red = [A(g) for row in reduced[:l] for g in row]
                c.check(all(radical_membership(g, arc.ideal) for g in red),
                        f"{f} along l{l}: reduced row not in the radical")
                c.check(all(radical_membership(g, Ideal(A, red)) for g in arc.ideal.generators),
                        f"{f} along l{l}: arc generator not in the reduced radical")
                d = arc_dim(arc).dim
                c.check(d == deltas[l - 1], f"{f} along l{l}: delta {d} != {deltas[l - 1]}")


# ---------------------------------------------------------------- 2

def test_criterion_02_line_points_along_line_points():
    with Criterion(2, "dim of l_m along l_n is n - ceil(n/m), coordinate-affine certified", 30) as c:
        S = PolyRing(["x"])
        for m in range(1, 7):
            for n in range(1, 7):
                d = arc_dim(Ideal(S, [S("x") ** m]), line_point(n))
                want = n - -(-n // m)
                c.check(d.dim == want and d.coordinate_affine == want, f"m={m} n={n}: {d}")


# ---------------------------------------------------------------- 3

def test_criterion_03_cusp_along_square():
    with Criterion(3, "cusp along (xi^2, zeta^2): four generators", 1) as c:
        R = PolyRing(["x", "y"])
        fp = make_fat_point(("xi", "zeta"), ["xi^2", "zeta^2"], var_order=("zeta", "xi"))
        c.check([str(b) for b in fp.basis] == ["1", "xi", "zeta", "xi*zeta"], "basis order")
        arc = arc_scheme(Ideal(R, [R("x^2 - y^3")]), fp)
        A = arc.ring
        listed = ["x~0^2 - y~0^3", "2*x~0*x~1 - 3*y~0^2*y~1", "2*x~0*x~2 - 3*y~0^2*y~2",
                  "2*x~0*x~3 + 2*x~1*x~2 - 3*y~0^2*y~3 - 6*y~0*y~1*y~2"]
        got = arc.generators
        c.check(len(got) == 4, f"{len(got)} generators")
        c.check(all(A(g) in got or -A(g) in got for g in listed), "generators differ")


# ---------------------------------------------------------------- 4

def test_criterion_04_auto_arc_dimensions():
    with Criterion(4, "auto-arc dimensions of o_2, o_3, (xi^2, xi*zeta^2, zeta^3) and the cusp jet", 300) as c:
        for n in (2, 3):
            o = plane_jet(n)
            d = arc_dim(arc_scheme(o.ideal, o)).dim
            c.check(d == n * n + n - 2, f"o{n}: {d}")
        v = make_fat_point(("xi", "zeta"), ["xi^2", "xi*zeta^2", "zeta^3"])
        d = arc_dim(arc_scheme(v.ideal, v)).dim
        c.check(d == 7, f"v: {d}")
        R = PolyRing(["x", "y"])
        j4 = jet(Germ(Ideal(R, [R("x^2 - y^3")])), 4)
        fp = FatPoint(j4.ideal, basis=["1", "x", "y", "x^2", "x*y", "y^2", "x*y^2"])
        c.check(fp.length == 7, f"length {fp.length}")
        arc = arc_scheme(fp.ideal, fp)
        d = arc_dim(arc, certify=False).dim
        c.check(d == 9, f"cusp jet: {d}")
        A = arc.ring
        for rel in ("x~1^2 - y~2^3", "2*x~1*x~5 - 3*y~1*y~2^2"):
            c.check(radical_membership(A(rel), arc.ideal), f"{rel} not in the radical")


# ---------------------------------------------------------------- 5

def test_criterion_05_smooth_fibration():
    with Criterion(5, "affine spaces and a smooth curve: zero ideals, dl, q^(dl)", 10) as c:
        for fp in corpus():
            l = fp.length
            for d in (1, 2):
                Ad = Ideal(PolyRing(["x", "y"][:d]), [])
                arc = arc_scheme(Ad, fp)
                c.check(arc.ideal.is_zero() and arc.ring.nvars == d * l, f"A^{d} along {fp}: ideal")
                c.check(arc_dim(arc).dim == d * l, f"A^{d} along {fp}: dim")
                for q in (2, 3):
                    c.check(point_count_scheme(arc, q) == q ** (d * l), f"A^{d} along {fp} q={q}")
            R = PolyRing(["x", "y"])
            P = Ideal(R, [R("y - x^2")])
            for q in (2, 3):
                c.check(point_count_scheme(arc_scheme(P, fp), q) == q * q ** (l - 1), f"parabola {fp} q={q}")
                c.check(point_count_fat(P, fp, q) == q * q ** (l - 1), f"parabola fat {fp} q={q}")


# ---------------------------------------------------------------- 6

def test_criterion_06_adjunction_oracle():
    with Criterion(6, "R_q-points of X equal F_q-points of the arc scheme (36 triples)", 120) as c:
        R1, R2 = PolyRing(["x"]), PolyRing(["x", "y"])
        schemes = {"A1": Ideal(R1, []), "A2": Ideal(R2, []), "V(xy)": Ideal(R2, [R2("x*y")]),
                   "V(x^2y)": Ideal(R2, [R2("x^2*y")]), "cusp": Ideal(R2, [R2("y^2 - x^3")]),
                   "node": Ideal(R2, [R2("y^2 - x^2 - x^3")])}
        fps = [line_point(2), line_point(3), make_fat_point(("xi", "zeta"), ["xi^2", "zeta^2"])]
        n = 0
        for name, X in schemes.items():
            for fp in fps:
                for q in (2, 3):
                    a, b = point_count_fat(X, fp, q), point_count_scheme(arc_scheme(X, fp), q)
                    c.check(a == b, f"{name} {fp} q={q}: {a} != {b}")
                    n += 1
        c.check(n == 36, f"{n} triples")


# ---------------------------------------------------------------- 7

def test_criterion_07_igusa_series():
    with Criterion(7, "Igusa series of l_m and of two plane fat points", 60) as c:
        S = PolyRing(["x"])
        A1 = Germ(Ideal(PolyRing(["xi"]), []))
        for m in range(1, 5):
            rep = igusa_series(Ideal(S, [S("x") ** m]), A1, 8)
            want = [n - -(-n // m) for n in range(1, 9)]
            c.check([x.exponent for x in rep.coefficients] == want, f"m={m}: coefficients")
            reference = sum((Lsym * t) ** (-r) for r in range(m)) / (1 - Lsym ** (m - 1) * t ** m)
            c.check(rep.check_closed_form(reference), f"m={m}: reference closed form does not expand to the coefficients")
        P = PolyRing(["x", "y"])
        target = (t + Lsym * t ** 2) / (1 - Lsym * t ** 2)
        for gens in (["x^2", "y^2"], ["x^2", "x*y", "y^2"]):
            rep = igusa_series(Ideal(P, [P(g) for g in gens]), A1, 6)
            c.check(rep.check_closed_form(target), f"{gens}: exponents {[x.exponent for x in rep.coefficients]}")


# ---------------------------------------------------------------- 8

def test_criterion_08_hilbert_series():
    with Criterion(8, "jet lengths and polynomial tail fits", 10) as c:
        A2 = Germ(Ideal(PolyRing(["xi", "zeta"]), []))
        rep = hilbert_series(A2, 6)
        c.check([x.jet_length for x in rep.coefficients] == [n * (n + 1) // 2 for n in range(1, 7)], "A2 lengths")
        c.check(rep.extra["tail_fit_ok"], "A2 tail fit")
        R = PolyRing(["x", "y"])
        cusp = Germ(Ideal(R, [R("y^2 - x^3")]))
        rep = hilbert_series(cusp, 4)
        c.check([x.jet_length for x in rep.coefficients] == [1, 3, 5, 7], "cusp lengths")
        c.check(rep.extra["tail_fit_ok"], "cusp tail fit")
        rep = hilbert_series(Germ(Ideal(PolyRing(["xi"]), [])), 4)
        c.check(rep.extra["tail_fit_ok"], "A1 tail fit")


# ---------------------------------------------------------------- 9

def test_criterion_09_hilbert_kunz():
    with Criterion(9, "Frobenius transform lengths of the origin in A^2 and in the cusp", 30) as c:
        for p in (2, 3):
            R = PolyRing(["x", "y"], GF(p))
            O = Ideal(R, [R("x"), R("y")])
            for n in (1, 2):
                c.check(length(frobenius_transform(O, Ideal(R, []), n)) == p ** (2 * n), f"A2 p={p} n={n}")
                T = frobenius_transform(O, Ideal(R, [R("y^2 - x^3")]), n)
                want = hk_oracle({(0, 2): 1, (3, 0): -1}, p, n)
                c.check(length(T) == want, f"cusp p={p} n={n}: {length(T)} != {want}")


# ---------------------------------------------------------------- 10

def test_criterion_10_frobenius_adjunction():
    with Criterion(10, "Frobenius adjunction counts in characteristic 2", 30) as c:
        fp = line_point(2, field=GF(2))
        for gens, names in (([], ["x"]), (["x*y"], ["x", "y"])):
            R = PolyRing(names, GF(2))
            Y = Ideal(R, [R(g) for g in gens])
            for q in (2, 4):
                a, b = frobenius_adjunction_counts(Y, fp, q)
                c.check(a == b, f"{gens} q={q}: ({a}, {b})")


# ---------------------------------------------------------------- 11

def _random_step(rng, R):
    atoms = [closed(R, "x"), closed(R, "y"), closed(R, ["x", "y"]), cone(R, "x")]
    s = constant(Ideal(R, []), rng.randint(-2, 2))
    for m in atoms:
        if rng.random() < 0.7:
            s = step_combine("add", s, step_combine("scale", char_function(m), g=rng.randint(-3, 3)))
    return s


def test_criterion_11_motivic_integration():
    with Criterion(11, "linearity and locality of split integrals; integral of 1", 120) as c:
        R = PolyRing(["x", "y"])
        rng = random.Random(20240611)
        U = [~closed(R, "x"), ~closed(R, "y"), ~closed(R, "x + y - 1")]
        cover = []
        for idx in [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]:
            m = U[idx[0]]
            for i in idx[1:]:
                m = m & U[i]
            cover.append((idx, m))
        fps = [line_point(2), line_point(3)]
        for k in range(25):
            s, s2 = _random_step(rng, R), _random_step(rng, R)
            a = rng.randint(-3, 3)
            for fp in fps:
                for q in (2, 3):
                    lhs = integrate(step_combine("add", s, step_combine("scale", s2, g=a)), fp, q)
                    rhs = integrate(s, fp, q) + a * integrate(s2, fp, q)
                    c.check(lhs == rhs, f"linearity #{k} {fp} q={q}")
                    c.check(integrate_local(s, fp, cover, q).agrees, f"locality #{k} {fp} q={q}")
        one = constant(Ideal(R, []))
        for fp in corpus():
            c.check(integrate(one, fp, 2) == 1, f"integral of 1 along {fp}")


# ---------------------------------------------------------------- 12

def test_criterion_12_scissor_shadow():
    with Criterion(12, "completion splitting of A^1 and the projective line", 10) as c:
        S = PolyRing(["x"])
        for fp in (line_point(2), line_point(3)):
            for q in (2, 3):
                alg = FiniteAlgebra.from_fat_point(fp, q)
                total = count_on_algebra(whole(S), alg)
                punctured = count_on_algebra(~cone(S, "x"), alg)
                completion = count_on_algebra(cone(S, "x"), alg)
                c.check(total == punctured + completion, f"{fp} q={q}")
        R = PolyRing(["x", "y"])
        A1 = Ideal(S, [])
        H = Ideal(R, [R("x*y - 1")])
        for q in (2, 3, 5):
            n = inclusion_exclusion([((1,), A1), ((2,), A1), ((1, 2), H)], q)
            c.check(n == q + 1, f"P1 q={q}: {n}")


# ---------------------------------------------------------------- 13

def test_criterion_13_zariski_closure():
    with Criterion(13, "intersection ideal and image closure", 1) as c:
        R = PolyRing(["x", "y"])
        K = ideal_intersect(Ideal(R, [R("x")]), Ideal(R, [R("y")]))
        c.check(ideals_equal(K, Ideal(R, [R("x*y")])), f"(x) cap (y) = {K}")
        T = PolyRing(["xi"])
        C = image_closure(Ideal(T, [T("xi^4")]), {"t": "xi^2"}, ["t"])
        c.check(ideals_equal(C, Ideal(C.ring, [C.ring("t^2")])), f"closure {C}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
