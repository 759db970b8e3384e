import itertools

import pytest
from hypothesis import given, strategies as st

from fatarc import Germ, Ideal, PolyRing, fp_product, jet, line_point, make_fat_point, plane_jet
from fatarc.errors import FiltrationViolated, NotFinite, NotSupportedAtOrigin
from fatarc.fatpoints import strongly_connected

from conftest import corpus


def test_lengths():
    assert line_point(5).length == 5
    assert plane_jet(3).length == 6
    assert make_fat_point(("xi", "zeta"), ["xi^2", "xi*zeta^2", "zeta^3"]).length == 5


def test_rejects_non_fat_points():
    with pytest.raises(NotFinite):
        make_fat_point(("xi", "zeta"), ["xi^2"])
    with pytest.raises(NotSupportedAtOrigin) as e:
        make_fat_point(("xi",), ["xi^2 - 1"])
    assert "translate" in str(e.value)


def test_default_basis_and_var_order():
    sq = make_fat_point(("xi", "zeta"), ["xi^2", "zeta^2"])
    assert [str(b) for b in sq.basis] == ["1", "zeta", "xi", "xi*zeta"]
    sq2 = make_fat_point(("xi", "zeta"), ["xi^2", "zeta^2"], var_order=("zeta", "xi"))
    assert [str(b) for b in sq2.basis] == ["1", "xi", "zeta", "xi*zeta"]


def test_user_basis_filtration_flag():
    R = PolyRing(["x", "y"])
    I = Ideal(R, [R("x^2 - y^3")] + [R.monomial(e) for e in [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]])
    given = ["1", "x", "y", "x^2", "x*y", "y^2", "x*y^2"]
    from fatarc.fatpoints import FatPoint
    fp = FatPoint(I, basis=given)
    assert fp.length == 7
    assert [str(b) for b in fp.basis] == given
    assert fp.basis.is_filtration is False
    with pytest.raises(ValueError):
        FatPoint(I, basis=["1", "x", "x", "x^2", "x*y", "y^2", "x*y^2"])


def test_user_basis_must_start_with_one():
    from fatarc.fatpoints import FatPoint
    R = PolyRing(["xi"])
    with pytest.raises((ValueError, FiltrationViolated)):
        FatPoint(Ideal(R, [R("xi^2")]), basis=["xi", "1"])


@pytest.mark.parametrize("name", list(corpus()))
def test_good_basis_properties(name):
    fp = corpus()[name]
    b = fp.basis
    assert str(b.elements[0]) == "1"
    # every non-constant basis element lies in the maximal ideal
    for e in b.elements[1:]:
        assert e.constant_term() == 0
    # coords and element invert each other
    for j, e in enumerate(b.elements):
        vec = fp.coords(e)
        assert vec == [1 if i == j else 0 for i in range(fp.length)]
        assert fp.element(vec) - e in fp.ideal


@pytest.mark.parametrize("name", list(corpus()))
def test_structure_constants_commutative_associative(name):
    fp = corpus()[name]
    n = fp.length
    units = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    zero = fp.field(0)
    mul = lambda u, v: fp.vec_mul(u, v, zero)
    for u, v in itertools.product(units, repeat=2):
        assert mul(u, v) == mul(v, u)
    for u, v, w in itertools.product(units, repeat=3):
        assert mul(mul(u, v), w) == mul(u, mul(v, w))
    assert mul(units[0], units[-1]) == units[-1]


@given(st.integers(1, 4), st.integers(1, 4))
def test_length_multiplicative(a, b):
    p = fp_product(line_point(a), line_point(b))
    assert p.length == a * b
    assert p.ring.names == ("xi", "xi1")


def test_jets_of_cusp():
    R = PolyRing(["x", "y"])
    g = Germ(Ideal(R, [R("y^2 - x^3")]), name="cusp")
    assert [jet(g, n).length for n in range(1, 5)] == [1, 3, 5, 7]


def test_germ_off_origin_is_translated():
    R = PolyRing(["x", "y"])
    g = Germ(Ideal(R, [R("y - x^2")]), (1, 1))
    assert jet(g, 3).length == 3
    with pytest.raises(ValueError):
        Germ(Ideal(R, [R("y - x^2")]), (1, 2))


def test_strongly_connected():
    R = PolyRing(["x", "y"])
    assert strongly_connected([Ideal(R, [R("x")]), Ideal(R, [R("y")])])
    assert not strongly_connected([Ideal(R, [R("x")]), Ideal(R, [R("x - 1")])])
