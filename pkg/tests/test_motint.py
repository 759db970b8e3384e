from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fatarc import Ideal, LValue, PolyRing, char_function, closed, cone, constant, integrate, integrate_local
from fatarc import line_point, step_combine
from fatarc.errors import NotCertified

from conftest import corpus

R = PolyRing(["x", "y"])
A2 = Ideal(R, [])
ATOMS = [closed(R, "x"), closed(R, "y"), closed(R, ["x", "y"]), cone(R, "x")]


def random_step(draw_vals):
    s = None
    for m, v in zip(ATOMS, draw_vals):
        piece = step_combine("scale", char_function(m), g=v)
        s = piece if s is None else step_combine("add", s, piece)
    return s


@pytest.mark.parametrize("name", list(corpus()))
def test_integral_of_one(name):
    assert integrate(constant(A2), corpus()[name], 2) == 1


def test_symbolic_and_realized_agree():
    s = char_function(closed(R, "x"))
    assert integrate(s, line_point(2)) == LValue.power(-2)
    assert integrate(s, line_point(2), 2) == Fraction(1, 4)
    with pytest.raises(NotCertified):
        integrate(char_function(cone(R, "x")), line_point(2))
    assert integrate(char_function(cone(R, "x")), line_point(2), 2) == Fraction(1, 2)


vals = st.lists(st.integers(-3, 3), min_size=4, max_size=4)


@given(vals, vals, st.sampled_from(["l2", "l3"]), st.sampled_from([2, 3]))
def test_linearity(a, b, fpname, q):
    fp = corpus()[fpname]
    s, t = random_step(a), random_step(b)
    lhs = integrate(step_combine("add", s, t), fp, q)
    assert lhs == integrate(s, fp, q) + integrate(t, fp, q)
    assert integrate(step_combine("scale", s, g=3), fp, q) == 3 * integrate(s, fp, q)


def cover():
    U = [~closed(R, "x"), ~closed(R, "y"), ~closed(R, "x + y - 1")]
    out = []
    for idx in [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]:
        m = U[idx[0]]
        for i in idx[1:]:
            m = m & U[i]
        out.append((idx, m))
    return out


@given(vals, st.sampled_from(["l2", "l3"]), st.sampled_from([2, 3]))
def test_locality(a, fpname, q):
    res = integrate_local(random_step(a), corpus()[fpname], cover(), q)
    assert res.agrees


def test_fibers_are_disjoint_cells():
    s = step_combine("add", char_function(closed(R, "x")), char_function(closed(R, "y")))
    values = sorted(v for v, _ in s.fibers())
    assert values == [1, 1, 2]
