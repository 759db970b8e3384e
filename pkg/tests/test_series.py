import pytest

from fatarc import GF, Germ, Ideal, LValue, PolyRing, auto_igusa, hilbert_kunz_series, hilbert_series
from fatarc import igusa_series, milnor_series
from fatarc.series import Lsym as Ls, expand_closed_form, laurent_coefficients, t

A1 = Germ(Ideal(PolyRing(["xi"]), []), name="A1")
A2 = Germ(Ideal(PolyRing(["xi", "zeta"]), []), name="A2")


def test_laurent_expansion():
    co = laurent_coefficients(t / (1 - Ls * t), 4)
    assert [co[k] for k in range(1, 5)] == [LValue.power(k - 1) for k in range(1, 5)]
    co = laurent_coefficients(1 / (t * (1 - t)), 2)
    assert set(co) == {-1, 0, 1, 2}
    with pytest.raises(ValueError):
        expand_closed_form(1 / (1 - t), 3)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_igusa_of_line_points(m):
    S = PolyRing(["x"])
    rep = igusa_series(Ideal(S, [S("x")**m]), A1, 8)
    assert [c.exponent for c in rep.coefficients] == [n - -(-n // m) for n in range(1, 9)]
    corrected = sum(Ls**(m - 1 - r) * t**(m - r) for r in range(m)) / (1 - Ls**(m - 1) * t**m)
    assert rep.check_closed_form(corrected)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_naive_line_form_has_constant_term(m):
    naive = sum((Ls * t)**(-r) for r in range(m)) / (1 - Ls**(m - 1) * t**m)
    assert any(k <= 0 for k in laurent_coefficients(naive, 4))


@pytest.mark.parametrize("gens", [["x^2", "y^2"], ["x^2", "x*y", "y^2"]])
def test_igusa_of_plane_fat_points(gens):
    S = PolyRing(["x", "y"])
    rep = igusa_series(Ideal(S, [S(g) for g in gens]), A1, 6)
    assert [c.exponent for c in rep.coefficients] == [0, 2, 2, 4, 4, 6]
    assert rep.check_closed_form((t + Ls**2 * t**2) / (1 - Ls**2 * t**2))
    assert not rep.check_closed_form((t + Ls * t**2) / (1 - Ls * t**2))


def test_hilbert_series():
    rep = hilbert_series(A2, 6)
    assert [c.jet_length for c in rep.coefficients] == [n * (n + 1) // 2 for n in range(1, 7)]
    assert rep.extra["tail_fit_ok"] and rep.extra["tail_fit"] == ["0", "1/2", "1/2"]
    S = PolyRing(["x", "y"])
    cusp = Germ(Ideal(S, [S("y^2 - x^3")]))
    rep = hilbert_series(cusp, 5)
    assert [c.jet_length for c in rep.coefficients] == [1, 3, 5, 7, 9]
    assert rep.extra["tail_fit"] == ["-1", "2"] and rep.extra["tail_fit_ok"]
    assert hilbert_series(A1, 4).extra["tail_fit"] == ["0", "1"]


def test_auto_igusa_plane_jets():
    rep = auto_igusa(A2, 3)
    assert [c.dim for c in rep.coefficients] == [0, 4, 10]
    assert [c.exponent for c in rep.coefficients] == [-2, -2, -2]


def test_hilbert_kunz_char_p():
    R = PolyRing(["x", "y"], GF(2))
    rep = hilbert_kunz_series(Ideal(R, [R("x"), R("y")]), Ideal(R, [R("y^2 - x^3")]), 3)
    assert [c.jet_length for c in rep.coefficients] == [4, 8, 16]
    assert rep.extra["p"] == 2


def test_milnor_series_shape():
    S = PolyRing(["x", "y"])
    rep = milnor_series(S("x^2 + y^3"), A1, 3)
    assert [c.jet_length for c in rep.coefficients] == [1, 2, 3]
    assert [c.dim for c in rep.coefficients] == [1, 2, 3]
    assert "- 1" in rep.coefficients[2].ideal
    with pytest.raises(ValueError):
        milnor_series(PolyRing(["xi", "y"])("xi*y"), A1, 2)


def test_report_json():
    S = PolyRing(["x"])
    rep = igusa_series(Ideal(S, [S("x^2")]), A1, 3)
    js = rep.to_json()
    assert js["kind"] == "igusa" and len(js["coefficients"]) == 3
    assert js["coefficients"][1]["L_coeff"] == {"num": [0, 1], "den": [1]}
