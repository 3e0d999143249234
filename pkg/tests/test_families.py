from fractions import Fraction

import pytest

from gen import random_inputs, rng
from twistrank.algebra import FactoredRF, parse_poly, rf_equal, rf_eval, rf_signflip
from twistrank.families import FamilyInputs, InputError, construct

F = Fraction


def test_example_exponents():
    fam = construct(FamilyInputs("A", (5, 9, 13), (1, 2, 3), parse_poly("x^5+x+1")))
    assert fam.M == 585
    assert fam.M_i == (117, 65, 45)
    assert fam.atoms["D"]["v3"] == -15210
    assert fam.atoms["y_P"] == {"f(u)": -292, "v3": 7592, "w3^2-c^2": 292}


def test_family_a_hand_values():
    fam = construct(FamilyInputs("A", (3, 3, 3), (1, 1, 1), parse_poly("x^3+1")))
    at = {"v1": 1, "v2": 1, "v3": 1}
    u = FactoredRF.var("u")
    T = fam.T.substitute(at)
    assert rf_equal(T, (u ** 3 + 1) * F(-4, 3))
    assert rf_equal(fam.D.substitute(at), (u ** 3 + 1) ** 3 * F(16, 9))
    one = dict(at, u=1)
    assert rf_eval(fam.points[0].y, one) == F(-3, 8)
    x1, y1 = rf_eval(fam.points[1].x, one), rf_eval(fam.points[1].y, one)
    assert (x1, y1) == (F(-3, 8), F(1, 2))
    assert y1 ** 2 == rf_eval(fam.D, one) * x1 ** 3 + 1


def test_family_b_hand_values():
    fam = construct(FamilyInputs("B", (3, 3, 3), (1, 1, 1), parse_poly("x^3-2"), (3, 5)))
    at = {"v1": 1, "v2": 1, "v3": 1}
    assert [rf_eval(w, at) for w in fam.w] == [F(5, 2)] * 3
    T, D = rf_eval(fam.T, at), rf_eval(fam.D, at)
    assert (T, D) == (F(-75, 4), F(140625, 16))
    x, y = rf_eval(fam.points[1].x, at), rf_eval(fam.points[1].y, at)
    assert (x, y) == (F(-75, 4), F(-375, 8))
    assert y ** 2 == F(140625, 64) == x ** 3 + D
    assert D * rf_eval(fam.points[0].y, at) ** 2 == 25


def test_family_c_hand_values():
    fam = construct(FamilyInputs("C", (3, 3, 3, 3), (1, 1, 1, 1)))
    at = {"v1": 1, "v2": 1, "v3": 1, "v4": 1}
    u = FactoredRF.var("u")
    assert rf_equal(fam.T.substitute(at), u ** 2 * 4)
    assert rf_equal(fam.D.substitute(at), u ** 6 * -48)
    x4, y4 = fam.points[3].x.substitute(at), fam.points[3].y.substitute(at)
    assert rf_equal(x4, u ** 2 * 4) and rf_equal(y4, u ** 3 * 4)
    assert rf_equal(fam.points[0].x.substitute(at), 1 / (u ** 2 * 4))


def test_c_exponents():
    fam = construct(FamilyInputs("C", (3, 5, 9, 15), (1, 2, 3, 4)))
    assert fam.M == 45 and fam.M_i == (15, 9, 5, 3)


def test_rank3_symmetric_points():
    fam = construct(FamilyInputs("A3", (3,), (1,), parse_poly("x^3+1")))
    at = {"u": 2, "v1": 1, "v2": 1, "v3": 1}
    vals = {(rf_eval(p.x, at), rf_eval(p.y, at)) for p in fam.points[1:]}
    assert len(vals) == 1
    for i in (1, 2, 3):
        assert rf_signflip(fam.D, i) == fam.D


def test_b3_invariants():
    fam = construct(FamilyInputs("B3", (3,), (1,), parse_poly("x^3-2"), (3, 5)))
    for i in (1, 2, 3):
        assert rf_equal(rf_signflip(fam.T, i), fam.T)
        assert rf_equal(rf_signflip(fam.D, i), fam.D)


@pytest.mark.parametrize(
    "inputs, message",
    [
        (FamilyInputs("A", (3, 3, 3), (1, 1, 1), parse_poly("x^3-x^2")), "f is not square-free"),
        (FamilyInputs("A", (3, 3, 3), (1, 1, 1), parse_poly("x^2+1")), "degree at least 3"),
        (FamilyInputs("A", (3, 4, 3), (1, 1, 1), parse_poly("x^3+1")), "odd"),
        (FamilyInputs("A", (3, 1, 3), (1, 1, 1), parse_poly("x^3+1")), "odd"),
        (FamilyInputs("C", (3, 3, 3, 3), (1, 1, 0, 1)), "nonzero"),
        (FamilyInputs("B", (3, 3, 3), (1, 1, 1), parse_poly("x^3+1"), (2, 3)), "torsion of order 6"),
        (FamilyInputs("B", (3, 3, 3), (1, 1, 1), parse_poly("x^5+1"), (0, 1)), "degree 3 or 4"),
        (FamilyInputs("B", (3, 3, 3), (1, 1, 1), parse_poly("x^3-2"), (3, 4)), "not on"),
        (FamilyInputs("Z", (3,), (1,)), "unknown family"),
    ],
)
def test_validation(inputs, message):
    with pytest.raises(InputError, match=message):
        construct(inputs)


@pytest.mark.parametrize("family", ["A", "A3", "B", "B3", "C"])
def test_random_families_construct(family):
    r = rng(["A", "A3", "B", "B3", "C"].index(family))
    for _ in range(3):
        fam = construct(random_inputs(r, family))
        assert all(k * mi == fam.M for k, mi in zip(fam.M_i, fam.inputs.m))
        assert fam.M % 2 == 1
        assert not fam.D.is_constant()
