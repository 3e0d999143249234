from fractions import Fraction

import pytest

from gen import c_specialization, h_specialization, rng
from twistrank.algebra import FactoredRF, rf_eval
from twistrank.quartic import (
    INFINITY,
    NotRationalError,
    ProjPoint,
    QICurve,
    WeierstrassModel,
    certify_infinite_order,
    certify_weierstrass_point,
    contains,
    curve_C,
    curve_H,
    default_origin,
    double_C_explicit,
    double_H_explicit,
    group_add,
    group_mul,
    group_neg,
    is_nonsingular,
    normal_form_curve,
    reduce_to_weierstrass,
    two_torsion,
)

C123 = normal_form_curve(1, 2, 3)
O = ProjPoint.of(1, 1, 1, 0)
Q = ProjPoint.of(1, 2, 3, 1)


def test_contains():
    assert contains(C123, Q)
    assert contains(C123, O)
    assert not contains(C123, ProjPoint.of(1, 1, 1, 1))


def test_nonsingular():
    assert is_nonsingular(C123)
    assert not is_nonsingular(normal_form_curve(1, 1, 3))
    assert not is_nonsingular(normal_form_curve(0, 0, 0))


def test_two_torsion_c123():
    pts = set(two_torsion(C123))
    want = {ProjPoint.of(1, 1, 1, 0), ProjPoint.of(1, -1, -1, 0), ProjPoint.of(-1, 1, -1, 0), ProjPoint.of(-1, -1, 1, 0)}
    assert pts == want


def test_two_torsion_scaled():
    curve = curve_C(1, 1, 1, (3, 3, 3), (1, 2, 1))
    assert ProjPoint.of(8, 1, 8, 0) in two_torsion(curve)
    assert all(contains(curve, T) for T in two_torsion(curve))


def test_two_torsion_not_rational():
    with pytest.raises(NotRationalError, match="two-torsion not rational"):
        two_torsion(QICurve((1, 2, 1), (0, 1, 3)))


def test_double_c_symmetric():
    assert double_C_explicit(1, 1, 1, (3, 3, 3), (1, 1, 1)) == (Fraction(1, 2),) * 3


def test_double_c_symbolic_w1():
    w1, _, _ = double_C_explicit(1, 2, 3, (5, 9, 13))
    v1, v2, v3 = (FactoredRF.var(f"v{i}") for i in (1, 2, 3))
    want = [v3 ** 13 * Fraction(3, 4) / v2 ** 9, v2 ** 9 / (v3 ** 13 * 3), -(v2 ** 9 * v3 ** 13 * 3) / v1 ** 10]
    point = {"v1": 2, "v2": -3, "v3": 5}
    assert rf_eval(w1, point) == sum(rf_eval(t, point) for t in want)


def test_double_h_symmetric():
    assert double_H_explicit(1, 1, 1, (3, 3, 3), 5, (1, 1, 1)) == (Fraction(5, 2),) * 3


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, 1, 1)])
def test_double_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        if bad[0] == 0:
            double_C_explicit(*bad, (3, 3, 3))
        else:
            double_C_explicit(*bad, (3, 4, 3))


def test_reduce_c123():
    model, maps = reduce_to_weierstrass(C123, O)
    assert model.discriminant() != 0
    assert maps.forward(O) is INFINITY
    assert maps.backward(maps.forward(Q)) == Q
    for T in two_torsion(C123):
        assert model.mul(2, maps.forward(T)) is INFINITY


def test_reduce_from_affine_origin():
    model, maps = reduce_to_weierstrass(C123, Q)
    assert maps.forward(Q) is INFINITY
    assert maps.backward(maps.forward(O)) == O


def test_certificate_c123():
    cert = certify_infinite_order(C123, O, Q)
    assert cert.infinite
    assert cert.checked == (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)
    for T in two_torsion(C123)[1:]:
        assert certify_infinite_order(C123, O, T).order == 2


def test_certificate_torsion_six():
    cert = certify_weierstrass_point(WeierstrassModel(a6=1), (2, 3))
    assert not cert.infinite and cert.order == 6


def test_group_laws_c123():
    P2 = group_mul(C123, O, 2, Q)
    P3 = group_mul(C123, O, 3, Q)
    assert group_add(C123, O, Q, O) == Q
    assert group_add(C123, O, Q, P2) == group_add(C123, O, P2, Q) == P3
    assert group_add(C123, O, group_add(C123, O, Q, P2), P3) == group_add(C123, O, Q, group_add(C123, O, P2, P3))
    neg = group_neg(C123, O, Q)
    assert neg == ProjPoint.of(1, 2, 3, -1)
    assert group_add(C123, O, Q, neg) == O
    assert P2 == ProjPoint.of(Fraction(-23, 12), Fraction(31, 12), Fraction(41, 12), 1)


def test_forward_is_homomorphism():
    model, maps = reduce_to_weierstrass(C123, O)
    P2 = group_mul(C123, O, 2, Q)
    T = two_torsion(C123)[1]
    for A, B in ((Q, P2), (P2, T), (Q, T)):
        assert maps.forward(group_add(C123, O, A, B)) == model.add(maps.forward(A), maps.forward(B))


def test_singular_curve_rejected():
    curve = curve_C(1, 1, 1, (3, 3, 3), (1, 1, 1))
    assert not is_nonsingular(curve)
    with pytest.raises(ValueError, match="singular"):
        group_add(curve, default_origin(curve), (1, 1, 1, 1), (1, 1, 1, 1))


@pytest.mark.parametrize("seed", range(6))
def test_explicit_doubling_matches_group_law(seed):
    r = rng(seed)
    a, b, c, m, v = c_specialization(r)
    curve = curve_C(a, b, c, m, v)
    w = double_C_explicit(a, b, c, m, v)
    assert group_add(curve, default_origin(curve), (a, b, c, 1), (a, b, c, 1)) == ProjPoint.of(*w, 1)
    a, b, c, m, v, y = h_specialization(r)
    curve = curve_H(a, b, c, m, v, y)
    P = (a * y, b * y, c * y, 1)
    w = double_H_explicit(a, b, c, m, y, v)
    assert contains(curve_H(a, b, c, m, v, y), ProjPoint.of(*w, 1))
    assert group_add(curve, default_origin(curve), P, P) == ProjPoint.of(*w, 1)
