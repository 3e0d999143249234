"""Weierstrass models for the genus-one members of a twist family.

Each helper returns (model, image of the given point) so that the order of the
point can be certified with certify_weierstrass_point.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import as_rat
from .quartic import OrderCertificate, WeierstrassModel, certify_weierstrass_point


def _shift(coeffs, x0):
    """Coefficients of g(X + x0), lowest degree first."""
    out = [Fraction(0)] * len(coeffs)
    # Horner on polynomials
    for c in reversed(coeffs):
        nxt = [Fraction(0)] * len(coeffs)
        for i, a in enumerate(out):
            if a:
                nxt[i] += a * x0
                if i + 1 < len(nxt):
                    nxt[i + 1] += a
        nxt[0] += c
        out = nxt
    return out


def quadratic_twist_model(f_coeffs, D, x, y):
    """D*y^2 = f(x) with deg f in {3, 4}.

    Cubic f: (x, y) -> (c3*D*x, c3*D^2*y) on Y^2 = X^3 + c2*D*X^2 + c1*c3*D^2*X + c0*c3^2*D^3.
    Quartic f: the degree-zero class (P) - (P'), P' = (x, -y), is sent to a point
    on a Weierstrass model with P' at infinity.
    """
    D, x, y = as_rat(D), as_rat(x), as_rat(y)
    f = [as_rat(c) for c in f_coeffs]
    while f and f[-1] == 0:
        f.pop()
    if D == 0:
        raise ValueError("twisting parameter is zero")
    if len(f) == 4:
        c0, c1, c2, c3 = f
        model = WeierstrassModel(a2=c2 * D, a4=c1 * c3 * D * D, a6=c0 * c3 * c3 * D ** 3)
        return model, (c3 * D * x, c3 * D * D * y)
    if len(f) == 5:
        if y == 0:
            raise ValueError("point has y = 0")
        g = _shift([D * c for c in f], x)
        q = -D * y
        e, d, c, b, a = g
        if e != q * q:
            raise ValueError("point is not on the curve")
        a1 = d / q
        a2 = c - d * d / (4 * q * q)
        a3 = 2 * q * b
        a4 = -4 * q * q * a
        model = WeierstrassModel(a1=a1, a2=a2, a3=a3, a4=a4, a6=a2 * a4)
        return model, (-a2, a1 * a2 - a3)
    raise ValueError("quadratic twist is genus one only for deg f in {3, 4}")


def odd_twist_model(D, k, x, y):
    """y^2 = D x^3 + k  ->  Y^2 = X^3 + k D^2 with (X, Y) = (D x, D y)."""
    D, k, x, y = as_rat(D), as_rat(k), as_rat(x), as_rat(y)
    return WeierstrassModel(a6=k * D * D), (D * x, D * y)


def even_twist_model(D, k, x, y):
    """y^2 = x^3 + k D is already in Weierstrass form."""
    D, k, x, y = as_rat(D), as_rat(k), as_rat(x), as_rat(y)
    return WeierstrassModel(a6=k * D), (x, y)


def certify_on_hyperelliptic(f_coeffs, x, y) -> OrderCertificate:
    """Order certificate for (x, y) on y^2 = f(x), deg f in {3, 4}."""
    model, P = quadratic_twist_model(f_coeffs, 1, x, y)
    return certify_weierstrass_point(model, P)
