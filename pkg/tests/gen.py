"""Random generators shared by the test modules."""

import random
from fractions import Fraction

from twistrank.algebra import MPoly, is_squarefree
from twistrank.families import FamilyInputs
from twistrank.genus_one import certify_on_hyperelliptic
from twistrank.quartic import curve_C, curve_H, is_nonsingular

ODD_M = (3, 5, 7, 9)


def nonzero(rng, lo=-10, hi=10):
    while True:
        k = rng.randint(lo, hi)
        if k:
            return k


def squarefree_f(rng, degrees=(3, 4, 5)):
    while True:
        deg = rng.choice(degrees)
        coeffs = [rng.randint(-5, 5) for _ in range(deg)] + [nonzero(rng, -3, 3)]
        f = MPoly.univariate(coeffs)
        if is_squarefree(f):
            return f


def c_specialization(rng):
    """(a, b, c, m, v) giving a nonsingular C-type curve."""
    while True:
        a, b, c = (nonzero(rng, -6, 6) for _ in range(3))
        m = tuple(rng.choice((3, 5)) for _ in range(3))
        v = tuple(Fraction(nonzero(rng, -3, 3), rng.randint(1, 3)) for _ in range(3))
        if is_nonsingular(curve_C(a, b, c, m, v)):
            return a, b, c, m, v


def h_specialization(rng):
    while True:
        a, b, c = (nonzero(rng, -6, 6) for _ in range(3))
        y_u = nonzero(rng, -9, 9)
        m = tuple(rng.choice((3, 5)) for _ in range(3))
        v = tuple(Fraction(nonzero(rng, -3, 3), rng.randint(1, 3)) for _ in range(3))
        if is_nonsingular(curve_H(a, b, c, m, v, y_u)):
            return a, b, c, m, v, y_u


def b_base(rng):
    """(f, (u, y_u)) with deg f in {3, 4}, square-free, and (u, y_u) of infinite order."""
    while True:
        deg = rng.choice((3, 4))
        u, yu = nonzero(rng, -4, 4), nonzero(rng, -6, 6)
        coeffs = [0] + [rng.randint(-4, 4) for _ in range(deg - 1)] + [nonzero(rng, -2, 2)]
        coeffs[0] = yu * yu - sum(k * u ** i for i, k in enumerate(coeffs))
        f = MPoly.univariate(coeffs)
        if not is_squarefree(f):
            continue
        if certify_on_hyperelliptic(coeffs, u, yu).infinite:
            return f, (u, yu)


def random_inputs(rng, family):
    if family in ("A", "A3"):
        count = 3 if family == "A" else 1
        return FamilyInputs(
            family,
            tuple(rng.choice(ODD_M) for _ in range(count)),
            tuple(nonzero(rng) for _ in range(count)),
            squarefree_f(rng),
        )
    if family in ("B", "B3"):
        count = 3 if family == "B" else 1
        f, bp = b_base(rng)
        return FamilyInputs(
            family,
            tuple(rng.choice(ODD_M) for _ in range(count)),
            tuple(nonzero(rng) for _ in range(count)),
            f,
            bp,
        )
    return FamilyInputs(
        "C", tuple(rng.choice(ODD_M) for _ in range(4)), tuple(nonzero(rng) for _ in range(4))
    )


def rng(seed):
    return random.Random(seed)
