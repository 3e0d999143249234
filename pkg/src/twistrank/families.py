"""The five twist-family constructions.

Every constructor returns a TwistFamily whose points have already been checked
against their curve equations with rf_equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm

from .algebra import FactoredRF, MPoly, as_rat, is_squarefree, rf_equal, rf_sum, serialize_poly
from .genus_one import certify_on_hyperelliptic
from .quartic import double_C_explicit, double_H_explicit

FAMILIES = ("A", "A3", "B", "B3", "C")
CHECK_SAMPLES = 5
CHECK_SEED = 0


class InputError(ValueError):
    """Invalid family inputs; the message names the violated precondition."""


@dataclass(frozen=True)
class FamilyInputs:
    family: str
    m: tuple
    constants: tuple
    f: MPoly | None = None
    base_point: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(k) for k in self.m))
        object.__setattr__(self, "constants", tuple(as_rat(k) for k in self.constants))
        if self.base_point is not None:
            object.__setattr__(self, "base_point", tuple(as_rat(k) for k in self.base_point))


@dataclass(frozen=True)
class CurveModel:
    """One twisted curve.

    kind 'quadratic':  D*y^2 = f(x)
    kind 'odd':        y^2 = D*x^m + k
    kind 'even':       y^2 = x^m + k*D
    """

    kind: str
    m: int
    constant: Fraction = Fraction(1)
    f: MPoly | None = None

    def sides(self, D, x, y):
        """(lhs, rhs) as lists of FactoredRF terms (read as sums)."""
        if self.kind == "quadratic":
            rhs = [x ** k * c for k, c in enumerate(self.f.univariate_coeffs("x")) if c]
            return [D * y * y], rhs
        if self.kind == "odd":
            return [y * y], [D * x ** self.m, FactoredRF.constant(self.constant)]
        if self.kind == "even":
            return [y * y], [x ** self.m, D * self.constant]
        raise ValueError(f"unknown curve kind {self.kind!r}")

    def holds(self, D, x, y) -> bool:
        """Exact check at rational values."""
        if self.kind == "quadratic":
            fx = sum(c * x ** k for k, c in enumerate(self.f.univariate_coeffs("x")))
            return D * y * y == fx
        if self.kind == "odd":
            return y * y == D * x ** self.m + self.constant
        return y * y == x ** self.m + self.constant * D

    @property
    def genus(self) -> int:
        deg = self.f.degree("x") if self.kind == "quadratic" else self.m
        return (deg - 1) // 2

    def equation_string(self) -> str:
        k = str(self.constant)
        if self.kind == "quadratic":
            return f"D*y^2 = {serialize_poly(self.f)}"
        if self.kind == "odd":
            return f"y^2 = D*x^{self.m} + {k}"
        return f"y^2 = x^{self.m} + {k}*D"


@dataclass(frozen=True)
class RationalPoint:
    curve_index: int
    x: FactoredRF
    y: FactoredRF


@dataclass(frozen=True)
class TwistFamily:
    inputs: FamilyInputs
    M: int
    M_i: tuple
    w: tuple
    T: FactoredRF
    D: FactoredRF
    curves: tuple
    points: tuple
    variables: tuple
    # exponents of the named building blocks of T, D and the quadratic-twist point
    atoms: dict = field(default_factory=dict, compare=False)

    @property
    def family(self) -> str:
        return self.inputs.family

    def with_point(self, index: int, x=None, y=None) -> "TwistFamily":
        """Copy with one point replaced (used for mutation tests)."""
        pts = list(self.points)
        p = pts[index]
        pts[index] = RationalPoint(p.curve_index, p.x if x is None else x, p.y if y is None else y)
        return replace(self, points=tuple(pts))


# ---------------------------------------------------------------------------
# validation


def _require(cond, message):
    if not cond:
        raise InputError(message)


def _check_m(m, count):
    _require(len(m) == count, f"expected {count} exponent(s) m, got {len(m)}")
    _require(all(k >= 3 and k % 2 == 1 for k in m), "m_i must be odd integers >= 3")


def _check_constants(consts, count):
    _require(len(consts) == count, f"expected {count} constant(s), got {len(consts)}")
    _require(all(k != 0 for k in consts), "constants must be nonzero")


def _check_f(f, degrees=None):
    _require(f is not None, "f is required for this family")
    try:
        coeffs = f.univariate_coeffs("x")
    except ValueError as exc:
        raise InputError("f must be univariate in x") from exc
    deg = len(coeffs) - 1
    _require(deg >= 3, "f must have degree at least 3")
    if degrees is not None:
        _require(deg in degrees, "f must have degree 3 or 4")
    _require(is_squarefree(f), "f is not square-free")


def _check_base_point(f, base_point):
    _require(base_point is not None and len(base_point) == 2, "a base point (u, y_u) is required")
    u, yu = base_point
    _require(yu != 0, "base point must have y_u != 0")
    _require(f.evaluate({"x": u}) == yu * yu, "base point is not on y^2 = f(x)")
    cert = certify_on_hyperelliptic(f.univariate_coeffs("x"), u, yu)
    _require(cert.infinite, f"base point is torsion of order {cert.order}")


def _nonzero(r: FactoredRF, message):
    _require(not r.is_zero(), message)
    return r


# ---------------------------------------------------------------------------
# building blocks


def _f_of(f: MPoly, var: str) -> FactoredRF:
    return FactoredRF.from_poly(f.rename("x", var))


def _sq_minus(w: FactoredRF, k) -> FactoredRF:
    return rf_sum([w * w, FactoredRF.constant(-as_rat(k))])


def _v(i: int, power: int = 1) -> FactoredRF:
    return FactoredRF.var(f"v{i}", power)


def _exponents(m):
    M = lcm(*m)
    return M, tuple(M // k for k in m)


def _combine(**parts):
    """Sum of atom-exponent dicts scaled by integer weights: name=(dict, weight)."""
    out = {}
    for d, k in parts.values():
        for name, e in d.items():
            out[name] = out.get(name, 0) + k * e
    return {n: e for n, e in out.items() if e}


def _check_points(curves, points, D):
    for p in points:
        lhs, rhs = curves[p.curve_index].sides(D, p.x, p.y)
        if not rf_equal(lhs, rhs, samples=CHECK_SAMPLES, seed=CHECK_SEED):
            raise AssertionError(f"point on curve {p.curve_index} fails its equation")


def _finish(inputs, M, M_i, w, T, D, curves, points, variables, atoms):
    _check_points(curves, points, D)
    return TwistFamily(inputs, M, M_i, tuple(w), T, D, tuple(curves), tuple(points), variables, atoms)


# ---------------------------------------------------------------------------
# constructors


def construct_A(inputs: FamilyInputs) -> TwistFamily:
    """D = (w1^2 - a^2) v1^{2m1} T^M with T = f(u) / (v3^{2m3} (w3^2 - c^2))."""
    _check_f(inputs.f)
    _check_m(inputs.m, 3)
    _check_constants(inputs.constants, 3)
    return _build_A(inputs, inputs.m, inputs.constants)


def construct_A_rank3(inputs: FamilyInputs) -> TwistFamily:
    """Rank-3 variant: m1 = m2 = m3 = m, a = b = c; all three points on one curve."""
    _check_f(inputs.f)
    _check_m(inputs.m, 1)
    _check_constants(inputs.constants, 1)
    return _build_A(inputs, inputs.m * 3, inputs.constants * 3, single=True)


def _build_A(inputs, m, consts, single=False):
    a, b, c = consts
    M, M_i = _exponents(m)
    w = double_C_explicit(a, b, c, m)
    w1c = _nonzero(_sq_minus(w[0], a * a), "w1^2 - a^2 vanishes identically")
    w3c = _nonzero(_sq_minus(w[2], c * c), "w3^2 - c^2 vanishes identically")
    fu = _f_of(inputs.f, "u")
    T = fu / (_v(3, 2 * m[2]) * w3c)
    D = w1c * _v(1, 2 * m[0]) * T ** M
    half = (M - 1) // 2

    t_atoms = {"f(u)": 1, "v3": -2 * m[2], "w3^2-c^2": -1}
    atoms = {
        "T": t_atoms,
        "D": _combine(t=(t_atoms, M), w=({"w1^2-a^2": 1, "v1": 2 * m[0]}, 1)),
        "y_P": _combine(t=(t_atoms, -half)),
    }
    curves = [CurveModel("quadratic", inputs.f.degree("x"), Fraction(1), inputs.f)]
    points = [RationalPoint(0, FactoredRF.var("u"), T ** -half)]
    if single:
        curves.append(CurveModel("odd", m[0], a * a))
        for i in range(3):
            points.append(RationalPoint(1, 1 / (_v(i + 1, 2) * T), w[i]))
    else:
        for i, k in enumerate(consts):
            curves.append(CurveModel("odd", m[i], k * k))
            points.append(RationalPoint(i + 1, 1 / (_v(i + 1, 2) * T ** M_i[i]), w[i]))
    return _finish(inputs, M, M_i, w, T, D, curves, points, ("u", "v1", "v2", "v3"), atoms)


def construct_B(inputs: FamilyInputs) -> TwistFamily:
    """D = f(u) T^{M-1} with T = (w1^2 - a^2 f(u)) / v1^{2m1}; u is the base point."""
    _check_f(inputs.f, degrees=(3, 4))
    _check_m(inputs.m, 3)
    _check_constants(inputs.constants, 3)
    _check_base_point(inputs.f, inputs.base_point)
    return _build_B(inputs, inputs.m, inputs.constants)


def construct_B_rank3(inputs: FamilyInputs) -> TwistFamily:
    _check_f(inputs.f, degrees=(3, 4))
    _check_m(inputs.m, 1)
    _check_constants(inputs.constants, 1)
    _check_base_point(inputs.f, inputs.base_point)
    return _build_B(inputs, inputs.m * 3, inputs.constants * 3, single=True)


def _build_B(inputs, m, consts, single=False):
    a, b, c = consts
    u, yu = inputs.base_point
    fu = yu * yu
    M, M_i = _exponents(m)
    w = double_H_explicit(a, b, c, m, yu)
    ts = []
    for i, k in enumerate(consts):
        num = _nonzero(_sq_minus(w[i], k * k * fu), "T vanishes identically")
        ts.append(num / _v(i + 1, 2 * m[i]))
    T = ts[0]
    for other in ts[1:]:
        if not rf_equal(T, other, samples=CHECK_SAMPLES, seed=CHECK_SEED):
            raise AssertionError("the three expressions for T disagree")
    D = T ** (M - 1) * fu
    half = (M - 1) // 2

    t_atoms = {"w1^2-a^2*f(u)": 1, "v1": -2 * m[0]}
    atoms = {
        "T": t_atoms,
        "D": _combine(t=(t_atoms, M - 1)),
        "y_P": _combine(t=(t_atoms, -half)),
    }
    curves = [CurveModel("quadratic", inputs.f.degree("x"), Fraction(1), inputs.f)]
    points = [RationalPoint(0, FactoredRF.constant(u), T ** -half)]
    if single:
        curves.append(CurveModel("even", m[0], a * a))
        for i in range(3):
            points.append(RationalPoint(1, _v(i + 1, 2) * T, w[i] * T ** half))
    else:
        for i, k in enumerate(consts):
            curves.append(CurveModel("even", m[i], k * k))
            points.append(RationalPoint(i + 1, _v(i + 1, 2) * T ** M_i[i], w[i] * T ** half))
    return _finish(inputs, M, M_i, w, T, D, curves, points, ("v1", "v2", "v3"), atoms)


def construct_C(inputs: FamilyInputs) -> TwistFamily:
    """Three odd twists and one even twist y^2 = x^{m4} + d*D."""
    _check_m(inputs.m, 4)
    _check_constants(inputs.constants, 4)
    m = inputs.m
    a, b, c, d = inputs.constants
    M, M_i = _exponents(m)
    w = double_C_explicit(a, b, c, m[:3])
    w1c = _nonzero(_sq_minus(w[0], a * a), "w1^2 - a^2 vanishes identically")
    w3c = _sq_minus(w[2], c * c)
    den = _nonzero(
        rf_sum([_v(4, 2 * m[3]), w3c * _v(3, 2 * m[2]) * d]),
        "denominator of T vanishes identically",
    )
    T = FactoredRF.var("u", 2) / den
    D = w1c * _v(1, 2 * m[0]) * T ** M
    half = (M - 1) // 2

    t_atoms = {"u": 2, "v4^(2m4)+d*(w3^2-c^2)*v3^(2m3)": -1}
    atoms = {
        "T": t_atoms,
        "D": _combine(t=(t_atoms, M), w=({"w1^2-a^2": 1, "v1": 2 * m[0]}, 1)),
    }
    curves, points = [], []
    for i, k in enumerate((a, b, c)):
        curves.append(CurveModel("odd", m[i], k * k))
        points.append(RationalPoint(i, 1 / (_v(i + 1, 2) * T ** M_i[i]), w[i]))
    curves.append(CurveModel("even", m[3], d))
    points.append(RationalPoint(3, _v(4, 2) * T ** M_i[3], FactoredRF.var("u") * T ** half))
    return _finish(inputs, M, M_i, w, T, D, curves, points, ("u", "v1", "v2", "v3", "v4"), atoms)


CONSTRUCTORS = {
    "A": construct_A,
    "A3": construct_A_rank3,
    "B": construct_B,
    "B3": construct_B_rank3,
    "C": construct_C,
}


def construct(inputs: FamilyInputs) -> TwistFamily:
    if inputs.family not in CONSTRUCTORS:
        raise InputError(f"unknown family {inputs.family!r}; expected one of {', '.join(FAMILIES)}")
    return CONSTRUCTORS[inputs.family](inputs)
