"""Genus-one curves cut out by two diagonal quadrics in P^3.

A curve here is the set of [p:q:r:w] with

    lam1*p^2 - kap1*w^2 = lam2*q^2 - kap2*w^2 = lam3*r^2 - kap3*w^2.

The group law at rational specializations goes through an explicit
Weierstrass model: project from the chosen origin to a plane cubic, then
reduce the cubic (flex case or Nagell's construction).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm

from .algebra import FactoredRF, MPoly, as_rat, is_squarefree

# ---------------------------------------------------------------------------
# points and curves


def _normalize(coords) -> tuple:
    coords = tuple(as_rat(c) for c in coords)
    if not any(coords):
        raise ValueError("the zero vector is not a projective point")
    if coords[-1] != 0:
        w = coords[-1]
        return tuple(c / w for c in coords)
    den = 1
    for c in coords:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coords]
    g = 0
    for k in ints:
        g = gcd(g, k)
    first = next(k for k in ints if k)
    if first < 0:
        g = -g
    return tuple(Fraction(k // g) for k in ints)


@dataclass(frozen=True)
class ProjPoint:
    """A point [p:q:r:w]; w = 1 when w != 0, else a primitive integer vector with first entry > 0."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", _normalize(self.coords))

    @classmethod
    def of(cls, *coords) -> "ProjPoint":
        return cls(tuple(coords))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class QICurve:
    """lam_i p^2 - kappa_i w^2 all equal.

    `roots` optionally fixes signed square roots rho_i of lam_i; the change of
    variables x = rho_1 p, y = rho_2 q, z = rho_3 r then gives the normal form
    and [1:1:1:0] there is the identity.
    """

    lam: tuple
    kappa: tuple
    roots: tuple | None = None

    def __post_init__(self):
        lam = tuple(as_rat(c) for c in self.lam)
        kappa = tuple(as_rat(c) for c in self.kappa)
        if len(lam) != 3 or len(kappa) != 3:
            raise ValueError("a QICurve needs three lambdas and three kappas")
        if not all(lam):
            raise ValueError("lambda coefficients must be nonzero")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "kappa", kappa)
        if self.roots is not None:
            roots = tuple(as_rat(c) for c in self.roots)
            if any(r * r != l for r, l in zip(roots, lam)):
                raise ValueError("roots must square to the lambda coefficients")
            object.__setattr__(self, "roots", roots)

    def quadric_matrices(self):
        """Diagonals of Q1 = lam1 p^2 - lam2 q^2 - (k1-k2) w^2 and Q2 = lam2 q^2 - lam3 r^2 - (k2-k3) w^2."""
        l1, l2, l3 = self.lam
        k1, k2, k3 = self.kappa
        return (l1, -l2, Fraction(0), -(k1 - k2)), (Fraction(0), l2, -l3, -(k2 - k3))

    def __str__(self):
        l1, l2, l3 = self.lam
        k1, k2, k3 = self.kappa
        return f"{l1}p^2-{k1}w^2 = {l2}q^2-{k2}w^2 = {l3}r^2-{k3}w^2"


def normal_form_curve(t1, t2, t3) -> QICurve:
    """C_{t1,t2,t3}: x^2 - t1^2 = y^2 - t2^2 = z^2 - t3^2."""
    t1, t2, t3 = as_rat(t1), as_rat(t2), as_rat(t3)
    return QICurve((1, 1, 1), (t1 * t1, t2 * t2, t3 * t3))


def curve_C(a, b, c, m, v) -> QICurve:
    """The curve v1^{2m1}(p^2-a^2) = v2^{2m2}(q^2-b^2) = v3^{2m3}(r^2-c^2) at rational v."""
    V = [as_rat(vi) ** mi for vi, mi in zip(v, m)]
    lam = tuple(x * x for x in V)
    k = [as_rat(a) ** 2, as_rat(b) ** 2, as_rat(c) ** 2]
    return QICurve(lam, tuple(li * ki for li, ki in zip(lam, k)), roots=tuple(V))


def curve_H(a, b, c, m, v, y_u) -> QICurve:
    """The curve V2^2V3^2(p^2-a^2 f) = V1^2V3^2(q^2-b^2 f) = V1^2V2^2(r^2-c^2 f), f = y_u^2."""
    V1, V2, V3 = (as_rat(vi) ** mi for vi, mi in zip(v, m))
    roots = (V2 * V3, V1 * V3, V1 * V2)
    lam = tuple(r * r for r in roots)
    f = as_rat(y_u) ** 2
    k = [as_rat(a) ** 2 * f, as_rat(b) ** 2 * f, as_rat(c) ** 2 * f]
    return QICurve(lam, tuple(li * ki for li, ki in zip(lam, k)), roots=roots)


def contains(curve: QICurve, P) -> bool:
    p, q, r, w = (as_rat(c) for c in P)
    l1, l2, l3 = curve.lam
    k1, k2, k3 = curve.kappa
    e1 = l1 * p * p - k1 * w * w
    e2 = l2 * q * q - k2 * w * w
    e3 = l3 * r * r - k3 * w * w
    return e1 == e2 == e3


def is_nonsingular(curve: QICurve) -> bool:
    """Square-free test of the pencil's characteristic form det(mu*Q1 + nu*Q2)."""
    d1, d2 = curve.quadric_matrices()
    mu = MPoly.var("x")
    det = MPoly.constant(1)
    for a, b in zip(d1, d2):
        det = det * (mu.scale(a) + b)
    if det.is_zero():
        return False
    coeffs = det.univariate_coeffs("x") if not det.is_constant() else [det.constant_value()]
    # nu = 0 is a root of multiplicity 4 - deg; at most a simple root there.
    if len(coeffs) - 1 < 3:
        return False
    return is_squarefree(det)


def _rat_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class NotRationalError(ValueError):
    pass


def two_torsion(curve: QICurve) -> list:
    """The four points with w = 0, sign patterns (+,+,+), (+,-,-), (-,+,-), (-,-,+).

    The (+,+,+) point is [1/rho_1 : 1/rho_2 : 1/rho_3 : 0] when the curve
    carries roots, otherwise [1 : sqrt(lam1/lam2) : sqrt(lam1/lam3) : 0].
    """
    l1, l2, l3 = curve.lam
    if curve.roots is not None:
        p0, q0, r0 = (1 / rho for rho in curve.roots)
    else:
        p0, q0, r0 = Fraction(1), _rat_sqrt(l1 / l2), _rat_sqrt(l1 / l3)
        if q0 is None or r0 is None:
            raise NotRationalError("two-torsion not rational")
    signs = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    return [ProjPoint.of(s1 * p0, s2 * q0, s3 * r0, 0) for s1, s2, s3 in signs]


def default_origin(curve: QICurve) -> ProjPoint:
    return two_torsion(curve)[0]


# ---------------------------------------------------------------------------
# explicit doubling formulas


def _check_inputs(consts, m):
    if any(as_rat(k) == 0 for k in consts):
        raise ValueError("constants must be nonzero")
    if any(mi < 3 or mi % 2 == 0 for mi in m):
        raise ValueError("exponents m_i must be odd integers >= 3")


def _symbolic_powers(m):
    return [MPoly.var(f"v{i + 1}", mi) for i, mi in enumerate(m)]


def _rf_div(n: MPoly, d: MPoly) -> FactoredRF:
    return FactoredRF.from_poly(n) / FactoredRF.from_poly(d)


def _numeric_powers(v, m):
    v = [as_rat(x) for x in v]
    if any(x == 0 for x in v):
        raise ValueError("v_i must be nonzero")
    return [x ** mi for x, mi in zip(v, m)]


def double_C_explicit(a, b, c, m, v=None):
    """2[a:b:c:1] on v1^{2m1}(p^2-a^2) = v2^{2m2}(q^2-b^2) = v3^{2m3}(r^2-c^2).

    With v=None the result is symbolic in v1, v2, v3 (FactoredRF); otherwise
    v is a rational triple and the result is a Fraction triple.
    """
    _check_inputs((a, b, c), m)
    a, b, c = as_rat(a), as_rat(b), as_rat(c)
    if v is None:
        V1, V2, V3 = _symbolic_powers(m)
        div = _rf_div
    else:
        V1, V2, V3 = _numeric_powers(v, m)
        div = lambda n, d: n / d  # noqa: E731
    ab = a * a * b * b * V1 ** 2 * V2 ** 2
    ac = a * a * c * c * V1 ** 2 * V3 ** 2
    bc = b * b * c * c * V2 ** 2 * V3 ** 2
    k = 2 * a * b * c
    w1 = div(ab + ac - bc, V1 ** 2 * V2 * V3 * k)
    w2 = div(ab - ac + bc, V1 * V2 ** 2 * V3 * k)
    w3 = div(-ab + ac + bc, V1 * V2 * V3 ** 2 * k)
    return w1, w2, w3


def double_H_explicit(a, b, c, m, y_u, v=None):
    """2[a*y_u : b*y_u : c*y_u : 1] on the curve returned by curve_H."""
    _check_inputs((a, b, c, y_u), m)
    a, b, c, y = as_rat(a), as_rat(b), as_rat(c), as_rat(y_u)
    if v is None:
        V1, V2, V3 = _symbolic_powers(m)
        div = _rf_div
    else:
        V1, V2, V3 = _numeric_powers(v, m)
        div = lambda n, d: n / d  # noqa: E731
    ab = a * a * b * b * V3 ** 2 * y
    ac = a * a * c * c * V2 ** 2 * y
    bc = b * b * c * c * V1 ** 2 * y
    k = 2 * a * b * c
    w1 = div(ab + ac - bc, V2 * V3 * k)
    w2 = div(ab - ac + bc, V1 * V3 * k)
    w3 = div(-ab + ac + bc, V1 * V2 * k)
    return w1, w2, w3


# ---------------------------------------------------------------------------
# Weierstrass models

INFINITY = None


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, as_rat(getattr(self, name)))
        if self.discriminant() == 0:
            raise ValueError("singular Weierstrass model")

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def discriminant(self) -> Fraction:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def contains(self, P) -> bool:
        if P is INFINITY:
            return True
        x, y = P
        return y * y + self.a1 * x * y + self.a3 * y == x ** 3 + self.a2 * x * x + self.a4 * x + self.a6

    def neg(self, P):
        if P is INFINITY:
            return P
        x, y = P
        return (x, -y - self.a1 * x - self.a3)

    def add(self, P, Q):
        if P is INFINITY:
            return Q
        if Q is INFINITY:
            return P
        a1, a2, a3, a4, a6 = self.coefficients
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return INFINITY
            den = 2 * y1 + a1 * x1 + a3
            slope = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
            icept = (-x1 ** 3 + a4 * x1 + 2 * a6 - a3 * y1) / den
        else:
            slope = (y2 - y1) / (x2 - x1)
            icept = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = slope * slope + a1 * slope - a2 - x1 - x2
        y3 = -(slope + a1) * x3 - icept - a3
        return (x3, y3)

    def mul(self, n: int, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        result = INFINITY
        addend = P
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            n >>= 1
        return result


# ---------------------------------------------------------------------------
# small exact linear algebra and ternary forms


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def _matvec(A, v):
    return [sum(A[i][k] * v[k] for k in range(len(v))) for i in range(len(A))]


def _transpose(A):
    return [list(row) for row in zip(*A)]


def _inverse(A):
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def _cross(u, v):
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def _proportional(u, v) -> bool:
    k = next(i for i, x in enumerate(u) if x != 0)
    if v[k] == 0:
        return False
    r = v[k] / u[k]
    return all(r * x == y for x, y in zip(u, v))


# Ternary forms: dict from exponent triples to Fraction.


def _tf_mul(f, g):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def _tf_add(f, g, scale=1):
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + scale * c
    return {e: c for e, c in out.items() if c != 0}


def _tf_eval(f, pt):
    total = Fraction(0)
    for (i, j, k), c in f.items():
        total += c * pt[0] ** i * pt[1] ** j * pt[2] ** k
    return total


def _tf_linear(coeffs):
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return {basis[i]: Fraction(c) for i, c in enumerate(coeffs) if c != 0}


def _tf_substitute(f, N):
    """f(N * X) as a form in X."""
    rows = [_tf_linear(N[i]) for i in range(3)]
    out = {}
    for (i, j, k), c in f.items():
        term = {(0, 0, 0): Fraction(c)}
        for idx, power in ((0, i), (1, j), (2, k)):
            for _ in range(power):
                term = _tf_mul(term, rows[idx])
        out = _tf_add(out, term)
    return out


def _tf_gradient(f, pt):
    grad = []
    for d in range(3):
        total = Fraction(0)
        for e, c in f.items():
            if e[d] == 0:
                continue
            e2 = list(e)
            e2[d] -= 1
            total += c * e[d] * pt[0] ** e2[0] * pt[1] ** e2[1] * pt[2] ** e2[2]
        grad.append(total)
    return grad


def _upoly(f, k):
    """Coefficients (in t) of the degree-k part of f(X, Y, 1) at (X, Y) = (1, t)."""
    coeffs = [Fraction(0)] * (k + 1)
    for (i, j, l), c in f.items():
        if i + j == k and l == 3 - k:
            coeffs[j] += c
    return coeffs


def _ueval(coeffs, t):
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * t + c
    return total


def _umul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------
# reduction to Weierstrass form


class ReductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class BirationalMaps:
    """Mutually inverse maps between a QICurve and its Weierstrass model.

    Data: G sends new P^3 coordinates (origin at e4) to old ones; L and S are
    the linear and quadratic parts of the two quadrics in new coordinates; N
    sends the cubic's reduced plane coordinates to projected ones; `kind` is
    "flex" or "nagell" with the scalars each branch needs.
    """

    origin: ProjPoint
    G: tuple
    G_inv: tuple
    L: tuple
    S: tuple
    O_plane: tuple
    N: tuple
    N_inv: tuple
    kind: str
    data: dict = field(default_factory=dict, compare=False, hash=False)
    retries: int = 0

    def _lift(self, plane):
        if _proportional(list(self.O_plane), plane):
            return self.origin
        for lin, quad in zip(self.L, self.S):
            l = _tf_eval(lin, plane)
            if l != 0:
                new = [x * l for x in plane] + [-_tf_eval(quad, plane)]
                return ProjPoint(tuple(_matvec(self.G, new)))
        raise ReductionError("point could not be lifted")

    def forward(self, P):
        P = P if isinstance(P, ProjPoint) else ProjPoint(tuple(P))
        if P == self.origin:
            return INFINITY
        new = _matvec(self.G_inv, list(P.coords))
        X, Y, Z = _matvec(self.N_inv, new[:3])
        d = self.data
        if self.kind == "flex":
            if Z == 0:
                return INFINITY
            return (X / (Z * d["lam"]), Y / (Z * d["mu"]))
        f2, f3, k3 = d["f2"], d["f3"], d["k3"]
        if Z == 0:
            t = Y / X
            s = -_ueval(f2, t)
        elif X == 0:
            t = d["t_A"]
            s = _ueval(f2, t)
        else:
            x, y = X / Z, Y / Z
            t = y / x
            s = 2 * _ueval(f3, t) * x + _ueval(f2, t)
        return (k3 * t, k3 * s)

    def backward(self, W):
        if W is INFINITY:
            return self.origin
        x, y = W
        d = self.data
        if self.kind == "flex":
            cubic = [d["lam"] * x, d["mu"] * y, Fraction(1)]
        else:
            k3 = d["k3"]
            t, s = x / k3, y / k3
            f1t, f2t, f3t = _ueval(d["f1"], t), _ueval(d["f2"], t), _ueval(d["f3"], t)
            if f3t != 0:
                X = (s - f2t) / (2 * f3t)
                cubic = [X, t * X, Fraction(1)]
            elif s == f2t and f2t != 0:
                X = -f1t / f2t
                cubic = [X, t * X, Fraction(1)]
            else:
                cubic = [Fraction(1), t, Fraction(0)]
        plane = _matvec(self.N, cubic)
        return self._lift(plane)


def _complete_basis(vectors, rng):
    """Extend independent vectors to an invertible matrix (columns) with standard or random vectors."""
    n = len(vectors[0])
    candidates = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    if rng is not None:
        candidates = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(4 * n)] + candidates
    cols = list(vectors)
    for cand in candidates:
        if len(cols) == n:
            break
        trial = cols + [cand]
        if _rank(trial) == len(trial):
            cols = trial
    if len(cols) != n:
        raise ReductionError("could not complete basis")
    return cols


def _rank(vectors) -> int:
    M = [list(v) for v in vectors]
    rank = 0
    ncols = len(M[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col] / M[rank][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def _attempt(curve: QICurve, origin: ProjPoint, rng):
    o = list(origin.coords)
    cols = _complete_basis([o], rng)
    # origin must be the last basis vector
    cols = cols[1:] + cols[:1]
    G = _transpose(cols)
    G_inv = _inverse(G)
    L, S = [], []
    for diag in curve.quadric_matrices():
        A = [[diag[i] if i == j else Fraction(0) for j in range(4)] for i in range(4)]
        B = _matmul(_transpose(G), _matmul(A, G))
        if B[3][3] != 0:
            raise ReductionError("origin is not on the curve")
        L.append(_tf_linear([2 * B[i][3] for i in range(3)]))
        S.append({e: c for e, c in (
            ((2, 0, 0), B[0][0]), ((0, 2, 0), B[1][1]), ((0, 0, 2), B[2][2]),
            ((1, 1, 0), 2 * B[0][1]), ((1, 0, 1), 2 * B[0][2]), ((0, 1, 1), 2 * B[1][2]),
        ) if c != 0})
    F = _tf_add(_tf_mul(L[0], S[1]), _tf_mul(L[1], S[0]), scale=-1)
    l1 = [L[0].get(e, Fraction(0)) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    l2 = [L[1].get(e, Fraction(0)) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    O_plane = _cross(l1, l2)
    if not any(O_plane):
        raise ReductionError("degenerate projection: tangent planes coincide")
    grad = _tf_gradient(F, O_plane)
    if not any(grad):
        raise ReductionError("projected cubic is singular at the origin")
    # direction along the tangent line at O_plane
    tangent_dirs = [v for v in _kernel_basis(grad) if not _proportional(O_plane, v)]
    D = tangent_dirs[0]
    c2 = _restrict_coeff(F, O_plane, D, 2)
    c3 = _tf_eval(F, D)
    common = dict(origin=origin, G=_freeze(G), G_inv=_freeze(G_inv), L=tuple(L), S=tuple(S), O_plane=tuple(O_plane))
    if c2 == 0:
        off = next(v for v in _complete_basis([D, O_plane], rng) if sum(g * x for g, x in zip(grad, v)) != 0)
        N = _transpose([D, O_plane, off])
        Fn = _tf_substitute(F, N)
        for bad in ((2, 1, 0), (1, 2, 0), (0, 3, 0)):
            if Fn.get(bad, 0) != 0:
                raise ReductionError("flex normalization failed")
        cX = Fn.get((3, 0, 0), Fraction(0))
        alpha = Fn.get((0, 2, 1), Fraction(0))
        if cX == 0 or alpha == 0:
            raise ReductionError("degenerate flex cubic")
        beta = Fn.get((1, 1, 1), Fraction(0))
        gamma = Fn.get((2, 0, 1), Fraction(0))
        delta = Fn.get((0, 1, 2), Fraction(0))
        eps = Fn.get((1, 0, 2), Fraction(0))
        zeta = Fn.get((0, 0, 3), Fraction(0))
        model = WeierstrassModel(
            a1=-beta / alpha,
            a2=-gamma / alpha,
            a3=delta * cX / alpha ** 2,
            a4=eps * cX / alpha ** 2,
            a6=-zeta * cX ** 2 / alpha ** 3,
        )
        data = {"lam": -alpha / cX, "mu": alpha / cX}
        maps = BirationalMaps(N=_freeze(N), N_inv=_freeze(_inverse(N)), kind="flex", data=data, **common)
        return model, maps
    # Nagell: A is the third point of the tangent at O_plane.
    A = [c3 * o_ - c2 * d_ for o_, d_ in zip(O_plane, D)]
    third = next(v for v in _complete_basis([O_plane, A], rng) if _rank([v, O_plane, A]) == 3)
    N = _transpose([third, O_plane, A])
    Fn = _tf_substitute(F, N)
    f1, f2, f3 = _upoly(Fn, 1), _upoly(Fn, 2), _upoly(Fn, 3)
    q = [Fraction(0)] * 5
    for i, x in enumerate(_umul(f2, f2)):
        q[i] += x
    for i, x in enumerate(_umul(f1, f3)):
        q[i] -= 4 * x
    if q[4] != 0 or q[3] == 0:
        raise ReductionError("Nagell reduction produced a degenerate quartic")
    k0, k1, k2, k3 = q[:4]
    model = WeierstrassModel(a2=k2, a4=k1 * k3, a6=k0 * k3 * k3)
    # tangent direction at A: f1(X, Y) = e X + c Y = 0
    e, cY = f1[0], f1[1]
    data = {"f1": f1, "f2": f2, "f3": f3, "k3": k3, "t_A": -e / cY}
    maps = BirationalMaps(N=_freeze(N), N_inv=_freeze(_inverse(N)), kind="nagell", data=data, **common)
    return model, maps


def _freeze(M):
    return tuple(tuple(row) for row in M)


def _kernel_basis(grad):
    """Two independent vectors v with grad . v = 0."""
    k = next(i for i, g in enumerate(grad) if g != 0)
    out = []
    for j in range(3):
        if j == k:
            continue
        v = [Fraction(0)] * 3
        v[j] = grad[k]
        v[k] = -grad[j]
        out.append(v)
    return out


def _restrict_coeff(F, P, D, power):
    """Coefficient of s^power in F(P + s D)."""
    # F(P + sD) has degree 3 in s; recover coefficients by interpolation at s = 0..3.
    vals = [_tf_eval(F, [p + s * d for p, d in zip(P, D)]) for s in range(4)]
    # Solve the Vandermonde system exactly.
    V = [[Fraction(s) ** k for k in range(4)] for s in range(4)]
    coeffs = _matvec(_inverse(V), vals)
    return coeffs[power]


def _self_check(curve, origin, model, maps) -> bool:
    pts = []
    try:
        pts = two_torsion(curve)
    except NotRationalError:
        pass
    for P in pts:
        W = maps.forward(P)
        if not model.contains(W) or maps.backward(W) != P:
            return False
    return model.contains(maps.forward(origin)) and maps.backward(INFINITY) == origin


@lru_cache(maxsize=256)
def reduce_to_weierstrass(curve: QICurve, origin: ProjPoint, max_retries: int = 10):
    """Weierstrass model of `curve` with `origin` sent to the point at infinity."""
    if not is_nonsingular(curve):
        raise ValueError("curve is singular")
    if not contains(curve, origin):
        raise ValueError("origin is not on the curve")
    rng = None
    last = None
    for attempt in range(max_retries + 1):
        try:
            model, maps = _attempt(curve, origin, rng)
            if _self_check(curve, origin, model, maps):
                if attempt:
                    maps = BirationalMaps(**{**maps.__dict__, "retries": attempt})
                return model, maps
            last = ReductionError("self-check failed")
        except (ReductionError, ZeroDivisionError, StopIteration, IndexError) as exc:
            last = exc
        rng = random.Random(attempt)
    raise ReductionError(f"reduction failed after {max_retries} retries: {last}")


# ---------------------------------------------------------------------------
# group law and torsion certificates


def _on_curve_or_raise(curve, *points):
    for P in points:
        if not contains(curve, P):
            raise ValueError(f"{P} is not on the curve")


def group_add(curve: QICurve, origin, P, Q) -> ProjPoint:
    origin = origin if isinstance(origin, ProjPoint) else ProjPoint(tuple(origin))
    P = P if isinstance(P, ProjPoint) else ProjPoint(tuple(P))
    Q = Q if isinstance(Q, ProjPoint) else ProjPoint(tuple(Q))
    _on_curve_or_raise(curve, P, Q)
    model, maps = reduce_to_weierstrass(curve, origin)
    return maps.backward(model.add(maps.forward(P), maps.forward(Q)))


def group_neg(curve: QICurve, origin, P) -> ProjPoint:
    origin = origin if isinstance(origin, ProjPoint) else ProjPoint(tuple(origin))
    model, maps = reduce_to_weierstrass(curve, origin)
    return maps.backward(model.neg(maps.forward(P)))


def group_mul(curve: QICurve, origin, n: int, P) -> ProjPoint:
    origin = origin if isinstance(origin, ProjPoint) else ProjPoint(tuple(origin))
    model, maps = reduce_to_weierstrass(curve, origin)
    return maps.backward(model.mul(n, maps.forward(P)))


MAZUR_ORDERS = (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)


@dataclass(frozen=True)
class OrderCertificate:
    status: str  # "infinite order" or "torsion"
    order: int | None
    checked: tuple

    @property
    def infinite(self) -> bool:
        return self.status == "infinite order"

    def as_dict(self):
        return {"status": self.status, "order": self.order, "checked": list(self.checked)}


def certify_weierstrass_point(model: WeierstrassModel, P) -> OrderCertificate:
    """Non-torsion iff nP != O for all n <= 12 (torsion orders over Q are 1..10, 12)."""
    if not model.contains(P):
        raise ValueError("point is not on the model")
    if P is INFINITY:
        return OrderCertificate("torsion", 1, ())
    R = P
    for n in range(2, 13):
        R = model.add(R, P)
        if R is INFINITY:
            return OrderCertificate("torsion", n, tuple(k for k in range(2, n)))
    return OrderCertificate("infinite order", None, MAZUR_ORDERS)


def certify_infinite_order(curve: QICurve, origin, P) -> OrderCertificate:
    origin = origin if isinstance(origin, ProjPoint) else ProjPoint(tuple(origin))
    P = P if isinstance(P, ProjPoint) else ProjPoint(tuple(P))
    _on_curve_or_raise(curve, P)
    model, maps = reduce_to_weierstrass(curve, origin)
    return certify_weierstrass_point(model, maps.forward(P))
