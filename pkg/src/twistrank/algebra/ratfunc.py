"""Rational functions kept as products of powers of primitive polynomials.

Exponents in the constructions reach the tens of thousands, so nothing here
expands a product unless it has to; evaluation works factor by factor.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .parse import PolySyntaxError, parse_poly
from .poly import NVARS, VAR_INDEX, VARIABLES, MPoly, as_rat, monomial_key, serialize_poly

EXPANSION_THRESHOLD = 32
MAX_REJECTIONS = 1000
MAX_DEGREE_BOUND = 10**8


class PoleError(ZeroDivisionError):
    """A base with negative exponent vanished during evaluation."""

    def __init__(self, base: MPoly):
        super().__init__(f"division by zero: base ({serialize_poly(base)}) vanishes")
        self.base = base


class ExpansionError(ValueError):
    pass


class DegreeBoundError(ArithmeticError):
    pass


def _base_key(p: MPoly):
    lead = p.leading_term()[0]
    return (p.total_degree(), monomial_key(lead), serialize_poly(p))


def _variable_base(idx: int) -> MPoly:
    exps = [0] * NVARS
    exps[idx] = 1
    return MPoly({tuple(exps): 1})


_VAR_BASES = tuple(_variable_base(i) for i in range(NVARS))


class FactoredRF:
    """scale * prod(base_i ** exp_i) with canonical, pairwise non-proportional bases."""

    __slots__ = ("scale", "factors", "_hash")

    def __init__(self, scale, factors=()):
        # Use FactoredRF.build for arbitrary input; this constructor trusts its arguments.
        self.scale = as_rat(scale)
        self.factors = tuple(factors)
        self._hash = None

    @classmethod
    def build(cls, scale, factors: Iterable[tuple[MPoly, int]] = ()) -> "FactoredRF":
        scale = as_rat(scale)
        acc: dict[MPoly, int] = {}
        pending_zero = False
        for base, exp in factors:
            if not isinstance(base, MPoly):
                base = MPoly.constant(base)
            if exp == 0:
                continue
            if base.is_zero():
                if exp < 0:
                    raise ZeroDivisionError("zero polynomial raised to a negative power")
                pending_zero = True
                continue
            mono = base.monomial_content()
            if any(mono):
                base = base.divide_monomial(mono)
                for i, k in enumerate(mono):
                    if k:
                        acc[_VAR_BASES[i]] = acc.get(_VAR_BASES[i], 0) + k * exp
            content, prim = base.primitive_part()
            scale *= content ** exp
            if prim.is_constant():
                continue
            acc[prim] = acc.get(prim, 0) + exp
        if pending_zero or scale == 0:
            return cls(0, ())
        items = sorted(((b, e) for b, e in acc.items() if e), key=lambda t: _base_key(t[0]))
        return cls(scale, items)

    @classmethod
    def constant(cls, c) -> "FactoredRF":
        return cls(as_rat(c), ())

    @classmethod
    def var(cls, name: str, power: int = 1) -> "FactoredRF":
        return cls.build(1, [(MPoly.var(name), power)])

    @classmethod
    def from_poly(cls, p: MPoly, exp: int = 1) -> "FactoredRF":
        return cls.build(1, [(p, exp)])

    # predicates and accessors

    def is_zero(self) -> bool:
        return self.scale == 0

    def is_constant(self) -> bool:
        return not self.factors

    def constant_value(self) -> Fraction:
        if self.factors:
            raise ValueError("rational function is not constant")
        return self.scale

    def variables(self) -> tuple:
        used = set()
        for base, _ in self.factors:
            used.update(base.variables())
        return tuple(v for v in VARIABLES if v in used)

    def exponent_of(self, base) -> int:
        if isinstance(base, str):
            base = MPoly.var(base)
        for b, e in self.factors:
            if b == base:
                return e
        return 0

    def numerator_degree(self) -> int:
        return sum(e * b.total_degree() for b, e in self.factors if e > 0)

    def denominator_degree(self) -> int:
        return sum(-e * b.total_degree() for b, e in self.factors if e < 0)

    # arithmetic

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return FactoredRF(0, ())
        return FactoredRF.build(self.scale * other.scale, self.factors + other.factors)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        if self.is_zero():
            return self
        inv = tuple((b, -e) for b, e in other.factors)
        return FactoredRF.build(self.scale / other.scale, self.factors + inv)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if self.is_zero():
            if n < 0:
                raise ZeroDivisionError("zero rational function to a negative power")
            return FactoredRF.constant(1 if n == 0 else 0)
        return FactoredRF(self.scale ** n, tuple((b, e * n) for b, e in self.factors if e * n))

    def __neg__(self):
        return FactoredRF(-self.scale, self.factors)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return rf_sum([self, other])

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return rf_sum([self, -other])

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FactoredRF.constant(other)
        if not isinstance(other, FactoredRF):
            return NotImplemented
        return self.scale == other.scale and self.factors == other.factors

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.scale, self.factors))
        return self._hash

    # substitutions

    def negate_variable(self, name: str) -> "FactoredRF":
        return FactoredRF.build(self.scale, [(b.negate_variable(name), e) for b, e in self.factors])

    def substitute(self, assignment: Mapping[str, object]) -> "FactoredRF":
        """Partially specialize; raises PoleError if a denominator base vanishes."""
        factors = []
        scale = self.scale
        zero = False
        for b, e in self.factors:
            nb = b
            for name, value in assignment.items():
                if name in b.variables():
                    nb = nb.substitute(name, value)
            if nb.is_zero():
                if e < 0:
                    raise PoleError(b)
                zero = True
                continue
            factors.append((nb, e))
        if zero:
            return FactoredRF(0, ())
        return FactoredRF.build(scale, factors)

    def expand(self, threshold: int = EXPANSION_THRESHOLD) -> MPoly:
        """Expand to a polynomial; only for rational functions without denominators."""
        if any(e < 0 for _, e in self.factors):
            raise ExpansionError("rational function has a denominator")
        return _expand_product(self.scale, self.factors, threshold)

    # evaluation

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        return rf_eval(self, assignment)

    def __str__(self):
        return serialize_rf(self)

    def __repr__(self):
        return f"FactoredRF({serialize_rf(self)!r})"


def _coerce(value):
    if isinstance(value, FactoredRF):
        return value
    if isinstance(value, (int, Fraction)):
        return FactoredRF.constant(value)
    if isinstance(value, MPoly):
        return FactoredRF.from_poly(value)
    return NotImplemented


def _expand_product(scale, factors, threshold) -> MPoly:
    result = MPoly.constant(scale)
    for b, e in factors:
        if e > threshold and not b.is_monomial():
            raise ExpansionError(
                f"refusing to expand ({serialize_poly(b)})^{e}: exponent exceeds {threshold}"
            )
        result = result * b ** e
    return result


def rf_sum(terms: Sequence[FactoredRF], threshold: int = EXPANSION_THRESHOLD) -> FactoredRF:
    """Exact sum: pull out the common factor, expand the small cofactors, add."""
    terms = [t for t in (_coerce(t) for t in terms) if not t.is_zero()]
    if not terms:
        return FactoredRF(0, ())
    if len(terms) == 1:
        return terms[0]
    exps = [dict(t.factors) for t in terms]
    bases = {b for d in exps for b in d}
    common = {b: min(d.get(b, 0) for d in exps) for b in bases}
    total = MPoly()
    for t, d in zip(terms, exps):
        cof = [(b, d.get(b, 0) - common[b]) for b in bases if d.get(b, 0) != common[b]]
        cof.sort(key=lambda item: _base_key(item[0]))
        total = total + _expand_product(t.scale, cof, threshold)
    if total.is_zero():
        return FactoredRF(0, ())
    return FactoredRF.build(1, [(total, 1)] + [(b, e) for b, e in common.items() if e])


def serialize_rf(r: FactoredRF) -> str:
    """`c * (p1)^e1 * (p2)^e2 ...`, bases in canonical order."""
    scale = r.scale
    head = str(scale.numerator) if scale.denominator == 1 else f"{scale.numerator}/{scale.denominator}"
    parts = [head]
    for b, e in r.factors:
        parts.append(f"({serialize_poly(b)})^{e}")
    return " * ".join(parts)


_RF_FACTOR = re.compile(r"\s*\*\s*\(([^()]*)\)\s*\^\s*(-?\d+)\s*")
_RF_HEAD = re.compile(r"\s*(-?\d+(?:/\d+)?)")


def parse_rf(text: str) -> FactoredRF:
    """Inverse of serialize_rf."""
    m = _RF_HEAD.match(text)
    if not m:
        raise PolySyntaxError("expected a rational scale", text, 0)
    scale = Fraction(m.group(1))
    pos = m.end()
    factors = []
    while pos < len(text) and text[pos:].strip():
        m = _RF_FACTOR.match(text, pos)
        if not m:
            raise PolySyntaxError("expected '* (poly)^exp'", text, pos)
        factors.append((parse_poly(m.group(1)), int(m.group(2))))
        pos = m.end()
    if scale == 0:
        return FactoredRF(0, ())
    return FactoredRF.build(scale, factors)


def _assignment_values(assignment: Mapping[str, object], names) -> dict:
    values = {}
    for name in names:
        if name not in assignment:
            raise KeyError(f"variable {name} is not assigned")
        values[name] = as_rat(assignment[name])
    return values


def _pair_from_values(r: FactoredRF, base_values: Mapping[MPoly, Fraction]) -> tuple[int, int]:
    """Unreduced (numerator, denominator) of r given the values of its bases."""
    num, den = r.scale.numerator, r.scale.denominator
    if num == 0:
        return 0, 1
    for b, e in r.factors:
        if e < 0 and base_values[b] == 0:
            raise PoleError(b)
    for b, e in r.factors:
        v = base_values[b]
        if v == 0:
            return 0, 1
        p, q = v.numerator, v.denominator
        if e > 0:
            num *= p ** e
            den *= q ** e
        else:
            num *= q ** -e
            den *= p ** -e
    if den < 0:
        num, den = -num, -den
    return num, den


def _base_values(bases, values: Mapping[str, Fraction]) -> dict:
    out = {}
    for b in bases:
        if b not in out:
            out[b] = b.evaluate(values)
    return out


def rf_eval(r: FactoredRF, assignment: Mapping[str, object]) -> Fraction:
    """Exact value at an assignment, computed factor by factor."""
    values = _assignment_values(assignment, r.variables())
    num, den = _pair_from_values(r, _base_values([b for b, _ in r.factors], values))
    return Fraction(num, den)


def _as_terms(side) -> list[FactoredRF]:
    if isinstance(side, FactoredRF):
        return [side]
    if isinstance(side, (int, Fraction, MPoly)):
        return [_coerce(side)]
    return [_coerce(t) for t in side]


def eval_sum(terms: Sequence[FactoredRF], assignment: Mapping[str, object]) -> Fraction:
    """Exact value of a sum of factored terms."""
    names = sorted({v for t in terms for v in t.variables()}, key=VAR_INDEX.get)
    values = _assignment_values(assignment, names)
    bv = _base_values([b for t in terms for b, _ in t.factors], values)
    num, den = _sum_pairs([_pair_from_values(t, bv) for t in terms])
    return Fraction(num, den)


def _sum_pairs(pairs) -> tuple[int, int]:
    num, den = 0, 1
    for n, d in pairs:
        if n == 0:
            continue
        if d == den:
            num += n
        else:
            num, den = num * d + n * den, den * d
    return num, den


def degree_bound(lhs, rhs) -> int:
    """Total-degree bound for the numerator of lhs - rhs over a common denominator."""
    terms = _as_terms(lhs) + _as_terms(rhs)
    den_exp: dict[MPoly, int] = {}
    for t in terms:
        for b, e in t.factors:
            if e < 0:
                den_exp[b] = max(den_exp.get(b, 0), -e)
    common_den = sum(e * b.total_degree() for b, e in den_exp.items())
    bound = 0
    for t in terms:
        bound = max(bound, t.numerator_degree() + common_den - t.denominator_degree())
    if bound > MAX_DEGREE_BOUND:
        raise DegreeBoundError(f"degree bound {bound} is too large to sample against")
    return bound


def rf_equal(lhs, rhs, samples: int = 5, seed: int = 0) -> bool:
    """Probabilistic identity test by exact evaluation at random integer points.

    Each side is a FactoredRF or a sequence of them (read as a sum). Points
    are drawn uniformly from a box of width at least 4 * degree bound, and
    points where any base vanishes are rejected.
    """
    left, right = _as_terms(lhs), _as_terms(rhs)
    terms = left + right
    names = sorted({v for t in terms for v in t.variables()}, key=VAR_INDEX.get)
    bases = sorted({b for t in terms for b, _ in t.factors}, key=_base_key)
    half = 2 * degree_bound(left, right) + 2
    ratio = None
    if len(left) == len(right) == 1 and not right[0].is_zero():
        if left[0].is_zero():
            return False
        ratio = left[0] / right[0]
    rng = random.Random(seed)
    rejections = 0
    done = 0
    while done < samples:
        point = {name: rng.randint(-half, half) for name in names}
        idx_values = {VAR_INDEX[n]: v for n, v in point.items()}
        bv = {}
        for b in bases:
            if b.is_constant():
                bv[b] = b.constant_value()
            else:
                bv[b] = Fraction(b.evaluate_int(idx_values))
        if any(v == 0 for v in bv.values()):
            rejections += 1
            if rejections > MAX_REJECTIONS:
                raise RuntimeError("too many degenerate sample points")
            continue
        if ratio is not None:
            # single terms: lhs/rhs at a point where no base vanishes
            n, d = _pair_from_values(ratio, bv)
            if n != d:
                return False
        else:
            ln, ld = _sum_pairs([_pair_from_values(t, bv) for t in left])
            rn, rd = _sum_pairs([_pair_from_values(t, bv) for t in right])
            if ln * rd != rn * ld:
                return False
        done += 1
    return True


def rf_equal_exact(lhs, rhs, threshold: int = EXPANSION_THRESHOLD) -> bool:
    """Symbolic comparison; raises ExpansionError above the expansion threshold."""
    terms = _as_terms(lhs) + [-t for t in _as_terms(rhs)]
    return rf_sum(terms, threshold).is_zero()


def rf_signflip(r: FactoredRF, i: int) -> FactoredRF:
    """Substitute v_i -> -v_i, i in {1, 2, 3, 4}."""
    if i not in (1, 2, 3, 4):
        raise ValueError("sign flips act on v1..v4")
    return r.negate_variable(f"v{i}")
