"""Sparse multivariate polynomials over Q in a fixed variable set."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Mapping

Rat = Fraction

# Canonical order: x < u < v1 < v2 < v3 < v4 < T.
VARIABLES = ("x", "u", "v1", "v2", "v3", "v4", "T")
NVARS = len(VARIABLES)
VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}

Exponents = tuple  # tuple of NVARS non-negative ints

_ZERO_EXP = (0,) * NVARS


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to a rational")


def monomial_key(exps: Exponents):
    """Sort key for graded lexicographic order (larger key = larger monomial)."""
    return (sum(exps), exps[::-1])


class MPoly:
    """Immutable polynomial: a map from exponent vectors to nonzero rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, object] | None = None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                c = as_rat(coeff)
                if c:
                    if len(exps) != NVARS:
                        raise ValueError(f"exponent vector {exps} has wrong length")
                    clean[tuple(exps)] = c
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def constant(cls, c) -> "MPoly":
        return cls({_ZERO_EXP: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        if name not in VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}")
        exps = [0] * NVARS
        exps[VAR_INDEX[name]] = power
        return cls({tuple(exps): 1})

    @classmethod
    def univariate(cls, coeffs, name: str = "x") -> "MPoly":
        """Build sum(coeffs[k] * name^k)."""
        idx = VAR_INDEX[name]
        terms = {}
        for k, c in enumerate(coeffs):
            exps = [0] * NVARS
            exps[idx] = k
            terms[tuple(exps)] = c
        return cls(terms)

    # basic accessors

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == _ZERO_EXP for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def sorted_terms(self, descending: bool = True):
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=descending)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree(self, name: str) -> int:
        idx = VAR_INDEX[name]
        if not self._terms:
            return -1
        return max(e[idx] for e in self._terms)

    def variables(self) -> tuple:
        used = set()
        for exps in self._terms:
            used.update(i for i, e in enumerate(exps) if e)
        return tuple(VARIABLES[i] for i in sorted(used))

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exps, c in other._terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return MPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("MPoly exponents must be non-negative integers")
        if self.is_monomial():
            (exps, c), = self._terms.items()
            return MPoly({tuple(k * n for k in exps): c ** n})
        result = MPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "MPoly":
        c = as_rat(c)
        return MPoly({e: c * v for e, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation and substitution

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        """Exact value at a (partial is an error) assignment of the used variables."""
        values = [None] * NVARS
        for name in self.variables():
            if name not in assignment:
                raise KeyError(f"variable {name} is not assigned")
            values[VAR_INDEX[name]] = as_rat(assignment[name])
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    term *= values[i] ** e
            total += term
        return total

    def evaluate_int(self, values: Mapping[int, int]) -> int:
        """Fast path for integer coefficients at integer points (values keyed by variable index)."""
        total = 0
        for exps, c in self._terms.items():
            term = c.numerator
            for i, e in enumerate(exps):
                if e:
                    term *= values[i] ** e
            total += term
        return total

    def negate_variable(self, name: str) -> "MPoly":
        idx = VAR_INDEX[name]
        return MPoly({e: (-c if e[idx] % 2 else c) for e, c in self._terms.items()})

    def rename(self, old: str, new: str) -> "MPoly":
        """Substitute variable `old` by variable `new` (e.g. f(x) -> f(u))."""
        i, j = VAR_INDEX[old], VAR_INDEX[new]
        terms = {}
        for exps, c in self._terms.items():
            e = list(exps)
            e[j] += e[i]
            if i != j:
                e[i] = 0
            e = tuple(e)
            terms[e] = terms.get(e, 0) + c
        return MPoly(terms)

    def substitute(self, name: str, value) -> "MPoly":
        """Substitute a rational number for one variable."""
        idx = VAR_INDEX[name]
        value = as_rat(value)
        terms: dict = {}
        for exps, c in self._terms.items():
            e = list(exps)
            k = e[idx]
            e[idx] = 0
            e = tuple(e)
            terms[e] = terms.get(e, 0) + c * value ** k
        return MPoly(terms)

    # normalization helpers used by the factored representation

    def monomial_content(self) -> Exponents:
        """Componentwise minimum exponent over all terms."""
        if not self._terms:
            return _ZERO_EXP
        return tuple(min(col) for col in zip(*self._terms))

    def divide_monomial(self, exps: Exponents) -> "MPoly":
        return MPoly({tuple(a - b for a, b in zip(e, exps)): c for e, c in self._terms.items()})

    def primitive_part(self) -> tuple[Fraction, "MPoly"]:
        """Return (content, prim) with self = content * prim, prim integral, content-1, positive leading coefficient."""
        if not self._terms:
            raise ValueError("zero polynomial has no primitive part")
        den = 1
        for c in self._terms.values():
            den = lcm(den, c.denominator)
        g = 0
        for c in self._terms.values():
            g = gcd(g, c.numerator * (den // c.denominator))
        content = Fraction(g, den)
        if self.leading_coefficient() < 0:
            content = -content
        return content, MPoly({e: c / content for e, c in self._terms.items()})

    # univariate view

    def univariate_coeffs(self, name: str = "x") -> list[Fraction]:
        """Dense coefficient list, lowest degree first; rejects other variables."""
        idx = VAR_INDEX[name]
        others = [v for v in self.variables() if v != name]
        if others:
            raise ValueError(f"polynomial is not univariate in {name}: also uses {', '.join(others)}")
        if not self._terms:
            return []
        coeffs = [Fraction(0)] * (self.degree(name) + 1)
        for exps, c in self._terms.items():
            coeffs[exps[idx]] = c
        return coeffs

    # printing

    def __str__(self):
        return serialize_poly(self)

    def __repr__(self):
        return f"MPoly({serialize_poly(self)!r})"


def _coerce(value):
    if isinstance(value, MPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MPoly.constant(value)
    return NotImplemented


def _format_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(exps: Exponents) -> str:
    parts = []
    for name, e in zip(VARIABLES, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def serialize_poly(p: MPoly) -> str:
    """Canonical text: terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    out = []
    for k, (exps, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = _format_monomial(exps)
        if not mono:
            body = _format_rat(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_rat(mag)}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(sign + body)
    return "".join(out)


# dense univariate arithmetic over Q (lowest degree first)


def _trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def upoly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        factor = a[-1] / lead
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = _trim(a)
    return _trim(q), a


def upoly_gcd(a: list, b: list) -> list:
    """Monic gcd by Euclid's algorithm; gcd(0, 0) = 0."""
    a, b = _trim([Fraction(c) for c in a]), _trim([Fraction(c) for c in b])
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def upoly_derivative(a: list) -> list:
    return _trim([k * Fraction(c) for k, c in enumerate(a)][1:])


def upoly_eval(a: list, x):
    total = 0
    for c in reversed(a):
        total = total * x + c
    return total


def is_squarefree(f: MPoly, name: str = "x") -> bool:
    """True iff gcd(f, f') is constant; f must be non-constant and univariate."""
    coeffs = f.univariate_coeffs(name)
    if len(coeffs) < 2:
        raise ValueError("is_squarefree needs a non-constant polynomial")
    return len(upoly_gcd(coeffs, upoly_derivative(coeffs))) == 1
