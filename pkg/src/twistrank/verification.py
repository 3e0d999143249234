"""Executable certificates for constructed families."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import FactoredRF, PoleError, rf_equal, rf_eval, rf_signflip, serialize_poly
from .algebra.ratfunc import eval_sum
from .families import TwistFamily
from .genus_one import even_twist_model, odd_twist_model, quadratic_twist_model
from .quartic import certify_weierstrass_point

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Check:
    name: str
    status: str
    witness: dict = field(default_factory=dict)

    def as_dict(self):
        return {"name": self.name, "status": self.status, "witness": self.witness}


@dataclass
class VerificationReport:
    seed: int
    samples: int
    checks: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        # statuses other than pass/fail/skipped ("torsion", "criterion-only") are informational
        return not any(c.status == FAIL for c in self.checks)

    def add(self, name, ok, **witness):
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        self.checks.append(Check(name, status, witness))

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)
        return self

    def as_dict(self):
        return {
            "seed": str(self.seed),
            "samples": str(self.samples),
            "overall": self.overall,
            "checks": [c.as_dict() for c in self.checks],
        }


def _fmt(assignment):
    return {k: str(v) for k, v in sorted(assignment.items())}


def _random_assignments(family: TwistFamily, count: int, seed: int, width: int = 50):
    """Pole-free rational assignments for the family's variables."""
    rng = random.Random(seed)
    bases = {b for r in _all_functions(family) for b, _ in r.factors}
    found, tries = [], 0
    while len(found) < count:
        tries += 1
        if tries > 1000 * count:
            raise RuntimeError("could not find pole-free assignments")
        a = {v: rng.randint(-width, width) for v in family.variables}
        if all(b.evaluate(a) != 0 for b in bases):
            found.append(a)
    return found


def _all_functions(family: TwistFamily):
    out = [family.T, family.D]
    for p in family.points:
        out += [p.x, p.y]
    return out


def verify_membership(family: TwistFamily, samples: int = 20, seed: int = 0) -> VerificationReport:
    """Each point satisfies its curve: rf_equal, then exact evaluation at fresh points."""
    report = VerificationReport(seed, samples)
    fresh = _random_assignments(family, samples, seed + 1)
    for k, p in enumerate(family.points):
        curve = family.curves[p.curve_index]
        lhs, rhs = curve.sides(family.D, p.x, p.y)
        name = f"membership[{k}] on curve {p.curve_index}"
        if not rf_equal(lhs, rhs, samples=samples, seed=seed):
            report.add(name, False, reason="rf_equal found a difference", seed=str(seed))
            continue
        bad = next((a for a in fresh if eval_sum(lhs, a) != eval_sum(rhs, a)), None)
        if bad is None:
            report.add(name, True)
        else:
            report.add(name, False, assignment=_fmt(bad), lhs=str(eval_sum(lhs, bad)), rhs=str(eval_sum(rhs, bad)))
    return report


def _nonconstant_witness(r: FactoredRF):
    for b, e in r.factors:
        if e and not b.is_constant():
            return f"({serialize_poly(b)})^{e}"
    return None


def verify_nonconstant(family: TwistFamily) -> VerificationReport:
    """D is non-constant; every point has a non-constant coordinate and y != 0."""
    report = VerificationReport(0, 0)
    wd = _nonconstant_witness(family.D)
    report.add("D non-constant", wd is not None, base=wd or "none")
    for k, p in enumerate(family.points):
        wx, wy = _nonconstant_witness(p.x), _nonconstant_witness(p.y)
        ok = (wx or wy) is not None and not p.y.is_zero()
        report.add(f"point[{k}] non-constant, y nonzero", ok, base=wx or wy or "none", y_zero=p.y.is_zero())
    return report


def verify_phi_relations(family: TwistFamily, samples: int = 5, seed: int = 0) -> VerificationReport:
    """Sign flips v_i -> -v_i fix T, D and P_i, and send P_j to (x_j, -y_j) for j != i."""
    report = VerificationReport(seed, samples)
    if family.family not in ("A3", "B3"):
        report.add("phi relations", SKIPPED, reason="only defined for A3/B3")
        return report
    eq = lambda p, q: rf_equal(p, q, samples=samples, seed=seed)  # noqa: E731
    pts = [p for p in family.points if p.curve_index == 1]
    for i in (1, 2, 3):
        report.add(f"phi{i}(T) = T", eq(rf_signflip(family.T, i), family.T))
        report.add(f"phi{i}(D) = D", eq(rf_signflip(family.D, i), family.D))
        for j, p in enumerate(pts, start=1):
            fx, fy = rf_signflip(p.x, i), rf_signflip(p.y, i)
            want_y = p.y if i == j else -p.y
            ok = eq(fx, p.x) and eq(fy, want_y)
            report.add(f"phi{i}(P{j}) = {'P' if i == j else '-P'}{j}", ok)
    return report


def verify_all(family: TwistFamily, samples: int = 20, seed: int = 0) -> VerificationReport:
    report = verify_membership(family, samples, seed)
    report.extend(verify_nonconstant(family))
    if family.family in ("A3", "B3"):
        report.extend(verify_phi_relations(family, min(samples, 5), seed))
    return report


class DegenerateAssignment(ValueError):
    pass


def specialize(family: TwistFamily, assignment):
    """Exact values of T, D and every point; raises DegenerateAssignment on poles."""
    missing = [v for v in family.variables if v not in assignment]
    if missing:
        raise DegenerateAssignment(f"degenerate: unassigned variables {', '.join(missing)}")
    try:
        T = rf_eval(family.T, assignment)
    except PoleError:
        raise DegenerateAssignment("degenerate: T undefined") from None
    if T == 0:
        raise DegenerateAssignment("degenerate: T vanishes")
    try:
        D = rf_eval(family.D, assignment)
        pts = [(rf_eval(p.x, assignment), rf_eval(p.y, assignment)) for p in family.points]
    except PoleError as exc:
        raise DegenerateAssignment(f"degenerate: pole of ({serialize_poly(exc.base)})") from None
    if D == 0:
        raise DegenerateAssignment("degenerate: D vanishes")
    return T, D, pts


def certify_specialization(family: TwistFamily, assignment) -> VerificationReport:
    """Membership and order certificates after substituting rational values."""
    report = VerificationReport(0, 1)
    T, D, pts = specialize(family, assignment)
    where = _fmt(assignment)
    for k, (p, (x, y)) in enumerate(zip(family.points, pts)):
        curve = family.curves[p.curve_index]
        name = f"point[{k}] on curve {p.curve_index}"
        member = curve.holds(D, x, y)
        report.add(f"{name} membership", member, assignment=where, x=str(x), y=str(y))
        if not member:
            continue
        deg = curve.f.degree("x") if curve.kind == "quadratic" else curve.m
        if curve.kind == "quadratic" and deg in (3, 4):
            if y == 0:
                report.add(f"{name} order", FAIL, reason="y = 0")
                continue
            model, P = quadratic_twist_model(curve.f.univariate_coeffs("x"), D, x, y)
        elif curve.kind in ("odd", "even") and curve.m == 3:
            build = odd_twist_model if curve.kind == "odd" else even_twist_model
            model, P = build(D, curve.constant, x, y)
        else:
            ok = y != 0 and (_nonconstant_witness(p.x) or _nonconstant_witness(p.y)) is not None
            report.add(f"{name} order", "criterion-only" if ok else FAIL, genus=str(curve.genus))
            continue
        if model.discriminant() == 0:
            report.add(f"{name} order", FAIL, reason="singular specialization")
            continue
        cert = certify_weierstrass_point(model, P)
        # a torsion point here is inconclusive for the family, never a refutation
        status = PASS if cert.infinite else "torsion"
        report.add(
            f"{name} order",
            status,
            certificate=cert.status,
            order=None if cert.order is None else str(cert.order),
            checked=",".join(str(n) for n in cert.checked),
        )
    return report
