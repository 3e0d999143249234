"""Command-line front end.

    twistrank construct --family A --f "x^5+x+1" --m 5,9,13 --consts 1,2,3
    twistrank example
    twistrank verify family.json --samples 20 --seed 0
    twistrank certify family.json --at u=1,v1=1,v2=1,v3=1

Exit codes: 0 success, 2 invalid input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import FactoredRF, MPoly, PolySyntaxError, parse_poly, parse_rf, rf_equal, rf_sum, serialize_poly, serialize_rf
from .families import FAMILIES, CurveModel, FamilyInputs, InputError, RationalPoint, TwistFamily, construct
from .verification import Check, DegenerateAssignment, VerificationReport, certify_specialization, verify_all

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3
DEFAULT_SAMPLES, DEFAULT_SEED = 20, 0

EXAMPLE_INPUTS = dict(family="A", f="x^5+x+1", m=(5, 9, 13), constants=(1, 2, 3))


# ---------------------------------------------------------------------------
# documents


def _s(value) -> str:
    return str(value)


def document_from_family(family: TwistFamily, report: VerificationReport | None = None) -> dict:
    inp = family.inputs
    return {
        "schema_version": SCHEMA_VERSION,
        "family": inp.family,
        "inputs": {
            "family": inp.family,
            "f": None if inp.f is None else serialize_poly(inp.f),
            "m": [_s(k) for k in inp.m],
            "constants": [_s(k) for k in inp.constants],
            "base_point": None if inp.base_point is None else [_s(k) for k in inp.base_point],
        },
        "M": _s(family.M),
        "M_i": [_s(k) for k in family.M_i],
        "variables": list(family.variables),
        "w": [serialize_rf(w) for w in family.w],
        "T": serialize_rf(family.T),
        "D": serialize_rf(family.D),
        "atoms": {k: {a: _s(e) for a, e in d.items()} for k, d in family.atoms.items()},
        "curves": [
            {
                "model_kind": c.kind,
                "m": _s(c.m),
                "constant": _s(c.constant),
                "f": None if c.f is None else serialize_poly(c.f),
                "equation_string": c.equation_string(),
            }
            for c in family.curves
        ],
        "points": [
            {"curve_index": _s(p.curve_index), "x": serialize_rf(p.x), "y": serialize_rf(p.y)}
            for p in family.points
        ],
        "verification": None if report is None else report.as_dict(),
    }


class DocumentError(ValueError):
    pass


def family_from_document(doc: dict) -> TwistFamily:
    """Rebuild a TwistFamily from its JSON document without re-running the construction."""
    try:
        inp = doc["inputs"]
        inputs = FamilyInputs(
            family=inp["family"],
            m=tuple(int(k) for k in inp["m"]),
            constants=tuple(Fraction(k) for k in inp["constants"]),
            f=None if inp["f"] is None else parse_poly(inp["f"]),
            base_point=None if inp["base_point"] is None else tuple(Fraction(k) for k in inp["base_point"]),
        )
        curves = tuple(
            CurveModel(
                c["model_kind"],
                int(c["m"]),
                Fraction(c["constant"]),
                None if c["f"] is None else parse_poly(c["f"]),
            )
            for c in doc["curves"]
        )
        points = tuple(
            RationalPoint(int(p["curve_index"]), parse_rf(p["x"]), parse_rf(p["y"])) for p in doc["points"]
        )
        return TwistFamily(
            inputs=inputs,
            M=int(doc["M"]),
            M_i=tuple(int(k) for k in doc["M_i"]),
            w=tuple(parse_rf(w) for w in doc["w"]),
            T=parse_rf(doc["T"]),
            D=parse_rf(doc["D"]),
            curves=curves,
            points=points,
            variables=tuple(doc["variables"]),
            atoms={k: {a: int(e) for a, e in d.items()} for k, d in doc["atoms"].items()},
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise DocumentError(f"malformed document: {exc}") from exc


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# the worked example


def _displayed_w():
    """The three doubling coordinates as printed for f = x^5+x+1, m = (5,9,13), consts (1,2,3)."""
    V1, V2, V3 = (FactoredRF.var(f"v{i}", k) for i, k in ((1, 5), (2, 9), (3, 13)))
    q = Fraction
    w1 = rf_sum([V3 * q(3, 4) / V2, V2 / (V3 * 3), -(V2 * V3 * 3) / V1 ** 2])
    w2 = rf_sum([V3 * 3 / V1, V1 / (V3 * 3), -(V1 * V3 * q(3, 4)) / V2 ** 2])
    w3 = rf_sum([V2 * 3 / V1, V1 * q(3, 4) / V2, -(V1 * V2) / (V3 ** 2 * 3)])
    return w1, w2, w3


def example_checks(family: TwistFamily, samples: int = 20, seed: int = 42) -> list:
    """Compare a construction against every value printed in the worked example."""
    checks = []

    def check(name, ok, **witness):
        checks.append(Check(name, "pass" if ok else "fail", witness))

    check("M = 585", family.M == 585, computed=str(family.M))
    check("(M-1)/2 = 292", (family.M - 1) // 2 == 292, computed=str((family.M - 1) // 2))
    check("M_i = (117, 65, 45)", family.M_i == (117, 65, 45), computed=",".join(map(str, family.M_i)))
    v3 = family.atoms["D"].get("v3")
    check("denominator exponent of v3 in D = 15210", v3 == -15210, computed=str(v3))

    wd = _displayed_w()
    for i, (got, want) in enumerate(zip(family.w, wd), start=1):
        check(f"w{i} matches display", got == want, computed=serialize_rf(got), displayed=serialize_rf(want))

    fu = FactoredRF.from_poly(parse_poly("u^5+u+1"))
    w1c = rf_sum([wd[0] * wd[0], FactoredRF.constant(-1)])
    w3c = rf_sum([wd[2] * wd[2], FactoredRF.constant(-9)])
    v1, v3r = FactoredRF.var("v1"), FactoredRF.var("v3")
    D_disp = fu ** 585 * w1c * v1 ** 10 / (v3r ** 15210 * w3c ** 585)
    check("D matches display", rf_equal(family.D, D_disp, samples=samples, seed=seed), samples=str(samples), seed=str(seed))

    y_atoms = family.atoms.get("y_P", {})
    want_atoms = {"v3": 7592, "w3^2-c^2": 292, "f(u)": -292}
    check("H-point y = v3^7592 (w3^2-9)^292 / f(u)^292 (exponents)", y_atoms == want_atoms,
          computed=json.dumps(y_atoms, sort_keys=True))
    y_disp = v3r ** 7592 * w3c ** 292 / fu ** 292
    check("H-point y matches display", rf_equal(family.points[0].y, y_disp, samples=samples, seed=seed))
    for i, Mi in enumerate(family.M_i, start=1):
        x_disp = v3r ** (26 * Mi) * w3c ** Mi / (FactoredRF.var(f"v{i}", 2) * fu ** Mi)
        check(f"P{i} x matches display", rf_equal(family.points[i].x, x_disp, samples=samples, seed=seed))
    return checks


def run_example(samples: int = 20, seed: int = 42):
    inp = EXAMPLE_INPUTS
    family = construct(FamilyInputs(inp["family"], inp["m"], inp["constants"], parse_poly(inp["f"])))
    report = verify_all(family, samples, seed)
    report.checks = example_checks(family, samples, seed) + report.checks
    return family, report


# ---------------------------------------------------------------------------
# argument parsing


def _int_list(text):
    try:
        return tuple(int(k) for k in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}") from None


def _rat_list(text):
    try:
        return tuple(Fraction(k.strip()) for k in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a comma list of rationals, got {text!r}") from None


def _assignment(text):
    out = {}
    try:
        for part in text.split(","):
            name, value = part.split("=")
            out[name.strip()] = Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected name=value pairs, got {text!r}") from None
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistrank", description="Simultaneous positive-rank twists of hyperelliptic curves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed=DEFAULT_SEED):
        sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="identity-test samples (default 20)")
        sp.add_argument("--seed", type=int, default=seed, help=f"random seed (default {seed})")
        sp.add_argument("--out", help="write JSON here instead of standard output")

    c = sub.add_parser("construct", help="build a twist family")
    c.add_argument("--family", required=True, choices=FAMILIES)
    c.add_argument("--f", help="polynomial in x (families A, A3, B, B3)")
    c.add_argument("--m", required=True, type=_int_list, help="comma list of odd exponents")
    c.add_argument("--consts", required=True, type=_rat_list,
                   help="comma list of nonzero rationals; a, b, c are squared internally")
    c.add_argument("--base-point", type=_rat_list, help="u,y_u with y_u^2 = f(u) (families B, B3)")
    c.add_argument("--verify", action="store_true", help="attach a verification report")
    common(c)

    e = sub.add_parser("example", help="reproduce the worked example and check every printed value")
    common(e, seed=42)

    v = sub.add_parser("verify", help="verify a family document")
    v.add_argument("path")
    common(v)

    k = sub.add_parser("certify", help="certify a family at a rational specialization")
    k.add_argument("path")
    k.add_argument("--at", required=True, type=_assignment, help="e.g. u=1,v1=1,v2=1,v3=1")
    k.add_argument("--out")
    return p


def _emit(args, payload: dict):
    text = dump_document(payload)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(message, code):
    print(f"error: {message}", file=sys.stderr)
    return code


def _load(path):
    with open(path, encoding="utf-8") as fh:
        return family_from_document(json.load(fh))


def cmd_construct(args) -> int:
    try:
        f = parse_poly(args.f) if args.f else None
        if f is not None and not isinstance(f, MPoly):
            raise InputError("f must be a polynomial")
        inputs = FamilyInputs(args.family, args.m, args.consts, f, args.base_point)
        family = construct(inputs)
    except (InputError, PolySyntaxError) as exc:
        return _fail(exc, EXIT_INPUT)
    report = verify_all(family, args.samples, args.seed) if args.verify else None
    _emit(args, document_from_family(family, report))
    return EXIT_OK if report is None or report.overall else EXIT_VERIFY


def cmd_example(args) -> int:
    family, report = run_example(args.samples, args.seed)
    _emit(args, document_from_family(family, report))
    if not report.overall:
        for c in report.checks:
            if c.status == "fail":
                print(f"mismatch: {c.name}: {json.dumps(c.witness)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        family = _load(args.path)
    except (OSError, json.JSONDecodeError, DocumentError) as exc:
        return _fail(exc, EXIT_INPUT)
    report = verify_all(family, args.samples, args.seed)
    _emit(args, report.as_dict())
    return EXIT_OK if report.overall else EXIT_VERIFY


def cmd_certify(args) -> int:
    try:
        family = _load(args.path)
        report = certify_specialization(family, args.at)
    except (OSError, json.JSONDecodeError, DocumentError, DegenerateAssignment) as exc:
        return _fail(exc, EXIT_INPUT)
    _emit(args, report.as_dict())
    return EXIT_OK if report.overall else EXIT_VERIFY


COMMANDS = {"construct": cmd_construct, "example": cmd_example, "verify": cmd_verify, "certify": cmd_certify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
