"""Command-line interface and report emission.

One verb per invocation; every run emits a single report (JSON by default)
echoing the input, the result, the rule trace with citations, kernel
cross-check outcomes, and timing.  Exit codes: 0 success, 1 user error,
2 budget exhausted, 3 internal inconsistency (two rules disagreed, which
can only mean a bug).

Chain certificates serialize with every witness polynomial spelled out, so
an external checker needs nothing beyond a normal-form routine to re-verify
them; `ringdim verify cert.json` does exactly that re-verification.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from .calculus import (
    BaseField,
    DimensionResult,
    FieldExt,
    Quotient,
    RULE_FIBER,
    RULE_KERNEL,
    RULE_LOC_NZD,
    RULE_LOC_POLY,
    RULE_TENSOR_EQ,
    RULE_TENSOR_UB,
    RULE_TRDEG_SUM,
    evaluate,
    flatten_affine,
    trdeg_of,
)
from .chains import (
    ChainCertificate,
    ChainStepEvidence,
    PrimalityCertificate,
    build_chain,
    certified_lower_bound,
    verify_chain,
)
from .dimension import (
    AffineAlgebra,
    DimensionValue,
    Infinity,
    trdeg_affine_domain,
    zero_divisor_status,
    ZeroDivisorStatus,
)
from .errors import (
    BudgetExhaustedError,
    CertificateError,
    EmptyRingError,
    InconsistentBoundsError,
    ParseError,
)
from .ideals import (
    Budget,
    DEFAULT_PAIR_BUDGET,
    IdealPresentation,
    eliminate as eliminate_ideal,
    ideal_quotient,
    saturate as saturate_ideal,
)
from .orderings import GREVLEX, LEX
from .parser import (
    ambient_ring_of,
    format_field,
    parse_polynomial,
    parse_ring_expr,
)
from .polynomials import PolynomialRing, format_polynomial

SCHEMA_VERSION = "ringdim-report/1"
VERBS = ("dim", "gb", "eliminate", "quotient", "saturate", "nzd", "chain", "verify", "trdeg")
STATUSES = ("ok", "user-error", "budget-exhausted", "internal-inconsistency")

EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_BUDGET = 2
EXIT_INCONSISTENT = 3


@dataclass(frozen=True)
class Command:
    """A parsed invocation in canonical form: parse(argv) and to_argv()
    round-trip exactly, defaults included."""

    verb: str
    positionals: tuple[str, ...]
    options: tuple[tuple[str, object], ...]

    def to_argv(self) -> list[str]:
        argv = [self.verb, *self.positionals]
        for name, value in self.options:
            flag = "--" + name.replace("_", "-")
            if isinstance(value, bool):
                if value:
                    argv.append(flag)
            elif value is not None:
                argv.extend([flag, str(value)])
        return argv


_OPTION_FIELDS = ("order", "budget", "format", "out", "keep", "witnesses", "fresh", "assert_domain")


def parse_command(argv) -> Command:
    args = build_arg_parser().parse_args(list(argv))
    positionals = []
    if getattr(args, "expression", None) is not None:
        positionals.append(args.expression)
    if getattr(args, "element", None) is not None:
        positionals.append(args.element)
    if getattr(args, "certificate", None) is not None:
        positionals.append(args.certificate)
    options = tuple(
        (name, getattr(args, name)) for name in _OPTION_FIELDS if hasattr(args, name)
    )
    return Command(args.verb, tuple(positionals), options)


# -- report plumbing -----------------------------------------------------------

def dimension_to_json(value: DimensionValue) -> dict:
    if value.kind == "exact":
        return {"kind": "exact", "value": value.lo}
    if value.kind == "empty":
        return {"kind": "empty-ring"}
    if value.kind == "infinite":
        return {"kind": "infinite"}
    hi = "inf" if isinstance(value.hi, Infinity) else value.hi
    return {"kind": "interval", "lo": value.lo, "hi": hi}


def trace_to_json(result: DimensionResult) -> list[dict]:
    return [
        {"rule": e.rule, "citation": e.citation, "detail": e.detail}
        for e in result.trace
    ]


_EXACT_RULES = (RULE_KERNEL, RULE_FIBER, RULE_LOC_POLY, RULE_LOC_NZD, RULE_TRDEG_SUM, RULE_TENSOR_EQ)


def cross_checks_of(result: DimensionResult) -> list[dict]:
    """Agreements the evaluation already enforced: if two exact rules appear
    in one trace they were checked against each other, and an upper bound in
    the presence of an exact value was checked for consistency."""
    rules = [e.rule for e in result.trace]
    exact_rules = [r for r in rules if r in _EXACT_RULES]
    checks = []
    if len(exact_rules) >= 2:
        checks.append(
            {
                "name": "exact-rules-agree",
                "status": "agree",
                "detail": " = ".join(dict.fromkeys(exact_rules)),
            }
        )
    if RULE_TENSOR_UB in rules and exact_rules:
        checks.append(
            {
                "name": "upper-bound-consistent",
                "status": "agree",
                "detail": f"{exact_rules[0]} within {RULE_TENSOR_UB}",
            }
        )
    return checks


def make_report(command: str, input_echo: dict, started: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": input_echo,
        "status": "ok",
        "result": None,
        "trace": [],
        "cross_checks": [],
        "timing_ms": round((time.perf_counter() - started) * 1000.0, 3),
        "error": None,
    }


def validate_report(report: dict) -> list[str]:
    """Structural validation mirroring report_schema.json; returns problems."""
    problems = []
    required = {
        "schema_version": str,
        "command": str,
        "input": dict,
        "status": str,
        "result": (dict, type(None)),
        "trace": list,
        "cross_checks": list,
        "timing_ms": (int, float),
        "error": (dict, type(None)),
    }
    for key, types in required.items():
        if key not in report:
            problems.append(f"missing key {key}")
        elif not isinstance(report[key], types):
            problems.append(f"key {key} has type {type(report[key]).__name__}")
    if report.get("schema_version") != SCHEMA_VERSION:
        problems.append("wrong schema_version")
    if report.get("command") not in VERBS:
        problems.append("unknown command")
    if report.get("status") not in STATUSES:
        problems.append("unknown status")
    for entry in report.get("trace", []):
        if not isinstance(entry, dict) or "rule" not in entry or "citation" not in entry:
            problems.append("malformed trace entry")
    for entry in report.get("cross_checks", []):
        if not isinstance(entry, dict) or "name" not in entry or "status" not in entry:
            problems.append("malformed cross-check entry")
    # every exact dimension must be backed by a kernel run or a closed rule
    result = report.get("result") or {}
    dimension = result.get("dimension") if isinstance(result, dict) else None
    if isinstance(dimension, dict) and dimension.get("kind") == "exact":
        if not report.get("trace"):
            problems.append("exact dimension reported without a justifying trace")
    return problems


# -- certificate serialization ---------------------------------------------------

def certificate_to_json(cert: ChainCertificate) -> dict:
    def primality_to_json(p: PrimalityCertificate) -> dict:
        blob = {"kind": p.kind, "note": p.note, "flagged": p.flagged}
        if p.base_prime is not None:
            blob["base_prime"] = [format_polynomial(g) for g in p.base_prime.generators]
        if p.substitutions:
            blob["substitutions"] = [
                [cert.ring.variables[idx], format_polynomial(value)]
                for idx, value in p.substitutions
            ]
        if p.generator is not None:
            blob["generator"] = format_polynomial(p.generator)
        return blob

    return {
        "field": format_field(cert.ring.field),
        "variables": list(cert.ring.variables),
        "witness_variables": list(cert.witness_variables),
        "witnesses": [format_polynomial(t) for t in cert.witnesses],
        "links": [[format_polynomial(g) for g in link.generators] for link in cert.links],
        "evidence": [
            {
                "strictness_witness": None
                if e.strictness_witness is None
                else format_polynomial(e.strictness_witness),
                "avoidance_checked": e.avoidance_checked,
                "primality": primality_to_json(e.primality),
            }
            for e in cert.evidence
        ],
    }


def parse_field_text(text: str):
    from .parser import _Cursor, _parse_field, tokenize

    cur = _Cursor(tokenize(text))
    field = _parse_field(cur)
    if cur.peek().kind != "EOF":
        raise ParseError("trailing input after field")
    return field


def certificate_from_json(blob: dict) -> ChainCertificate:
    # accept either a bare certificate or a full chain report containing one
    if "field" not in blob and isinstance(blob.get("result"), dict):
        blob = blob["result"].get("certificate", blob)
    field = parse_field_text(blob["field"])
    ring = PolynomialRing(field, tuple(blob["variables"]), unchecked=True)

    def poly(text: str):
        return parse_polynomial(text, ring)

    links = tuple(
        IdealPresentation(ring, [poly(g) for g in gens]) if gens else IdealPresentation.zero_ideal(ring)
        for gens in blob["links"]
    )
    evidence = []
    for e in blob["evidence"]:
        p = e["primality"]
        base_prime = None
        if "base_prime" in p:
            gens = [poly(g) for g in p["base_prime"]]
            base_prime = IdealPresentation(ring, gens) if gens else IdealPresentation.zero_ideal(ring)
        substitutions = tuple(
            (ring.variable_index(name), poly(value)) for name, value in p.get("substitutions", [])
        )
        generator = poly(p["generator"]) if "generator" in p else None
        cert = PrimalityCertificate(
            p["kind"], base_prime=base_prime, substitutions=substitutions, generator=generator, note=p.get("note", "")
        )
        witness = e["strictness_witness"]
        evidence.append(
            ChainStepEvidence(
                None if witness is None else poly(witness),
                bool(e.get("avoidance_checked", False)),
                cert,
            )
        )
    return ChainCertificate(
        ring,
        links,
        tuple(evidence),
        tuple(blob["witness_variables"]),
        tuple(poly(t) for t in blob["witnesses"]),
    )


# -- verb handlers ------------------------------------------------------------------

def _order_from_name(name: str):
    return {"grevlex": GREVLEX, "lex": LEX}[name]


def _require_quotient_payload(text: str) -> tuple[Quotient, AffineAlgebra]:
    expr = parse_ring_expr(text)
    if not isinstance(expr, Quotient):
        raise ParseError("this command expects a Quot(...) payload")
    flat = flatten_affine(expr)
    if flat is None:
        raise ParseError("the quotient does not flatten to an affine presentation")
    return expr, flat


def _element_in(text: str, expr_text: str):
    ring = ambient_ring_of(expr_text)
    if ring is None:
        raise ParseError("no polynomial context for this expression")
    return parse_polynomial(text, ring)


def _cmd_dim(args, report: dict, budget: Budget):
    expr = parse_ring_expr(args.expression)
    result = evaluate(expr, budget)
    report["result"] = {"dimension": dimension_to_json(result.value)}
    if result.flattened is not None:
        report["result"]["kernel_presentation"] = {
            "variables": list(result.flattened.ring.variables),
            "generators": [format_polynomial(g) for g in result.flattened.presentation.generators],
        }
    report["trace"] = trace_to_json(result)
    report["cross_checks"] = cross_checks_of(result)


def _cmd_gb(args, report: dict, budget: Budget):
    _, flat = _require_quotient_payload(args.expression)
    order = _order_from_name(args.order)
    basis = flat.presentation.groebner_basis(order, budget)
    report["result"] = {
        "order": args.order,
        "basis": [format_polynomial(g) for g in basis] or ["0"],
    }
    report["trace"] = [
        {
            "rule": "reduced-groebner-basis",
            "citation": "Buchberger completion with both classic pair criteria",
            "detail": f"{len(basis)} basis elements",
        }
    ]


def _cmd_eliminate(args, report: dict, budget: Budget):
    _, flat = _require_quotient_payload(args.expression)
    keep = [name.strip() for name in args.keep.split(",") if name.strip()]
    result = eliminate_ideal(flat.presentation, keep, budget)
    report["result"] = {
        "keep": keep,
        "generators": [format_polynomial(g) for g in result.generators],
    }
    report["trace"] = [
        {
            "rule": "block-elimination",
            "citation": "elimination ideals via a block order over the discarded variables",
            "detail": "",
        }
    ]


def _cmd_quotient(args, report: dict, budget: Budget):
    _, flat = _require_quotient_payload(args.expression)
    f = _element_in(args.element, args.expression)
    result = ideal_quotient(flat.presentation, f, budget)
    report["result"] = {"generators": [format_polynomial(g) for g in result.generators]}
    report["trace"] = [
        {
            "rule": "ideal-quotient",
            "citation": "tag-variable intersection divided by the element",
            "detail": "",
        }
    ]


def _cmd_saturate(args, report: dict, budget: Budget):
    _, flat = _require_quotient_payload(args.expression)
    f = _element_in(args.element, args.expression)
    result = saturate_ideal(flat.presentation, f, budget)
    report["result"] = {"generators": [format_polynomial(g) for g in result.generators]}
    report["trace"] = [
        {
            "rule": "saturation",
            "citation": "contraction of the Rabinowitsch ideal",
            "detail": "",
        }
    ]


def _cmd_nzd(args, report: dict, budget: Budget):
    _, flat = _require_quotient_payload(args.expression)
    f = _element_in(args.element, args.expression)
    status = zero_divisor_status(flat, f, budget)
    report["result"] = {
        "status": status.value,
        "is_zero_divisor": status is not ZeroDivisorStatus.NON_ZERO_DIVISOR,
    }
    report["trace"] = [
        {
            "rule": "zero-divisor-test",
            "citation": "f is a non-zero-divisor iff (I : f) = I",
            "detail": status.value,
        }
    ]


def _cmd_trdeg(args, report: dict, budget: Budget):
    expr = parse_ring_expr(args.expression)
    if isinstance(expr, (BaseField, FieldExt)):
        t = trdeg_of(expr.descriptor) if isinstance(expr, FieldExt) else 0
        report["result"] = {
            "trdeg": "inf" if isinstance(t, Infinity) else t,
            "certificate": {"kind": "declared", "flagged": False},
        }
        report["trace"] = [
            {
                "rule": "declared-trdeg",
                "citation": "transcendence degree read off the chosen basis",
                "detail": "",
            }
        ]
        return
    flat = flatten_affine(expr)
    if flat is None:
        raise ParseError("trdeg needs a field extension or an affine domain")
    if flat.presentation.is_zero_ideal(budget):
        cert_kind, flagged = "zero-ideal-in-domain", False
    elif args.assert_domain:
        cert_kind, flagged = "asserted", True
    else:
        raise ParseError("pass --assert-domain to certify the quotient is a domain")
    t = trdeg_affine_domain(flat, cert_kind, budget)
    report["result"] = {"trdeg": t, "certificate": {"kind": cert_kind, "flagged": flagged}}
    report["trace"] = [
        {
            "rule": "affine-domain-trdeg",
            "citation": "dim of an affine domain equals trdeg of its fraction field",
            "detail": f"domain certificate: {cert_kind}",
        }
    ]


def _cmd_chain(args, report: dict, budget: Budget):
    expr = parse_ring_expr(args.expression)
    flat = flatten_affine(expr)
    if flat is None:
        raise ParseError("chain needs an affine expression")
    ring = flat.ring
    witnesses = [parse_polynomial(t.strip(), ring) for t in args.witnesses.split(",") if t.strip()]
    fresh = [name.strip() for name in args.fresh.split(",") if name.strip()]
    if flat.presentation.is_zero_ideal(budget):
        base_cert = PrimalityCertificate("zero-ideal-in-domain")
    else:
        base_cert = PrimalityCertificate("asserted", note="algebra assumed to be a domain")
    cert = build_chain(
        flat,
        [IdealPresentation.zero_ideal(ring)],
        witnesses,
        fresh,
        [base_cert],
        budget,
    )
    bound = certified_lower_bound(cert, budget)
    checks = verify_chain(cert, budget)
    report["result"] = {
        "certificate": certificate_to_json(cert),
        "lower_bound": bound,
        "verification": checks,
        "flagged_assumptions": [e.primality.kind for e in cert.evidence if e.primality.flagged],
    }
    report["trace"] = [
        {
            "rule": "chain-lower-bound",
            "citation": "explicit prime chain over the adjoined indeterminates",
            "detail": f"{bound} strict verified steps",
        }
    ]
    report["cross_checks"] = [
        {"name": name, "status": "agree" if ok else "fail", "detail": ""}
        for name, ok in checks.items()
    ]


def _cmd_verify(args, report: dict, budget: Budget):
    with open(args.certificate, "r", encoding="utf-8") as fh:
        blob = json.load(fh)
    cert = certificate_from_json(blob)
    checks = verify_chain(cert, budget)
    verified = all(checks.values())
    report["result"] = {
        "verified": verified,
        "verification": checks,
        "length": cert.length(),
    }
    report["trace"] = [
        {
            "rule": "chain-verification",
            "citation": "normal-form re-check of strictness, avoidance, and substitution transfer",
            "detail": "all steps pass" if verified else "at least one step fails",
        }
    ]
    if not verified:
        raise CertificateError("certificate failed verification")


_HANDLERS = {
    "dim": _cmd_dim,
    "gb": _cmd_gb,
    "eliminate": _cmd_eliminate,
    "quotient": _cmd_quotient,
    "saturate": _cmd_saturate,
    "nzd": _cmd_nzd,
    "trdeg": _cmd_trdeg,
    "chain": _cmd_chain,
    "verify": _cmd_verify,
}


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}", f"status: {report['status']}"]
    result = report.get("result")
    if result:
        for key, value in result.items():
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    for entry in report.get("trace", []):
        lines.append(f"rule {entry['rule']}: {entry['citation']}")
    if report.get("error"):
        lines.append(f"error: {report['error']['message']}")
    lines.append(f"time: {report['timing_ms']} ms")
    return "\n".join(lines)


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringdim",
        description="Exact Krull dimensions of affine algebras, localizations, and tensor products of field extensions.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
        p.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET, help="pair-reduction cap")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", default=None, help="write the report to a file as well")

    p = sub.add_parser("dim", help="dimension of a ring expression")
    p.add_argument("expression")
    common(p)

    p = sub.add_parser("gb", help="reduced Groebner basis of a Quot(...) payload")
    p.add_argument("expression")
    common(p)

    p = sub.add_parser("eliminate", help="elimination ideal of a Quot(...) payload")
    p.add_argument("expression")
    p.add_argument("--keep", required=True, help="comma-separated variables to keep")
    common(p)

    p = sub.add_parser("quotient", help="ideal quotient (I : f)")
    p.add_argument("expression")
    p.add_argument("element")
    common(p)

    p = sub.add_parser("saturate", help="saturation (I : f^inf)")
    p.add_argument("expression")
    p.add_argument("element")
    common(p)

    p = sub.add_parser("nzd", help="zero-divisor test for an element of a quotient")
    p.add_argument("expression")
    p.add_argument("element")
    common(p)

    p = sub.add_parser("trdeg", help="transcendence degree of a field extension or affine domain")
    p.add_argument("expression")
    p.add_argument("--assert-domain", action="store_true")
    common(p)

    p = sub.add_parser("chain", help="build and verify a prime-chain certificate")
    p.add_argument("expression")
    p.add_argument("--witnesses", required=True, help="comma-separated elements of the algebra")
    p.add_argument("--fresh", required=True, help="comma-separated fresh variable names")
    common(p)

    p = sub.add_parser("verify", help="re-verify a serialized chain certificate")
    p.add_argument("certificate", help="path to a certificate JSON file")
    common(p)

    return parser


def main(argv=None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    echo = {"expression": getattr(args, "expression", getattr(args, "certificate", ""))}
    if getattr(args, "element", None):
        echo["element"] = args.element
    echo["options"] = {
        "order": getattr(args, "order", "grevlex"),
        "budget": getattr(args, "budget", DEFAULT_PAIR_BUDGET),
    }
    report = make_report(args.verb, echo, started)
    budget = Budget(limit=args.budget)
    exit_code = EXIT_OK
    try:
        _HANDLERS[args.verb](args, report, budget)
    except (ParseError, ValueError, EmptyRingError, CertificateError, OSError, KeyError, json.JSONDecodeError) as exc:
        report["status"] = "user-error"
        report["error"] = {"message": str(exc)}
        if isinstance(exc, ParseError):
            report["error"]["line"] = exc.line
            report["error"]["column"] = exc.column
        exit_code = EXIT_USER_ERROR
    except BudgetExhaustedError as exc:
        report["status"] = "budget-exhausted"
        report["error"] = {"message": str(exc), "used": exc.used, "limit": exc.limit}
        exit_code = EXIT_BUDGET
    except InconsistentBoundsError as exc:
        report["status"] = "internal-inconsistency"
        report["error"] = {"message": str(exc)}
        exit_code = EXIT_INCONSISTENT
    report["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    rendered = (
        json.dumps(report, indent=2, sort_keys=True)
        if args.format == "json"
        else _render_text(report)
    )
    print(rendered)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
