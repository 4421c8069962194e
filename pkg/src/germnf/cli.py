"""Command-line front end: JSON description of ``f - id`` in, normal-form report out.

Exit codes: 0 success, 2 malformed input, 3 hypothesis violation (including
``f = id``), 4 scaling root outside Q(i) without ``--permissive-scale``,
5 certificate failure or internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .errors import CaseTableError, GermError, HypothesisViolation, RootNotInField
from .gaussq import GaussQ, parse_rational
from .jets import JetMap, format_poly
from .pipeline import NormalFormReport, NormalizeOptions, PARAMETER_NAMES, normalize

DEFAULT_DEGREE = 10

EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_ROOT, EXIT_CERTIFICATE = 0, 2, 3, 4, 5


class InputError(GermError):
    """Malformed or invalid input document."""


@dataclass(frozen=True)
class InputDocument:
    truncation_degree: int
    terms: tuple[tuple[int, int, int, GaussQ], ...]  # (component, e1, e2, coefficient)

    def to_jet(self, D: int | None = None) -> JetMap:
        """``f = id + sum(terms)`` through degree ``D``; terms above ``D`` are dropped."""
        D = self.truncation_degree if D is None else D
        p1, p2 = {}, {}
        for comp, e1, e2, c in self.terms:
            (p1 if comp == 1 else p2)[(e1, e2)] = c
        return JetMap(D, p1, p2).plus_identity()


def _reject_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise InputError(f"duplicate JSON key {k!r}")
        out[k] = v
    return out


def _int_field(rec: dict, key: str, where: str, lo: int = 0) -> int:
    v = rec.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{where}.{key}: expected an integer, got {v!r}")
    if v < lo:
        raise InputError(f"{where}.{key}: must be >= {lo}, got {v}")
    return v


def parse_input(document: bytes | str) -> InputDocument:
    """Validate an input document; raises InputError with a field-level diagnostic."""
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not UTF-8: {exc}") from None
    try:
        data = json.loads(document, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object")
    if "truncation_degree" in data:
        D = _int_field(data, "truncation_degree", "$", lo=2)
    else:
        D = DEFAULT_DEGREE
    records = data.get("map_minus_id")
    if not isinstance(records, list):
        raise InputError("$.map_minus_id: expected a list of coefficient records")
    seen = set()
    terms = []
    for n, rec in enumerate(records):
        where = f"$.map_minus_id[{n}]"
        if not isinstance(rec, dict):
            raise InputError(f"{where}: expected an object")
        comp = _int_field(rec, "component", where, lo=1)
        if comp not in (1, 2):
            raise InputError(f"{where}.component: must be 1 or 2, got {comp}")
        e1 = _int_field(rec, "e1", where)
        e2 = _int_field(rec, "e2", where)
        if e1 + e2 > D:
            raise InputError(f"{where}: degree {e1 + e2} exceeds truncation_degree {D}")
        key = (comp, e1, e2)
        if key in seen:
            raise InputError(f"{where}: duplicate record for component {comp}, exponent ({e1}, {e2})")
        seen.add(key)
        parts = []
        for part in ("re", "im"):
            text = rec.get(part, "0/1")
            if not isinstance(text, str):
                raise InputError(f"{where}.{part}: expected a rational string \"p/q\"")
            try:
                parts.append(parse_rational(text))
            except ValueError as exc:
                raise InputError(f"{where}.{part}: {exc}") from None
        terms.append((comp, e1, e2, GaussQ(*parts)))
    terms.sort(key=lambda t: t[:3])
    return InputDocument(D, tuple(terms))


# ---------------------------------------------------------------------------
# serialization


def _coeff(c: GaussQ | None):
    if c is None:
        return None
    re, im = c.to_strings()
    return {"re": re, "im": im}


def _jet_doc(jet: JetMap | None) -> dict:
    if jet is None:
        return {"truncation_degree": None, "map_minus_id": []}
    diff = jet.minus_identity()
    recs = []
    for comp, (e1, e2), c in diff.terms():
        re, im = c.to_strings()
        recs.append({"component": comp, "e1": e1, "e2": e2, "re": re, "im": im})
    return {"truncation_degree": jet.degree, "map_minus_id": recs}


def report_to_dict(report: NormalFormReport) -> dict:
    lc = report.linear_class
    case = report.case
    em = report.e_membership
    A = report.linear_change
    disc = report.discrepancy
    return {
        "truncation_degree": report.D,
        "nu": report.nu,
        "mu": report.mu,
        "linear_class": None if lc is None else {
            "label": lc.label.value, "display": lc.label.display,
            "lambda": _coeff(lc.lam), "satisfies_H4": lc.satisfies_H4,
        },
        "case": None if case is None else {
            "label": case.case.value, "display": case.case.display, "lambda": _coeff(case.lam),
            "p": case.p, "q": case.q, "template": case.template_text,
        },
        "in_E": None if em is None else {
            "member": em.member, "component": em.component, "p": em.p, "q": em.q,
        },
        "tangential": report.tangential,
        "normal_form": _jet_doc(report.normal_form),
        "chi": _jet_doc(report.chi),
        "linear_change": {"a11": _coeff(A.a11), "a21": _coeff(A.a21), "a22": _coeff(A.a22)},
        "parameters": {name: [_coeff(c) for c in report.parameters.get(name, [])]
                       for name in PARAMETER_NAMES},
        "parameter_degree_bound": report.D - report.nu,
        "verified": "skipped" if report.verified is None else report.verified,
        "discrepancy": None if disc is None else {
            "degree": disc.degree, "component": disc.component, "e1": disc.exponent[0],
            "e2": disc.exponent[1], "lhs": _coeff(disc.lhs), "rhs": _coeff(disc.rhs),
        },
        "canonical": report.canonical,
        "stopped_after": report.stopped_after,
        "scale": _coeff(report.scale),
        "root_equation": report.root_equation,
        "notes": list(report.notes),
    }


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def render_text(report: NormalFormReport) -> str:
    nu = report.nu
    lines = [f"order of contact nu = {nu}, pure order mu = {report.mu}, truncation D = {report.D}"]
    lc = report.linear_class
    if lc is not None:
        lam = f" (λ = {lc.lam})" if lc.lam is not None else ""
        h4 = "holds" if lc.satisfies_H4 else "fails"
        lines.append(f"linear class: {lc.label.display}{lam}; (H4) {h4}")
    if report.e_membership is not None:
        em = report.e_membership
        lines.append("λ in E: " + (f"yes, component {em.component}" if em.member else "no"))
    if report.case is not None:
        c = report.case
        extra = ", ".join(f"{k} = {v}" for k, v in (("p", c.p), ("q", c.q)) if v is not None)
        lines.append(f"case: {c.case.display}" + (f" ({extra})" if extra else ""))
        lines.append(f"template: {c.template_text}")
    if report.normal_form is not None:
        fo = report.normal_fo
        if fo is None or not (fo.p1 or fo.p2):
            lines.append("normal form: identity")
        else:
            lines.append(f"normal form: (z1 + z1^{nu}[{format_poly(fo.p1)}], "
                         f"z2 + z1^{nu}[{format_poly(fo.p2)}])")
        for name in PARAMETER_NAMES:
            vals = report.parameters.get(name, [])
            if vals:
                lines.append(f"  {name} = [" + ", ".join("?" if v is None else str(v) for v in vals) + "]")
    A = report.linear_change
    if not A.is_identity():
        lines.append(f"linear change: [[{A.a11}, 0], [{A.a21}, {A.a22}]]")
    if report.chi is not None:
        lines.append(f"chi = ({format_poly(report.chi.p1)}, {format_poly(report.chi.p2)})")
    lines.append(f"tangential: {'yes' if report.tangential else 'no'}")
    if report.verified is None:
        lines.append("certificate: skipped")
    else:
        lines.append("certificate: " + ("f o Phi = Phi o f^ verified" if report.verified
                                        else f"FAILED at {report.discrepancy}"))
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry points


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="germnf",
        description="Formal normal forms of 2-D germs tangent to the identity fixing {z1=0}.")
    ap.add_argument("inputs", nargs="*", default=["-"],
                    help="JSON input files ('-' or nothing reads stdin)")
    ap.add_argument("--degree", type=int, default=None,
                    help="truncation degree D (default: the document's truncation_degree, else 10)")
    ap.add_argument("--case-only", action="store_true",
                    help="stop after classification and the resonance verdict")
    ap.add_argument("--permissive-scale", action="store_true",
                    help="accept scalings without a root in Q(i); report the residual factor")
    ap.add_argument("--no-verify", action="store_true", help="skip the conjugacy certificate")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def run(document: bytes | str, flags: Sequence[str] = ()) -> tuple[int, str, str]:
    """Process one document; returns ``(exit_code, stdout, stderr)``. Pure in its arguments."""
    args = build_parser().parse_args(list(flags))
    return _run_one(document, args)


def _run_one(document, args) -> tuple[int, str, str]:
    try:
        doc = parse_input(document)
    except InputError as exc:
        return EXIT_PARSE, "", f"input error: {exc}\n"
    D = args.degree if args.degree is not None else doc.truncation_degree
    if D < 2:
        return EXIT_PARSE, "", "input error: --degree must be at least 2\n"
    options = NormalizeOptions(permissive_scale=args.permissive_scale, verify=not args.no_verify,
                               case_only=args.case_only)
    try:
        report = normalize(doc.to_jet(D), D, options)
    except HypothesisViolation as exc:
        return EXIT_HYPOTHESIS, "", f"hypothesis violation: {exc}\n"
    except RootNotInField as exc:
        return EXIT_ROOT, "", f"scaling root not in Q(i): {exc} (use --permissive-scale)\n"
    except (CaseTableError, GermError) as exc:
        return EXIT_CERTIFICATE, "", f"internal error: {exc}\n"
    out = render_text(report) if args.format == "text" else dumps_canonical(report_to_dict(report))
    if report.verified is False:
        return EXIT_CERTIFICATE, out, "certificate failure: f o Phi != Phi o f^\n"
    return EXIT_OK, out, ""


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    worst = 0
    for path in args.inputs:
        try:
            if path == "-":
                data = sys.stdin.buffer.read()
            else:
                with open(path, "rb") as fh:
                    data = fh.read()
        except OSError as exc:
            sys.stderr.write(f"input error: {exc}\n")
            worst = max(worst, EXIT_PARSE)
            continue
        code, out, err = _run_one(data, args)
        if len(args.inputs) > 1 and out:
            sys.stdout.write(f"# {path}\n")
        sys.stdout.write(out)
        if err:
            sys.stderr.write(f"{path}: {err}" if len(args.inputs) > 1 else err)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
