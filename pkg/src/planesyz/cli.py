"""Command-line front end.

    planesyz analyze FILE           full report (JSON by default)
    planesyz syzygies FILE --degree S | --generators | --phi | --basis
    planesyz tjurina FILE [--affine | --projective]
    planesyz bounds FILE
    planesyz corpus DIR             check every *.curve file against its expect.* lines

Exit codes: 0 success, 1 expectation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .curvelab import (
    REPORT_KEYS,
    CurveError,
    CurveReport,
    analyze,
    bound_check_suite,
    curve_pair,
    freeness_verdict,
    tjurina_affine,
    tjurina_projective,
    tjurina_projective_oracle,
)
from .polyring import NotHomogeneousError
from .syzygy import ar_f_piece, generators_g, minimal_generators_f, phi
from .textio import CurveDocument, CurveFormatError, ParseError, emit_report, load_curve

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2

INPUT_ERRORS = (CurveFormatError, ParseError, CurveError, NotHomogeneousError)


class InputError(Exception):
    pass


@dataclass
class CorpusEntry:
    document: CurveDocument
    path: str = ""
    expectations: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.expectations:
            self.expectations = dict(self.document.expectations)
        for key in self.expectations:
            if key.split(".")[0] not in REPORT_KEYS:
                raise CurveFormatError(f"expect.{key} does not name a report field")

    def mismatches(self, report: CurveReport) -> list[dict]:
        out = []
        for key in sorted(self.expectations):
            want = self.expectations[key]
            try:
                got = report.field_value(key)
            except KeyError:
                out.append({"field": key, "expected": want, "actual": "<missing>"})
                continue
            if not _same(got, want):
                out.append({"field": key, "expected": want, "actual": got})
        return out


def _same(got, want) -> bool:
    # compare through JSON so tuples, lists and numbers line up the way a curve file writes them
    return json.loads(json.dumps(got)) == want


def _load(path: str) -> CurveDocument:
    try:
        return load_curve(path)
    except INPUT_ERRORS as exc:
        raise InputError(f"{path}: {exc}") from exc


def _pair(doc: CurveDocument):
    try:
        return curve_pair(doc.parsed, doc.kind)
    except INPUT_ERRORS as exc:
        raise InputError(f"{doc.name}: {exc}") from exc


def _analyze_doc(doc: CurveDocument, args) -> CurveReport:
    try:
        return analyze(doc.parsed, doc.kind, doc.name, s_max=args.smax, budget=args.budget,
                       oracle=args.oracle)
    except INPUT_ERRORS as exc:
        raise InputError(f"{doc.name}: {exc}") from exc


def _triples(rows) -> list[list[str]]:
    return [[str(p) for p in rho.components] for rho in rows]


def _print(data: dict, text_lines: Sequence[str], as_json: bool) -> None:
    if as_json:
        print(emit_report(data))
    else:
        print("\n".join(text_lines))


# -- subcommands ------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    doc = _load(args.path)
    entry = CorpusEntry(doc, args.path)
    report = _analyze_doc(doc, args)
    bad = entry.mismatches(report)
    data = report.as_dict()
    if bad:
        data = dict(data, expectation_failures=bad)
    if args.format == "text":
        lines = [f"{k}: {json.dumps(data[k], sort_keys=True)}" for k in sorted(data)
                 if k not in ("bounds", "generators", "basis")]
        lines.append(f"bounds: tau_min {report.tau_min}, tau_max {report.tau_max}, "
                     f"all checks passed: {report.bound_satisfied}")
        for c in report.checks:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}: {c.value} vs {c.bound}")
        for b in bad:
            lines.append(f"EXPECTATION FAILED {b['field']}: expected {b['expected']!r}, "
                         f"got {b['actual']!r}")
        print("\n".join(lines))
    else:
        print(emit_report(data))
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_syzygies(args) -> int:
    doc = _load(args.path)
    X, C = _pair(doc)
    as_json = args.format == "json"
    if args.basis or args.phi:
        if X is None:
            raise InputError(f"{doc.name}: the line at infinity is a component, no affine part")
    if args.basis:
        aff = generators_g(X, s_max=args.smax, budget=args.budget)
        data = {
            "piece": "AR(g)",
            "certified": aff.certified,
            "basis": _triples(aff.basis or ()),
            "lambda": str(aff.saito.lam) if aff.saito and aff.saito.lam is not None else None,
        }
        lines = [f"certified: {aff.certified}"]
        if aff.certified:
            lines.append(f"det = {data['lambda']} * g")
        lines += [f"({', '.join(t)})" for t in data["basis"]]
        if not aff.certified:
            lines.append("generating set returned, basis uncertified")
            lines += [f"({', '.join(t)})" for t in _triples(aff.generating_set.generators)]
            data["generators"] = _triples(aff.generating_set.generators)
        _print(data, lines, as_json)
        return EXIT_OK
    if args.degree is not None:
        rows = ar_f_piece(C, args.degree).basis
        piece = "AR(f)"
        if args.phi:
            rows = [phi(rho, X) for rho in rows]
            piece = "AR(g)"
        data = {"piece": piece, "degree": args.degree, "dimension": len(rows),
                "basis": _triples(rows)}
        lines = [f"{piece} degree {args.degree}: dimension {len(rows)}"]
        lines += [f"({', '.join(t)})" for t in data["basis"]]
        _print(data, lines, as_json)
        return EXIT_OK
    gens = minimal_generators_f(C, args.smax)
    rows = list(gens.generators)
    degrees = gens.degrees
    piece = "AR(f)"
    if args.phi:
        rows = [phi(rho, X) for rho in rows]
        degrees = [rho.sdeg for rho in rows]
        piece = "AR(g)"
    data = {"piece": piece, "complete": gens.complete, "s_max": gens.s_max,
            "degrees": degrees, "generators": _triples(rows)}
    lines = [f"{piece} generators (complete up to degree {gens.s_max}: {gens.complete})"]
    lines += [f"deg {k}: ({', '.join(t)})" for k, t in zip(degrees, data["generators"])]
    _print(data, lines, as_json)
    return EXIT_OK


def cmd_tjurina(args) -> int:
    doc = _load(args.path)
    X, C = _pair(doc)
    data: dict[str, Any] = {}
    lines = []
    if not args.projective:
        if X is None:
            raise InputError(f"{doc.name}: the line at infinity is a component, no affine part")
        data["tau_affine"] = tjurina_affine(X)
        lines.append(f"tau(X) = {data['tau_affine']}")
    if not args.affine:
        b = tjurina_projective(C)
        data["tau_projective"] = b.total
        data["tau_charts"] = {"z": b.z, "inf_y": b.inf_y, "inf_x": b.inf_x}
        data["sing_at_infinity"] = b.at_infinity > 0
        lines.append(f"tau(C) = {b.total}  (affine chart {b.z}, at infinity {b.at_infinity})")
        if args.oracle:
            data["tau_oracle"] = tjurina_projective_oracle(C)
            lines.append(f"Milnor algebra oracle: {data['tau_oracle']}")
            if data["tau_oracle"] != b.total:
                _print(data, lines, args.format == "json")
                print("error: oracle disagrees with the chart computation", file=sys.stderr)
                return EXIT_MISMATCH
    _print(data, lines, args.format == "json")
    return EXIT_OK


def cmd_bounds(args) -> int:
    doc = _load(args.path)
    X, C = _pair(doc)
    b = tjurina_projective(C)
    v = freeness_verdict(C, tau=b.total)
    checks = bound_check_suite(X, C, mdr=v.mdr, breakdown=b, verdict=v)
    ok = all(c.passed for c in checks)
    data = {
        "degree": C.d, "mdr": v.mdr, "tau_projective": b.total, "tau_min": v.tau_min,
        "tau_max": v.tau_max, "verdict": v.kind,
        "exponents": list(v.exponents) if v.exponents else None,
        "satisfied": ok, "checks": [c.as_dict() for c in checks],
    }
    head = f"tau_min {v.tau_min} <= tau {b.total} <= tau_max {v.tau_max}  (d={C.d}, mdr={v.mdr})"
    lines = [head, f"verdict: {v.kind}" + (f" with exponents {v.exponents}" if v.exponents else "")]
    lines += [f"  [{'ok' if c.passed else 'FAIL'}] {c.name}: {c.value} vs {c.bound}" for c in checks]
    _print(data, lines, args.format == "json")
    return EXIT_OK if ok else EXIT_MISMATCH


def _corpus_job(job: tuple[str, int | None, int | None, bool]) -> dict:
    path, smax, budget, oracle = job
    row: dict[str, Any] = {"file": Path(path).name, "name": Path(path).stem}
    try:
        doc = load_curve(path)
        entry = CorpusEntry(doc, path)
        row["name"] = doc.name or row["name"]
        report = analyze(doc.parsed, doc.kind, doc.name, s_max=smax, budget=budget, oracle=oracle)
    except INPUT_ERRORS as exc:
        row.update(status="error", error=str(exc), failures=[])
        return row
    bad = entry.mismatches(report)
    if not report.bound_satisfied:
        bad.append({"field": "bounds.satisfied", "expected": True, "actual": False})
    row.update(status="fail" if bad else "pass", failures=bad, checked=len(entry.expectations),
               degree=report.degree, mdr=report.mdr, tau_projective=report.tau_projective,
               verdict=report.verdict.kind)
    return row


def cmd_corpus(args) -> int:
    root = Path(args.path)
    if not root.is_dir():
        raise InputError(f"{root}: not a directory")
    files = sorted(str(p) for p in root.glob("*.curve"))
    if not files:
        raise InputError(f"{root}: no .curve files")
    jobs = [(f, args.smax, args.budget, args.oracle) for f in files]
    if args.jobs == 1:
        rows = [_corpus_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_corpus_job, jobs))  # map keeps input order
    n_pass = sum(r["status"] == "pass" for r in rows)
    if args.format == "json":
        print(emit_report({"entries": rows, "passed": n_pass, "total": len(rows)}))
    else:
        width = max(len(r["name"]) for r in rows)
        for r in rows:
            extra = ""
            if r["status"] == "error":
                extra = r["error"]
            elif r["status"] == "pass":
                extra = f"{r['checked']} expectations"
            else:
                extra = "; ".join(f"{b['field']}: expected {b['expected']!r}, got {b['actual']!r}"
                                  for b in r["failures"])
            print(f"{r['name']:<{width}}  {r['status'].upper():5}  {extra}")
        print(f"{n_pass}/{len(rows)} passed")
    if any(r["status"] == "error" for r in rows):
        return EXIT_INPUT
    return EXIT_OK if n_pass == len(rows) else EXIT_MISMATCH


# -- argument parsing -------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, default_format: str) -> None:
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    p.set_defaults(format=default_format)
    p.add_argument("--smax", type=int, default=None,
                   help="highest degree searched for generators of AR(f) (default 3(d-1))")
    p.add_argument("--budget", type=int, default=None,
                   help="degree budget of the affine basis search (default 2d)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planesyz",
                                     description="Jacobian syzygies and Tjurina numbers of plane curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one curve file")
    p.add_argument("path")
    _common(p, "json")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check tau(C) against the Milnor algebra stabilization")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("syzygies", help="graded pieces, generators, phi-images or a Saito basis")
    p.add_argument("path")
    _common(p, "text")
    what = p.add_mutually_exclusive_group()
    what.add_argument("--degree", type=int, help="basis of AR(f) in this degree")
    what.add_argument("--generators", action="store_true", help="minimal generators of AR(f)")
    what.add_argument("--basis", action="store_true", help="Saito-certified basis of AR(g)")
    p.add_argument("--phi", action="store_true", help="map the output to AR(g)")
    p.set_defaults(func=cmd_syzygies)

    p = sub.add_parser("tjurina", help="total Tjurina numbers")
    p.add_argument("path")
    _common(p, "text")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--affine", action="store_true")
    which.add_argument("--projective", action="store_true")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_tjurina)

    p = sub.add_parser("bounds", help="Tjurina bounds and freeness verdict")
    p.add_argument("path")
    _common(p, "text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("corpus", help="run every .curve file in a directory")
    p.add_argument("path")
    _common(p, "text")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
