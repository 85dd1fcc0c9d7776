"""Command-line front end.

Exit codes::

    0  success (compute, census, verify) / EP (ep)
    1  parse or usage error, census bound exceeded
    2  a requested inverse does not exist (compute) / not EP (ep)
    3  theorem violation or an invalid certificate
    4  EP prerequisites missing (ep)
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import CensusBoundExceeded, MatrixFormatError, NotInvertible, PrerequisiteMissing, TheoremViolation
from .exact_matrix import ExactMatrix
from .finite_rings import DEFAULT_CENSUS_BOUND, HARD_BOUND_CAP, census, parse_ring
from .inverses import KINDS, generalized_inverse, idempotent_triple
from .verifier import (
    CERTIFICATE_SCHEMA,
    element_from_json,
    element_to_json,
    emit_certificates,
    ep_check,
    verify_certificate,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISSING = 2
EXIT_VIOLATION = 3
EXIT_PREREQ = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_matrix(path: str) -> ExactMatrix:
    try:
        a = ExactMatrix.from_json(_load_json(path))
    except MatrixFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not a.is_square() or a.rows == 0:
        raise UsageError(f"{path}: expected a non-empty square matrix, got {a.rows}x{a.cols}")
    return a


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# subcommands --------------------------------------------------------------------------


def cmd_compute(args) -> int:
    a = load_matrix(args.matrix)
    which = _parse_which(args.which)
    result = {"schema": "starinv.compute/1", "input": a.to_json(), "inverses": {}}
    lines = [f"a =\n{a.pretty()}"]
    code = EXIT_OK
    for kind in which:
        try:
            x = generalized_inverse(a, kind)
        except NotInvertible as exc:
            result["inverses"][kind] = {"exists": False, "witness": exc.witness}
            lines.append(f"{kind}: does not exist ({_witness_text(exc.witness)})")
            code = EXIT_MISSING
        else:
            result["inverses"][kind] = {"exists": True, "value": x.to_json()}
            lines.append(f"{kind} =\n{x.pretty()}")
    t = idempotent_triple(a)
    result["idempotents"] = {k: element_to_json(v) for k, v in t.as_dict().items()}
    for name, v in t.as_dict().items():
        lines.append(f"{name} = " + ("absent" if v is None else "\n" + v.pretty()))
    _emit(dumps(result) if args.format == "json" else "\n".join(lines) + "\n", args.out)
    return code


def _witness_text(w: dict) -> str:
    if "rank" in w:
        return f"rank(a)={w['rank']} != rank(a^2)={w['rank_square']}"
    return ", ".join(f"{k}={v}" for k, v in sorted(w.items())) or "no witness"


def _parse_which(spec: str) -> list[str]:
    names = [s.strip() for s in spec.split(",") if s.strip()]
    bad = [s for s in names if s not in KINDS]
    if bad or not names:
        raise UsageError(f"--which takes a comma list from {','.join(KINDS)}; got {spec!r}")
    return [k for k in KINDS if k in names]


def cmd_census(args) -> int:
    try:
        ring = parse_ring(args.ring)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        report = census(ring, bound=args.bound, workers=args.workers)
    except CensusBoundExceeded as exc:
        print(f"starinv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        text = dumps(report.to_json())
    else:
        lines = [f"ring {ring.label}  order {report.order}"]
        lines += [f"  {k:<10} {v}" for k, v in report.counts.items()]
        lines += [f"  {k}: {v}" for k, v in report.separating.items() if v]
        lines += [f"  check {k}: {'ok' if v else 'VIOLATED'}" for k, v in report.checks.items()]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if report.ok and not report.violations else EXIT_VIOLATION


def cmd_ep(args) -> int:
    a = load_matrix(args.matrix)
    try:
        verdict = ep_check(a)
        status, code = "evaluated", (EXIT_OK if verdict.is_ep else EXIT_MISSING)
    except PrerequisiteMissing as exc:
        verdict, status, code = exc.verdict, "prerequisites_missing", EXIT_PREREQ
    doc = {"schema": "starinv.ep/1", "input": a.to_json(), "status": status, **verdict.to_json()}
    if args.format == "json":
        text = dumps(doc)
    else:
        head = "EP" if verdict.is_ep else "not EP"
        if status != "evaluated":
            head += " (not both group and MP invertible)"
        text = head + "\n" + "".join(f"  {k}: {v}\n" for k, v in verdict.conditions.items())
    _emit(text, args.out)
    return code


def _collect_inputs(paths: Sequence[str]):
    items = []
    for path in paths:
        doc = _load_json(path)
        docs = doc if isinstance(doc, list) else [doc]
        for i, d in enumerate(docs):
            src = path if not isinstance(doc, list) else f"{path}#{i}"
            if isinstance(d, dict) and d.get("schema") == CERTIFICATE_SCHEMA:
                items.append((src, "certificate", d))
                continue
            try:
                el = element_from_json(d)
            except (MatrixFormatError, ValueError, KeyError, TypeError) as exc:
                raise UsageError(f"{src}: {exc}") from None
            if isinstance(el, ExactMatrix) and (not el.is_square() or el.rows == 0):
                raise UsageError(f"{src}: expected a non-empty square matrix")
            items.append((src, "element", el))
    return items


def cmd_verify(args) -> int:
    items = _collect_inputs(args.inputs)
    elements = [v for _, kind, v in items if kind == "element"]
    try:
        certs = iter(emit_certificates(elements, workers=args.workers))
    except TheoremViolation as exc:
        print(f"starinv: theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    results = []
    for src, kind, value in items:
        doc = next(certs) if kind == "element" else value
        problems = verify_certificate(doc)
        entry = {"source": src, "input": kind, "valid": not problems, "problems": problems}
        if kind == "element":
            entry["certificate"] = doc
        results.append(entry)
    ok = all(r["valid"] for r in results)
    if args.format == "json":
        text = dumps({"schema": "starinv.verify/1", "all_valid": ok, "results": results})
    else:
        text = "".join(
            f"{'VALID  ' if r['valid'] else 'INVALID'} {r['source']}"
            + ("" if r["valid"] else ": " + "; ".join(r["problems"])) + "\n"
            for r in results
        )
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


# parser ----------------------------------------------------------------------------------


def _bound(text: str) -> int:
    v = int(text)
    if not 1 <= v <= HARD_BOUND_CAP:
        raise argparse.ArgumentTypeError(f"bound must lie in 1..{HARD_BOUND_CAP}")
    return v


def _workers(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("workers must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--workers", type=_workers, default=1, help="worker processes (output is identical)")

    parser = _Parser(prog="starinv", description="Generalized inverses in rings with involution.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", parents=[common], help="compute inverses of a matrix")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("--which", default=",".join(KINDS), help="comma list of group,mp,core,dual_core")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[common], help="emit and check certificates")
    p.add_argument("inputs", nargs="+", help="matrix, element, certificate, or JSON list of them")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", parents=[common], help="classify every element of a finite *-ring")
    p.add_argument("ring", help="ring descriptor, 'Z:n' or 'Mk:Zp'")
    p.add_argument("--bound", type=_bound, default=DEFAULT_CENSUS_BOUND)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("ep", parents=[common], help="run the EP battery on a matrix")
    p.add_argument("matrix", help="matrix JSON file")
    p.set_defaults(func=cmd_ep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"starinv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolation as exc:
        print(f"starinv: theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


def main_entry() -> None:
    sys.exit(main())
