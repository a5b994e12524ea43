"""Command-line entry point.

Results go to stdout (JSON unless a text format is asked for); diagnostics
go to stderr. Exit status: 0 success, 1 domain error or failed check,
2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .audit import audit_manifest
from .corpus import get_case, load_corpus, verify_corpus
from .engine import evaluate_case
from .figures import render_heatmap_svg, render_totals_svg
from .model import (
    Ail2Error,
    AssessmentRecord,
    DocumentError,
    WorkflowDescriptor,
    assessment_to_dict,
    dumps,
    parse_assessment,
    parse_workflow,
    workflow_to_dict,
)
from .reporting import ReportBundle, render_json, render_markdown
from .stats import Undefined, exact_agreement, icc, parse_panel, pld, weighted_kappa

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

REPORT_FORMATS: dict[str, Callable[[ReportBundle], Any]] = {
    "md": render_markdown,
    "json": render_json,
    "heatmap-svg": render_heatmap_svg,
    "totals-svg": render_totals_svg,
}


class CliError(Ail2Error):
    """A failure tied to a command-line input, reported with its file path."""

    def __init__(self, source: str, message: str):
        self.source = source
        super().__init__(f"{source}: {message}" if source else message)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        _diagnostic(f"{self.prog}: {message}", error=True)
        sys.exit(EXIT_USAGE)


def _colour_enabled() -> bool:
    return not os.environ.get("AIL2_NO_COLOR") and sys.stderr.isatty()


def _diagnostic(message: str, error: bool = False) -> None:
    prefix = "error: " if error else ""
    if prefix and _colour_enabled():
        prefix = f"\033[31m{prefix}\033[0m"
    sys.stderr.write(f"{prefix}{message}\n")


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(path, exc.strerror or str(exc)) from None


def _load_workflow(path: str, strict: bool) -> WorkflowDescriptor:
    try:
        return parse_workflow(_read(path), strict=strict)
    except DocumentError as exc:
        raise CliError(path, str(exc)) from None


def _load_assessment(path: str, strict: bool, workflow: WorkflowDescriptor) -> AssessmentRecord:
    try:
        return parse_assessment(_read(path), strict=strict, workflow=workflow)
    except DocumentError as exc:
        raise CliError(path, str(exc)) from None


def _emit(data: Any) -> None:
    sys.stdout.write(dumps(data))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    wf = _load_workflow(args.workflow, args.strict)
    report = audit_manifest(wf.package)
    _emit({"workflow_id": wf.id, **report.to_dict()})
    if not report.structurally_complete and not args.quiet:
        _diagnostic(f"{args.workflow}: package is not structurally complete "
                    f"({len(report.errors)} error findings)")
    return EXIT_OK if report.structurally_complete else EXIT_FAIL


def cmd_score(args) -> int:
    wf = _load_workflow(args.workflow, args.strict)
    rec = _load_assessment(args.assessment, args.strict, wf)
    try:
        ev = evaluate_case(wf, rec)
    except Ail2Error as exc:
        raise CliError(args.assessment, str(exc)) from None
    _emit({"workflow_id": wf.id, "rater_id": rec.rater_id, **ev.to_dict()})
    return EXIT_OK


def _report_pairs(args) -> list[tuple[WorkflowDescriptor, AssessmentRecord]]:
    if args.corpus:
        if args.pairs:
            raise CliError("", "give either --corpus or workflow/assessment pairs, not both")
        return [(c.workflow, c.assessment) for c in load_corpus()]
    if not args.pairs:
        raise CliError("", "report needs workflow/assessment pairs or --corpus")
    if len(args.pairs) % 2:
        raise CliError(args.pairs[-1], "workflow has no matching assessment file")
    pairs = []
    it = iter(args.pairs)
    for wpath, apath in zip(it, it):
        wf = _load_workflow(wpath, args.strict)
        pairs.append((wf, _load_assessment(apath, args.strict, wf)))
    return pairs


def cmd_report(args) -> int:
    if args.out is not None:
        target = Path(args.out).resolve()
        if any(Path(p).resolve() == target for p in args.pairs):
            raise CliError(args.out, "refusing to overwrite an input file")
    bundle = ReportBundle.from_cases(_report_pairs(args))
    rendered = REPORT_FORMATS[args.format](bundle)
    data = rendered if isinstance(rendered, bytes) else rendered.encode("utf-8")
    if args.out is None:
        sys.stdout.flush()
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        try:
            Path(args.out).write_bytes(data)
        except OSError as exc:
            raise CliError(args.out, exc.strerror or str(exc)) from None
        if not args.quiet:
            _diagnostic(f"wrote {args.format} report for {len(bundle)} cases to {args.out}")
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.action == "verify":
        report = verify_corpus()
        if args.format == "json":
            _emit(report.to_dict())
        else:
            lines = report.lines() if not args.quiet else [report.summary()]
            sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK if report.passed else EXIT_FAIL

    cases = load_corpus()
    if args.action == "list":
        if args.case_id is not None:
            raise CliError("", "corpus list takes no case id")
        if args.format == "text":
            sys.stdout.write("".join(f"{c.id}\t{c.title}\n" for c in cases))
        else:
            _emit([{"id": c.id, "title": c.title} for c in cases])
        return EXIT_OK

    if args.case_id is None:
        raise CliError("", "corpus show needs a case id")
    try:
        case = get_case(args.case_id, cases)
    except KeyError:
        raise CliError("", f"unknown corpus case {args.case_id!r}; "
                           f"known: {', '.join(c.id for c in cases)}") from None
    expected = {k: list(v) if isinstance(v, tuple) else v for k, v in case.expected.items()}
    _emit({"id": case.id, "title": case.title,
           "workflow": workflow_to_dict(case.workflow),
           "assessment": assessment_to_dict(case.assessment),
           "expected": expected})
    return EXIT_OK


def _value(result: Any) -> dict[str, Any]:
    if isinstance(result, Undefined):
        return {"value": None, **result.to_dict()}
    return {"value": result, "defined": True}


def cmd_agree(args) -> int:
    try:
        panel = parse_panel(_read(args.panel), strict=args.strict)
    except DocumentError as exc:
        raise CliError(args.panel, str(exc)) from None

    if args.stat == "icc":
        form = "icc" + args.icc_form
        result = icc(panel, form=form, confidence_level=args.confidence)
        out = {"statistic": "icc", "icc_form": form, "n_cases": panel.shape[0],
               "n_raters": panel.shape[1]}
        out.update(result.to_dict())
        _emit(out)
        return EXIT_OK

    pairs = []
    for i, j in itertools.combinations(range(len(panel.rater_ids)), 2):
        a, b = panel.column(i), panel.column(j)
        if args.stat == "kappa":
            res = weighted_kappa(a, b, categories=panel.categories, scheme=args.weights)
        else:
            res = exact_agreement(a, b)
        pairs.append({"raters": [panel.rater_ids[i], panel.rater_ids[j]], **_value(res)})
    out: dict[str, Any] = {
        "statistic": "weighted_kappa" if args.stat == "kappa" else "exact_agreement",
        "value_kind": panel.value_kind,
        "categories": panel.categories,
    }
    if args.stat == "kappa":
        out["weights"] = args.weights
    out["pairs"] = pairs
    _emit(out)
    return EXIT_OK


def cmd_pld(args) -> int:
    _emit(pld(args.artifact, args.transfer, flag_threshold=args.flag_threshold).to_dict())
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    # Accepted before or after the subcommand; SUPPRESS keeps a later
    # default from clobbering a value given earlier.
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="strict", action="store_true", default=argparse.SUPPRESS,
                   help="reject unknown document fields (default)")
    g.add_argument("--no-strict", dest="strict", action="store_false", default=argparse.SUPPRESS,
                   help="ignore unknown document fields")
    p.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                   help="suppress informational messages on stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="ail2", parents=[common],
                     description="Score, audit and report AI to Learn 2.0 workflow assessments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="audit a workflow's deliverable package")
    p.add_argument("workflow", help="workflow descriptor (.ail2w.json)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("score", parents=[common], help="evaluate one assessment of a workflow")
    p.add_argument("workflow")
    p.add_argument("assessment", help="assessment record (.ail2a.json)")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("report", parents=[common], help="render a multi-case report")
    p.add_argument("pairs", nargs="*", metavar="FILE",
                   help="alternating workflow and assessment files")
    p.add_argument("--corpus", action="store_true", help="report the bundled worked cases")
    p.add_argument("--format", choices=tuple(REPORT_FORMATS), default="md")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("corpus", parents=[common], help="inspect or verify the bundled cases")
    p.add_argument("action", choices=("list", "show", "verify"))
    p.add_argument("case_id", nargs="?")
    p.add_argument("--format", choices=("json", "text"), default=None,
                   help="verify defaults to text, list and show to json")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("agree", parents=[common], help="inter-rater agreement on a panel")
    p.add_argument("panel", help="rater panel (.ail2p.json)")
    p.add_argument("--stat", choices=("kappa", "icc", "exact"), required=True)
    p.add_argument("--weights", choices=("linear", "quadratic"), default="quadratic")
    p.add_argument("--icc-form", choices=("2_1", "2_k"), default="2_1")
    p.add_argument("--confidence", type=_probability, default=0.95)
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("pld", parents=[common], help="performance-learning divergence")
    p.add_argument("--artifact", type=float, required=True, help="artifact quality in [0, 1]")
    p.add_argument("--transfer", type=float, required=True, help="transfer-task quality in [0, 1]")
    p.add_argument("--flag-threshold", type=float, default=0.3,
                   help="flag level for candidate false mastery (a convention, default 0.3)")
    p.set_defaults(func=cmd_pld)
    return parser


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("must lie strictly between 0 and 1")
    return value


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        _diagnostic("ail2: a command is required", error=True)
        return EXIT_USAGE
    args.strict = getattr(args, "strict", True)
    args.quiet = getattr(args, "quiet", False)
    if args.command == "corpus" and args.format is None:
        args.format = "text" if args.action == "verify" else "json"
    try:
        return args.func(args)
    except Ail2Error as exc:
        _diagnostic(str(exc), error=True)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
