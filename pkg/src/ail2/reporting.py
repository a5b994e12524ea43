"""Report bundles and their Markdown / JSON renderings."""

from __future__ import annotations

import re
import statistics
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .audit import audit_manifest
from .engine import classify_band, evaluate_case, resolved_threshold
from .model import (
    DIMENSIONS,
    NOT_APPLICABLE,
    Ail2Error,
    AssessmentRecord,
    CaseEvaluation,
    CaseWarning,
    MaturityProfile,
    WorkflowDescriptor,
    dumps,
)

NA_CELL = "--"
FULL_COLUMN = "AI to Learn 2.0"
TABLE_COLUMNS = ("Case",) + DIMENSIONS + ("S", "Gate", "C", "τ", "Core", FULL_COLUMN)


class ReportError(Ail2Error):
    """A report cannot be rendered from the given bundle or text."""


@dataclass(frozen=True)
class ReportEntry:
    workflow_id: str
    evaluation: CaseEvaluation
    profile: MaturityProfile
    capability: int | None = None
    threshold: int | None = None
    rater_id: str | None = None

    @property
    def label(self) -> str:
        if self.rater_id is None:
            return self.workflow_id
        return f"{self.workflow_id} [{self.rater_id}]"


@dataclass(frozen=True)
class PanelSummary:
    """Median profile and per-dimension score range over one case's raters."""

    workflow_id: str
    rater_ids: tuple[str, ...]
    median: tuple[float, ...]
    ranges: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "workflow_id": self.workflow_id,
            "rater_ids": list(self.rater_ids),
            "median_profile": dict(zip(DIMENSIONS, self.median)),
            "ranges": {d: list(r) for d, r in zip(DIMENSIONS, self.ranges)},
        }


@dataclass(frozen=True)
class ReportBundle:
    entries: tuple[ReportEntry, ...]
    panel_summaries: tuple[PanelSummary, ...] = ()

    def __post_init__(self):
        seen: set[str] = set()
        for e in self.entries:
            if e.label in seen:
                raise ReportError(
                    f"duplicate report row {e.label!r}; repeated cases need a rater_id")
            seen.add(e.label)

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_cases(
        cls, cases: Iterable[tuple[WorkflowDescriptor, AssessmentRecord]]
    ) -> ReportBundle:
        """Evaluate (workflow, assessment) pairs in order.

        Rows are qualified by rater id whenever a workflow is scored more
        than once, and those workflows get a panel summary.
        """
        pairs = list(cases)
        counts: dict[str, int] = {}
        for wf, _ in pairs:
            counts[wf.id] = counts.get(wf.id, 0) + 1
        entries = []
        for wf, rec in pairs:
            ev = evaluate_case(wf, rec, audit_manifest(wf.package))
            cap = rec.capability.level if rec.capability.applicable else None
            entries.append(ReportEntry(
                workflow_id=wf.id,
                evaluation=ev,
                profile=rec.profile,
                capability=cap if wf.context.learning_intensive else None,
                threshold=resolved_threshold(wf),
                rater_id=rec.rater_id if counts[wf.id] > 1 else None,
            ))
        summaries = []
        for wid, n in counts.items():
            if n > 1:
                summaries.append(summarize_panel(
                    wid, [(rec.rater_id, rec.profile) for wf, rec in pairs if wf.id == wid]))
        return cls(tuple(entries), tuple(summaries))


def summarize_panel(
    workflow_id: str, ratings: Sequence[tuple[str, MaturityProfile]]
) -> PanelSummary:
    if not ratings:
        raise ReportError("panel summary needs at least one rating")
    columns = list(zip(*(p.as_tuple() for _, p in ratings)))
    return PanelSummary(
        workflow_id=workflow_id,
        rater_ids=tuple(r for r, _ in ratings),
        median=tuple(float(statistics.median(c)) for c in columns),
        ranges=tuple((min(c), max(c)) for c in columns),
    )


def _require_entries(bundle: ReportBundle) -> None:
    if not bundle.entries:
        raise ReportError("report bundle is empty")


def _flag(value: bool) -> str:
    return "1" if value else "0"


def _cell(text: str) -> str:
    return text.replace("|", "\\|")


def _number(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else f"{x:g}"


def render_markdown(bundle: ReportBundle) -> str:
    _require_entries(bundle)
    lines = ["# Case scoring", ""]
    lines.append("| " + " | ".join(TABLE_COLUMNS) + " |")
    lines.append("|" + "|".join("---" for _ in TABLE_COLUMNS) + "|")
    for e in bundle.entries:
        ev = e.evaluation
        row = [_cell(e.label)]
        row += [str(v) for v in e.profile.as_tuple()]
        row += [
            str(ev.total),
            _flag(ev.gate),
            NA_CELL if e.capability is None else str(e.capability),
            NA_CELL if e.threshold is None else str(e.threshold),
            _flag(ev.core),
            _flag(ev.full),
        ]
        lines.append("| " + " | ".join(row) + " |")

    lines += ["", "## Warnings", ""]
    warned = [(e.label, w) for e in bundle.entries for w in e.evaluation.warnings]
    if warned:
        lines += [f"- {_cell(label)}: `{w.code}` {w.message}" for label, w in warned]
    else:
        lines.append("None.")

    if bundle.panel_summaries:
        lines += ["", "## Rater disagreement", ""]
        for s in bundle.panel_summaries:
            med = ", ".join(f"{d}={_number(v)}" for d, v in zip(DIMENSIONS, s.median))
            rng = ", ".join(f"{d}={lo}-{hi}" for d, (lo, hi) in zip(DIMENSIONS, s.ranges))
            lines.append(f"- {_cell(s.workflow_id)} ({len(s.rater_ids)} raters): "
                         f"median {med}; range {rng}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TableRow:
    label: str
    profile: MaturityProfile
    evaluation: CaseEvaluation
    capability: int | None
    threshold: int | None


_SPLIT = re.compile(r"(?<!\\)\|")
_WARNING_LINE = re.compile(r"^- (?P<label>.+?): `(?P<code>[A-Z0-9_]+)` (?P<message>.*)$")


def _split_row(line: str) -> list[str]:
    parts = _SPLIT.split(line.strip())
    if len(parts) < 3 or parts[0].strip() or parts[-1].strip():
        raise ReportError(f"not a table row: {line!r}")
    return [p.strip().replace("\\|", "|") for p in parts[1:-1]]


def _parse_flag(text: str, column: str) -> bool:
    if text not in ("0", "1"):
        raise ReportError(f"column {column!r} expects 0 or 1, got {text!r}")
    return text == "1"


def _parse_optional(text: str) -> int | None:
    return None if text == NA_CELL else int(text)


def parse_markdown_table(text: str) -> list[TableRow]:
    """Recover the evaluation rows from :func:`render_markdown` output.

    Band, capability residual and the learning requirement are re-derived
    from the printed cells; warnings come from the warnings section.
    """
    lines = text.splitlines()
    try:
        start = next(i for i, ln in enumerate(lines) if ln.startswith("| Case |"))
    except StopIteration:
        raise ReportError("no case table found") from None
    header = _split_row(lines[start])
    if tuple(header) != TABLE_COLUMNS:
        raise ReportError(f"unexpected table header {header!r}")

    warnings: dict[str, list[CaseWarning]] = {}
    in_warnings = False
    for ln in lines:
        if ln.startswith("## "):
            in_warnings = ln == "## Warnings"
            continue
        m = _WARNING_LINE.match(ln) if in_warnings else None
        if m:
            # table cells are stripped, so key warnings the same way
            label = m["label"].replace("\\|", "|").strip()
            warnings.setdefault(label, []).append(CaseWarning(m["code"], m["message"]))

    rows = []
    for ln in lines[start + 2:]:
        if not ln.startswith("|"):
            break
        cells = dict(zip(TABLE_COLUMNS, _split_row(ln)))
        profile = MaturityProfile.of([int(cells[d]) for d in DIMENSIONS])
        total = int(cells["S"])
        capability = _parse_optional(cells["C"])
        threshold = _parse_optional(cells["τ"])
        if (capability is None) != (threshold is None):
            raise ReportError(f"row {cells['Case']!r}: C and τ must both be present or both '--'")
        cap_res: Any = NOT_APPLICABLE if capability is None else capability >= threshold
        learn_req = True if capability is None else cap_res
        ev = CaseEvaluation(
            total=total,
            band=classify_band(total).value,
            gate=_parse_flag(cells["Gate"], "Gate"),
            learn_req=learn_req,
            cap_res=cap_res,
            core=_parse_flag(cells["Core"], "Core"),
            full=_parse_flag(cells[FULL_COLUMN], FULL_COLUMN),
            warnings=tuple(warnings.get(cells["Case"], ())),
        )
        rows.append(TableRow(cells["Case"], profile, ev, capability, threshold))
    return rows


def bundle_to_dict(bundle: ReportBundle) -> dict[str, Any]:
    return {
        "cases": [
            {
                "case": e.label,
                "workflow_id": e.workflow_id,
                "rater_id": e.rater_id,
                "profile": dict(zip(DIMENSIONS, e.profile.as_tuple())),
                "capability": e.capability,
                "threshold": e.threshold,
                "evaluation": e.evaluation.to_dict(),
            }
            for e in bundle.entries
        ],
        "panel_summaries": [s.to_dict() for s in bundle.panel_summaries],
    }


def render_json(bundle: ReportBundle) -> str:
    _require_entries(bundle)
    return dumps(bundle_to_dict(bundle))
