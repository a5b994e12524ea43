"""The seven bundled worked cases and their verification against the reference table."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Sequence

from .engine import classify_band, evaluate_case
from .model import (
    NOT_APPLICABLE,
    AssessmentRecord,
    WorkflowDescriptor,
    parse_assessment,
    parse_workflow,
)

CASE_IDS = tuple(f"C{i}" for i in range(1, 8))
_DATA = "corpus_data"
_TABLE = "reference_table.json"
_NA = "--"

# fields compared by verify_corpus, in report order
CHECKED_FIELDS = ("profile", "total", "band", "gate", "cap_res", "core", "full")


@dataclass(frozen=True)
class CorpusCase:
    id: str
    title: str
    workflow: WorkflowDescriptor
    assessment: AssessmentRecord
    expected: dict[str, Any] = field(hash=False, compare=True)


def _read(name: str) -> str:
    return resources.files("ail2").joinpath(_DATA).joinpath(name).read_text(encoding="utf-8")


def reference_table() -> list[dict[str, Any]]:
    return json.loads(_read(_TABLE))["rows"]


def _expected(row: dict[str, Any]) -> dict[str, Any]:
    cap = row["C"]
    tau = row["tau"]
    return {
        "profile": tuple(row["profile"]),
        "total": row["S"],
        "band": classify_band(row["S"]).value,
        "gate": bool(row["Gate"]),
        "cap_res": NOT_APPLICABLE if cap == _NA else cap >= tau,
        "core": bool(row["Core"]),
        "full": bool(row["Full"]),
        "capability": None if cap == _NA else cap,
        "threshold": None if tau == _NA else tau,
    }


def load_corpus() -> list[CorpusCase]:
    rows = {r["id"]: r for r in reference_table()}
    if tuple(rows) != CASE_IDS:
        raise RuntimeError(f"bundled reference table has ids {tuple(rows)}")
    cases = []
    for cid in CASE_IDS:
        wpath, apath = f"{cid}.ail2w.json", f"{cid}.ail2a.json"
        wf = parse_workflow(_read(wpath))
        rec = parse_assessment(_read(apath), workflow=wf)
        cases.append(CorpusCase(cid, rows[cid]["title"], wf, rec, _expected(rows[cid])))
    return cases


def get_case(case_id: str, cases: Sequence[CorpusCase] | None = None) -> CorpusCase:
    for c in cases if cases is not None else load_corpus():
        if c.id == case_id:
            return c
    raise KeyError(case_id)


@dataclass(frozen=True)
class CaseCheck:
    case_id: str
    mismatches: tuple[tuple[str, Any, Any], ...]  # (field, expected, actual)

    @property
    def passed(self) -> bool:
        return not self.mismatches


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CaseCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def n_passed(self) -> int:
        return sum(c.passed for c in self.checks)

    def summary(self) -> str:
        return f"{self.n_passed}/{len(self.checks)} cases match Table 3"

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            out.append(f"{c.case_id}: {'pass' if c.passed else 'FAIL'}")
            for name, want, got in c.mismatches:
                out.append(f"  {name}: expected {want!r}, got {got!r}")
        out.append(self.summary())
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "summary": self.summary(),
            "cases": [
                {"id": c.case_id, "passed": c.passed,
                 "mismatches": [{"field": f, "expected": _plain(w), "actual": _plain(g)}
                                for f, w, g in c.mismatches]}
                for c in self.checks
            ],
        }


def _plain(value: Any) -> Any:
    return list(value) if isinstance(value, tuple) else value


def check_case(case: CorpusCase) -> CaseCheck:
    ev = evaluate_case(case.workflow, case.assessment)
    actual = {
        "profile": case.assessment.profile.as_tuple(),
        "total": ev.total,
        "band": ev.band,
        "gate": ev.gate,
        "cap_res": ev.cap_res,
        "core": ev.core,
        "full": ev.full,
    }
    # compare kinds too, so an int 1 never passes for True
    diffs = tuple(
        (name, case.expected[name], actual[name])
        for name in CHECKED_FIELDS
        if type(case.expected[name]) is not type(actual[name])
        or case.expected[name] != actual[name]
    )
    return CaseCheck(case.id, diffs)


def verify_corpus(cases: Sequence[CorpusCase] | None = None) -> VerificationReport:
    if cases is None:
        cases = load_corpus()
    return VerificationReport(tuple(check_case(c) for c in cases))


def table_cells(row: dict[str, Any]) -> list[str]:
    """The printed cells of a reference-table row, in Markdown column order."""
    return (
        [row["id"]]
        + [str(v) for v in row["profile"]]
        + [str(row[k]) for k in ("S", "Gate", "C", "tau", "Core", "Full")]
    )

