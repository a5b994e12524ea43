"""Structural audit of a deliverable package against its minimum-content checklist.

The audit reports what is structurally present. It never decides whether the
package is materially sufficient; that stays a rater assertion (``pack``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .model import DeliverablePackageManifest

ELEMENTS = ("A", "P", "V", "F", "R")
SEVERITIES = ("error", "warning", "info")

# code -> (element, severity, message); order here is the emission order
CATALOG: dict[str, tuple[str, str, str]] = {
    "A_ABSENT": ("A", "error", "distilled artifact is marked absent"),
    "A_OPAQUE_RUNTIME": (
        "A", "warning",
        "a runtime dependency is opaque AI and required for routine use",
    ),
    "P_ABSENT": ("P", "error", "provenance / audit record is marked absent"),
    "P_NO_TOOLS": ("P", "error", "provenance lists no AI tool uses"),
    "P_NO_VERIFICATION": ("P", "error", "provenance lists no verification steps"),
    "P_NO_HUMAN_DECISIONS": (
        "P", "warning", "provenance records no human accept/modify/reject decisions",
    ),
    "V_ABSENT": ("V", "error", "validity-domain statement is marked absent"),
    "V_NO_EXCLUSIONS": ("V", "error", "validity-domain statement lists no exclusions"),
    "V_NO_ASSUMPTIONS": ("V", "error", "validity-domain statement lists no assumptions"),
    "F_ABSENT": ("F", "error", "failure / escalation rule is marked absent"),
    "F_NO_TRIGGERS": ("F", "error", "failure rule lists no uncertainty or withdrawal triggers"),
    "F_NO_ESCALATION": ("F", "error", "failure rule names no escalation route"),
    "R_ABSENT": ("R", "error", "operational resource note is marked absent"),
    "R_NO_POSTURE": ("R", "error", "resource note does not state the routine-use posture"),
    "R_NO_FALLBACK": ("R", "info", "resource note gives no low-resource fallback"),
}


@dataclass(frozen=True)
class AuditFinding:
    severity: str
    element: str
    code: str
    message: str

    @classmethod
    def from_code(cls, code: str, detail: str | None = None) -> AuditFinding:
        element, severity, message = CATALOG[code]
        if detail:
            message = f"{message}: {detail}"
        return cls(severity, element, code, message)


@dataclass(frozen=True)
class AuditReport:
    findings: tuple[AuditFinding, ...]

    @property
    def structurally_complete(self) -> bool:
        return not self.errors

    @property
    def errors(self) -> tuple[AuditFinding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    def codes(self) -> list[str]:
        return [f.code for f in self.findings]

    def has(self, code: str) -> bool:
        return any(f.code == code for f in self.findings)

    def to_dict(self) -> dict[str, Any]:
        return {
            "structurally_complete": self.structurally_complete,
            "findings": [
                {"severity": f.severity, "element": f.element, "code": f.code,
                 "message": f.message}
                for f in self.findings
            ],
        }


# error-level content clauses implied by an absent section
_IMPLIED_BY_ABSENT = {
    "P": ("P_NO_TOOLS", "P_NO_VERIFICATION"),
    "V": ("V_NO_EXCLUSIONS", "V_NO_ASSUMPTIONS"),
    "F": ("F_NO_TRIGGERS", "F_NO_ESCALATION"),
    "R": ("R_NO_POSTURE",),
}


def _blank(text: str | None) -> bool:
    return text is None or not text.strip()


def _absent_clauses(emit, element: str) -> None:
    for code in _IMPLIED_BY_ABSENT[element]:
        emit(AuditFinding.from_code(code, "section is marked absent"))


def audit_manifest(manifest: DeliverablePackageManifest) -> AuditReport:
    """Check each package element in A, P, V, F, R order.

    Findings come out in catalog order within each element, so identical
    manifests always produce identical reports. An absent section also
    fails every error-level content clause of its element, and those
    findings are reported after the ``*_ABSENT`` one. This keeps the audit
    monotone: populating a section, even sparsely, never adds errors.
    """
    hits: list[AuditFinding] = []
    emit = hits.append

    a = manifest.artifact
    if a is None:
        emit(AuditFinding.from_code("A_ABSENT"))
    else:
        opaque = [d.name for d in a.runtime_dependencies
                  if d.opaque_ai and d.required_for_routine_use]
        if opaque:
            emit(AuditFinding.from_code("A_OPAQUE_RUNTIME", ", ".join(opaque)))

    p = manifest.provenance
    if p is None:
        emit(AuditFinding.from_code("P_ABSENT"))
        _absent_clauses(emit, "P")
    else:
        if not p.tool_uses:
            emit(AuditFinding.from_code("P_NO_TOOLS"))
        if not p.verification_steps:
            emit(AuditFinding.from_code("P_NO_VERIFICATION"))
        if not p.human_decisions:
            emit(AuditFinding.from_code("P_NO_HUMAN_DECISIONS"))

    v = manifest.validity
    if v is None:
        emit(AuditFinding.from_code("V_ABSENT"))
        _absent_clauses(emit, "V")
    else:
        if not v.exclusions:
            emit(AuditFinding.from_code("V_NO_EXCLUSIONS"))
        if not v.assumptions:
            emit(AuditFinding.from_code("V_NO_ASSUMPTIONS"))

    f = manifest.failure
    if f is None:
        emit(AuditFinding.from_code("F_ABSENT"))
        _absent_clauses(emit, "F")
    else:
        if not f.triggers:
            emit(AuditFinding.from_code("F_NO_TRIGGERS"))
        if _blank(f.escalation_route):
            emit(AuditFinding.from_code("F_NO_ESCALATION"))

    r = manifest.resource
    if r is None:
        emit(AuditFinding.from_code("R_ABSENT"))
        _absent_clauses(emit, "R")
    else:
        if r.routine_use_posture is None:
            emit(AuditFinding.from_code("R_NO_POSTURE"))
        if _blank(r.low_resource_fallback):
            emit(AuditFinding.from_code("R_NO_FALLBACK"))

    return AuditReport(tuple(hits))
