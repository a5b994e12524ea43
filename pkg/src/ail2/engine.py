"""Scoring and compliance predicates over one assessment record.

Core predicates (artifact residual, sovereignty, protection, package
completeness) are rater assertions. The engine combines them with the score
profile and the capability evidence, and it reports tension between the two
as warnings without ever overriding an assertion.
"""

from __future__ import annotations

from enum import Enum
from typing import Union

from .audit import AuditReport, audit_manifest
from .model import (
    NOT_APPLICABLE,
    Ail2Error,
    AssessmentRecord,
    CapabilityEvidence,
    CaseEvaluation,
    CaseWarning,
    ContextDeclaration,
    MaturityProfile,
    NotApplicable,
    PredicateAssertions,
    WorkflowDescriptor,
)

GATE_DIMENSIONS = ("m1", "m2", "m4", "m5")
GATE_MINIMUM = 3


class ComplianceError(Ail2Error):
    """Inputs are well-formed but a compliance quantity cannot be computed."""


class BandLabel(str, Enum):
    NOT_IN_PRACTICE = "not_in_practice"
    INSPIRED = "inspired"
    ALIGNED = "aligned"
    STRONG = "strong"

    @property
    def rank(self) -> int:
        return _BAND_ORDER.index(self)

    @property
    def title(self) -> str:
        return _BAND_TITLES[self]


_BAND_ORDER = list(BandLabel)
_BAND_TITLES = {
    BandLabel.NOT_IN_PRACTICE: "not AI to Learn in practice",
    BandLabel.INSPIRED: "AI to Learn-inspired",
    BandLabel.ALIGNED: "AI to Learn-aligned",
    BandLabel.STRONG: "strong AI to Learn implementation",
}

# (lowest total, highest total, label), closed integer intervals
BANDS = (
    (0, 9, BandLabel.NOT_IN_PRACTICE),
    (10, 16, BandLabel.INSPIRED),
    (17, 22, BandLabel.ALIGNED),
    (23, 28, BandLabel.STRONG),
)

DEFAULT_THRESHOLDS = {"formative": 2, "summative": 3}


def compute_total(profile: MaturityProfile) -> int:
    return sum(profile.as_tuple())


def classify_band(total: int) -> BandLabel:
    if isinstance(total, bool) or not isinstance(total, int):
        raise ComplianceError(f"total must be an integer, got {total!r}")
    for lo, hi, label in BANDS:
        if lo <= total <= hi:
            return label
    raise ComplianceError(f"total {total} is outside [0, 28]")


def evaluate_gate(profile: MaturityProfile) -> bool:
    return all(getattr(profile, dim) >= GATE_MINIMUM for dim in GATE_DIMENSIONS)


def default_threshold(context: ContextDeclaration) -> int:
    """Capability threshold for a learning-intensive context.

    An explicit threshold always wins. Otherwise formative use defaults to 2
    and summative use to 3; operational and research contexts have no default.
    """
    if not context.learning_intensive:
        raise ComplianceError("context is not learning-intensive; no capability threshold applies")
    if context.capability_threshold is not None:
        return context.capability_threshold
    try:
        return DEFAULT_THRESHOLDS[context.stakes]
    except KeyError:
        raise ComplianceError(
            f"explicit capability_threshold required for stakes {context.stakes!r}"
        ) from None


def evaluate_cap_res(capability: CapabilityEvidence, threshold: int) -> bool:
    if not capability.applicable:
        raise ComplianceError("capability level is not_applicable; cannot compare to a threshold")
    if not 0 <= threshold <= 3:
        raise ComplianceError(f"threshold {threshold} is outside [0, 3]")
    return capability.level >= threshold


def evaluate_learn_req(context: ContextDeclaration, capability: CapabilityEvidence) -> bool:
    if not context.learning_intensive:
        return True
    if not capability.applicable:
        raise ComplianceError(
            "learning-intensive context requires capability evidence (level 0..3)"
        )
    return evaluate_cap_res(capability, default_threshold(context))


def evaluate_core(predicates: PredicateAssertions) -> bool:
    return predicates.art_res and predicates.sov and predicates.prot and predicates.pack


def evaluate_full(core: bool, learn_req: bool, gate: bool) -> bool:
    return core and learn_req and gate


def cross_check_consistency(
    record: AssessmentRecord,
    audit: AuditReport,
    workflow: WorkflowDescriptor | None = None,
) -> list[CaseWarning]:
    """Flag assertions that sit uneasily with the scores or the audit.

    The release-authority check needs the workflow's human list and is
    skipped when ``workflow`` is not given.
    """
    pred, prof = record.predicates, record.profile
    out: list[CaseWarning] = []
    if pred.art_res and prof.m1 < GATE_MINIMUM:
        out.append(CaseWarning(
            "W_ARTRES_M1", f"art_res asserted but residual opacity score m1={prof.m1} < 3"))
    if pred.sov and prof.m2 < GATE_MINIMUM:
        out.append(CaseWarning(
            "W_SOV_M2", f"sov asserted but sovereignty score m2={prof.m2} < 3"))
    if pred.prot and prof.m5 < GATE_MINIMUM:
        out.append(CaseWarning(
            "W_PROT_M5", f"prot asserted but information protection score m5={prof.m5} < 3"))
    if pred.pack and audit.errors:
        codes = ", ".join(f.code for f in audit.errors)
        out.append(CaseWarning(
            "W_PACK_AUDIT", f"pack asserted but the package audit reports errors: {codes}"))
    if pred.sov and workflow is not None and not workflow.has_release_authority:
        out.append(CaseWarning(
            "W_NO_RELEASE_AUTHORITY", "sov asserted but no listed human holds release authority"))
    if audit.has("A_OPAQUE_RUNTIME") and prof.m1 >= GATE_MINIMUM:
        out.append(CaseWarning(
            "W_OPAQUE_RUNTIME_M1",
            f"artifact has an opaque routine-use dependency but m1={prof.m1} >= 3"))
    return out


def resolved_threshold(workflow: WorkflowDescriptor) -> int | None:
    """The capability threshold in force for a workflow, or None if none applies."""
    if not workflow.context.learning_intensive:
        return None
    return default_threshold(workflow.context)


def evaluate_case(
    workflow: WorkflowDescriptor,
    record: AssessmentRecord,
    audit: AuditReport | None = None,
) -> CaseEvaluation:
    record.check_against(workflow)
    if audit is None:
        audit = audit_manifest(workflow.package)

    total = compute_total(record.profile)
    gate = evaluate_gate(record.profile)
    context = workflow.context
    cap_res: Union[bool, NotApplicable]
    if context.learning_intensive:
        cap_res = evaluate_cap_res(record.capability, default_threshold(context))
    else:
        cap_res = NOT_APPLICABLE
    learn_req = evaluate_learn_req(context, record.capability)
    core = evaluate_core(record.predicates)
    return CaseEvaluation(
        total=total,
        band=classify_band(total).value,
        gate=gate,
        learn_req=learn_req,
        cap_res=cap_res,
        core=core,
        full=evaluate_full(core, learn_req, gate),
        warnings=tuple(cross_check_consistency(record, audit, workflow)),
    )
