"""Scoring, auditing and reliability tooling for AI to Learn 2.0 workflow assessments."""

from .audit import AuditFinding, AuditReport, audit_manifest
from .engine import (
    BANDS,
    BandLabel,
    ComplianceError,
    classify_band,
    compute_total,
    cross_check_consistency,
    default_threshold,
    evaluate_cap_res,
    evaluate_case,
    evaluate_core,
    evaluate_full,
    evaluate_gate,
    evaluate_learn_req,
)
from .model import (
    ABSENT,
    NOT_APPLICABLE,
    Ail2Error,
    AssessmentRecord,
    CapabilityEvidence,
    CaseEvaluation,
    CaseWarning,
    ContextDeclaration,
    DeliverablePackageManifest,
    DocumentError,
    MaturityProfile,
    PredicateAssertions,
    SchemaError,
    WorkflowDescriptor,
    parse_assessment,
    parse_workflow,
    serialize_assessment,
    serialize_workflow,
)
from .stats import (
    IccResult,
    RaterPanel,
    Undefined,
    exact_agreement,
    icc,
    known_groups_check,
    parse_panel,
    pld,
    weighted_kappa,
)

__version__ = "0.1.0"
