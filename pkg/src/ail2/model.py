"""Domain types for workflows, deliverable packages and rater assessments.

Documents use one canonical encoding: UTF-8 JSON with lower_snake_case field
names. Every structural invariant is checked while parsing, and every error
carries the dotted path of the offending field (``context.capability_threshold``,
``package.provenance.tool_uses[0].tool``).

A package section that is explicitly missing is written as the string
``"absent"``; leaving the key out is a schema error. A capability level that
does not apply is written as ``"not_applicable"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Literal, Mapping, Sequence, Union

ABSENT = "absent"
NOT_APPLICABLE = "not_applicable"

STAKES = ("formative", "summative", "operational", "research")
DECISION_ACTIONS = ("accepted", "modified", "rejected")
POSTURES = ("local", "cloud", "hybrid")
PREDICATE_NAMES = ("art_res", "sov", "prot", "pack")
DIMENSIONS = ("m1", "m2", "m3", "m4", "m5", "m6", "m7")
EXTENSIONS_KEY = "x_extensions"

NotApplicable = Literal["not_applicable"]


class Ail2Error(Exception):
    """Base class for all errors raised by this package."""


class DocumentError(Ail2Error):
    """A document could not be turned into a domain value.

    ``path`` is the dotted location of the problem inside the document
    (empty for whole-document problems such as malformed JSON).
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class DocumentSyntaxError(DocumentError):
    """The bytes are not well-formed JSON."""


class SchemaError(DocumentError):
    """Well-formed JSON that violates the field layout or a value invariant."""


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContextDeclaration:
    purpose: str
    audience: str
    stakes: str
    sensitivity_classes: tuple[str, ...]
    runtime_environment: str
    learning_intensive: bool
    capability_threshold: int | None = None

    def __post_init__(self):
        if self.stakes not in STAKES:
            raise SchemaError("stakes", f"must be one of {', '.join(STAKES)}")
        if self.capability_threshold is not None:
            if not self.learning_intensive:
                raise SchemaError(
                    "capability_threshold",
                    "must be absent when learning_intensive is false",
                )
            if not 0 <= self.capability_threshold <= 3:
                raise SchemaError("capability_threshold", "must lie in [0, 3]")


@dataclass(frozen=True)
class Human:
    name_or_role: str
    release_authority: bool


@dataclass(frozen=True)
class OpaqueComponent:
    name: str
    role: str
    version_or_date: str | None = None


@dataclass(frozen=True)
class RuntimeDependency:
    name: str
    opaque_ai: bool
    required_for_routine_use: bool


@dataclass(frozen=True)
class Artifact:
    description: str
    artifact_kind: str
    runtime_dependencies: tuple[RuntimeDependency, ...] = ()


@dataclass(frozen=True)
class ToolUse:
    tool: str
    purpose: str
    data_exposure_class: str
    protection: str


@dataclass(frozen=True)
class HumanDecision:
    action: str
    subject: str


@dataclass(frozen=True)
class Provenance:
    tool_uses: tuple[ToolUse, ...] = ()
    human_decisions: tuple[HumanDecision, ...] = ()
    verification_steps: tuple[str, ...] = ()


@dataclass(frozen=True)
class Validity:
    intended_purpose: str
    assumptions: tuple[str, ...]
    user_population: str
    exclusions: tuple[str, ...]
    exclusion_rationale: str


@dataclass(frozen=True)
class Failure:
    failure_modes: tuple[str, ...]
    warning_signs: tuple[str, ...]
    triggers: tuple[str, ...]
    escalation_route: str


@dataclass(frozen=True)
class Resource:
    # None means the posture was left unstated (audited as R_NO_POSTURE)
    routine_use_posture: str | None
    access_requirements: str
    cost_energy_note: str
    low_resource_fallback: str | None = None


@dataclass(frozen=True)
class DeliverablePackageManifest:
    """The five-part deliverable package; ``None`` marks a section as absent."""

    artifact: Artifact | None
    provenance: Provenance | None
    validity: Validity | None
    failure: Failure | None
    resource: Resource | None

    def sections(self) -> dict[str, Any]:
        return {
            "A": self.artifact,
            "P": self.provenance,
            "V": self.validity,
            "F": self.failure,
            "R": self.resource,
        }


@dataclass(frozen=True)
class WorkflowDescriptor:
    id: str
    task: str
    humans: tuple[Human, ...]
    opaque_components: tuple[OpaqueComponent, ...]
    source_classes: tuple[str, ...]
    context: ContextDeclaration
    package: DeliverablePackageManifest
    evidence_modality: str | None = None
    extensions: Any = None

    def __post_init__(self):
        if not self.id:
            raise SchemaError("id", "must be nonempty")
        if not self.humans:
            raise SchemaError("humans", "at least one human must be listed")

    @property
    def has_release_authority(self) -> bool:
        return any(h.release_authority for h in self.humans)


@dataclass(frozen=True)
class MaturityProfile:
    m1: int
    m2: int
    m3: int
    m4: int
    m5: int
    m6: int
    m7: int

    def __post_init__(self):
        for name in DIMENSIONS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise SchemaError(name, "must be an integer")
            if not 0 <= value <= 4:
                raise SchemaError(name, "must lie in [0, 4]")

    @classmethod
    def of(cls, values: Sequence[int]) -> MaturityProfile:
        if len(values) != 7:
            raise ValueError("a maturity profile has exactly seven scores")
        return cls(*values)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, name) for name in DIMENSIONS)


@dataclass(frozen=True)
class CapabilityEvidence:
    level: Union[int, NotApplicable]
    modality_note: str | None = None

    def __post_init__(self):
        if self.level == NOT_APPLICABLE:
            return
        if isinstance(self.level, bool) or not isinstance(self.level, int):
            raise SchemaError("level", 'must be an integer or "not_applicable"')
        if not 0 <= self.level <= 3:
            raise SchemaError("level", "must lie in [0, 3]")

    @property
    def applicable(self) -> bool:
        return self.level != NOT_APPLICABLE


@dataclass(frozen=True)
class PredicateAssertions:
    art_res: bool
    sov: bool
    prot: bool
    pack: bool
    justifications: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for name in self.justifications:
            if name not in PREDICATE_NAMES:
                raise SchemaError(f"justifications.{name}", "unknown predicate")
        for name in PREDICATE_NAMES:
            if getattr(self, name) and not self.justifications.get(name, "").strip():
                raise SchemaError(name, "asserted true without a justification")

    def as_dict(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in PREDICATE_NAMES}

    # The justification mapping is a plain dict; hash on its sorted items instead.
    def __hash__(self):
        return hash((self.art_res, self.sov, self.prot, self.pack,
                     tuple(sorted(self.justifications.items()))))


@dataclass(frozen=True)
class AssessmentRecord:
    rater_id: str
    workflow_id: str
    profile: MaturityProfile
    capability: CapabilityEvidence
    predicates: PredicateAssertions
    dimension_notes: Mapping[str, str] | None = None
    extensions: Any = None

    def check_against(self, workflow: WorkflowDescriptor) -> None:
        """Check the record against the workflow it claims to assess."""
        if self.workflow_id != workflow.id:
            raise SchemaError(
                "workflow_id",
                f"references {self.workflow_id!r}, not workflow {workflow.id!r}",
            )
        li = workflow.context.learning_intensive
        if li and not self.capability.applicable:
            raise SchemaError(
                "capability.level",
                "learning-intensive context requires a capability level in [0, 3]",
            )
        if not li and self.capability.applicable:
            raise SchemaError(
                "capability.level",
                'must be "not_applicable" when the context is not learning-intensive',
            )


@dataclass(frozen=True)
class CaseWarning:
    code: str
    message: str


@dataclass(frozen=True)
class CaseEvaluation:
    total: int
    band: str
    gate: bool
    learn_req: bool
    cap_res: Union[bool, NotApplicable]
    core: bool
    full: bool
    warnings: tuple[CaseWarning, ...] = ()

    def __post_init__(self):
        if not 0 <= self.total <= 28:
            raise ValueError("total must lie in [0, 28]")
        if self.full and not (self.core and self.gate and self.learn_req):
            raise ValueError("full compliance requires core, gate and learn_req")

    def to_dict(self) -> dict[str, Any]:
        return {
            "total": self.total,
            "band": self.band,
            "gate": self.gate,
            "learn_req": self.learn_req,
            "cap_res": self.cap_res,
            "core": self.core,
            "full": self.full,
            "warnings": [{"code": w.code, "message": w.message} for w in self.warnings],
        }


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _join(path: str, key: str | int) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


class _Reader:
    """Strict field reader for one JSON object."""

    def __init__(self, value: Any, path: str, strict: bool, allow_extensions=False):
        if not isinstance(value, dict):
            raise SchemaError(path, "expected an object")
        self.obj = value
        self.path = path
        self.strict = strict
        self.allow_extensions = allow_extensions

    def check_keys(self, required: Sequence[str], optional: Sequence[str] = ()):
        for key in required:
            if key not in self.obj:
                raise SchemaError(_join(self.path, key), "missing required field")
        if not self.strict:
            return
        known = set(required) | set(optional)
        if self.allow_extensions:
            known.add(EXTENSIONS_KEY)
        for key in self.obj:
            if key not in known:
                raise SchemaError(_join(self.path, key), "unknown field")

    def at(self, key: str) -> str:
        return _join(self.path, key)

    def raw(self, key: str, default: Any = None) -> Any:
        return self.obj.get(key, default)

    def string(self, key: str, nonempty: bool = False) -> str:
        value = self.obj[key]
        if not isinstance(value, str):
            raise SchemaError(self.at(key), "expected a string")
        if nonempty and not value.strip():
            raise SchemaError(self.at(key), "must be nonempty")
        return value

    def opt_string(self, key: str) -> str | None:
        if self.obj.get(key) is None:
            return None
        return self.string(key)

    def boolean(self, key: str) -> bool:
        value = self.obj[key]
        if not isinstance(value, bool):
            raise SchemaError(self.at(key), "expected a boolean")
        return value

    def integer(self, key: str, lo: int, hi: int) -> int:
        value = self.obj[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaError(self.at(key), "expected an integer")
        if not lo <= value <= hi:
            raise SchemaError(self.at(key), f"must lie in [{lo}, {hi}]")
        return value

    def choice(self, key: str, options: Sequence[str]) -> str:
        value = self.obj[key]
        if value not in options or not isinstance(value, str):
            raise SchemaError(self.at(key), f"must be one of {', '.join(options)}")
        return value

    def items(self, key: str) -> list[tuple[str, Any]]:
        value = self.obj[key]
        if not isinstance(value, list):
            raise SchemaError(self.at(key), "expected a list")
        return [(_join(self.at(key), i), item) for i, item in enumerate(value)]

    def strings(self, key: str) -> tuple[str, ...]:
        out = []
        for path, item in self.items(key):
            if not isinstance(item, str):
                raise SchemaError(path, "expected a string")
            out.append(item)
        return tuple(out)

    def text_map(self, key: str, allowed: Sequence[str]) -> dict[str, str]:
        value = self.obj[key]
        if not isinstance(value, dict):
            raise SchemaError(self.at(key), "expected an object")
        out = {}
        for name, text in value.items():
            if name not in allowed:
                raise SchemaError(_join(self.at(key), name), "unknown key")
            if not isinstance(text, str):
                raise SchemaError(_join(self.at(key), name), "expected a string")
            out[name] = text
        return out


def _load_json(document: str | bytes) -> Any:
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError("", f"not valid UTF-8: {exc}") from None
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(
            "", f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def _rebase(exc: SchemaError, prefix: str) -> SchemaError:
    return SchemaError(_join(prefix, exc.path) if exc.path else prefix, exc.message)


def _context(value: Any, path: str, strict: bool) -> ContextDeclaration:
    r = _Reader(value, path, strict)
    r.check_keys(
        ["purpose", "audience", "stakes", "sensitivity_classes",
         "runtime_environment", "learning_intensive"],
        ["capability_threshold"],
    )
    learning_intensive = r.boolean("learning_intensive")
    threshold = None
    if r.raw("capability_threshold") is not None:
        if not learning_intensive:
            raise SchemaError(
                r.at("capability_threshold"),
                "must be absent when learning_intensive is false",
            )
        threshold = r.integer("capability_threshold", 0, 3)
    return ContextDeclaration(
        purpose=r.string("purpose"),
        audience=r.string("audience"),
        stakes=r.choice("stakes", STAKES),
        sensitivity_classes=r.strings("sensitivity_classes"),
        runtime_environment=r.string("runtime_environment"),
        learning_intensive=learning_intensive,
        capability_threshold=threshold,
    )


def _section(value: Any, path: str):
    if value == ABSENT:
        return None
    if not isinstance(value, dict):
        raise SchemaError(path, 'expected an object or "absent"')
    return value


def _artifact(value: Any, path: str, strict: bool) -> Artifact:
    r = _Reader(value, path, strict)
    r.check_keys(["description", "artifact_kind", "runtime_dependencies"])
    deps = []
    for p, item in r.items("runtime_dependencies"):
        d = _Reader(item, p, strict)
        d.check_keys(["name", "opaque_ai", "required_for_routine_use"])
        deps.append(RuntimeDependency(
            d.string("name"), d.boolean("opaque_ai"), d.boolean("required_for_routine_use")
        ))
    return Artifact(r.string("description"), r.string("artifact_kind"), tuple(deps))


def _provenance(value: Any, path: str, strict: bool) -> Provenance:
    r = _Reader(value, path, strict)
    r.check_keys(["tool_uses", "human_decisions", "verification_steps"])
    tools = []
    for p, item in r.items("tool_uses"):
        t = _Reader(item, p, strict)
        t.check_keys(["tool", "purpose", "data_exposure_class", "protection"])
        tools.append(ToolUse(
            t.string("tool"), t.string("purpose"),
            t.string("data_exposure_class"), t.string("protection"),
        ))
    decisions = []
    for p, item in r.items("human_decisions"):
        h = _Reader(item, p, strict)
        h.check_keys(["action", "subject"])
        decisions.append(HumanDecision(h.choice("action", DECISION_ACTIONS), h.string("subject")))
    return Provenance(tuple(tools), tuple(decisions), r.strings("verification_steps"))


def _validity(value: Any, path: str, strict: bool) -> Validity:
    r = _Reader(value, path, strict)
    r.check_keys(["intended_purpose", "assumptions", "user_population",
                  "exclusions", "exclusion_rationale"])
    return Validity(
        intended_purpose=r.string("intended_purpose"),
        assumptions=r.strings("assumptions"),
        user_population=r.string("user_population"),
        exclusions=r.strings("exclusions"),
        exclusion_rationale=r.string("exclusion_rationale"),
    )


def _failure(value: Any, path: str, strict: bool) -> Failure:
    r = _Reader(value, path, strict)
    r.check_keys(["failure_modes", "warning_signs", "triggers", "escalation_route"])
    return Failure(
        failure_modes=r.strings("failure_modes"),
        warning_signs=r.strings("warning_signs"),
        triggers=r.strings("triggers"),
        escalation_route=r.string("escalation_route"),
    )


def _resource(value: Any, path: str, strict: bool) -> Resource:
    r = _Reader(value, path, strict)
    r.check_keys(["routine_use_posture", "access_requirements", "cost_energy_note"],
                 ["low_resource_fallback"])
    posture = None
    if r.raw("routine_use_posture") is not None:
        posture = r.choice("routine_use_posture", POSTURES)
    return Resource(
        routine_use_posture=posture,
        access_requirements=r.string("access_requirements"),
        cost_energy_note=r.string("cost_energy_note"),
        low_resource_fallback=r.opt_string("low_resource_fallback"),
    )


_SECTION_PARSERS = (
    ("artifact", _artifact),
    ("provenance", _provenance),
    ("validity", _validity),
    ("failure", _failure),
    ("resource", _resource),
)


def _package(value: Any, path: str, strict: bool) -> DeliverablePackageManifest:
    r = _Reader(value, path, strict)
    r.check_keys([name for name, _ in _SECTION_PARSERS])
    sections = {}
    for name, parse in _SECTION_PARSERS:
        raw = _section(r.raw(name), r.at(name))
        sections[name] = None if raw is None else parse(raw, r.at(name), strict)
    return DeliverablePackageManifest(**sections)


def workflow_from_dict(data: Any, strict: bool = True) -> WorkflowDescriptor:
    r = _Reader(data, "", strict, allow_extensions=True)
    r.check_keys(
        ["id", "task", "humans", "opaque_components", "source_classes", "context", "package"],
        ["evidence_modality"],
    )
    humans = []
    for p, item in r.items("humans"):
        h = _Reader(item, p, strict)
        h.check_keys(["name_or_role", "release_authority"])
        humans.append(Human(h.string("name_or_role", nonempty=True), h.boolean("release_authority")))
    if not humans:
        raise SchemaError("humans", "at least one human must be listed")
    components = []
    for p, item in r.items("opaque_components"):
        o = _Reader(item, p, strict)
        o.check_keys(["name", "role"], ["version_or_date"])
        components.append(OpaqueComponent(o.string("name"), o.string("role"),
                                          o.opt_string("version_or_date")))
    return WorkflowDescriptor(
        id=r.string("id", nonempty=True),
        task=r.string("task"),
        humans=tuple(humans),
        opaque_components=tuple(components),
        source_classes=r.strings("source_classes"),
        context=_context(r.raw("context"), "context", strict),
        package=_package(r.raw("package"), "package", strict),
        evidence_modality=r.opt_string("evidence_modality"),
        extensions=r.raw(EXTENSIONS_KEY),
    )


def assessment_from_dict(data: Any, strict: bool = True) -> AssessmentRecord:
    r = _Reader(data, "", strict, allow_extensions=True)
    r.check_keys(["rater_id", "workflow_id", "profile", "capability", "predicates"],
                 ["dimension_notes"])

    p = _Reader(r.raw("profile"), "profile", strict)
    p.check_keys(DIMENSIONS)
    profile = MaturityProfile(*(p.integer(name, 0, 4) for name in DIMENSIONS))

    c = _Reader(r.raw("capability"), "capability", strict)
    c.check_keys(["level"], ["modality_note"])
    if c.raw("level") == NOT_APPLICABLE:
        level: Union[int, NotApplicable] = NOT_APPLICABLE
    else:
        level = c.integer("level", 0, 3)
    capability = CapabilityEvidence(level, c.opt_string("modality_note"))

    q = _Reader(r.raw("predicates"), "predicates", strict)
    q.check_keys([*PREDICATE_NAMES, "justifications"])
    flags = {name: q.boolean(name) for name in PREDICATE_NAMES}
    justifications = q.text_map("justifications", PREDICATE_NAMES)
    try:
        predicates = PredicateAssertions(**flags, justifications=justifications)
    except SchemaError as exc:
        raise _rebase(exc, "predicates") from None

    notes = None
    if r.raw("dimension_notes") is not None:
        notes = r.text_map("dimension_notes", DIMENSIONS)

    return AssessmentRecord(
        rater_id=r.string("rater_id", nonempty=True),
        workflow_id=r.string("workflow_id", nonempty=True),
        profile=profile,
        capability=capability,
        predicates=predicates,
        dimension_notes=notes,
        extensions=r.raw(EXTENSIONS_KEY),
    )


def parse_workflow(document: str | bytes, strict: bool = True) -> WorkflowDescriptor:
    """Parse a ``.ail2w.json`` document into a validated workflow descriptor."""
    return workflow_from_dict(_load_json(document), strict=strict)


def parse_assessment(
    document: str | bytes,
    strict: bool = True,
    workflow: WorkflowDescriptor | None = None,
) -> AssessmentRecord:
    """Parse a ``.ail2a.json`` document.

    When ``workflow`` is given, the record is also checked against it
    (matching id, capability level consistent with the learning-intensive flag).
    """
    record = assessment_from_dict(_load_json(document), strict=strict)
    if workflow is not None:
        record.check_against(workflow)
    return record


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _context_to_dict(ctx: ContextDeclaration) -> dict[str, Any]:
    out = {
        "purpose": ctx.purpose,
        "audience": ctx.audience,
        "stakes": ctx.stakes,
        "sensitivity_classes": list(ctx.sensitivity_classes),
        "runtime_environment": ctx.runtime_environment,
        "learning_intensive": ctx.learning_intensive,
    }
    if ctx.capability_threshold is not None:
        out["capability_threshold"] = ctx.capability_threshold
    return out


def package_to_dict(pkg: DeliverablePackageManifest) -> dict[str, Any]:
    a, p, v, f, r = pkg.artifact, pkg.provenance, pkg.validity, pkg.failure, pkg.resource
    return {
        "artifact": ABSENT if a is None else {
            "description": a.description,
            "artifact_kind": a.artifact_kind,
            "runtime_dependencies": [
                {"name": d.name, "opaque_ai": d.opaque_ai,
                 "required_for_routine_use": d.required_for_routine_use}
                for d in a.runtime_dependencies
            ],
        },
        "provenance": ABSENT if p is None else {
            "tool_uses": [
                {"tool": t.tool, "purpose": t.purpose,
                 "data_exposure_class": t.data_exposure_class, "protection": t.protection}
                for t in p.tool_uses
            ],
            "human_decisions": [{"action": h.action, "subject": h.subject}
                                for h in p.human_decisions],
            "verification_steps": list(p.verification_steps),
        },
        "validity": ABSENT if v is None else {
            "intended_purpose": v.intended_purpose,
            "assumptions": list(v.assumptions),
            "user_population": v.user_population,
            "exclusions": list(v.exclusions),
            "exclusion_rationale": v.exclusion_rationale,
        },
        "failure": ABSENT if f is None else {
            "failure_modes": list(f.failure_modes),
            "warning_signs": list(f.warning_signs),
            "triggers": list(f.triggers),
            "escalation_route": f.escalation_route,
        },
        "resource": ABSENT if r is None else {
            "routine_use_posture": r.routine_use_posture,
            "access_requirements": r.access_requirements,
            "cost_energy_note": r.cost_energy_note,
            "low_resource_fallback": r.low_resource_fallback,
        },
    }


def workflow_to_dict(wf: WorkflowDescriptor) -> dict[str, Any]:
    out: dict[str, Any] = {
        "id": wf.id,
        "task": wf.task,
        "humans": [{"name_or_role": h.name_or_role, "release_authority": h.release_authority}
                   for h in wf.humans],
        "opaque_components": [
            {"name": o.name, "role": o.role, "version_or_date": o.version_or_date}
            for o in wf.opaque_components
        ],
        "source_classes": list(wf.source_classes),
        "context": _context_to_dict(wf.context),
        "package": package_to_dict(wf.package),
        "evidence_modality": wf.evidence_modality,
    }
    if wf.extensions is not None:
        out[EXTENSIONS_KEY] = wf.extensions
    return out


def assessment_to_dict(rec: AssessmentRecord) -> dict[str, Any]:
    out: dict[str, Any] = {
        "rater_id": rec.rater_id,
        "workflow_id": rec.workflow_id,
        "profile": dict(zip(DIMENSIONS, rec.profile.as_tuple())),
        "capability": {"level": rec.capability.level,
                       "modality_note": rec.capability.modality_note},
        "predicates": {**rec.predicates.as_dict(),
                       "justifications": dict(rec.predicates.justifications)},
        "dimension_notes": None if rec.dimension_notes is None else dict(rec.dimension_notes),
    }
    if rec.extensions is not None:
        out[EXTENSIONS_KEY] = rec.extensions
    return out


def dumps(data: Any) -> str:
    """Canonical text form: two-space indent, insertion-ordered keys, trailing newline."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def serialize_workflow(wf: WorkflowDescriptor) -> str:
    return dumps(workflow_to_dict(wf))


def serialize_assessment(rec: AssessmentRecord) -> str:
    return dumps(assessment_to_dict(rec))
