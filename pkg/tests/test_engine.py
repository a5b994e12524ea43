import json
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ail2.audit import AuditReport, audit_manifest
from ail2.engine import (
    BANDS,
    GATE_DIMENSIONS,
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
    resolved_threshold,
)
from ail2.model import (
    NOT_APPLICABLE,
    CapabilityEvidence,
    ContextDeclaration,
    MaturityProfile,
    PredicateAssertions,
    SchemaError,
    assessment_from_dict,
    parse_assessment,
    parse_workflow,
    workflow_from_dict,
)

from factories import case_dicts, profiles

P = MaturityProfile.of


def ctx(stakes="summative", li=True, tau=None):
    return ContextDeclaration("p", "a", stakes, (), "r", li, tau)


def preds(*flags):
    names = ("art_res", "sov", "prot", "pack")
    return PredicateAssertions(*flags, {n: "because" for n, f in zip(names, flags) if f})


class TestTotalsAndBands:
    @pytest.mark.parametrize("profile,total", [
        ((1, 1, 0, 0, 1, 2, 1), 6), ((0,) * 7, 0), ((4,) * 7, 28)])
    def test_total(self, profile, total):
        assert compute_total(P(profile)) == total

    @pytest.mark.parametrize("total,band", [
        (6, "not_in_practice"), (17, "aligned"), (9, "not_in_practice"), (10, "inspired"),
        (16, "inspired"), (22, "aligned"), (23, "strong"), (0, "not_in_practice"), (28, "strong")])
    def test_band_edges(self, total, band):
        assert classify_band(total) == BandLabel(band)
        assert classify_band(total).value == band

    @pytest.mark.parametrize("bad", [-1, 29, 3.0, True, "5"])
    def test_band_rejects(self, bad):
        with pytest.raises(ComplianceError):
            classify_band(bad)

    def test_band_monotone(self):
        ranks = [classify_band(t).rank for t in range(29)]
        assert ranks == sorted(ranks)
        assert [b[2] for b in BANDS] == list(BandLabel)

    def test_titles(self):
        assert BandLabel.STRONG.title == "strong AI to Learn implementation"


class TestGate:
    @pytest.mark.parametrize("profile,expected", [
        ((3, 3, 2, 2, 2, 3, 2), False),
        ((4, 3, 3, 1, 4, 4, 3), False),
        ((3, 3, 0, 3, 3, 0, 0), True),
        ((4, 4, 4, 4, 4, 4, 3), True),
    ])
    def test_examples(self, profile, expected):
        assert evaluate_gate(P(profile)) is expected

    def test_gate_dimensions(self):
        assert GATE_DIMENSIONS == ("m1", "m2", "m4", "m5")

    @given(profiles, st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)))
    def test_ignores_non_gate_dimensions(self, profile, other):
        changed = list(profile)
        changed[2], changed[5], changed[6] = other
        assert evaluate_gate(P(profile)) == evaluate_gate(P(changed))


class TestThresholds:
    def test_defaults(self):
        assert default_threshold(ctx("formative")) == 2
        assert default_threshold(ctx("summative")) == 3
        assert default_threshold(ctx("formative", tau=1)) == 1

    @pytest.mark.parametrize("stakes", ["research", "operational"])
    def test_no_default_for_other_stakes(self, stakes):
        with pytest.raises(ComplianceError, match="explicit capability_threshold required"):
            default_threshold(ctx(stakes))
        assert default_threshold(ctx(stakes, tau=2)) == 2

    def test_non_learning_context(self):
        with pytest.raises(ComplianceError):
            default_threshold(ctx(li=False))

    @pytest.mark.parametrize("level,tau,expected", [(3, 3, True), (0, 3, False), (2, 2, True), (1, 2, False)])
    def test_cap_res(self, level, tau, expected):
        assert evaluate_cap_res(CapabilityEvidence(level), tau) is expected

    def test_cap_res_errors(self):
        with pytest.raises(ComplianceError):
            evaluate_cap_res(CapabilityEvidence(NOT_APPLICABLE), 2)
        with pytest.raises(ComplianceError):
            evaluate_cap_res(CapabilityEvidence(2), 4)

    def test_learn_req(self):
        assert evaluate_learn_req(ctx(li=False), CapabilityEvidence(NOT_APPLICABLE)) is True
        assert evaluate_learn_req(ctx(), CapabilityEvidence(3)) is True
        assert evaluate_learn_req(ctx(), CapabilityEvidence(2)) is False
        with pytest.raises(ComplianceError):
            evaluate_learn_req(ctx(), CapabilityEvidence(NOT_APPLICABLE))


class TestCoreAndFull:
    def test_core(self):
        assert evaluate_core(preds(True, True, True, True)) is True
        assert evaluate_core(preds(True, True, True, False)) is False
        assert evaluate_core(preds(False, False, False, False)) is False

    def test_full(self):
        assert evaluate_full(True, True, True) is True
        assert evaluate_full(False, True, False) is False
        assert evaluate_full(True, True, False) is False


class TestCrossCheck:
    def _record(self, docs, cid, **profile):
        a = docs[cid][1]
        a["profile"].update(profile)
        return parse_assessment(json.dumps(a))

    def test_art_res_with_low_m1(self, docs):
        rec = self._record(docs, "C4", m1=2)
        codes = [w.code for w in cross_check_consistency(rec, AuditReport(()))]
        assert codes == ["W_ARTRES_M1"]

    def test_c5_is_clean(self, corpus):
        c5 = corpus[4]
        assert c5.id == "C5"
        audit = audit_manifest(c5.workflow.package)
        assert cross_check_consistency(c5.assessment, audit, c5.workflow) == []

    def test_pack_with_failure_absent(self, docs):
        w = docs["C4"][0]
        w["package"]["failure"] = "absent"
        wf = parse_workflow(json.dumps(w))
        rec = parse_assessment(json.dumps(docs["C4"][1]))
        warnings = cross_check_consistency(rec, audit_manifest(wf.package), wf)
        assert [x.code for x in warnings] == ["W_PACK_AUDIT"]
        assert "F_ABSENT" in warnings[0].message

    def test_sov_and_prot(self, docs):
        rec = self._record(docs, "C4", m2=1, m5=0)
        codes = [w.code for w in cross_check_consistency(rec, AuditReport(()))]
        assert codes == ["W_SOV_M2", "W_PROT_M5"]

    def test_release_authority(self, docs):
        w = docs["C4"][0]
        for h in w["humans"]:
            h["release_authority"] = False
        wf = parse_workflow(json.dumps(w))
        rec = parse_assessment(json.dumps(docs["C4"][1]))
        codes = [x.code for x in cross_check_consistency(rec, audit_manifest(wf.package), wf)]
        assert codes == ["W_NO_RELEASE_AUTHORITY"]
        # without the workflow the check is skipped
        assert cross_check_consistency(rec, audit_manifest(wf.package)) == []

    def test_opaque_runtime_with_high_m1(self, docs):
        w = docs["C7"][0]
        w["package"]["artifact"]["runtime_dependencies"][0]["required_for_routine_use"] = True
        wf = parse_workflow(json.dumps(w))
        rec = parse_assessment(json.dumps(docs["C7"][1]))
        codes = [x.code for x in cross_check_consistency(rec, audit_manifest(wf.package), wf)]
        assert codes == ["W_OPAQUE_RUNTIME_M1"]


class TestEvaluateCase:
    def test_c1(self, corpus):
        ev = evaluate_case(corpus[0].workflow, corpus[0].assessment)
        assert (ev.total, ev.band, ev.gate, ev.cap_res, ev.core, ev.full) == (
            6, "not_in_practice", False, False, False, False)

    def test_c6(self, corpus):
        ev = evaluate_case(corpus[5].workflow, corpus[5].assessment)
        assert (ev.total, ev.band, ev.gate, ev.cap_res, ev.core, ev.full) == (
            27, "strong", True, True, True, True)

    def test_c3(self, corpus):
        ev = evaluate_case(corpus[2].workflow, corpus[2].assessment)
        assert (ev.total, ev.band, ev.gate, ev.cap_res, ev.core, ev.full) == (
            22, "aligned", False, NOT_APPLICABLE, False, False)
        assert ev.learn_req is True

    def test_mismatched_ids(self, corpus):
        with pytest.raises(SchemaError, match="workflow_id"):
            evaluate_case(corpus[0].workflow, corpus[1].assessment)

    def test_resolved_threshold(self, corpus):
        assert [resolved_threshold(c.workflow) for c in corpus] == [3, 3, None, None, None, 3, None]

    def test_to_dict(self, corpus):
        d = evaluate_case(corpus[2].workflow, corpus[2].assessment).to_dict()
        assert d["cap_res"] == "not_applicable"
        assert list(d) == ["total", "band", "gate", "learn_req", "cap_res", "core", "full", "warnings"]


@settings(max_examples=300, deadline=None)
@given(case_dicts())
def test_random_cases_respect_predicate_algebra(pair):
    wf = workflow_from_dict(pair[0])
    rec = assessment_from_dict(pair[1])
    ev = evaluate_case(wf, rec)
    assert ev.total == sum(rec.profile.as_tuple())
    if ev.full:
        assert ev.core and ev.gate and ev.learn_req
    if not wf.context.learning_intensive:
        assert ev.learn_req and ev.cap_res == NOT_APPLICABLE
    # warnings are advisory: the same fields come out with an empty audit
    bare = replace(ev, warnings=())
    quiet = evaluate_case(wf, rec, AuditReport(()))
    assert replace(quiet, warnings=()) == bare
