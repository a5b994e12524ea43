import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ail2 import __version__
from ail2.cli import main
from ail2.corpus import reference_table, table_cells

from conftest import fixture_dict


@pytest.fixture
def case_files(tmp_path):
    """Write a corpus case's documents to disk and return their paths."""
    def write(cid, workflow=None, assessment=None):
        w = tmp_path / f"{cid}.ail2w.json"
        a = tmp_path / f"{cid}.ail2a.json"
        w.write_text(json.dumps(workflow or fixture_dict(cid, "w")), encoding="utf-8")
        a.write_text(json.dumps(assessment or fixture_dict(cid, "a")), encoding="utf-8")
        return str(w), str(a)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestValidate:
    def test_clean_manifest(self, capsys, case_files):
        w, _ = case_files("C5")
        code, out, err = run(capsys, "validate", w)
        assert code == 0
        doc = json.loads(out)
        assert doc["workflow_id"] == "C5"
        assert doc["structurally_complete"] is True
        assert err == ""

    def test_incomplete_manifest(self, capsys, case_files):
        w, _ = case_files("C1")
        code, out, err = run(capsys, "validate", w)
        assert code == 1
        codes = [f["code"] for f in json.loads(out)["findings"]]
        assert {"P_ABSENT", "V_ABSENT", "F_ABSENT", "R_ABSENT"} <= set(codes)
        assert "not structurally complete" in err
        code, _, err = run(capsys, "--quiet", "validate", w)
        assert code == 1 and err == ""

    def test_missing_file(self, capsys, tmp_path):
        missing = str(tmp_path / "nope.json")
        code, out, err = run(capsys, "validate", missing)
        assert code == 1 and out == ""
        assert missing in err

    def test_strict_toggle(self, capsys, case_files):
        w = fixture_dict("C4", "w")
        w["package"]["artifact"]["colour"] = "blue"
        wpath, _ = case_files("C4", workflow=w)
        code, _, err = run(capsys, "validate", wpath)
        assert code == 1 and "package.artifact.colour" in err
        assert run(capsys, "validate", "--no-strict", wpath)[0] == 0
        assert run(capsys, "--no-strict", "validate", wpath)[0] == 0


class TestScore:
    @pytest.mark.parametrize("cid", [f"C{i}" for i in range(1, 8)])
    def test_corpus_cases(self, capsys, case_files, cid):
        w, a = case_files(cid)
        code, out, _ = run(capsys, "score", w, a)
        assert code == 0
        doc = json.loads(out)
        row = next(r for r in reference_table() if r["id"] == cid)
        assert doc["workflow_id"] == cid
        assert doc["total"] == row["S"]
        assert (doc["gate"], doc["core"], doc["full"]) == (
            bool(row["Gate"]), bool(row["Core"]), bool(row["Full"]))

    def test_mismatched_ids(self, capsys, case_files):
        w1, _ = case_files("C1")
        _, a2 = case_files("C2")
        code, out, err = run(capsys, "score", w1, a2)
        assert code == 1 and out == ""
        assert a2 in err and "workflow_id" in err

    def test_operational_without_threshold(self, capsys, case_files):
        w = fixture_dict("C7", "w")
        w["context"]["learning_intensive"] = True
        a = fixture_dict("C7", "a")
        a["capability"]["level"] = 3
        wpath, apath = case_files("C7", w, a)
        code, _, err = run(capsys, "score", wpath, apath)
        assert code == 1
        assert "explicit capability_threshold required" in err

    def test_inputs_are_not_modified(self, capsys, case_files):
        w, a = case_files("C2")
        before = (open(w, "rb").read(), open(a, "rb").read())
        run(capsys, "score", w, a)
        run(capsys, "validate", w)
        run(capsys, "report", w, a, "--format", "json")
        assert (open(w, "rb").read(), open(a, "rb").read()) == before


class TestReport:
    def test_markdown_corpus(self, capsys):
        code, out, _ = run(capsys, "report", "--corpus")
        assert code == 0
        rows = [[c.strip() for c in ln.strip("|").split("|")]
                for ln in out.splitlines() if ln.startswith("| C") and not ln.startswith("| Case")]
        assert rows == [table_cells(r) for r in reference_table()]

    def test_pairs_and_out(self, capsys, case_files, tmp_path):
        w1, a1 = case_files("C1")
        w6, a6 = case_files("C6")
        target = tmp_path / "report.json"
        code, out, err = run(capsys, "report", w1, a1, w6, a6, "--format", "json", "--out", str(target))
        assert code == 0 and out == ""
        assert "2 cases" in err
        doc = json.loads(target.read_text(encoding="utf-8"))
        assert [c["case"] for c in doc["cases"]] == ["C1", "C6"]

    @pytest.mark.parametrize("fmt", ["heatmap-svg", "totals-svg"])
    def test_svg(self, capsysbinary, fmt):
        assert main(["report", "--corpus", "--format", fmt]) == 0
        out = capsysbinary.readouterr().out
        assert ET.fromstring(out).tag.endswith("svg")

    def test_refuses_to_overwrite_input(self, capsys, case_files):
        w, a = case_files("C3")
        before = open(w, "rb").read()
        code, _, err = run(capsys, "report", w, a, "--out", w)
        assert code == 1 and "overwrite" in err
        assert open(w, "rb").read() == before

    def test_odd_pairs(self, capsys, case_files):
        w, _ = case_files("C3")
        assert run(capsys, "report", w)[0] == 1

    def test_needs_input(self, capsys, case_files):
        assert run(capsys, "report")[0] == 1
        w, a = case_files("C3")
        assert run(capsys, "report", "--corpus", w, a)[0] == 1

    def test_failed_render_writes_nothing(self, capsys, case_files, tmp_path):
        w, a = case_files("C3")
        bad = fixture_dict("C4", "a")
        w4, a4 = case_files("C4", assessment={**bad, "profile": {**bad["profile"], "m1": 9}})
        target = tmp_path / "out.md"
        code, _, _ = run(capsys, "report", w, a, w4, a4, "--out", str(target))
        assert code == 1 and not target.exists()


class TestCorpus:
    def test_verify(self, capsys):
        code, out, _ = run(capsys, "corpus", "verify")
        assert code == 0
        assert out.rstrip().splitlines()[-1] == "7/7 cases match Table 3"

    def test_verify_json(self, capsys):
        code, out, _ = run(capsys, "corpus", "verify", "--format", "json")
        assert code == 0 and json.loads(out)["passed"] is True

    def test_verify_quiet(self, capsys):
        assert run(capsys, "--quiet", "corpus", "verify")[1] == "7/7 cases match Table 3\n"

    def test_list(self, capsys):
        code, out, _ = run(capsys, "corpus", "list")
        assert [c["id"] for c in json.loads(out)] == [f"C{i}" for i in range(1, 8)]
        code, out, _ = run(capsys, "corpus", "list", "--format", "text")
        assert out.splitlines()[0].startswith("C1\t")

    def test_show(self, capsys):
        code, out, _ = run(capsys, "corpus", "show", "C6")
        doc = json.loads(out)
        assert code == 0 and doc["expected"]["threshold"] == 3
        assert doc["workflow"]["id"] == "C6"

    def test_show_errors(self, capsys):
        assert run(capsys, "corpus", "show", "C9")[0] == 1
        assert run(capsys, "corpus", "show")[0] == 1
        assert run(capsys, "corpus", "list", "C1")[0] == 1


@pytest.fixture
def panel_file(tmp_path):
    doc = {"case_ids": ["C1", "C2", "C3", "C4"], "rater_ids": ["r1", "r2", "r3"],
           "scores": [[6, 8, 7], [17, 15, 17], [22, 23, 22], [27, 27, 26]],
           "value_kind": "total"}
    path = tmp_path / "panel.ail2p.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


class TestAgree:
    def test_icc(self, capsys, panel_file):
        code, out, _ = run(capsys, "agree", panel_file, "--stat", "icc")
        doc = json.loads(out)
        assert code == 0
        assert doc["icc_form"] == "icc2_1" and doc["n_raters"] == 3
        assert doc["ci_lower"] <= doc["estimate"] <= doc["ci_upper"]
        code, out, _ = run(capsys, "agree", panel_file, "--stat", "icc", "--icc-form", "2_k",
                           "--confidence", "0.9")
        assert json.loads(out)["confidence_level"] == 0.9

    def test_kappa_pairs(self, capsys, panel_file):
        code, out, _ = run(capsys, "agree", panel_file, "--stat", "kappa", "--weights", "linear")
        doc = json.loads(out)
        assert code == 0 and doc["weights"] == "linear" and doc["categories"] == 29
        assert [p["raters"] for p in doc["pairs"]] == [["r1", "r2"], ["r1", "r3"], ["r2", "r3"]]
        assert all(p["defined"] for p in doc["pairs"])

    def test_exact(self, capsys, panel_file):
        code, out, _ = run(capsys, "agree", panel_file, "--stat", "exact")
        assert json.loads(out)["pairs"][1]["value"] == 0.5

    def test_usage_errors(self, capsys, panel_file):
        with pytest.raises(SystemExit) as info:
            main(["agree", panel_file])
        assert info.value.code == 2
        with pytest.raises(SystemExit) as info:
            main(["agree", panel_file, "--stat", "icc", "--confidence", "1.5"])
        assert info.value.code == 2


class TestPld:
    def test_value(self, capsys):
        code, out, _ = run(capsys, "pld", "--artifact", "0.9", "--transfer", "0.4")
        doc = json.loads(out)
        assert code == 0 and doc["pld"] == 0.5 and doc["candidate_false_mastery"] is True

    def test_range(self, capsys):
        code, out, err = run(capsys, "pld", "--artifact", "1.2", "--transfer", "0.4")
        assert code == 1 and out == ""


class TestGlobal:
    def test_no_command(self, capsys):
        code, _, err = run(capsys)
        assert code == 2 and "command is required" in err

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert __version__ in capsys.readouterr().out

    def test_no_colour_when_not_a_tty(self, capsys, tmp_path):
        _, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
        assert err.startswith("error: ")
        assert "\033[" not in err

    def test_no_color_variable(self, monkeypatch, capsys, tmp_path):
        monkeypatch.setattr(sys.stderr, "isatty", lambda: True, raising=False)
        monkeypatch.setenv("AIL2_NO_COLOR", "1")
        _, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
        assert "\033[" not in err
        monkeypatch.delenv("AIL2_NO_COLOR")
        _, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
        assert "\033[31m" in err

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "ail2", "corpus", "verify", "--quiet"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert proc.stdout == "7/7 cases match Table 3\n"


@settings(max_examples=150, deadline=None,
          suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.one_of(
    st.binary(max_size=200),
    st.text(max_size=200).map(lambda s: s.encode("utf-8")),
    st.recursive(st.none() | st.booleans() | st.integers() | st.text(max_size=5),
                 lambda c: st.lists(c, max_size=3) | st.dictionaries(st.text(max_size=5), c, max_size=3),
                 max_leaves=10).map(lambda v: json.dumps(v).encode("utf-8")),
))
def test_malformed_documents_exit_cleanly(tmp_path_factory, data):
    path = tmp_path_factory.mktemp("bad") / "doc.json"
    path.write_bytes(data)
    good_w = tmp_path_factory.mktemp("good") / "w.json"
    good_w.write_text(json.dumps(fixture_dict("C5", "w")), encoding="utf-8")
    for argv in (["validate", str(path)], ["score", str(good_w), str(path)],
                 ["agree", str(path), "--stat", "exact"]):
        assert main(argv) == 1
    assert path.read_bytes() == data
