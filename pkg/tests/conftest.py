import copy
import json
from importlib import resources

import pytest

from ail2.corpus import load_corpus


def fixture_dict(case_id: str, kind: str) -> dict:
    """Fresh mutable copy of a bundled corpus document; kind is 'w' or 'a'."""
    text = resources.files("ail2").joinpath("corpus_data").joinpath(
        f"{case_id}.ail2{kind}.json").read_text(encoding="utf-8")
    return json.loads(text)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def _corpus_docs():
    return {cid: (fixture_dict(cid, "w"), fixture_dict(cid, "a"))
            for cid in (f"C{i}" for i in range(1, 8))}


@pytest.fixture
def docs(_corpus_docs):
    """Deep copies of the corpus documents, safe to mutate in a test."""
    return copy.deepcopy(_corpus_docs)


# (criterion number, passed, detail), filled in by test_acceptance.py
ACCEPTANCE: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
