from __future__ import annotations

from collections import Counter
from functools import lru_cache
from pathlib import Path

import pytest

from oopdiag.knowledge import default_kb
from oopdiag.pipeline import SubmissionResult, analyze_sources, read_sources

FIXTURES = Path(__file__).parent / "fixtures"
SAMPLES = FIXTURES / "samples"
CLEAN = FIXTURES / "clean"
COVERAGE = FIXTURES / "coverage"

# Acceptance verdicts, printed once at the end of the run.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
# Passing cases per property test, and call outcomes by test name.
CASES: Counter[str] = Counter()
OUTCOMES: dict[str, str] = {}


@lru_cache(maxsize=None)
def analyze_dir(path: Path) -> SubmissionResult:
    return analyze_sources(read_sources(path), default_kb(), path.name)


def corpus_dirs() -> list[Path]:
    dirs = [p for root in (SAMPLES, CLEAN, COVERAGE) for p in sorted(root.iterdir()) if p.is_dir()]
    return dirs + [FIXTURES / "recovery"]


@pytest.fixture(scope="session")
def kb():
    return default_kb()


def pytest_collection_modifyitems(items):
    # acceptance checks read the tallies left by the property tests, so they run last
    items.sort(key=lambda item: item.path.name == "test_acceptance.py")


def pytest_runtest_logreport(report):
    if report.when == "call":
        OUTCOMES[report.nodeid.split("::", 1)[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
