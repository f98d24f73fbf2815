from __future__ import annotations

import csv
import io
import re

import jsonschema
import pytest

from conftest import CLEAN, SAMPLES, analyze_dir, corpus_dirs
from oopdiag.detectors import INDICATORS, ThresholdConfig
from oopdiag.diagnosis import diagnose
from oopdiag.pipeline import SubmissionResult
from oopdiag.report import (
    CHALLENGE_IDS, build_report, cohort_csv, dumps_report, rediagnose, render_markdown, validate_report,
)

CORPUS = corpus_dirs()
LOC_RE = re.compile(r"`([^`\s]+\.java):(\d+)`")


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_report_validates_and_rederives(path, kb):
    res = analyze_dir(path)
    doc = build_report(res, kb, ThresholdConfig())
    validate_report(doc)
    assert doc["report_version"] == 1
    again = rediagnose(doc, kb)
    assert again.ranking == res.diagnosis.ranking
    assert [s.score for s in again.challenge_scores] == [s.score for s in res.diagnosis.challenge_scores]


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_markdown_locations_exist(path):
    res = analyze_dir(path)
    text = render_markdown(res.diagnosis, res.issues, res.diagnostics)
    lines = {p.relative_to(path).as_posix(): len(p.read_text(encoding="utf-8").splitlines())
             for p in path.rglob("*.java")}
    for file, line in LOC_RE.findall(text):
        assert file in lines, file
        assert 1 <= int(line) <= lines[file]


def test_error_record_validates(kb):
    res = SubmissionResult("gone", "/nowhere", error="FileNotFoundError: no such submission directory")
    doc = build_report(res, kb, ThresholdConfig(), "2026-01-01T00:00:00+00:00")
    validate_report(doc)
    assert doc["issues"] == [] and doc["error"]


def test_schema_rejects_a_broken_report(kb):
    doc = build_report(analyze_dir(SAMPLES / "S1"), kb, ThresholdConfig())
    doc["report_version"] = 2
    with pytest.raises(jsonschema.ValidationError):
        dumps_report(doc)


def test_clean_markdown_says_nothing_found(kb):
    res = analyze_dir(CLEAN / "bank")
    assert "No indicators detected." in render_markdown(res.diagnosis, res.issues)
    assert "No indicators detected." in render_markdown(diagnose([], kb))


def test_s3_markdown_cites_overloading():
    res = analyze_dir(SAMPLES / "S3")
    text = render_markdown(res.diagnosis, res.issues)
    d06 = text.split("### D06")[1].split("### ")[0]
    assert "Confusion about method overloading" in d06
    assert "Long parameter list" in d06 and "Duplicate code" in d06


def test_cohort_csv_layout():
    diags = [analyze_dir(SAMPLES / s).diagnosis for s in ("S1", "S2")]
    rows = list(csv.reader(io.StringIO(cohort_csv(diags))))
    assert rows[0] == ["submission_id", *CHALLENGE_IDS, *INDICATORS]
    assert [r[0] for r in rows[1:]] == ["S1", "S2"]
    s2 = dict(zip(rows[0], rows[2]))
    assert s2["LARGE_CLASS"] == "1" and s2["DATA_CLASS"] == "1"
    assert float(s2["D02"]) > 0
