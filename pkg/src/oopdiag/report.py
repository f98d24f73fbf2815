"""Structured (JSON), markdown and cohort CSV renderings of analysis results."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from functools import lru_cache
from importlib import resources
from typing import Any, Optional, Sequence

import jsonschema

from . import __version__
from .detectors import DISPLAY_NAMES, INDICATORS, Evidence, IssueInstance, ThresholdConfig
from .diagnosis import CohortSummary, Diagnosis, DiagnosisConfig, diagnose, indicator_counts
from .knowledge import KnowledgeBase
from .model import Span, dumps_canonical
from .pipeline import SubmissionResult

REPORT_VERSION = 1
CHALLENGE_IDS = ("D02", "D03", "D04", "D05", "D06", "D07")


@lru_cache(maxsize=1)
def report_schema() -> dict:
    text = resources.files("oopdiag").joinpath("data").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate_report(doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` violates the report schema."""
    jsonschema.validate(doc, report_schema())


def _span_doc(span: Span) -> dict:
    return {"file": span.file, "start_line": span.start_line, "end_line": span.end_line}


def issue_ids(issues: Sequence[IssueInstance]) -> dict[int, str]:
    return {id(i): f"I{n}" for n, i in enumerate(issues, 1)}


def issue_doc(issue: IssueInstance, ident: str) -> dict:
    return {
        "id": ident,
        "indicator": issue.indicator,
        "name": DISPLAY_NAMES[issue.indicator],
        "subject": issue.subject,
        "span": _span_doc(issue.span),
        "severity": issue.severity,
        "proxy": issue.proxy,
        "alias": issue.alias,
        "members": list(issue.members),
        "explanation": issue.explanation,
        "evidence": [asdict(e) for e in issue.evidence],
    }


def build_report(result: SubmissionResult, kb: KnowledgeBase, thresholds: ThresholdConfig,
                 generated_at: Optional[str] = None) -> dict:
    """The structured report for one submission, ready for :func:`dumps_report`."""
    doc: dict[str, Any] = {
        "report_version": REPORT_VERSION,
        "tool_version": __version__,
        "submission_id": result.submission_id,
        "kb_version": kb.kb_version,
        "kb_checksum": kb.checksum,
        "thresholds": thresholds.to_doc(),
        "error": result.error,
    }
    if generated_at is not None:
        doc["generated_at"] = generated_at
    doc["parse_diagnostics"] = [
        {"file": d.file, "line": d.line, "col": d.col, "severity": d.severity,
         "message": d.message, "recovery_action": d.recovery_action}
        for d in result.diagnostics
    ]
    if not result.ok:
        doc.update(files=[], issues=[], metrics={"classes": {}, "methods": {}}, challenges=[],
                   unmapped_issues=[], diagnosis_config=DiagnosisConfig().to_doc())
        return doc
    diag = result.diagnosis
    ids = issue_ids(result.issues)
    doc["files"] = [{"path": p, "lines": n} for p, n in result.model.files]
    doc["issues"] = [issue_doc(i, ids[id(i)]) for i in result.issues]
    doc["metrics"] = result.metrics.to_doc()
    doc["diagnosis_config"] = diag.config.to_doc()
    doc["challenges"] = [
        {
            "rank": rank,
            "challenge_id": s.challenge_id,
            "title": s.title,
            "score": s.score,
            "evidence": s.evidence,
            "n_issues": s.n_issues,
            "n_categories_hit": s.n_categories_hit,
            "chains": [
                {
                    "issue": ids[id(c.issue)],
                    "indicator": c.issue.indicator,
                    "category_id": c.category.id,
                    "category": c.category.label,
                    "codes": [{"code_id": k.code_id, "label": k.label} for k in c.codes],
                    "provenance": c.provenance,
                    "contribution": c.contribution,
                }
                for c in s.chains
            ],
        }
        for rank, s in enumerate(diag.challenge_scores, 1)
    ]
    doc["unmapped_issues"] = [ids[id(i)] for i in diag.unmapped_issues]
    return doc


def dumps_report(doc: dict) -> bytes:
    validate_report(doc)
    return dumps_canonical(doc)


def issues_from_report(doc: dict) -> list[IssueInstance]:
    """Rebuild issue records from a structured report."""
    out = []
    for d in doc["issues"]:
        s = d["span"]
        out.append(IssueInstance(
            indicator=d["indicator"],
            subject=d["subject"],
            span=Span(s["file"], s["start_line"], s["end_line"]),
            evidence=tuple(Evidence(**e) for e in d["evidence"]),
            severity=d["severity"],
            explanation=d["explanation"],
            proxy=d["proxy"],
            alias=d["alias"],
            members=tuple(d["members"]),
        ))
    return out


def rediagnose(doc: dict, kb: KnowledgeBase) -> Diagnosis:
    """Re-derive the diagnosis from a report alone, without the sources."""
    cfg = DiagnosisConfig(**doc["diagnosis_config"])
    return diagnose(issues_from_report(doc), kb, cfg, submission_id=doc["submission_id"])


# --- markdown -------------------------------------------------------------


def _loc(span: Span) -> str:
    return f"{span.file}:{span.start_line}"


def _esc(text: str) -> str:
    return text.replace("|", "\\|")


def render_markdown(diagnosis: Diagnosis, issues: Sequence[IssueInstance] | None = None,
                    diagnostics: Sequence = (), error: str | None = None) -> str:
    """Human-readable report: challenge summary, evidence chains, issue list."""
    issues = list(diagnosis.issues if issues is None else issues)
    lines = [f"# OOP learning diagnosis: {diagnosis.submission_id or 'submission'}", ""]
    if error:
        lines += [f"Analysis failed: {error}", ""]
        return "\n".join(lines)
    lines += [f"Knowledge base `{diagnosis.kb_version}`. {len(issues)} indicator instance(s) detected.", ""]
    if not issues:
        lines += ["No indicators detected.", ""]
    lines += ["## Summary", "", "| Rank | Challenge | Title | Score |", "|---:|---|---|---:|"]
    for rank, s in enumerate(diagnosis.challenge_scores, 1):
        lines.append(f"| {rank} | {s.challenge_id} | {_esc(s.title)} | {s.score:.3f} |")
    lines.append("")
    hit = [s for s in diagnosis.challenge_scores if s.chains]
    if hit:
        lines += ["## Evidence", ""]
    for s in hit:
        lines += [f"### {s.challenge_id}: {s.title} (score {s.score:.3f})", ""]
        by_cat: dict[str, list] = {}
        for c in s.chains:
            by_cat.setdefault(c.category.id, []).append(c)
        for cat_id, chains in by_cat.items():
            cat = chains[0].category
            codes = ", ".join(f"{k.code_id} {k.label}" for k in chains[0].codes)
            lines += [f"**{cat.label}** (codes: {codes})", ""]
            for c in chains:
                flags = [c.issue.severity]
                if c.issue.proxy:
                    flags.append("structural proxy")
                if c.provenance == "related":
                    flags.append("related")
                lines.append(f"- `{_loc(c.issue.span)}` {DISPLAY_NAMES[c.issue.indicator]} "
                             f"[{', '.join(flags)}]: {c.issue.explanation}")
            lines.append("")
    if issues:
        lines += ["## Indicators", ""]
        for i in issues:
            ev = "; ".join(f"{e.metric} {e.value:g} {e.op} {e.threshold:g}" for e in i.evidence)
            lines.append(f"- `{_loc(i.span)}` **{DISPLAY_NAMES[i.indicator]}** in `{i.subject}` ({i.severity}; {ev})")
        lines.append("")
    if diagnosis.unmapped_issues:
        lines += ["## Unmapped indicators", ""]
        lines += [f"- `{_loc(i.span)}` {DISPLAY_NAMES[i.indicator]}" for i in diagnosis.unmapped_issues]
        lines.append("")
    if diagnostics:
        lines += ["## Parse diagnostics", ""]
        lines += [f"- `{d.file}:{d.line}` {d.severity}: {d.message}" for d in diagnostics]
        lines.append("")
    return "\n".join(lines)


# --- cohort -------------------------------------------------------------------


def cohort_csv(diagnoses: Sequence[Diagnosis]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["submission_id", *CHALLENGE_IDS, *INDICATORS])
    for d in diagnoses:
        counts = indicator_counts(d)
        w.writerow([d.submission_id, *(f"{d.score(c):.6f}" for c in CHALLENGE_IDS), *(counts[i] for i in INDICATORS)])
    return buf.getvalue()


def cohort_doc(summary: CohortSummary) -> dict:
    return {
        "report_version": REPORT_VERSION,
        "n_submissions": summary.n_submissions,
        "submissions": list(summary.submissions),
        "challenges": [
            {"challenge_id": c.challenge_id, "title": c.title, "prevalence": c.prevalence,
             "mean_score": c.mean_score, "top_indicators": [[k, v] for k, v in c.top_indicators]}
            for c in summary.challenges
        ],
    }
