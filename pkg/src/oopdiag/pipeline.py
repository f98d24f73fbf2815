"""Per-submission orchestration: sources -> model -> metrics -> issues -> diagnosis."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .builder import build_model
from .detectors import IssueInstance, ThresholdConfig, run_detectors
from .diagnosis import Diagnosis, DiagnosisConfig, diagnose
from .knowledge import KnowledgeBase
from .metrics import MetricsTable, compute_metrics
from .model import CodeModel, ModelError, ingest_model
from .parser import parse_source
from .syntax import ParseDiagnostic

SOURCE_SUFFIX = ".java"


@dataclass
class SubmissionInput:
    """One submission: a directory of sources, a single source file, or a model document."""

    path: Path
    submission_id: str
    is_model: bool = False


@dataclass
class SubmissionResult:
    submission_id: str
    source: str
    model: Optional[CodeModel] = None
    metrics: Optional[MetricsTable] = None
    issues: tuple[IssueInstance, ...] = ()
    diagnosis: Optional[Diagnosis] = None
    diagnostics: list[ParseDiagnostic] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def read_sources(root: Path) -> dict[str, bytes]:
    """``{relative posix path: bytes}`` for every source file under ``root``."""
    if root.is_file():
        return {root.name: root.read_bytes()}
    if not root.is_dir():
        raise FileNotFoundError(f"no such submission directory: {root}")
    files = sorted(p for p in root.rglob("*" + SOURCE_SUFFIX) if p.is_file())
    return {p.relative_to(root).as_posix(): p.read_bytes() for p in files}


def model_from_bytes(sources: dict[str, bytes | str], submission_id: str) -> tuple[CodeModel, list[ParseDiagnostic]]:
    units = [parse_source(src, name) for name, src in sorted(sources.items())]
    model, build_diags = build_model(units, submission_id)
    return model, [d for u in units for d in u.diagnostics] + build_diags


def analyze_model(model: CodeModel, kb: KnowledgeBase, thresholds: ThresholdConfig | None = None,
                  weights: DiagnosisConfig | None = None, only: Iterable[str] | None = None,
                  skip: Iterable[str] | None = None) -> tuple[MetricsTable, list[IssueInstance], Diagnosis]:
    metrics = compute_metrics(model)
    issues = run_detectors(model, metrics, thresholds, only=only, skip=skip)
    return metrics, issues, diagnose(issues, kb, weights, submission_id=model.submission_id)


def analyze_sources(sources: dict[str, bytes | str], kb: KnowledgeBase, submission_id: str = "submission",
                    thresholds: ThresholdConfig | None = None, weights: DiagnosisConfig | None = None,
                    only: Iterable[str] | None = None, skip: Iterable[str] | None = None) -> SubmissionResult:
    model, diags = model_from_bytes(sources, submission_id)
    metrics, issues, diagnosis = analyze_model(model, kb, thresholds, weights, only, skip)
    return SubmissionResult(submission_id, submission_id, model, metrics, tuple(issues), diagnosis, diags)


def analyze_input(item: SubmissionInput, kb: KnowledgeBase, thresholds: ThresholdConfig | None = None,
                  weights: DiagnosisConfig | None = None, only: Iterable[str] | None = None,
                  skip: Iterable[str] | None = None) -> SubmissionResult:
    """Analyze one input; unreadable input becomes an error record instead of raising."""
    source = str(item.path)
    try:
        if item.is_model:
            model = ingest_model(item.path.read_bytes())
            diags: list[ParseDiagnostic] = []
        else:
            model, diags = model_from_bytes(read_sources(item.path), item.submission_id)
    except (OSError, ModelError) as exc:
        return SubmissionResult(item.submission_id, source, error=f"{type(exc).__name__}: {exc}")
    if model.submission_id != item.submission_id and not item.is_model:
        model = CodeModel(item.submission_id, model.types, model.dependency_edges, model.files)
    metrics, issues, diagnosis = analyze_model(model, kb, thresholds, weights, only, skip)
    return SubmissionResult(model.submission_id, source, model, metrics, tuple(issues), diagnosis, diags)
