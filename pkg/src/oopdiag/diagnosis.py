"""Rank learning challenges from detected issues by walking the conceptual map."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .detectors.catalog import INDICATORS, IssueInstance
from .knowledge import AnalysisCategory, KnowledgeBase, LearningChallenge, RegistrationCode


@dataclass(frozen=True)
class DiagnosisConfig:
    """Severity weights and the discount applied to related-provenance chains."""

    w_info: float = 0.2
    w_warn: float = 0.4
    w_strong: float = 0.7
    related_factor: float = 0.5

    def __post_init__(self) -> None:
        for name in ("w_info", "w_warn", "w_strong", "related_factor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def weight(self, severity: str) -> float:
        return {"info": self.w_info, "warn": self.w_warn, "strong": self.w_strong}[severity]

    def scaled(self, k: float) -> DiagnosisConfig:
        return DiagnosisConfig(self.w_info * k, self.w_warn * k, self.w_strong * k, self.related_factor)

    def to_doc(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class EvidenceChain:
    issue: IssueInstance
    category: AnalysisCategory
    codes: tuple[RegistrationCode, ...]
    challenge: LearningChallenge
    provenance: str
    contribution: float


@dataclass(frozen=True)
class ChallengeScore:
    challenge_id: str
    title: str
    score: float
    evidence: float  # summed per-category contributions, before squashing
    n_issues: int
    n_categories_hit: int
    chains: tuple[EvidenceChain, ...]


@dataclass(frozen=True)
class Diagnosis:
    submission_id: str
    challenge_scores: tuple[ChallengeScore, ...]
    unmapped_issues: tuple[IssueInstance, ...]
    issues: tuple[IssueInstance, ...]
    config: DiagnosisConfig
    kb_version: str

    def score(self, challenge_id: str) -> float:
        return next(s.score for s in self.challenge_scores if s.challenge_id == challenge_id)

    @property
    def nonzero(self) -> tuple[str, ...]:
        return tuple(s.challenge_id for s in self.challenge_scores if s.score > 0)

    @property
    def ranking(self) -> tuple[str, ...]:
        return tuple(s.challenge_id for s in self.challenge_scores)


def _provenance(issue: IssueInstance) -> str:
    return "related" if issue.proxy or issue.alias else "direct"


def diagnose(issues: Iterable[IssueInstance], kb: KnowledgeBase, config: DiagnosisConfig | None = None,
             submission_id: str = "") -> Diagnosis:
    """Walk issue -> analysis category -> challenge and score each challenge.

    A category contributes its strongest chain; a challenge's evidence is the
    sum over its hit categories, squashed to ``1 - exp(-evidence)``. Breadth of
    categories therefore counts, repeated hits in one category do not.
    """
    config = config or DiagnosisConfig()
    issues = tuple(issues)
    chains_by_challenge: dict[str, list[EvidenceChain]] = {c.id: [] for c in kb.challenges}
    unmapped: list[IssueInstance] = []
    for issue in issues:
        cats = kb.categories_for(issue.indicator) if issue.indicator in kb.indicators else ()
        if not cats:
            unmapped.append(issue)
            continue
        prov = _provenance(issue)
        contribution = config.weight(issue.severity) * (config.related_factor if prov == "related" else 1.0)
        for cat in cats:
            chains_by_challenge[cat.challenge_id].append(EvidenceChain(
                issue=issue,
                category=cat,
                codes=kb.codes_for(cat.id),
                challenge=kb.challenge(cat.challenge_id),
                provenance=prov,
                contribution=contribution,
            ))
    scale = max(config.w_info, config.w_warn, config.w_strong)
    scores = []
    for ch in kb.challenges:
        chains = chains_by_challenge[ch.id]
        best: dict[str, float] = {}
        for c in chains:
            best[c.category.id] = max(best.get(c.category.id, 0.0), c.contribution)
        evidence = math.fsum(sorted(best.values()))
        chains_sorted = tuple(sorted(chains, key=lambda c: (c.category.id, -c.contribution, c.issue.sort_key())))
        scores.append(ChallengeScore(
            challenge_id=ch.id,
            title=ch.title,
            score=-math.expm1(-evidence),
            evidence=evidence,
            n_issues=len({id(c.issue) for c in chains}),
            n_categories_hit=len(best),
            chains=chains_sorted,
        ))
    # Rank on evidence normalized by the largest weight so that scaling every
    # weight by one constant cannot reorder challenges through rounding.
    scores.sort(key=lambda s: (-round(s.evidence / scale, 9), s.challenge_id))
    return Diagnosis(
        submission_id=submission_id,
        challenge_scores=tuple(scores),
        unmapped_issues=tuple(unmapped),
        issues=issues,
        config=config,
        kb_version=kb.kb_version,
    )


@dataclass(frozen=True)
class ChallengeAggregate:
    challenge_id: str
    title: str
    prevalence: float
    mean_score: float
    top_indicators: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class CohortSummary:
    n_submissions: int
    challenges: tuple[ChallengeAggregate, ...]
    submissions: tuple[str, ...] = field(default=())

    def get(self, challenge_id: str) -> ChallengeAggregate:
        return next(c for c in self.challenges if c.challenge_id == challenge_id)


def aggregate_cohort(diagnoses: Sequence[Diagnosis], top_k: int = 3) -> CohortSummary:
    """Prevalence (share of submissions with a nonzero score), mean score and
    the indicators most often behind each challenge."""
    if not diagnoses:
        raise ValueError("aggregate_cohort needs at least one diagnosis")
    n = len(diagnoses)
    order = [s.challenge_id for s in sorted(diagnoses[0].challenge_scores, key=lambda s: s.challenge_id)]
    out = []
    for cid in order:
        per = [next(s for s in d.challenge_scores if s.challenge_id == cid) for d in diagnoses]
        counts: Counter = Counter()
        for s in per:
            counts.update({c.issue.indicator for c in s.chains})
        top = tuple(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_k])
        out.append(ChallengeAggregate(
            challenge_id=cid,
            title=per[0].title,
            prevalence=sum(1 for s in per if s.score > 0) / n,
            mean_score=math.fsum(s.score for s in per) / n,
            top_indicators=top,
        ))
    return CohortSummary(n, tuple(out), tuple(d.submission_id for d in diagnoses))


def indicator_counts(diagnosis: Diagnosis) -> dict[str, int]:
    counts = Counter(i.indicator for i in diagnosis.issues)
    return {ind: counts.get(ind, 0) for ind in INDICATORS}
