"""Indicator identifiers, issue records and the shared severity rule."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..model import Span

INDICATORS: tuple[str, ...] = (
    "LARGE_CLASS", "FEATURE_ENVY", "SHOTGUN_SURGERY", "DATA_CLASS", "LONG_METHOD",
    "FUNCTIONAL_DECOMPOSITION", "REFUSED_BEQUEST", "SPAGHETTI_CODE", "DIVERGENT_CHANGE",
    "LONG_PARAMETER_LIST", "DUPLICATE_CODE", "CYCLIC_DEPENDENT_MODULARIZATION",
    "DEFICIENT_ENCAPSULATION", "SPECULATIVE_GENERALITY", "LAZY_CLASS", "SWITCH_STATEMENT",
    "PRIMITIVE_OBSESSION", "SWISS_ARMY_KNIFE", "DATA_CLUMP", "INAPPROPRIATE_INTIMACY",
    "TEMPORARY_FIELD", "MIDDLE_MAN", "MESSAGE_CHAINS", "PARALLEL_INHERITANCE",
    "ALTERNATIVE_CLASSES", "ISP_VIOLATION", "DIP_VIOLATION",
)

DISPLAY_NAMES: dict[str, str] = {
    "LARGE_CLASS": "Large class",
    "FEATURE_ENVY": "Feature envy",
    "SHOTGUN_SURGERY": "Shotgun surgery",
    "DATA_CLASS": "Data class",
    "LONG_METHOD": "Long method",
    "FUNCTIONAL_DECOMPOSITION": "Functional decomposition",
    "REFUSED_BEQUEST": "Refused bequest",
    "SPAGHETTI_CODE": "Spaghetti code",
    "DIVERGENT_CHANGE": "Divergent change",
    "LONG_PARAMETER_LIST": "Long parameter list",
    "DUPLICATE_CODE": "Duplicate code",
    "CYCLIC_DEPENDENT_MODULARIZATION": "Cyclically-dependent modularization",
    "DEFICIENT_ENCAPSULATION": "Deficient encapsulation",
    "SPECULATIVE_GENERALITY": "Speculative generality",
    "LAZY_CLASS": "Lazy class",
    "SWITCH_STATEMENT": "Switch statement",
    "PRIMITIVE_OBSESSION": "Primitive obsession",
    "SWISS_ARMY_KNIFE": "Swiss army knife",
    "DATA_CLUMP": "Data clump",
    "INAPPROPRIATE_INTIMACY": "Inappropriate intimacy",
    "TEMPORARY_FIELD": "Temporary field",
    "MIDDLE_MAN": "Middle man",
    "MESSAGE_CHAINS": "Message chains",
    "PARALLEL_INHERITANCE": "Parallel inheritance hierarchies",
    "ALTERNATIVE_CLASSES": "Alternative classes with different interfaces",
    "ISP_VIOLATION": "Interface Segregation Principle violation",
    "DIP_VIOLATION": "Dependency Inversion Principle violation",
}

SEVERITIES = ("info", "warn", "strong")
PROXY_INDICATORS = frozenset({"DIVERGENT_CHANGE", "SHOTGUN_SURGERY"})


@dataclass(frozen=True)
class Evidence:
    metric: str
    value: float
    threshold: float
    op: str  # comparison that held: >=, >, <, <=

    def ratio(self) -> float:
        """How far past its threshold the value is (1.0 means just at it)."""
        v, t = float(self.value), float(self.threshold)
        if self.op in (">=", ">"):
            return v / t if t > 0 else math.inf
        return t / v if v > 0 else math.inf


@dataclass(frozen=True)
class IssueInstance:
    indicator: str
    subject: str
    span: Span
    evidence: tuple[Evidence, ...]
    severity: str
    explanation: str
    proxy: bool = False
    alias: str | None = None
    members: tuple[str, ...] = field(default=())

    def sort_key(self) -> tuple:
        return (self.span.file, self.span.start_line, self.indicator, self.subject, self.members)


def severity_for(evidence: tuple[Evidence, ...], bump: int = 0) -> str:
    """Severity from the weakest margin among the evidence terms."""
    if not evidence:
        raise ValueError("evidence must be non-empty")
    r = min(e.ratio() for e in evidence)
    level = 2 if r >= 2 else 1 if r >= 1.25 else 0
    return SEVERITIES[min(2, level + bump)]


def make_issue(indicator: str, subject: str, span: Span, evidence: list[Evidence] | tuple[Evidence, ...],
               explanation: str, *, bump: int = 0, members: tuple[str, ...] = (), alias: str | None = None) -> IssueInstance:
    ev = tuple(evidence)
    return IssueInstance(
        indicator=indicator,
        subject=subject,
        span=span,
        evidence=ev,
        severity=severity_for(ev, bump),
        explanation=explanation,
        proxy=indicator in PROXY_INDICATORS,
        alias=alias,
        members=members,
    )
