"""The conceptual map: indicators -> analysis categories -> learning challenges."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from .detectors.catalog import DISPLAY_NAMES, INDICATORS

DEFAULT_KB_RESOURCE = "oop-map-v1.json"
PROVENANCES = ("direct", "related")


class KBError(ValueError):
    """A knowledge-base document failed validation; ``entry`` names the culprit."""

    def __init__(self, message: str, entry: str = ""):
        super().__init__(message)
        self.entry = entry


@dataclass(frozen=True)
class LearningChallenge:
    id: str
    title: str
    description: str = ""


@dataclass(frozen=True)
class AnalysisCategory:
    id: str
    challenge_id: str
    label: str


@dataclass(frozen=True)
class RegistrationCode:
    code_id: str
    category_id: str
    label: str


@dataclass(frozen=True)
class MappingEdge:
    indicator: str
    category_id: str
    provenance: str = "direct"


@dataclass(frozen=True)
class AliasEntry:
    name: str
    targets: tuple[str, ...]

    @property
    def canonical(self) -> str:
        return self.targets[0]


@dataclass(frozen=True)
class KnowledgeBase:
    kb_version: str
    challenges: tuple[LearningChallenge, ...]
    categories: tuple[AnalysisCategory, ...]
    codes: tuple[RegistrationCode, ...]
    indicators: tuple[str, ...]
    aliases: tuple[AliasEntry, ...]
    edges: tuple[MappingEdge, ...]
    indicator_names: tuple[tuple[str, tuple[str, ...]], ...] = ()
    checksum: str = ""
    _idx: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        idx = self._idx
        idx["challenge"] = {c.id: c for c in self.challenges}
        idx["category"] = {c.id: c for c in self.categories}
        by_ind: dict[str, list[AnalysisCategory]] = {}
        for e in self.edges:
            by_ind.setdefault(e.indicator, []).append(idx["category"][e.category_id])
        idx["by_indicator"] = {k: tuple(sorted(v, key=lambda c: c.id)) for k, v in by_ind.items()}
        codes: dict[str, list[RegistrationCode]] = {}
        for c in self.codes:
            codes.setdefault(c.category_id, []).append(c)
        idx["codes"] = {k: tuple(sorted(v, key=lambda c: c.code_id)) for k, v in codes.items()}
        names: dict[str, str] = {}
        for ind in self.indicators:
            names[_norm(ind)] = ind
        for ind, extra in self.indicator_names:
            for n in extra:
                names[_norm(n)] = ind
        idx["names"] = names
        idx["aliases"] = {_norm(a.name): a for a in self.aliases}

    # --- lookups ---------------------------------------------------------

    def challenge(self, challenge_id: str) -> LearningChallenge:
        return self._idx["challenge"][challenge_id]

    def category(self, category_id: str) -> AnalysisCategory:
        return self._idx["category"][category_id]

    def codes_for(self, category_id: str) -> tuple[RegistrationCode, ...]:
        return self._idx["codes"].get(category_id, ())

    def categories_for(self, indicator: str) -> tuple[AnalysisCategory, ...]:
        """Categories with a direct edge from ``indicator``, ordered by id."""
        if indicator not in self.indicators:
            raise LookupError(f"unknown indicator {indicator!r}")
        return self._idx["by_indicator"].get(indicator, ())

    def challenges_for(self, indicators: Iterable[str]) -> tuple[LearningChallenge, ...]:
        ids = {c.challenge_id for ind in indicators for c in self.categories_for(ind)}
        return tuple(self.challenge(i) for i in sorted(ids))

    def resolve_alias(self, name: str) -> str:
        """Canonical indicator id for an id, display name or related name."""
        key = _norm(name)
        if key in self._idx["names"]:
            return self._idx["names"][key]
        if key in self._idx["aliases"]:
            return self._idx["aliases"][key].canonical
        raise LookupError(f"unknown indicator or alias name {name!r}")

    def is_alias(self, name: str) -> bool:
        return _norm(name) in self._idx["aliases"] and _norm(name) not in self._idx["names"]

    def alias_targets(self, name: str) -> tuple[str, ...]:
        entry = self._idx["aliases"].get(_norm(name))
        if entry is None:
            return (self.resolve_alias(name),)
        return entry.targets


def _norm(name: str) -> str:
    return re.sub(r"[\s_\-]+", " ", name.strip().casefold())


class _Doc:
    """Typed access to one section of a KB document with named failures."""

    def __init__(self, doc: Any):
        if not isinstance(doc, dict):
            raise KBError("knowledge base must be a JSON object", "$")
        self.doc = doc

    def section(self, key: str) -> list[dict]:
        value = self.doc.get(key)
        if not isinstance(value, list):
            raise KBError(f"section {key!r} must be a list", key)
        for i, item in enumerate(value):
            if not isinstance(item, dict):
                raise KBError(f"{key}[{i}] must be an object", f"{key}[{i}]")
        return value

    @staticmethod
    def text(item: dict, key: str, where: str) -> str:
        value = item.get(key)
        if not isinstance(value, str) or not value:
            raise KBError(f"{where}: {key!r} must be a non-empty string", where)
        return value


def load_kb(document: str | bytes | dict | Path) -> KnowledgeBase:
    """Parse and validate a KB document (JSON text, bytes, dict or file path)."""
    raw: bytes | None = None
    if isinstance(document, Path):
        try:
            raw = document.read_bytes()
        except OSError as exc:
            raise KBError(f"cannot read knowledge base {document}: {exc}", str(document)) from exc
    elif isinstance(document, (bytes, str)):
        raw = document.encode("utf-8") if isinstance(document, str) else document
    if raw is not None:
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise KBError(f"knowledge base is not valid JSON: {exc}", "$") from exc
    else:
        doc = document
    d = _Doc(doc)
    version = doc.get("kb_version")
    if not isinstance(version, str) or not version:
        raise KBError("'kb_version' must be a non-empty string", "kb_version")

    challenges: dict[str, LearningChallenge] = {}
    for i, item in enumerate(d.section("challenges")):
        where = f"challenges[{i}]"
        cid = d.text(item, "id", where)
        if cid in challenges:
            raise KBError(f"duplicate challenge {cid}", cid)
        challenges[cid] = LearningChallenge(cid, d.text(item, "title", where), str(item.get("description", "")))

    categories: dict[str, AnalysisCategory] = {}
    for i, item in enumerate(d.section("categories")):
        where = f"categories[{i}]"
        cid = d.text(item, "id", where)
        ch = item.get("challenge_id")
        if ch not in challenges:
            raise KBError(f"category {cid} has no known challenge ({ch!r})", cid)
        if cid in categories or cid in challenges:
            raise KBError(f"duplicate category id {cid}", cid)
        categories[cid] = AnalysisCategory(cid, ch, d.text(item, "label", where))
    for ch in challenges:
        if not any(c.challenge_id == ch for c in categories.values()):
            raise KBError(f"challenge {ch} has no analysis category", ch)

    codes: dict[str, RegistrationCode] = {}
    for i, item in enumerate(d.section("codes")):
        where = f"codes[{i}]"
        code = d.text(item, "code_id", where)
        cat = item.get("category_id")
        if cat not in categories:
            raise KBError(f"code {code} refers to unknown category {cat!r}", code)
        if not code.startswith(categories[cat].challenge_id + "."):
            raise KBError(f"code {code} does not match challenge {categories[cat].challenge_id} of {cat}", code)
        if code in codes:
            raise KBError(f"duplicate code {code}", code)
        codes[code] = RegistrationCode(code, cat, d.text(item, "label", where))
    for cat in categories:
        if not any(c.category_id == cat for c in codes.values()):
            raise KBError(f"category {cat} has no registration code", cat)

    indicators: list[str] = []
    names: list[tuple[str, tuple[str, ...]]] = []
    for i, item in enumerate(d.section("indicators")):
        where = f"indicators[{i}]"
        iid = d.text(item, "id", where)
        if iid not in INDICATORS:
            raise KBError(f"unknown indicator id {iid}", iid)
        if iid in indicators:
            raise KBError(f"duplicate indicator {iid}", iid)
        indicators.append(iid)
        extra = item.get("also_known_as", [])
        if not isinstance(extra, list) or not all(isinstance(x, str) for x in extra):
            raise KBError(f"{where}: 'also_known_as' must be a list of strings", iid)
        names.append((iid, tuple([str(item.get("name", DISPLAY_NAMES[iid]))] + extra)))

    layer = {**{c: "challenge" for c in challenges}, **{c: "category" for c in categories},
             **{c: "indicator" for c in indicators}}
    edges: list[MappingEdge] = []
    seen: set[tuple[str, str]] = set()
    for i, item in enumerate(d.section("edges")):
        src, dst = item.get("from"), item.get("to")
        label = f"edge {src}->{dst}"
        if layer.get(src) != "indicator" or layer.get(dst) != "category":
            if src not in layer:
                raise KBError(f"{label}: unknown indicator id {src!r}", str(src))
            if dst not in layer:
                raise KBError(f"{label}: unknown category {dst!r}", str(dst))
            raise KBError(f"{label}: layering violation ({layer[src]} -> {layer[dst]}); "
                          "edges must run indicator -> category", label)
        prov = item.get("provenance", "direct")
        if prov != "direct":
            raise KBError(f"{label}: stored edges must be 'direct'; related edges come from aliases", label)
        if (src, dst) in seen:
            raise KBError(f"duplicate {label}", label)
        seen.add((src, dst))
        edges.append(MappingEdge(src, dst, "direct"))
    for iid in indicators:
        if not any(e.indicator == iid for e in edges):
            raise KBError(f"indicator {iid} has no outgoing edge", iid)
    for cat in categories:
        if not any(e.category_id == cat for e in edges):
            raise KBError(f"category {cat} has no incoming edge", cat)

    aliases: list[AliasEntry] = []
    alias_names: set[str] = set()
    known_names = {_norm(n) for _, ns in names for n in ns} | {_norm(i) for i in indicators}
    for i, item in enumerate(d.section("aliases")):
        where = f"aliases[{i}]"
        name = d.text(item, "name", where)
        targets = item.get("targets")
        if not isinstance(targets, list) or not targets:
            raise KBError(f"alias {name!r} needs a non-empty 'targets' list", name)
        for t in targets:
            if t not in indicators:
                raise KBError(f"alias {name!r} points at unknown indicator id {t!r}", name)
        if _norm(name) in alias_names or _norm(name) in known_names:
            raise KBError(f"alias {name!r} is listed twice or shadows an indicator name", name)
        alias_names.add(_norm(name))
        aliases.append(AliasEntry(name, tuple(targets)))

    checksum = hashlib.sha256(raw).hexdigest() if raw is not None else ""
    return KnowledgeBase(
        kb_version=version,
        challenges=tuple(challenges.values()),
        categories=tuple(categories.values()),
        codes=tuple(codes.values()),
        indicators=tuple(indicators),
        aliases=tuple(aliases),
        edges=tuple(edges),
        indicator_names=tuple(names),
        checksum=checksum,
    )


def default_kb_bytes() -> bytes:
    return resources.files("oopdiag").joinpath("data").joinpath(DEFAULT_KB_RESOURCE).read_bytes()


@lru_cache(maxsize=1)
def default_kb() -> KnowledgeBase:
    """The shipped transcription of the conceptual map."""
    return load_kb(default_kb_bytes())
