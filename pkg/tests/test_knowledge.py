from __future__ import annotations

import csv
import hashlib
import json

import pytest

from conftest import FIXTURES
from oopdiag.detectors import INDICATORS
from oopdiag.knowledge import KBError, default_kb_bytes, load_kb

KB_SHA256 = "481b82af5a98995adabce1b10d9d9156b7ef1af0999da38e353483a50073e665"
GOLDEN_SHA256 = "4441c5a0221d461e533b611c1d55922fed78593a49eb45fff99f553428151a46"

# Every "Related" mention in the indicator catalog, as (name, indicator it is listed under).
RELATED = [
    ("Insufficient modularization", "LARGE_CLASS"), ("Blob", "LARGE_CLASS"), ("Brain class", "LARGE_CLASS"),
    ("God Class", "LARGE_CLASS"), ("Single Responsibility Principle", "LARGE_CLASS"),
    ("Broken modularization", "LONG_METHOD"), ("Single Responsibility Principle", "LONG_METHOD"),
    ("Rebellious hierarchy", "REFUSED_BEQUEST"), ("Liskov Substitution Principle", "REFUSED_BEQUEST"),
    ("Multifaceted abstraction", "DIVERGENT_CHANGE"), ("Single Responsibility Principle", "DIVERGENT_CHANGE"),
    ("Duplicate abstraction", "DUPLICATE_CODE"), ("Unfactored hierarchy", "DUPLICATE_CODE"),
    ("Cut and paste programming", "DUPLICATE_CODE"),
    ("Dependency cycles", "CYCLIC_DEPENDENT_MODULARIZATION"),
    ("Speculative hierarchy", "SPECULATIVE_GENERALITY"), ("Open/Closed Principle", "SPECULATIVE_GENERALITY"),
    ("Unnecessary abstraction", "LAZY_CLASS"),
    ("Complicated Boolean Expression", "SWITCH_STATEMENT"), ("Conditional Complexity", "SWITCH_STATEMENT"),
    ("Unexploited encapsulation", "SWITCH_STATEMENT"), ("Missing hierarchy", "SWITCH_STATEMENT"),
    ("Repeated Switches", "SWITCH_STATEMENT"), ("Open/Closed Principle", "SWITCH_STATEMENT"),
    ("Missing abstraction", "PRIMITIVE_OBSESSION"),
    ("Multifaceted abstraction", "SWISS_ARMY_KNIFE"),
]


def _doc():
    return json.loads(default_kb_bytes())


def test_counts(kb):
    assert len(kb.challenges) == 6
    assert [c.id for c in kb.challenges] == ["D02", "D03", "D04", "D05", "D06", "D07"]
    assert len(kb.categories) == 22
    assert len(kb.indicators) == 27 and set(kb.indicators) == set(INDICATORS)
    assert 35 <= len(kb.codes) <= 45


def test_shipped_bytes_are_pinned(kb):
    assert hashlib.sha256(default_kb_bytes()).hexdigest() == KB_SHA256 == kb.checksum


def test_edges_match_golden_transcription(kb):
    path = FIXTURES / "kb_edges_golden.tsv"
    assert hashlib.sha256(path.read_bytes()).hexdigest() == GOLDEN_SHA256
    with path.open(newline="") as fh:
        rows = list(csv.DictReader(fh, delimiter="\t"))
    golden = {(r["challenge"], r["category"], r["indicator"]) for r in rows}
    assert len(golden) == len(rows) == 73
    shipped = {(kb.category(e.category_id).challenge_id, kb.category(e.category_id).label, e.indicator) for e in kb.edges}
    assert shipped == golden


@pytest.mark.parametrize("name, indicator", RELATED)
def test_related_names_resolve(kb, name, indicator):
    assert kb.is_alias(name)
    assert indicator in kb.alias_targets(name)
    assert kb.resolve_alias(name) == kb.alias_targets(name)[0]
    assert kb.resolve_alias(name.upper().replace(" ", "  ")) == kb.resolve_alias(name)


def test_alias_names_and_counts(kb):
    assert len({n for n, _ in RELATED}) == len(kb.aliases) == 22
    assert kb.resolve_alias("Interface Segregation Principle") == "ISP_VIOLATION"
    assert kb.resolve_alias("large class") == "LARGE_CLASS"
    with pytest.raises(LookupError):
        kb.resolve_alias("Spaghetti Monster")


def test_layers_form_a_dag(kb):
    for e in kb.edges:
        assert e.indicator in kb.indicators
        assert kb.category(e.category_id).challenge_id in {c.id for c in kb.challenges}
    for ind in kb.indicators:
        assert kb.categories_for(ind)
    targeted = {e.category_id for e in kb.edges}
    assert targeted == {c.id for c in kb.categories}


def test_worked_example_path(kb):
    assert {c.id for c in kb.challenges_for(["LONG_METHOD", "SWITCH_STATEMENT"])} == {"D03", "D04", "D06"}
    assert "Polymorphism is too abstract" in {c.label for c in kb.categories_for("SWITCH_STATEMENT")}


@pytest.mark.parametrize("mutate, entry, message", [
    (lambda d: d["edges"].append({"from": "D02-C1", "to": "LARGE_CLASS"}), "edge D02-C1->LARGE_CLASS", "layering"),
    (lambda d: d["edges"].append({"from": "LARGE_CLASS", "to": "D03"}), "edge LARGE_CLASS->D03", "layering"),
    (lambda d: d["edges"].append(dict(d["edges"][0])), "edge SPECULATIVE_GENERALITY->D02-C1", "duplicate"),
    (lambda d: d["aliases"].append({"name": "Blob", "targets": ["NOPE"]}), "Blob", "unknown indicator"),
    (lambda d: d["codes"].append({"code_id": "D03.99", "category_id": "D02-C1", "label": "x"}), "D03.99", "does not match"),
    (lambda d: d.update(edges=[e for e in d["edges"] if e["from"] != "LAZY_CLASS"]), "LAZY_CLASS", "no outgoing edge"),
])
def test_malformed_documents_name_the_entry(mutate, entry, message):
    doc = _doc()
    mutate(doc)
    with pytest.raises(KBError, match=message) as exc:
        load_kb(doc)
    assert exc.value.entry == entry


def test_challenge_without_category_is_rejected():
    doc = _doc()
    gone = {c["id"] for c in doc["categories"] if c["challenge_id"] == "D06"}
    doc["categories"] = [c for c in doc["categories"] if c["id"] not in gone]
    doc["codes"] = [c for c in doc["codes"] if c["category_id"] not in gone]
    doc["edges"] = [e for e in doc["edges"] if e["to"] not in gone]
    with pytest.raises(KBError, match="challenge D06 has no analysis category"):
        load_kb(doc)


def test_loads_from_bytes_text_and_path(tmp_path):
    raw = default_kb_bytes()
    p = tmp_path / "kb.json"
    p.write_bytes(raw)
    assert load_kb(raw) == load_kb(raw.decode()) == load_kb(p)
    with pytest.raises(KBError):
        load_kb(b"[1, 2")
