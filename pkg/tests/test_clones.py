from __future__ import annotations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import CASES
from oopdiag.builder import model_from_sources
from oopdiag.detectors import detect_duplicate_code
from oopdiag.detectors.clones import clone_pairs
from oracles import brute_clone_pairs

TOKENS = ["ID", "LIT", "(", ")", "{", "}", ";", "+", "=", "return", "if"]


@st.composite
def clone_inputs(draw):
    """A few token streams of at most 500 tokens in total, often sharing planted fragments."""
    alphabet = draw(st.sampled_from([TOKENS[:2], TOKENS[:4], TOKENS]))
    tok = st.sampled_from(alphabet)
    seeds = draw(st.lists(st.lists(tok, min_size=1, max_size=60), min_size=1, max_size=3))
    streams = []
    for _ in range(draw(st.integers(0, 5))):
        parts = draw(st.lists(st.one_of(st.sampled_from(seeds), st.lists(tok, max_size=20)), max_size=4))
        streams.append([t for p in parts for t in p])
    while sum(map(len, streams)) > 500:
        streams[max(range(len(streams)), key=lambda i: len(streams[i]))].pop()
    return streams, draw(st.integers(1, 40))


@given(clone_inputs())
@settings(max_examples=1200, deadline=None, suppress_health_check=list(HealthCheck))
def test_clone_pairs_match_brute_force(case):
    streams, min_tokens = case
    assert clone_pairs(streams, min_tokens) == brute_clone_pairs(streams, min_tokens)
    CASES["clones"] += 1


def test_clone_pairs_rejects_nonpositive_window():
    import pytest

    with pytest.raises(ValueError):
        clone_pairs([["ID"]], 0)


def test_renamed_copy_is_a_type2_clone():
    body = "int total = 0; for (int i = 0; i < xs.length; i++) { if (xs[i] > limit) { total += xs[i] * 2; } } return total;"
    renamed = body.replace("total", "acc").replace("xs", "ys").replace("limit", "cap").replace("2", "3")
    src = f"class C {{ int a(int[] xs, int limit) {{ {body} }} int b(int[] ys, int cap) {{ {renamed} }} }}"
    model, _ = model_from_sources({"C.java": src.encode()}, "c")
    (issue,) = detect_duplicate_code(model)
    assert issue.members == ("C.a(int[],int)", "C.b(int[],int)")
