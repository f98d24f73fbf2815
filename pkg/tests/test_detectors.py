from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import CASES, CLEAN, COVERAGE, SAMPLES, analyze_dir, corpus_dirs
from oopdiag.detectors import INDICATORS, ThresholdConfig, run_detectors, stricter_direction, thresholds_for
from oopdiag.detectors.catalog import severity_for, Evidence
from oopdiag.detectors.config import is_ratio, load_thresholds
from oopdiag.metrics import compute_metrics

EXPECTED = {
    "S1": {"DIVERGENT_CHANGE", "INAPPROPRIATE_INTIMACY"},
    "S2": {"LARGE_CLASS", "DATA_CLASS"},
    "S3": {"LONG_PARAMETER_LIST", "DUPLICATE_CODE"},
    "S4": {"SWITCH_STATEMENT"},
    "worked": {"LONG_METHOD", "SWITCH_STATEMENT"},
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_sample_fixtures_fire_exactly_their_indicators(name):
    res = analyze_dir(SAMPLES / name)
    assert {i.indicator for i in res.issues} == EXPECTED[name]


@pytest.mark.parametrize("path", sorted(p for p in CLEAN.iterdir() if p.is_dir()), ids=lambda p: p.name)
def test_clean_programs_have_no_findings(path):
    res = analyze_dir(path)
    assert not res.diagnostics
    assert not res.issues, [(i.indicator, i.subject) for i in res.issues]


@pytest.mark.parametrize("indicator", INDICATORS)
def test_coverage_fixture_fires_its_indicator(indicator):
    res = analyze_dir(COVERAGE / indicator.lower())
    assert indicator in {i.indicator for i in res.issues}


def _subject_span(model, subject):
    t = model.type(subject)
    if t is not None:
        return t.span
    for t, m in model.methods():
        if m.method_id == subject:
            return m.span
    raise AssertionError(f"unknown subject {subject}")


@pytest.mark.parametrize("path", corpus_dirs(), ids=lambda p: f"{p.parent.name}/{p.name}")
def test_issue_spans_fall_inside_their_subject(path):
    res = analyze_dir(path)
    for issue in res.issues:
        assert _subject_span(res.model, issue.subject).contains(issue.span), issue
        assert issue.evidence and issue.explanation


def test_only_and_skip_select_detectors():
    res = analyze_dir(SAMPLES / "S2")
    only = run_detectors(res.model, res.metrics, only=["DATA_CLASS"])
    assert {i.indicator for i in only} == {"DATA_CLASS"}
    skipped = run_detectors(res.model, res.metrics, skip=["DATA_CLASS"])
    assert {i.indicator for i in skipped} == {"LARGE_CLASS"}
    with pytest.raises(ValueError):
        run_detectors(res.model, res.metrics, only=["NOPE"])


def test_severity_scales_with_margin():
    assert severity_for([Evidence("x", 10, 10, ">=")]) == "info"
    assert severity_for([Evidence("x", 13, 10, ">=")]) == "warn"
    assert severity_for([Evidence("x", 20, 10, ">="), Evidence("y", 0.1, 0.5, "<")]) == "strong"


def test_threshold_config_validation(tmp_path):
    with pytest.raises(ValueError):
        ThresholdConfig(tcc_low=1.5)
    with pytest.raises(ValueError):
        ThresholdConfig(wmc_high=0)
    with pytest.raises(ValueError, match="unknown"):
        ThresholdConfig().with_overrides({"bogus": 1})
    f = tmp_path / "t.json"
    f.write_text('{"params_high": 7}')
    assert load_thresholds(f).params_high == 7


# --- monotonicity ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _corpus():
    return [(r.model, r.metrics) for r in (analyze_dir(p) for p in corpus_dirs())]


def _key(issue):
    return issue.indicator, issue.subject, issue.span, issue.members


def _perturbed(draw, name, base_default):
    value = base_default * draw(st.floats(0.25, 3.0))
    if is_ratio(name):
        value = min(value, 1.0)
    return max(value, 1e-3)


@st.composite
def threshold_pairs(draw, indicator):
    """A random config and a second one moved in the stricter direction on every tunable of ``indicator``."""
    default = ThresholdConfig()
    base, strict = {}, {}
    for name in thresholds_for(indicator):
        b = _perturbed(draw, name, getattr(default, name))
        step = draw(st.floats(0, 2.0))
        s = b * (1 + step) if stricter_direction(name) == "up" else b / (1 + step)
        if is_ratio(name):
            s = min(s, 1.0)
        base[name], strict[name] = b, max(s, 1e-3)
    return default.with_overrides(base), default.with_overrides(strict)


TUNABLE = [i for i in INDICATORS if thresholds_for(i)]


@pytest.mark.parametrize("indicator", TUNABLE)
def test_stricter_thresholds_never_add_findings(indicator):
    corpus = _corpus()
    cases = []

    @given(st.integers(0, len(corpus) - 1), threshold_pairs(indicator))
    @settings(max_examples=200, deadline=None, suppress_health_check=list(HealthCheck), database=None)
    def check(idx, configs):
        base, strict = configs
        model, metrics = corpus[idx]
        loose = {_key(i) for i in run_detectors(model, metrics, base, only=[indicator])}
        tight = {_key(i) for i in run_detectors(model, metrics, strict, only=[indicator])}
        assert tight <= loose
        cases.append(len(loose) - len(tight))

    check()
    assert len(cases) >= 200
    CASES[f"monotone:{indicator}"] = len(cases)


def test_every_threshold_has_a_direction_and_an_owner():
    for name in ThresholdConfig().to_doc():
        assert stricter_direction(name) in ("up", "down")
        assert any(name in thresholds_for(i) for i in INDICATORS)
