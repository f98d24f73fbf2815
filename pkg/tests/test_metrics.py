from __future__ import annotations

from hypothesis import HealthCheck, given, settings

from conftest import CASES
from javagen import java_classes
from oopdiag.builder import model_from_sources
from oopdiag.metrics import compute_metrics, tight_class_cohesion
from oracles import pair_cohesion


def metrics_for(src: str):
    model, diags = model_from_sources({"X.java": src.encode()}, "m")
    assert diags == []
    return compute_metrics(model)


def test_empty_class():
    c = metrics_for("class E {}").classes["E"]
    assert (c.nom, c.nof, c.wmc, c.tcc, c.woc, c.atfd_c) == (0, 0, 0, 1.0, 0.0, 0)


def test_if_else_has_cyclomatic_two():
    mt = metrics_for("class A { int f(int x) { if (x > 0) { return 1; } else { return 2; } } }")
    assert mt.methods["A.f(int)"].cyclo == 2


def test_tcc_one_third():
    mt = metrics_for("""
        class T {
            private int a; private int b; private int c;
            void m1() { a++; }
            void m2() { a++; b++; }
            void m3() { c++; }
        }
    """)
    assert mt.classes["T"].tcc == 1 / 3


def test_atfd_and_laa_count_foreign_fields():
    mt = metrics_for("""
        class P { int x; int y; int getZ() { return 0; } }
        class U { private int own; int f(P p) { return p.x + p.y + own; } }
    """)
    m = mt.methods["U.f(P)"]
    assert (m.atfd_m, m.laa) == (2, 1 / 3)


def test_tcc_helper_matches_pairwise_count():
    sets = [{"a"}, {"a", "b"}, {"c"}, set()]
    assert tight_class_cohesion(sets) == pair_cohesion(sets) == 1 / 6


@given(java_classes())
@settings(max_examples=1000, deadline=None, suppress_health_check=list(HealthCheck))
def test_tcc_and_cyclo_match_generator_tallies(cls):
    model, diags = model_from_sources({"Gen.java": cls.source.encode()}, "g")
    assert diags == []
    mt = compute_metrics(model)
    by_name = {mid.split(".")[1].split("(")[0]: m for mid, m in mt.methods.items()}
    for gm in cls.methods:
        assert by_name[gm.name].cyclo == gm.decisions + 1
    expected = pair_cohesion([gm.fields for gm in cls.methods if gm.counts_for_tcc])
    assert mt.classes["Gen"].tcc == expected
    CASES["metrics"] += 1
