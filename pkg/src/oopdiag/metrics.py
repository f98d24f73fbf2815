"""Per-method and per-class design metrics over a :class:`CodeModel`."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Iterable

from .model import CONTROL_KINDS, CodeModel, MethodDecl, StatementNode, TypeDecl


@dataclass(frozen=True)
class MethodMetrics:
    method_id: str
    type_id: str
    loc: int
    cyclo: int
    max_nesting: int
    n_params: int
    atfd_m: int
    laa: float
    max_chain_depth: int
    fan_in: int


@dataclass(frozen=True)
class ClassMetrics:
    type_id: str
    nom: int
    nof: int
    nopa: int
    noam: int
    woc: float
    wmc: int
    tcc: float
    atfd_c: int
    loc_c: int
    fanout: int
    fan_in: int
    n_static_methods: int
    n_instance_methods: int
    delegation_ratio: float


@dataclass(frozen=True)
class MetricsTable:
    methods: dict[str, MethodMetrics]
    classes: dict[str, ClassMetrics]

    def to_doc(self) -> dict:
        return {
            "classes": {k: asdict(v) for k, v in sorted(self.classes.items())},
            "methods": {k: asdict(v) for k, v in sorted(self.methods.items())},
        }


def cyclomatic(body: StatementNode | None) -> int:
    """1 + decision points: if, each case label, loops, catch, ``?:``, ``&&``, ``||``."""
    if body is None:
        return 0
    total = 1
    for node in body.walk():
        if node.kind in ("if", "for", "while", "do", "catch"):
            total += 1
        elif node.kind in ("else_chain", "case"):
            total += node.arms
        total += node.decisions
    return total


def max_nesting(body: StatementNode | None) -> int:
    if body is None:
        return 0
    best = 0
    stack = [(body, 0)]
    while stack:
        node, level = stack.pop()
        if node.kind in CONTROL_KINDS:
            level += 1
        best = max(best, level)
        stack.extend((c, level) for c in node.children)
    return best


def own_field_ids(model: CodeModel, t: TypeDecl) -> set[str]:
    """Fields declared by ``t`` or inherited from its internal ancestors."""
    ids = {f.field_id for f in t.fields}
    for a in model.ancestors(t.type_id):
        ids.update(f.field_id for f in model.type(a).fields)
    return ids


def tcc_methods(t: TypeDecl) -> list[MethodDecl]:
    return [
        m for m in t.methods
        if not (m.is_constructor or m.is_accessor or m.is_static or m.is_abstract)
    ]


def tight_class_cohesion(field_sets: Iterable[set[str]]) -> float:
    """Fraction of method pairs sharing at least one field; 1 with fewer than two methods."""
    sets = list(field_sets)
    if len(sets) < 2:
        return 1.0
    pairs = list(combinations(sets, 2))
    return sum(1 for a, b in pairs if a & b) / len(pairs)


def compute_metrics(model: CodeModel) -> MetricsTable:
    internal = {t.type_id for t in model.internal_types}
    own_fields = {t.type_id: own_field_ids(model, t) for t in model.internal_types}
    callers: dict[str, set[str]] = {}
    for t, m in model.methods():
        for c in m.calls:
            if c.callee_method_id and c.callee_type_id != t.type_id:
                callers.setdefault(c.callee_method_id, set()).add(t.type_id)

    methods: dict[str, MethodMetrics] = {}
    for t, m in model.methods():
        if m.is_abstract:
            continue
        fields = {a.field_id for a in m.accesses}
        own = fields & own_fields[t.type_id]
        foreign = fields - own
        methods[m.method_id] = MethodMetrics(
            method_id=m.method_id,
            type_id=t.type_id,
            loc=m.loc,
            cyclo=cyclomatic(m.body) if m.body is not None else 1,
            max_nesting=max_nesting(m.body),
            n_params=len(m.parameters),
            atfd_m=len(foreign),
            laa=len(own) / len(fields) if fields else 1.0,
            max_chain_depth=max((c.chain_depth for c in m.calls), default=0),
            fan_in=len(callers.get(m.method_id, ())),
        )

    incoming: dict[str, set[str]] = {}
    outgoing: dict[str, set[str]] = {}
    for e in model.dependency_edges:
        if e.from_type_id in internal and e.to_type_id in internal and e.from_type_id != e.to_type_id:
            outgoing.setdefault(e.from_type_id, set()).add(e.to_type_id)
            incoming.setdefault(e.to_type_id, set()).add(e.from_type_id)

    classes: dict[str, ClassMetrics] = {}
    for t in model.internal_types:
        ms = [m for m in t.methods if not m.is_constructor]
        public = [m for m in ms if m.visibility == "public"]
        cohesive = tcc_methods(t)
        mine = own_fields[t.type_id]
        foreign: set[str] = set()
        for m in t.methods:
            foreign.update(a.field_id for a in m.accesses if a.field_id not in mine)
        classes[t.type_id] = ClassMetrics(
            type_id=t.type_id,
            nom=len(ms),
            nof=len(t.fields),
            nopa=sum(1 for f in t.fields if f.visibility == "public" and not f.is_static),
            noam=sum(1 for m in ms if m.is_accessor),
            woc=sum(1 for m in public if not m.is_accessor) / len(public) if public else 0.0,
            wmc=sum(methods[m.method_id].cyclo for m in ms if m.method_id in methods),
            tcc=tight_class_cohesion({a.field_id for a in m.accesses if a.field_id in mine} for m in cohesive),
            atfd_c=len(foreign),
            loc_c=t.loc,
            fanout=len(outgoing.get(t.type_id, ())),
            fan_in=len(incoming.get(t.type_id, ())),
            n_static_methods=sum(1 for m in ms if m.is_static),
            n_instance_methods=sum(1 for m in ms if not m.is_static),
            delegation_ratio=sum(1 for m in ms if m.delegates_to) / len(ms) if ms else 0.0,
        )
    return MetricsTable(methods, classes)
