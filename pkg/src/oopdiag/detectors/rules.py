"""Threshold predicates for the indicator catalog."""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from itertools import combinations
from typing import Callable, Iterable, Iterator

from ..metrics import MetricsTable, own_field_ids
from ..model import CodeModel, MethodDecl, Span, StatementNode, TypeDecl
from .catalog import INDICATORS, Evidence, IssueInstance, make_issue
from .clones import clone_pairs
from .config import ThresholdConfig
from .cycles import cyclic_components

Rule = Callable[["_Ctx"], Iterator[IssueInstance]]

_FACTORY_NAME = re.compile(r"^(create|make|build|new[A-Z0-9_]|of$|from[A-Z0-9_]|from$|valueOf$|getInstance$)")
_OBJECT_METHODS = frozenset({"toString", "equals", "hashCode", "compareTo", "main", "clone"})
_CAMEL = re.compile(r"^[a-z]+")


class _Ctx:
    def __init__(self, model: CodeModel, metrics: MetricsTable, config: ThresholdConfig):
        self.model = model
        self.metrics = metrics
        self.cfg = config
        self.classes = [t for t in model.internal_types if t.kind in ("class", "abstract_class", "enum")]
        self.own_fields = {t.type_id: own_field_ids(model, t) for t in model.internal_types}
        self._ancestors: dict[str, list[str]] = {}

    def ancestors(self, type_id: str) -> list[str]:
        if type_id not in self._ancestors:
            self._ancestors[type_id] = self.model.ancestors(type_id)
        return self._ancestors[type_id]

    def overrides(self, t: TypeDecl, m: MethodDecl) -> MethodDecl | None:
        """The ancestor method ``m`` overrides, if any internal one exists."""
        if m.is_constructor or m.is_static:
            return None
        for a in self.ancestors(t.type_id):
            for pm in self.model.type(a).methods:
                if pm.name == m.name and pm.signature == m.signature and not pm.is_static:
                    return pm
        return None

    def has_external_super(self, t: TypeDecl) -> bool:
        for tid in [t.type_id] + self.ancestors(t.type_id):
            if any(not self.model.is_internal(s) for s in self.model.type(tid).supertypes):
                return True
        return False


def _span(t: TypeDecl) -> Span:
    return t.span or Span("", 1, 1)


def _is_trivial_body(body: StatementNode | None) -> bool:
    """Empty block, or a block whose only statement throws."""
    if body is None:
        return False
    kids = body.children
    return not kids or (len(kids) == 1 and kids[0].kind == "throw")


def _clusters(methods: list[MethodDecl], fields: set[str]) -> list[list[MethodDecl]]:
    """Union-find of methods that touch a common field; field-less methods stay out."""
    parent = list(range(len(methods)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    touched = [{a.field_id for a in m.accesses if a.field_id in fields} for m in methods]
    owner: dict[str, int] = {}
    for i, fs in enumerate(touched):
        for f in sorted(fs):
            if f in owner:
                parent[find(i)] = find(owner[f])
            else:
                owner[f] = i
    groups: dict[int, list[MethodDecl]] = defaultdict(list)
    for i, m in enumerate(methods):
        if touched[i]:
            groups[find(i)].append(m)
    return sorted(groups.values(), key=lambda g: g[0].method_id)


# --- class-level size and responsibility ------------------------------------


def large_class(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t in ctx.classes:
        cm = ctx.metrics.classes[t.type_id]
        if cm.wmc >= c.wmc_high and cm.tcc < c.tcc_low and cm.atfd_c > c.atfd_few:
            ev = [Evidence("wmc", cm.wmc, c.wmc_high, ">="), Evidence("tcc", round(cm.tcc, 6), c.tcc_low, "<"),
                  Evidence("atfd_c", cm.atfd_c, c.atfd_few, ">")]
            why = f"{t.name} is complex (WMC {cm.wmc}), weakly cohesive and reaches into other classes' data"
        elif cm.loc_c >= c.class_loc_high and cm.nom >= c.nom_high:
            ev = [Evidence("loc_c", cm.loc_c, c.class_loc_high, ">="), Evidence("nom", cm.nom, c.nom_high, ">=")]
            why = f"{t.name} has {cm.nom} methods over {cm.loc_c} lines"
        else:
            continue
        yield make_issue("LARGE_CLASS", t.type_id, _span(t), ev, why)


def data_class(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t in ctx.classes:
        if t.kind == "enum":
            continue
        cm = ctx.metrics.classes[t.type_id]
        exposed = cm.nopa + cm.noam
        if cm.woc < c.woc_low and exposed > c.data_few and cm.wmc <= cm.nom + c.data_wmc_slack:
            ev = [Evidence("woc", round(cm.woc, 6), c.woc_low, "<"), Evidence("nopa+noam", exposed, c.data_few, ">"),
                  Evidence("wmc", cm.wmc, cm.nom + c.data_wmc_slack, "<=")]
            yield make_issue("DATA_CLASS", t.type_id, _span(t), ev,
                             f"{t.name} exposes {exposed} fields or accessors and has almost no behaviour")


def functional_decomposition(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    top = [t for t in ctx.model.internal_types if "." not in t.type_id]
    total = sum(t.loc for t in top)
    for t in ctx.classes:
        if t.kind != "class":
            continue
        ms = [m for m in t.methods if not m.is_constructor]
        instance_fields = [f for f in t.fields if not f.is_static]
        entry_only = len(ms) == 1 and ms[0].is_main
        if ms and not instance_fields and all(m.is_static for m in ms) and not entry_only:
            yield make_issue("FUNCTIONAL_DECOMPOSITION", t.type_id, _span(t),
                             [Evidence("static_methods", len(ms), 1, ">=")],
                             f"{t.name} is a bag of {len(ms)} static procedures with no object state")
            continue
        if any(m.is_main for m in ms) and total and "." not in t.type_id:
            # procedural code parked in main and its static helpers
            static_loc = sum(m.span.end_line - m.span.start_line + 1 for m in ms if m.is_static)
            share = static_loc / total
            if share >= c.main_share:
                yield make_issue("FUNCTIONAL_DECOMPOSITION", t.type_id, _span(t),
                                 [Evidence("main_loc_share", round(share, 6), c.main_share, ">=")],
                                 f"main and its static helpers hold {share:.0%} of the program")


def lazy_class(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t in ctx.classes:
        if t.kind != "class" or any(m.is_main for m in t.methods):
            continue
        cm = ctx.metrics.classes[t.type_id]
        if cm.nom <= c.lazy_nom and cm.loc_c < c.lazy_loc and cm.fan_in == 0:
            ev = [Evidence("nom", cm.nom, c.lazy_nom, "<="), Evidence("loc_c", cm.loc_c, c.lazy_loc, "<"),
                  Evidence("fan_in", 0, 1, "<")]
            yield make_issue("LAZY_CLASS", t.type_id, _span(t), ev,
                             f"{t.name} is tiny and no other class uses it")


def swiss_army_knife(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t in ctx.classes:
        cm = ctx.metrics.classes[t.type_id]
        if cm.nom < c.nom_high:
            continue
        ms = [m for m in t.methods if not (m.is_constructor or m.is_static or m.is_abstract)]
        groups = _clusters(ms, ctx.own_fields[t.type_id])
        if len(groups) >= c.swiss_groups:
            yield make_issue("SWISS_ARMY_KNIFE", t.type_id, _span(t),
                             [Evidence("nom", cm.nom, c.nom_high, ">="), Evidence("field_groups", len(groups), c.swiss_groups, ">=")],
                             f"{t.name} offers {cm.nom} methods serving {len(groups)} unrelated concerns")


def divergent_change(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t in ctx.classes:
        ms = [m for m in t.methods if not (m.is_constructor or m.is_static or m.is_abstract or m.is_accessor)]
        groups = [g for g in _clusters(ms, ctx.own_fields[t.type_id]) if len(g) >= c.cluster_min]
        if len(groups) >= c.divergent_clusters:
            smallest = min(len(g) for g in groups)
            yield make_issue("DIVERGENT_CHANGE", t.type_id, _span(t),
                             [Evidence("clusters", len(groups), c.divergent_clusters, ">="),
                              Evidence("min_cluster_size", smallest, c.cluster_min, ">=")],
                             f"{t.name} splits into {len(groups)} method groups working on disjoint fields (structural proxy)")


def deficient_encapsulation(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t in ctx.classes:
        cm = ctx.metrics.classes[t.type_id]
        if cm.nopa >= c.nopa_min:
            first = next(f for f in t.fields if f.visibility == "public" and not f.is_static)
            yield make_issue("DEFICIENT_ENCAPSULATION", t.type_id, first.span,
                             [Evidence("nopa", cm.nopa, c.nopa_min, ">=")],
                             f"{t.name} exposes {cm.nopa} public mutable field(s), e.g. {first.name}")


def primitive_obsession(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t, m in ctx.model.methods():
        n = sum(1 for p in m.parameters if p.is_primitive)
        if n >= c.prim_params:
            yield make_issue("PRIMITIVE_OBSESSION", m.method_id, m.span,
                             [Evidence("primitive_params", n, c.prim_params, ">=")],
                             f"{m.name} takes {n} primitive parameters instead of a small value object")
    for t in ctx.classes:
        fs = [f for f in t.fields if not f.is_static]
        prims = [f for f in fs if f.is_primitive]
        if len(fs) < c.prim_fields_min or not fs:
            continue
        share = len(prims) / len(fs)
        prefixes = Counter(m.group() for f in prims if (m := _CAMEL.match(f.name)) and m.group() != f.name)
        group = max(prefixes.values(), default=0)
        if share >= c.prim_field_share and group >= 2:
            yield make_issue("PRIMITIVE_OBSESSION", t.type_id, _span(t),
                             [Evidence("primitive_field_share", round(share, 6), c.prim_field_share, ">="),
                              Evidence("fields", len(fs), c.prim_fields_min, ">=")],
                             f"{t.name} stores {len(prims)} primitive fields whose names hint at a missing type")


# --- method-level ------------------------------------------------------------


def long_method(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t, m in ctx.model.methods():
        mm = ctx.metrics.methods.get(m.method_id)
        if mm is None:
            continue
        ev = []
        if mm.loc >= c.method_loc_high:
            ev.append(Evidence("loc", mm.loc, c.method_loc_high, ">="))
        if mm.cyclo >= c.cyclo_high:
            ev.append(Evidence("cyclo", mm.cyclo, c.cyclo_high, ">="))
        if ev:
            yield make_issue("LONG_METHOD", m.method_id, m.span, ev,
                             f"{m.name} spans {mm.loc} lines with cyclomatic complexity {mm.cyclo}")


def feature_envy(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t, m in ctx.model.methods():
        mm = ctx.metrics.methods.get(m.method_id)
        if mm is None or m.is_accessor:
            continue
        if mm.atfd_m > c.atfd_few and mm.laa < c.laa_low:
            yield make_issue("FEATURE_ENVY", m.method_id, m.span,
                             [Evidence("atfd_m", mm.atfd_m, c.atfd_few, ">"), Evidence("laa", round(mm.laa, 6), c.laa_low, "<")],
                             f"{m.name} works mostly on {mm.atfd_m} attributes of other classes")


def spaghetti_code(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    in_hierarchy = set()
    for t in ctx.model.internal_types:
        if t.supertypes:
            in_hierarchy.add(t.type_id)
            in_hierarchy.update(s for s in t.supertypes)
    for t, m in ctx.model.methods():
        mm = ctx.metrics.methods.get(m.method_id)
        if mm is None or t.type_id in in_hierarchy:
            continue
        if mm.max_nesting >= c.nesting_high and mm.cyclo >= c.cyclo_high:
            yield make_issue("SPAGHETTI_CODE", m.method_id, m.span,
                             [Evidence("max_nesting", mm.max_nesting, c.nesting_high, ">="), Evidence("cyclo", mm.cyclo, c.cyclo_high, ">=")],
                             f"{m.name} nests control flow {mm.max_nesting} levels deep in a class outside any hierarchy")


def long_parameter_list(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t, m in ctx.model.methods():
        n = len(m.parameters)
        if n >= c.params_high:
            yield make_issue("LONG_PARAMETER_LIST", m.method_id, m.span,
                             [Evidence("n_params", n, c.params_high, ">=")], f"{m.name} takes {n} parameters")


def message_chains(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t, m in ctx.model.methods():
        groups: dict[int, list] = defaultdict(list)
        for call in m.calls:
            groups[call.group].append(call)
        for g in sorted(groups):
            calls = groups[g]
            deepest = max(calls, key=lambda x: x.chain_depth)
            if deepest.chain_depth < c.chain_min:
                continue
            if not any(ctx.model.is_internal(x.callee_type_id) and x.callee_method_id for x in calls):
                continue
            names = ".".join(x.name + "()" for x in sorted(calls, key=lambda x: x.chain_depth))
            yield make_issue("MESSAGE_CHAINS", m.method_id, deepest.site,
                             [Evidence("chain_depth", deepest.chain_depth, c.chain_min, ">=")],
                             f"{m.name} navigates a chain {names}")


def temporary_field(ctx: _Ctx) -> Iterator[IssueInstance]:
    for t in ctx.classes:
        users: dict[str, list[MethodDecl]] = defaultdict(list)
        for m in t.methods:
            if m.is_constructor:
                continue
            for fid in dict.fromkeys(a.field_id for a in m.accesses):
                users[fid].append(m)
        ctor_touched = {a.field_id for m in t.methods if m.is_constructor for a in m.accesses}
        for f in t.fields:
            if f.is_static or f.is_final or f.field_id in ctor_touched:
                continue
            ms = users.get(f.field_id, [])
            if len(ms) != 1:
                continue
            m = ms[0]
            acc = [a for a in m.accesses if a.field_id == f.field_id]
            if any(a.null_check for a in acc) or any(a.write and a.conditional for a in acc):
                yield make_issue("TEMPORARY_FIELD", t.type_id, f.span,
                                 [Evidence("using_methods", 1, 1, "<=")],
                                 f"field {f.name} only matters inside {m.name}, which guards or sets it conditionally")


def middle_man(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t in ctx.classes:
        cm = ctx.metrics.classes[t.type_id]
        if cm.delegation_ratio >= c.delegate_share and cm.nom >= c.middle_nom:
            yield make_issue("MIDDLE_MAN", t.type_id, _span(t),
                             [Evidence("delegation_ratio", round(cm.delegation_ratio, 6), c.delegate_share, ">="),
                              Evidence("nom", cm.nom, c.middle_nom, ">=")],
                             f"{t.name} mostly forwards calls to another object")


def speculative_generality(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t in ctx.model.internal_types:
        if not t.is_abstract_type:
            continue
        n = len(ctx.model.subtypes(t.type_id))
        if n <= c.speculative_implementers:
            yield make_issue("SPECULATIVE_GENERALITY", t.type_id, _span(t),
                             [Evidence("implementers", n, c.speculative_implementers, "<=")],
                             f"abstraction {t.name} has {n} implementer(s) in the program")
    for t, m in ctx.model.methods():
        if m.is_abstract or m.body is None or m.is_main or not m.parameters:
            continue
        if ctx.overrides(t, m) is not None or (m.visibility == "public" and not m.is_static and ctx.has_external_super(t)):
            continue
        if t.kind == "interface":
            continue
        unused = [p.name for p in m.parameters if p.name not in m.used_params]
        if unused:
            yield make_issue("SPECULATIVE_GENERALITY", m.method_id, m.span,
                             [Evidence("unused_params", len(unused), 1, ">=")],
                             f"{m.name} never uses parameter(s) {', '.join(unused)}")


def switch_statement(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    found: list[tuple[TypeDecl, MethodDecl, StatementNode]] = []
    for t, m in ctx.model.methods():
        if m.body is None:
            continue
        for node in m.body.walk():
            if node.kind in ("switch", "else_chain") and node.discriminant and node.tag_labels >= c.cases_min:
                found.append((t, m, node))
    methods_by_disc: dict[str, set[str]] = defaultdict(set)
    for t, m, node in found:
        methods_by_disc[node.discriminant].add(m.method_id)
    for t, m, node in found:
        repeated = len(methods_by_disc[node.discriminant]) >= 2
        what = node.discriminant.split(":", 1)[1]
        yield make_issue("SWITCH_STATEMENT", m.method_id, node.span,
                         [Evidence("tag_branches", node.tag_labels, c.cases_min, ">=")],
                         f"{m.name} branches on type tag {what} across {node.tag_labels} cases"
                         + (" (the same tag is switched on in other methods)" if repeated else ""),
                         bump=1 if repeated else 0)


def data_clump(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    sigs: list[tuple[MethodDecl, frozenset]] = []
    for t, m in ctx.model.methods():
        if m.is_constructor or len(m.parameters) < c.clump_size:
            continue
        sigs.append((m, frozenset((p.name, p.declared_type_id) for p in m.parameters)))
    sigs.sort(key=lambda x: x[0].method_id)
    groups: set[frozenset] = set()
    for (m1, s1), (m2, s2) in combinations(sigs, 2):
        if m1.name == m2.name:
            continue
        common = s1 & s2
        if len(common) >= c.clump_size:
            groups.add(common)
    for g in sorted(groups, key=lambda g: sorted(g)):
        holders = [m for m, s in sigs if g <= s]
        if len({m.name for m in holders}) >= c.clump_occurrences:
            m = holders[0]
            names = ", ".join(sorted(n for n, _ in g))
            yield make_issue("DATA_CLUMP", m.method_id, m.span,
                             [Evidence("clump_size", len(g), c.clump_size, ">="),
                              Evidence("occurrences", len(holders), c.clump_occurrences, ">=")],
                             f"parameters ({names}) travel together through {len(holders)} signatures",
                             members=tuple(h.method_id for h in holders))
    field_sets = []
    for t in ctx.classes:
        fs = frozenset((f.name, f.declared_type_id) for f in t.fields if not f.is_static)
        if len(fs) >= c.clump_size:
            field_sets.append((t, fs))
    fgroups: set[frozenset] = set()
    for (t1, s1), (t2, s2) in combinations(field_sets, 2):
        common = s1 & s2
        if len(common) >= c.clump_size:
            fgroups.add(common)
    for g in sorted(fgroups, key=lambda g: sorted(g)):
        holders = [t for t, s in field_sets if g <= s]
        if len(holders) >= c.clump_occurrences:
            t = holders[0]
            names = ", ".join(sorted(n for n, _ in g))
            yield make_issue("DATA_CLUMP", t.type_id, _span(t),
                             [Evidence("clump_size", len(g), c.clump_size, ">="),
                              Evidence("occurrences", len(holders), c.clump_occurrences, ">=")],
                             f"fields ({names}) recur together in {len(holders)} classes",
                             members=tuple(h.type_id for h in holders))


# --- relationships -------------------------------------------------------------


def inappropriate_intimacy(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    fields = {f.field_id: f for t in ctx.model.internal_types for f in t.fields}
    counts: Counter = Counter()
    for t, m in ctx.model.methods():
        for a in m.accesses:
            f = fields.get(a.field_id)
            if f is None or f.visibility == "public" or a.owner_type_id == t.type_id:
                continue
            counts[(t.type_id, a.owner_type_id)] += 1
    pairs = sorted({tuple(sorted(k)) for k in counts})
    for a, b in pairs:
        ab, ba = counts[(a, b)], counts[(b, a)]
        if ab >= 1 and ba >= 1 and ab + ba >= c.intimacy:
            t = ctx.model.type(a)
            yield make_issue("INAPPROPRIATE_INTIMACY", a, _span(t),
                             [Evidence("mutual_private_accesses", ab + ba, c.intimacy, ">=")],
                             f"{a} and {b} reach into each other's private state ({ab} and {ba} accesses)",
                             members=(a, b))


def shotgun_surgery(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    writers: dict[str, set[str]] = defaultdict(set)  # field id -> classes writing it from outside
    callers: dict[str, set[str]] = defaultdict(set)  # mutator id -> outside calling classes
    mutators: dict[str, tuple[TypeDecl, MethodDecl]] = {}
    for t, m in ctx.model.methods():
        if not m.is_constructor and any(a.write and a.owner_type_id in [t.type_id] + ctx.ancestors(t.type_id) for a in m.accesses):
            mutators[m.method_id] = (t, m)
    for t, m in ctx.model.methods():
        for call in m.calls:
            if call.callee_method_id in mutators and call.callee_type_id != t.type_id:
                callers[call.callee_method_id].add(t.type_id)
        for a in m.accesses:
            if a.write and a.via == "direct" and a.owner_type_id != t.type_id:
                writers[a.field_id].add(t.type_id)
    for mid in sorted(callers):
        n = len(callers[mid])
        if n >= c.fanin_high:
            t, m = mutators[mid]
            yield make_issue("SHOTGUN_SURGERY", mid, m.span, [Evidence("mutating_clients", n, c.fanin_high, ">=")],
                             f"{n} classes call state-changing {m.name}; a change to it ripples widely (structural proxy)")
    fields = {f.field_id: (t, f) for t in ctx.model.internal_types for f in t.fields}
    for fid in sorted(writers):
        n = len(writers[fid])
        if n >= c.fanin_high and fid in fields:
            t, f = fields[fid]
            yield make_issue("SHOTGUN_SURGERY", t.type_id, f.span, [Evidence("mutating_clients", n, c.fanin_high, ">=")],
                             f"{n} classes write field {f.name} directly (structural proxy)")


def refused_bequest(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for t in ctx.classes:
        parent = ctx.model.type(t.supertype_id) if t.supertype_id else None
        if parent is None or parent.is_external or parent.kind == "interface":
            continue
        refused = []
        for m in t.methods:
            pm = ctx.overrides(t, m)
            if pm is None or pm.is_abstract or pm.body is None or _is_trivial_body(pm.body):
                continue
            if _is_trivial_body(m.body):
                refused.append(m)
        if refused:
            m = refused[0]
            yield make_issue("REFUSED_BEQUEST", m.method_id, m.span,
                             [Evidence("refused_overrides", len(refused), 1, ">=")],
                             f"{t.name} inherits {m.name} from {parent.name} but empties or disables it")
            continue
        lineage = [parent.type_id] + [a for a in ctx.ancestors(parent.type_id) if ctx.model.type(a).kind != "interface"]
        protected = {f.field_id for a in lineage for f in ctx.model.type(a).fields if f.visibility == "protected"}
        protected |= {m.method_id for a in lineage for m in ctx.model.type(a).methods
                      if m.visibility == "protected" and not m.is_constructor}
        if len(protected) < c.bequest_min:
            continue
        used = set()
        for m in t.methods:
            used.update(a.field_id for a in m.accesses if a.field_id in protected)
            used.update(x.callee_method_id for x in m.calls if x.callee_method_id in protected)
            pm = ctx.overrides(t, m)
            if pm is not None and pm.method_id in protected:
                used.add(pm.method_id)
        share = len(used) / len(protected)
        if share < c.bequest_use:
            yield make_issue("REFUSED_BEQUEST", t.type_id, _span(t),
                             [Evidence("protected_use_share", round(share, 6), c.bequest_use, "<"),
                              Evidence("protected_members", len(protected), c.bequest_min, ">=")],
                             f"{t.name} uses {len(used)} of the {len(protected)} protected members it inherits")


def parallel_inheritance(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    roots = [t for t in ctx.model.internal_types
             if not any(ctx.model.is_internal(s) for s in t.supertypes) and ctx.model.subtypes(t.type_id)]
    stems: dict[str, set[str]] = {}
    for r in roots:
        found = set()
        for sid in ctx.model.subtypes(r.type_id):
            name = ctx.model.type(sid).name
            if name.endswith(r.name) and len(name) > len(r.name):
                found.add(name[: -len(r.name)])
            elif name.startswith(r.name) and len(name) > len(r.name):
                found.add(name[len(r.name):])
        stems[r.type_id] = found
    for r1, r2 in combinations(sorted(roots, key=lambda t: t.type_id), 2):
        shared = stems[r1.type_id] & stems[r2.type_id]
        if len(shared) >= c.parallel_pairs:
            yield make_issue("PARALLEL_INHERITANCE", r1.type_id, _span(r1),
                             [Evidence("matching_pairs", len(shared), c.parallel_pairs, ">=")],
                             f"hierarchies {r1.name} and {r2.name} grow in lockstep ({', '.join(sorted(shared))})",
                             members=(r1.type_id, r2.type_id))


def alternative_classes(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    cands = [t for t in ctx.classes if t.kind in ("class", "abstract_class")]
    protos: dict[str, dict[str, set]] = {}
    for t in cands:
        by_name: dict[str, set] = defaultdict(set)
        for m in t.methods:
            if m.visibility == "public" and not (m.is_constructor or m.is_accessor or m.is_static) and m.name not in _OBJECT_METHODS:
                by_name[m.name].add((m.signature, m.return_type_id))
        protos[t.type_id] = by_name
    for t1, t2 in combinations(sorted(cands, key=lambda t: t.type_id), 2):
        a1 = set(ctx.ancestors(t1.type_id)) | {t1.type_id} | set(t1.supertypes)
        a2 = set(ctx.ancestors(t2.type_id)) | {t2.type_id} | set(t2.supertypes)
        if a1 & a2:
            continue
        n1 = Counter({k: len(v) for k, v in protos[t1.type_id].items()})
        n2 = Counter({k: len(v) for k, v in protos[t2.type_id].items()})
        union = sum((n1 | n2).values())
        inter = n1 & n2
        if union == 0 or len(inter) < 2:
            continue
        sim = sum(inter.values()) / union
        differing = any(protos[t1.type_id][k] != protos[t2.type_id][k] for k in inter)
        if sim >= c.altsim and differing:
            yield make_issue("ALTERNATIVE_CLASSES", t1.type_id, _span(t1),
                             [Evidence("name_similarity", round(sim, 6), c.altsim, ">=")],
                             f"{t1.name} and {t2.name} do the same jobs ({', '.join(sorted(inter))}) behind different signatures",
                             members=(t1.type_id, t2.type_id))


def isp_violation(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    for i in ctx.model.internal_types:
        if i.kind != "interface":
            continue
        ims = [m for m in i.methods if not m.is_static]
        if len(ims) < c.iface_nom:
            continue
        worst = None
        for sid in ctx.model.subtypes(i.type_id):
            s = ctx.model.type(sid)
            if s.kind == "interface":
                continue
            own = {(m.name, m.signature): m for m in s.methods}
            stubbed = sum(1 for im in ims if (im.name, im.signature) in own and _is_trivial_body(own[(im.name, im.signature)].body))
            share = stubbed / len(ims)
            if share >= c.isp_share and (worst is None or share > worst[1]):
                worst = (s, share)
        if worst:
            s, share = worst
            yield make_issue("ISP_VIOLATION", i.type_id, _span(i),
                             [Evidence("interface_methods", len(ims), c.iface_nom, ">="),
                              Evidence("stubbed_share", round(share, 6), c.isp_share, ">=")],
                             f"{s.name} is forced to stub {share:.0%} of interface {i.name}",
                             members=(i.type_id, s.type_id))


def dip_violation(ctx: _Ctx) -> Iterator[IssueInstance]:
    c = ctx.cfg
    behavioural = {
        t.type_id for t in ctx.model.internal_types
        if t.kind == "class" and ctx.metrics.classes[t.type_id].woc > 0
    }
    for t in ctx.classes:
        concrete = set()
        for m in t.methods:
            if m.is_main or m.is_static or _FACTORY_NAME.match(m.name):
                continue
            concrete.update(x for x in m.instantiations if x in behavioural and x != t.type_id)
        if len(concrete) >= c.dip_new:
            yield make_issue("DIP_VIOLATION", t.type_id, _span(t),
                             [Evidence("concrete_instantiations", len(concrete), c.dip_new, ">=")],
                             f"{t.name} builds its own {', '.join(sorted(concrete))} instead of depending on abstractions",
                             members=tuple(sorted(concrete)))


# --- operations with their own entry points ------------------------------------------


def detect_duplicate_code(model: CodeModel, config: ThresholdConfig | None = None) -> list[IssueInstance]:
    config = config or ThresholdConfig()
    methods = sorted((m for _, m in model.methods() if m.tokens), key=lambda m: m.method_id)
    pairs = clone_pairs([m.tokens for m in methods], int(config.min_clone_tokens))
    out = []
    for (a, b), length in sorted(pairs.items()):
        ma, mb = methods[a], methods[b]
        out.append(make_issue("DUPLICATE_CODE", ma.method_id, ma.span,
                              [Evidence("clone_tokens", length, config.min_clone_tokens, ">=")],
                              f"{ma.name} and {mb.name} share {length} tokens of near-identical code",
                              members=(ma.method_id, mb.method_id)))
    return sorted(out, key=IssueInstance.sort_key)


def detect_dependency_cycles(model: CodeModel) -> list[IssueInstance]:
    nodes = [t.type_id for t in model.internal_types]
    edges = [(e.from_type_id, e.to_type_id) for e in model.dependency_edges]
    out = []
    for comp in cyclic_components(nodes, edges):
        t = model.type(comp[0])
        out.append(make_issue("CYCLIC_DEPENDENT_MODULARIZATION", t.type_id, _span(t),
                              [Evidence("cycle_size", len(comp), 2, ">=") if len(comp) > 1 else Evidence("self_loop", 1, 1, ">=")],
                              "types depend on each other in a cycle: " + " <-> ".join(comp),
                              members=tuple(comp)))
    return sorted(out, key=IssueInstance.sort_key)


RULES: dict[str, Rule] = {
    "LARGE_CLASS": large_class,
    "FEATURE_ENVY": feature_envy,
    "SHOTGUN_SURGERY": shotgun_surgery,
    "DATA_CLASS": data_class,
    "LONG_METHOD": long_method,
    "FUNCTIONAL_DECOMPOSITION": functional_decomposition,
    "REFUSED_BEQUEST": refused_bequest,
    "SPAGHETTI_CODE": spaghetti_code,
    "DIVERGENT_CHANGE": divergent_change,
    "LONG_PARAMETER_LIST": long_parameter_list,
    "DUPLICATE_CODE": lambda ctx: iter(detect_duplicate_code(ctx.model, ctx.cfg)),
    "CYCLIC_DEPENDENT_MODULARIZATION": lambda ctx: iter(detect_dependency_cycles(ctx.model)),
    "DEFICIENT_ENCAPSULATION": deficient_encapsulation,
    "SPECULATIVE_GENERALITY": speculative_generality,
    "LAZY_CLASS": lazy_class,
    "SWITCH_STATEMENT": switch_statement,
    "PRIMITIVE_OBSESSION": primitive_obsession,
    "SWISS_ARMY_KNIFE": swiss_army_knife,
    "DATA_CLUMP": data_clump,
    "INAPPROPRIATE_INTIMACY": inappropriate_intimacy,
    "TEMPORARY_FIELD": temporary_field,
    "MIDDLE_MAN": middle_man,
    "MESSAGE_CHAINS": message_chains,
    "PARALLEL_INHERITANCE": parallel_inheritance,
    "ALTERNATIVE_CLASSES": alternative_classes,
    "ISP_VIOLATION": isp_violation,
    "DIP_VIOLATION": dip_violation,
}
assert tuple(RULES) == INDICATORS


def run_detectors(model: CodeModel, metrics: MetricsTable, config: ThresholdConfig | None = None,
                  only: Iterable[str] | None = None, skip: Iterable[str] | None = None) -> list[IssueInstance]:
    """Evaluate the selected indicators; the result is sorted by (file, line, indicator)."""
    config = config or ThresholdConfig()
    selected = set(only) if only else set(INDICATORS)
    selected -= set(skip or ())
    unknown = selected - set(INDICATORS)
    if unknown:
        raise ValueError(f"unknown indicator id(s): {', '.join(sorted(unknown))}")
    ctx = _Ctx(model, metrics, config)
    issues: list[IssueInstance] = []
    for ind in INDICATORS:
        if ind in selected:
            issues.extend(RULES[ind](ctx))
    return sorted(issues, key=IssueInstance.sort_key)
