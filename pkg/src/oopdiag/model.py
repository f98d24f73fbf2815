"""Normalized code model shared by the parser, metrics and detectors.

The model is immutable once built. ``serialize_model`` produces the canonical
JSON document (``model_version: 1``); ``ingest_model`` reads it back and
re-checks every invariant, so pre-parsed models from other front-ends can be
fed to the analyzer without going through the Java parser.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterator

MODEL_VERSION = 1

TYPE_KINDS = ("class", "interface", "abstract_class", "enum")
VISIBILITIES = ("public", "protected", "package", "private")
EDGE_KINDS = ("field", "parameter", "return", "instantiation", "call", "extends", "implements")
STATEMENT_KINDS = (
    "block", "if", "else_chain", "switch", "case", "for", "while", "do",
    "try", "catch", "return", "expression", "local_decl", "throw", "jump",
)
CONTROL_KINDS = frozenset({"if", "else_chain", "switch", "for", "while", "do", "try"})
ACCESS_VIA = ("direct", "accessor")


class ModelError(ValueError):
    """Raised by ``ingest_model`` for schema or invariant violations.

    ``path`` names the offending location in the document (schema errors)
    and ``invariant`` names the broken invariant (invariant errors).
    """

    def __init__(self, message: str, path: str = "", invariant: str = ""):
        super().__init__(message)
        self.path = path
        self.invariant = invariant


@dataclass(frozen=True)
class Span:
    file: str
    start_line: int
    end_line: int
    col: int = 1

    def contains(self, other: Span) -> bool:
        return (
            self.file == other.file
            and self.start_line <= other.start_line
            and other.end_line <= self.end_line
        )


@dataclass(frozen=True)
class StatementNode:
    """One node of a method's statement tree.

    ``arms`` is the number of decision labels the node carries: non-default
    labels for a ``case``, conditional branches for an ``else_chain``, all
    labels for a ``switch``. ``decisions`` counts ``&&``, ``||`` and ``?:``
    inside the node's own expressions (not its children's).
    """

    kind: str
    span: Span
    depth: int
    children: tuple[StatementNode, ...] = ()
    arms: int = 0
    decisions: int = 0
    discriminant: str | None = None
    tag_labels: int = 0

    def walk(self) -> Iterator[StatementNode]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(frozen=True)
class Parameter:
    name: str
    declared_type_id: str
    is_primitive: bool


@dataclass(frozen=True)
class AttributeAccess:
    owner_type_id: str
    field_id: str
    via: str
    site: Span
    write: bool = False
    null_check: bool = False
    conditional: bool = False


@dataclass(frozen=True)
class CallSite:
    caller_method_id: str
    callee_type_id: str | None
    callee_method_id: str | None
    name: str
    chain_depth: int
    group: int
    site: Span
    ambiguous: bool = False


@dataclass(frozen=True)
class FieldDecl:
    field_id: str
    name: str
    declared_type_id: str
    visibility: str
    is_static: bool
    is_primitive: bool
    span: Span
    is_final: bool = False


@dataclass(frozen=True)
class MethodDecl:
    method_id: str
    name: str
    visibility: str
    is_static: bool
    is_abstract: bool
    parameters: tuple[Parameter, ...]
    return_type_id: str
    span: Span
    body: StatementNode | None = None
    accesses: tuple[AttributeAccess, ...] = ()
    calls: tuple[CallSite, ...] = ()
    is_constructor: bool = False
    loc: int = 0
    tokens: tuple[str, ...] = ()
    token_lines: tuple[int, ...] = ()
    accessor_kind: str | None = None
    accessor_field: str | None = None
    delegates_to: str | None = None
    used_params: tuple[str, ...] = ()
    instantiations: tuple[str, ...] = ()

    @property
    def is_accessor(self) -> bool:
        return self.accessor_kind is not None

    @property
    def is_main(self) -> bool:
        return self.name == "main" and self.is_static and len(self.parameters) == 1

    @property
    def signature(self) -> tuple[str, ...]:
        return tuple(p.declared_type_id for p in self.parameters)


@dataclass(frozen=True)
class TypeDecl:
    type_id: str
    name: str
    kind: str
    span: Span | None = None
    supertype_id: str | None = None
    interface_ids: tuple[str, ...] = ()
    fields: tuple[FieldDecl, ...] = ()
    methods: tuple[MethodDecl, ...] = ()
    is_external: bool = False
    loc: int = 0

    @property
    def is_abstract_type(self) -> bool:
        return self.kind in ("interface", "abstract_class")

    @property
    def supertypes(self) -> tuple[str, ...]:
        sup = (self.supertype_id,) if self.supertype_id else ()
        return sup + self.interface_ids


@dataclass(frozen=True)
class DependencyEdge:
    from_type_id: str
    to_type_id: str
    kind: str


@dataclass(frozen=True)
class CodeModel:
    submission_id: str
    types: tuple[TypeDecl, ...] = ()
    dependency_edges: tuple[DependencyEdge, ...] = ()
    files: tuple[tuple[str, int], ...] = ()
    _index: dict[str, TypeDecl] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._index.update((t.type_id, t) for t in self.types)

    def type(self, type_id: str) -> TypeDecl | None:
        return self._index.get(type_id)

    @property
    def internal_types(self) -> tuple[TypeDecl, ...]:
        return tuple(t for t in self.types if not t.is_external)

    def is_internal(self, type_id: str | None) -> bool:
        t = self._index.get(type_id) if type_id else None
        return t is not None and not t.is_external

    def methods(self) -> Iterator[tuple[TypeDecl, MethodDecl]]:
        for t in self.internal_types:
            for m in t.methods:
                yield t, m

    def ancestors(self, type_id: str) -> list[str]:
        """Internal supertypes (classes and interfaces), nearest first."""
        seen: list[str] = []
        frontier = [type_id]
        while frontier:
            t = self._index.get(frontier.pop(0))
            if t is None:
                continue
            for sup in t.supertypes:
                if self.is_internal(sup) and sup not in seen and sup != type_id:
                    seen.append(sup)
                    frontier.append(sup)
        return seen

    def subtypes(self, type_id: str) -> list[str]:
        """All internal types that transitively extend or implement ``type_id``."""
        return [t.type_id for t in self.internal_types if type_id in self.ancestors(t.type_id)]


# --- serialization -----------------------------------------------------------


def _span_doc(span: Span | None) -> Any:
    if span is None:
        return None
    return {"file": span.file, "start_line": span.start_line, "end_line": span.end_line, "col": span.col}


def _stmt_doc(node: StatementNode) -> dict:
    doc: dict[str, Any] = {"kind": node.kind, "span": _span_doc(node.span), "depth": node.depth}
    if node.children:
        doc["children"] = [_stmt_doc(c) for c in node.children]
    if node.arms:
        doc["arms"] = node.arms
    if node.decisions:
        doc["decisions"] = node.decisions
    if node.discriminant is not None:
        doc["discriminant"] = node.discriminant
        doc["tag_labels"] = node.tag_labels
    return doc


def _method_doc(m: MethodDecl) -> dict:
    return {
        "method_id": m.method_id,
        "name": m.name,
        "visibility": m.visibility,
        "is_static": m.is_static,
        "is_abstract": m.is_abstract,
        "is_constructor": m.is_constructor,
        "parameters": [
            {"name": p.name, "declared_type_id": p.declared_type_id, "is_primitive": p.is_primitive}
            for p in m.parameters
        ],
        "return_type_id": m.return_type_id,
        "span": _span_doc(m.span),
        "body": _stmt_doc(m.body) if m.body is not None else None,
        "accesses": [
            {
                "owner_type_id": a.owner_type_id, "field_id": a.field_id, "via": a.via,
                "site": _span_doc(a.site), "write": a.write, "null_check": a.null_check,
                "conditional": a.conditional,
            }
            for a in m.accesses
        ],
        "calls": [
            {
                "caller_method_id": c.caller_method_id, "callee_type_id": c.callee_type_id,
                "callee_method_id": c.callee_method_id, "name": c.name,
                "chain_depth": c.chain_depth, "group": c.group, "site": _span_doc(c.site),
                "ambiguous": c.ambiguous,
            }
            for c in m.calls
        ],
        "loc": m.loc,
        "tokens": list(m.tokens),
        "token_lines": list(m.token_lines),
        "accessor_kind": m.accessor_kind,
        "accessor_field": m.accessor_field,
        "delegates_to": m.delegates_to,
        "used_params": list(m.used_params),
        "instantiations": list(m.instantiations),
    }


def model_to_doc(model: CodeModel) -> dict:
    types = []
    for t in sorted(model.types, key=lambda t: t.type_id):
        types.append({
            "type_id": t.type_id,
            "name": t.name,
            "kind": t.kind,
            "span": _span_doc(t.span),
            "supertype_id": t.supertype_id,
            "interface_ids": list(t.interface_ids),
            "is_external": t.is_external,
            "loc": t.loc,
            "fields": [
                {
                    "field_id": f.field_id, "name": f.name, "declared_type_id": f.declared_type_id,
                    "visibility": f.visibility, "is_static": f.is_static, "is_final": f.is_final,
                    "is_primitive": f.is_primitive, "span": _span_doc(f.span),
                }
                for f in t.fields
            ],
            "methods": [_method_doc(m) for m in t.methods],
        })
    edges = sorted({(e.from_type_id, e.to_type_id, e.kind) for e in model.dependency_edges})
    return {
        "model_version": MODEL_VERSION,
        "submission_id": model.submission_id,
        "files": {name: n for name, n in model.files},
        "types": types,
        "dependency_edges": [list(e) for e in edges],
    }


def dumps_canonical(doc: Any) -> bytes:
    return (json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n").encode("utf-8")


def serialize_model(model: CodeModel) -> bytes:
    """Canonical byte form of ``model``: sorted keys, types ordered by id, UTF-8."""
    return dumps_canonical(model_to_doc(model))


# --- ingestion ---------------------------------------------------------------


class _Reader:
    """Typed accessors over a JSON document that report the failing path."""

    def __init__(self, doc: Any, path: str = "$"):
        self.doc = doc
        self.path = path

    def _fail(self, key: str, what: str) -> ModelError:
        path = f"{self.path}.{key}"
        return ModelError(f"{path}: {what}", path=path)

    def get(self, key: str, kind: type | tuple[type, ...], optional: bool = False, default: Any = None) -> Any:
        if not isinstance(self.doc, dict):
            raise ModelError(f"{self.path}: expected object", path=self.path)
        if key not in self.doc:
            if optional:
                return default
            raise self._fail(key, "missing")
        value = self.doc[key]
        if value is None and optional:
            return default
        if isinstance(value, bool) and kind in (int, float, (int, float)):
            raise self._fail(key, f"expected {getattr(kind, '__name__', kind)}")
        if not isinstance(value, kind):
            name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
            raise self._fail(key, f"expected {name}")
        return value

    def items(self, key: str, optional: bool = True) -> Iterator[_Reader]:
        values = self.get(key, list, optional=optional, default=[])
        for i, v in enumerate(values):
            yield _Reader(v, f"{self.path}.{key}[{i}]")

    def sub(self, key: str, optional: bool = False) -> _Reader | None:
        value = self.get(key, dict, optional=optional)
        return None if value is None else _Reader(value, f"{self.path}.{key}")

    def enum(self, key: str, allowed: tuple[str, ...]) -> str:
        value = self.get(key, str)
        if value not in allowed:
            raise self._fail(key, f"{value!r} not one of {', '.join(allowed)}")
        return value

    def str_list(self, key: str) -> tuple[str, ...]:
        values = self.get(key, list, optional=True, default=[])
        for i, v in enumerate(values):
            if not isinstance(v, str):
                raise self._fail(f"{key}[{i}]", "expected str")
        return tuple(values)

    def int_list(self, key: str) -> tuple[int, ...]:
        values = self.get(key, list, optional=True, default=[])
        for i, v in enumerate(values):
            if not isinstance(v, int) or isinstance(v, bool):
                raise self._fail(f"{key}[{i}]", "expected int")
        return tuple(values)


def _read_span(r: _Reader | None) -> Span | None:
    if r is None:
        return None
    span = Span(
        file=r.get("file", str),
        start_line=r.get("start_line", int),
        end_line=r.get("end_line", int),
        col=r.get("col", int, optional=True, default=1),
    )
    if span.start_line < 1 or span.end_line < span.start_line or span.col < 1:
        raise ModelError(f"{r.path}: malformed span", path=r.path)
    return span


def _read_stmt(r: _Reader, depth_limit: int = 500) -> StatementNode:
    if depth_limit <= 0:
        raise ModelError(f"{r.path}: statement tree too deep", path=r.path)
    disc = r.get("discriminant", str, optional=True)
    return StatementNode(
        kind=r.enum("kind", STATEMENT_KINDS),
        span=_read_span(r.sub("span")),
        depth=r.get("depth", int),
        children=tuple(_read_stmt(c, depth_limit - 1) for c in r.items("children")),
        arms=r.get("arms", int, optional=True, default=0),
        decisions=r.get("decisions", int, optional=True, default=0),
        discriminant=disc,
        tag_labels=r.get("tag_labels", int, optional=True, default=0),
    )


def _read_method(r: _Reader) -> MethodDecl:
    body = r.sub("body", optional=True)
    return MethodDecl(
        method_id=r.get("method_id", str),
        name=r.get("name", str),
        visibility=r.enum("visibility", VISIBILITIES),
        is_static=r.get("is_static", bool),
        is_abstract=r.get("is_abstract", bool),
        is_constructor=r.get("is_constructor", bool, optional=True, default=False),
        parameters=tuple(
            Parameter(p.get("name", str), p.get("declared_type_id", str), p.get("is_primitive", bool))
            for p in r.items("parameters")
        ),
        return_type_id=r.get("return_type_id", str),
        span=_read_span(r.sub("span")),
        body=_read_stmt(body) if body is not None else None,
        accesses=tuple(
            AttributeAccess(
                owner_type_id=a.get("owner_type_id", str),
                field_id=a.get("field_id", str),
                via=a.enum("via", ACCESS_VIA),
                site=_read_span(a.sub("site")),
                write=a.get("write", bool, optional=True, default=False),
                null_check=a.get("null_check", bool, optional=True, default=False),
                conditional=a.get("conditional", bool, optional=True, default=False),
            )
            for a in r.items("accesses")
        ),
        calls=tuple(
            CallSite(
                caller_method_id=c.get("caller_method_id", str),
                callee_type_id=c.get("callee_type_id", str, optional=True),
                callee_method_id=c.get("callee_method_id", str, optional=True),
                name=c.get("name", str),
                chain_depth=c.get("chain_depth", int),
                group=c.get("group", int),
                site=_read_span(c.sub("site")),
                ambiguous=c.get("ambiguous", bool, optional=True, default=False),
            )
            for c in r.items("calls")
        ),
        loc=r.get("loc", int, optional=True, default=0),
        tokens=r.str_list("tokens"),
        token_lines=r.int_list("token_lines"),
        accessor_kind=r.get("accessor_kind", str, optional=True),
        accessor_field=r.get("accessor_field", str, optional=True),
        delegates_to=r.get("delegates_to", str, optional=True),
        used_params=r.str_list("used_params"),
        instantiations=r.str_list("instantiations"),
    )


def _read_type(r: _Reader) -> TypeDecl:
    return TypeDecl(
        type_id=r.get("type_id", str),
        name=r.get("name", str),
        kind=r.enum("kind", TYPE_KINDS),
        span=_read_span(r.sub("span", optional=True)),
        supertype_id=r.get("supertype_id", str, optional=True),
        interface_ids=r.str_list("interface_ids"),
        is_external=r.get("is_external", bool, optional=True, default=False),
        loc=r.get("loc", int, optional=True, default=0),
        fields=tuple(
            FieldDecl(
                field_id=f.get("field_id", str),
                name=f.get("name", str),
                declared_type_id=f.get("declared_type_id", str),
                visibility=f.enum("visibility", VISIBILITIES),
                is_static=f.get("is_static", bool),
                is_final=f.get("is_final", bool, optional=True, default=False),
                is_primitive=f.get("is_primitive", bool),
                span=_read_span(f.sub("span")),
            )
            for f in r.items("fields")
        ),
        methods=tuple(_read_method(m) for m in r.items("methods")),
    )


def doc_to_model(doc: Any) -> CodeModel:
    root = _Reader(doc)
    version = root.get("model_version", int)
    if version != MODEL_VERSION:
        raise ModelError(f"$.model_version: unsupported version {version}", path="$.model_version")
    files = root.get("files", dict, optional=True, default={})
    for name, n in files.items():
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ModelError(f"$.files.{name}: expected non-negative int", path=f"$.files.{name}")
    edges = []
    for i, e in enumerate(root.get("dependency_edges", list, optional=True, default=[])):
        path = f"$.dependency_edges[{i}]"
        if not (isinstance(e, list) and len(e) == 3 and all(isinstance(x, str) for x in e)):
            raise ModelError(f"{path}: expected [from, to, kind]", path=path)
        if e[2] not in EDGE_KINDS:
            raise ModelError(f"{path}: unknown edge kind {e[2]!r}", path=path)
        edges.append(DependencyEdge(*e))
    model = CodeModel(
        submission_id=root.get("submission_id", str),
        types=tuple(_read_type(t) for t in root.items("types", optional=False)),
        dependency_edges=tuple(edges),
        files=tuple(sorted(files.items())),
    )
    check_invariants(model)
    return model


def ingest_model(data: bytes | str) -> CodeModel:
    """Parse a canonical model document and verify all model invariants."""
    try:
        doc = json.loads(data)
    except (ValueError, RecursionError) as exc:
        raise ModelError(f"$: not a JSON document ({exc})", path="$") from None
    try:
        return doc_to_model(doc)
    except RecursionError:
        raise ModelError("$: document nesting too deep", path="$") from None


# --- invariants --------------------------------------------------------------


def _violation(invariant: str, detail: str) -> ModelError:
    return ModelError(f"invariant {invariant!r} violated: {detail}", invariant=invariant)


def check_invariants(model: CodeModel) -> None:
    """Raise ``ModelError`` naming the first broken invariant."""
    ids = Counter(t.type_id for t in model.types)
    dup = sorted(k for k, n in ids.items() if n > 1)
    if dup:
        raise _violation("unique-type-ids", f"duplicate type_id {dup[0]!r}")
    known = set(ids)
    for e in model.dependency_edges:
        for end in (e.from_type_id, e.to_type_id):
            if end not in known:
                raise _violation("edge-endpoints-known", f"edge {e.from_type_id}->{e.to_type_id} references unknown type {end!r}")

    field_ids: set[str] = set()
    method_ids: set[str] = set()
    for t in model.types:
        for sup in t.supertypes:
            if sup not in known:
                raise _violation("edge-endpoints-known", f"{t.type_id} supertype {sup!r} unknown")
        names = Counter(f.name for f in t.fields)
        if any(n > 1 for n in names.values()):
            raise _violation("unique-field-names", f"type {t.type_id!r} repeats a field name")
        if t.kind == "interface" and any(not f.is_static for f in t.fields):
            raise _violation("interface-no-instance-fields", f"interface {t.type_id!r} has an instance field")
        sigs = Counter((m.name, m.signature) for m in t.methods)
        if any(n > 1 for n in sigs.values()):
            raise _violation("unique-method-signatures", f"type {t.type_id!r} repeats a method signature")
        field_ids.update(f.field_id for f in t.fields)
        for m in t.methods:
            if m.method_id in method_ids:
                raise _violation("unique-method-ids", f"duplicate method_id {m.method_id!r}")
            method_ids.add(m.method_id)
            if m.is_abstract and m.body is not None:
                raise _violation("abstract-no-body", f"abstract method {m.method_id!r} has a body")
            if len(m.tokens) != len(m.token_lines):
                raise _violation("token-lines-aligned", f"{m.method_id!r} tokens/token_lines differ in length")
            if m.body is not None:
                _check_tree(m.method_id, m.body)

    for t in model.types:
        for m in t.methods:
            for a in m.accesses:
                if a.field_id not in field_ids and model.is_internal(a.owner_type_id):
                    raise _violation("accesses-resolve", f"{m.method_id!r} accesses unknown field {a.field_id!r}")
            for c in m.calls:
                if c.chain_depth < 1:
                    raise _violation("chain-depth-positive", f"{m.method_id!r} has chain_depth {c.chain_depth}")
                if c.callee_method_id is not None and c.callee_method_id not in method_ids:
                    raise _violation("calls-resolve", f"{m.method_id!r} calls unknown method {c.callee_method_id!r}")
                if c.callee_type_id is not None and c.callee_type_id not in known:
                    raise _violation("calls-resolve", f"{m.method_id!r} calls into unknown type {c.callee_type_id!r}")

    # extends/implements must be acyclic over internal types
    parents = {t.type_id: [s for s in t.supertypes if model.is_internal(s)] for t in model.internal_types}
    state: dict[str, int] = {}
    for root in parents:
        if state.get(root):
            continue
        stack = [(root, iter(parents[root]))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                raise _violation("acyclic-inheritance", f"inheritance cycle through {nxt!r}")
            elif not state.get(nxt):
                state[nxt] = 1
                stack.append((nxt, iter(parents.get(nxt, ()))))


def _check_tree(method_id: str, root: StatementNode) -> None:
    if root.depth != 0:
        raise _violation("statement-root-depth", f"{method_id!r} body root has depth {root.depth}")
    stack = [root]
    while stack:
        node = stack.pop()
        for child in node.children:
            if child.depth != node.depth + 1:
                raise _violation("statement-depth", f"{method_id!r} child depth is not parent depth + 1")
            if not node.span.contains(child.span):
                raise _violation("statement-spans-nest", f"{method_id!r} child span escapes its parent")
            stack.append(child)
