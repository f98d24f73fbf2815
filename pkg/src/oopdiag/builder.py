"""Turn parsed compilation units into a resolved :class:`CodeModel`.

Resolution is deliberately shallow. Names resolve against the submission's
own declarations with overloads picked by arity. Anything unresolved becomes
an external stub type that detectors ignore.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import syntax as ast
from .model import (
    AttributeAccess, CallSite, CodeModel, DependencyEdge, FieldDecl, MethodDecl,
    Parameter, Span, StatementNode, TypeDecl,
)
from .parser import parse_source
from .syntax import CompilationUnit, ParseDiagnostic

PRIMITIVES = frozenset({"byte", "short", "int", "long", "float", "double", "boolean", "char"})
STRING_LIKE = frozenset({
    "String", "Integer", "Long", "Double", "Float", "Boolean", "Character", "Short", "Byte",
    "java.lang.String",
})
_GETTER = re.compile(r"^(get|is)[A-Z0-9_]")
_SETTER = re.compile(r"^set[A-Z0-9_]")
_CONSTANT = re.compile(r"^[A-Z][A-Z0-9_]*$")
_ELEMENT_METHODS = frozenset({
    "get", "remove", "poll", "peek", "pop", "next", "first", "last", "getFirst", "getLast",
    "element", "orElse", "orElseThrow", "floor", "ceiling", "higher", "lower", "pollFirst", "pollLast",
})


def is_primitive_name(type_id: str) -> bool:
    return type_id in PRIMITIVES or type_id in STRING_LIKE


@dataclass
class _Ty:
    """Static type of an expression as far as the builder can tell."""

    id: Optional[str] = None
    args: tuple[str, ...] = ()
    dims: int = 0
    static: bool = False  # a type name used as a qualifier


_UNKNOWN = _Ty()


@dataclass
class _FieldInfo:
    decl: FieldDecl
    owner: str
    ty: _Ty


@dataclass
class _MethodInfo:
    node: ast.MethodNode
    owner: str
    method_id: str
    param_tys: list[_Ty]
    return_ty: _Ty
    accessor_kind: Optional[str] = None
    accessor_field: Optional[str] = None


@dataclass
class _TypeInfo:
    node: ast.TypeDeclNode
    unit: CompilationUnit
    type_id: str
    kind: str
    supertype: Optional[str] = None
    interfaces: list[str] = field(default_factory=list)
    fields: dict[str, _FieldInfo] = field(default_factory=dict)
    methods: list[_MethodInfo] = field(default_factory=list)


class _Builder:
    def __init__(self, units: list[CompilationUnit], submission_id: str):
        self.units = units
        self.submission_id = submission_id
        self.diagnostics: list[ParseDiagnostic] = []
        self.types: dict[str, _TypeInfo] = {}
        self.externals: set[str] = set()
        self.edges: set[tuple[str, str, str]] = set()

    # --- type resolution ---------------------------------------------------

    def resolve_name(self, raw: str, context: Optional[str], type_params: Iterable[str] = ()) -> str:
        if raw in PRIMITIVES or raw == "void":
            return raw
        if raw in type_params:
            return self.external("Object")
        if context:
            parts = context.split(".")
            for i in range(len(parts), 0, -1):
                cand = ".".join(parts[:i]) + "." + raw
                if cand in self.types:
                    return cand
            # members inherited from internal supertypes' nested types
        if raw in self.types:
            return raw
        last = raw.rsplit(".", 1)[-1]
        if "." in raw and last in self.types:
            return last
        if raw in STRING_LIKE:
            return raw.rsplit(".", 1)[-1]
        return self.external(raw)

    def external(self, name: str) -> str:
        if name not in self.types:
            self.externals.add(name)
        return name

    def ty_of(self, ref: ast.TypeRef, context: Optional[str], type_params: Iterable[str] = ()) -> _Ty:
        tp = tuple(type_params)
        base = self.resolve_name(ref.name, context, tp)
        args = tuple(self.resolve_name(a.name, context, tp) for a in ref.args)
        return _Ty(base, args, ref.dims)

    @staticmethod
    def type_str(ty: _Ty) -> str:
        return (ty.id or "?") + "[]" * ty.dims

    def is_internal(self, type_id: Optional[str]) -> bool:
        return type_id is not None and type_id in self.types

    def ancestors(self, type_id: str) -> list[str]:
        out: list[str] = []
        frontier = [type_id]
        while frontier:
            info = self.types.get(frontier.pop(0))
            if info is None:
                continue
            for sup in ([info.supertype] if info.supertype else []) + info.interfaces:
                if sup in self.types and sup not in out and sup != type_id:
                    out.append(sup)
                    frontier.append(sup)
        return out

    def find_field(self, type_id: Optional[str], name: str) -> Optional[_FieldInfo]:
        if not self.is_internal(type_id):
            return None
        for t in [type_id] + self.ancestors(type_id):
            f = self.types[t].fields.get(name)
            if f is not None:
                return f
        return None

    def find_method(self, type_id: Optional[str], name: str, arity: int) -> tuple[Optional[_MethodInfo], bool]:
        if not self.is_internal(type_id):
            return None, False
        for t in [type_id] + self.ancestors(type_id):
            cands = [
                m for m in self.types[t].methods
                if m.node.name == name and not m.node.is_constructor and _arity_ok(m.node, arity)
            ]
            if cands:
                return cands[0], len(cands) > 1
        return None, False

    def find_ctor(self, type_id: str, arity: int) -> tuple[Optional[_MethodInfo], bool]:
        info = self.types.get(type_id)
        if info is None:
            return None, False
        cands = [m for m in info.methods if m.node.is_constructor and _arity_ok(m.node, arity)]
        return (cands[0], len(cands) > 1) if cands else (None, False)

    # --- phases --------------------------------------------------------------

    def collect_types(self) -> None:
        for unit in self.units:
            for node in unit.types:
                type_id = node.name
                if type_id in self.types:
                    n = 2
                    while f"{type_id}~{n}" in self.types:
                        n += 1
                    self.diagnostics.append(ParseDiagnostic(
                        "error", f"duplicate type name {type_id!r}; renamed to {type_id}~{n}",
                        node.line, 1, "renamed duplicate", unit.file))
                    type_id = f"{type_id}~{n}"
                if node.kind == "interface":
                    kind = "interface"
                elif node.kind == "enum":
                    kind = "enum"
                elif "abstract" in node.modifiers:
                    kind = "abstract_class"
                else:
                    kind = "class"
                self.types[type_id] = _TypeInfo(node, unit, type_id, kind)

    def resolve_supertypes(self) -> None:
        for info in self.types.values():
            node = info.node
            ctx = _outer(info.type_id)
            if info.kind == "interface":
                info.interfaces = [self.resolve_name(r.name, ctx, node.type_params) for r in node.extends]
            else:
                if node.extends:
                    info.supertype = self.resolve_name(node.extends[0].name, ctx, node.type_params)
                info.interfaces = [self.resolve_name(r.name, ctx, node.type_params) for r in node.implements]
        # break inheritance cycles among internal types
        for info in self.types.values():
            for sup in list(([info.supertype] if info.supertype else []) + info.interfaces):
                if sup == info.type_id or info.type_id in self.ancestors(sup):
                    self.diagnostics.append(ParseDiagnostic(
                        "error", f"cyclic inheritance between {info.type_id!r} and {sup!r}; edge dropped",
                        info.node.line, 1, "dropped supertype", info.unit.file))
                    if info.supertype == sup:
                        info.supertype = None
                    else:
                        info.interfaces.remove(sup)

    def collect_members(self) -> None:
        for info in self.types.values():
            node, file = info.node, info.unit.file
            in_iface = info.kind == "interface"
            for fnode in node.fields:
                if fnode.name in info.fields:
                    self.diagnostics.append(ParseDiagnostic(
                        "error", f"duplicate field {fnode.name!r} in {info.type_id!r}; dropped",
                        fnode.line, 1, "dropped duplicate", file))
                    continue
                ty = self.ty_of(fnode.type, info.type_id, node.type_params)
                static = in_iface or "static" in fnode.modifiers
                decl = FieldDecl(
                    field_id=f"{info.type_id}.{fnode.name}",
                    name=fnode.name,
                    declared_type_id=self.type_str(ty),
                    visibility="public" if in_iface else _visibility(fnode.modifiers),
                    is_static=static,
                    is_primitive=ty.dims == 0 and is_primitive_name(ty.id or ""),
                    span=Span(file, fnode.line, fnode.end_line),
                    is_final=in_iface or "final" in fnode.modifiers,
                )
                info.fields[fnode.name] = _FieldInfo(decl, info.type_id, ty)
            for name, line in node.enum_constants:
                if name in info.fields:
                    continue
                decl = FieldDecl(f"{info.type_id}.{name}", name, info.type_id, "public", True, False,
                                 Span(file, line, line), True)
                info.fields[name] = _FieldInfo(decl, info.type_id, _Ty(info.type_id))
            seen: set[tuple[str, tuple[str, ...]]] = set()
            for mnode in node.methods:
                tps = node.type_params
                param_tys = [self.ty_of(p.type, info.type_id, tps) for p in mnode.params]
                sig = tuple(self.type_str(t) for t in param_tys)
                key = (mnode.name, sig)
                if key in seen:
                    self.diagnostics.append(ParseDiagnostic(
                        "error", f"duplicate method {mnode.name}({', '.join(sig)}) in {info.type_id!r}; dropped",
                        mnode.line, 1, "dropped duplicate", file))
                    continue
                seen.add(key)
                name = "<init>" if mnode.is_constructor else mnode.name
                ret = _Ty("void") if mnode.return_type is None else self.ty_of(mnode.return_type, info.type_id, tps)
                info.methods.append(_MethodInfo(mnode, info.type_id, f"{info.type_id}.{name}({','.join(sig)})", param_tys, ret))
        for info in self.types.values():
            for m in info.methods:
                self.classify_accessor(info, m)

    def classify_accessor(self, info: _TypeInfo, m: _MethodInfo) -> None:
        node = m.node
        if node.body is None or node.is_constructor or "static" in node.modifiers or len(node.body.stmts) != 1:
            return
        stmt = node.body.stmts[0]
        params = {p.name for p in node.params}
        if _GETTER.match(node.name) and not node.params and isinstance(stmt, ast.Return) and stmt.expr is not None:
            fname = _own_field_ref(stmt.expr, params)
            f = self.find_field(info.type_id, fname) if fname else None
            if f is not None and not f.decl.is_static:
                m.accessor_kind, m.accessor_field = "getter", f.decl.field_id
        elif _SETTER.match(node.name) and len(node.params) == 1 and isinstance(stmt, ast.ExprStmt):
            e = stmt.expr
            if isinstance(e, ast.Assign) and e.op == "=" and isinstance(e.value, ast.Name) and e.value.ident in params:
                fname = _own_field_ref(e.target, params)
                f = self.find_field(info.type_id, fname) if fname else None
                if f is not None and not f.decl.is_static:
                    m.accessor_kind, m.accessor_field = "setter", f.decl.field_id

    def edge(self, src: str, dst: Optional[str], kind: str) -> None:
        if dst is None or dst == src or dst in PRIMITIVES or dst == "void" or is_primitive_name(dst):
            return
        if dst not in self.types and dst not in self.externals:
            return
        self.edges.add((src, dst, kind))

    def type_edges(self, info: _TypeInfo) -> None:
        t = info.type_id
        if info.supertype:
            self.edge(t, info.supertype, "extends")
        for i in info.interfaces:
            self.edge(t, i, "implements")
        for f in info.fields.values():
            if f.owner == t and f.ty.id != t:
                self.edge(t, f.ty.id, "field")
                for a in f.ty.args:
                    self.edge(t, a, "field")
        for m in info.methods:
            for pt in m.param_tys:
                self.edge(t, pt.id, "parameter")
                for a in pt.args:
                    self.edge(t, a, "parameter")
            self.edge(t, m.return_ty.id, "return")
            for a in m.return_ty.args:
                self.edge(t, a, "return")

    def build(self) -> CodeModel:
        self.collect_types()
        self.resolve_supertypes()
        self.collect_members()
        decls: list[TypeDecl] = []
        for info in self.types.values():
            self.type_edges(info)
            for f in info.node.fields:
                if f.init is not None:
                    _InitScanner(self, info).scan(f.init)
            methods = tuple(_MethodWalker(self, info, m).build() for m in info.methods)
            tokens = info.unit.tokens[info.node.first: info.node.last + 1]
            decls.append(TypeDecl(
                type_id=info.type_id,
                name=info.node.name.rsplit(".", 1)[-1],
                kind=info.kind,
                span=Span(info.unit.file, info.node.line, max(info.node.end_line, info.node.line)),
                supertype_id=info.supertype,
                interface_ids=tuple(info.interfaces),
                fields=tuple(f.decl for f in info.fields.values()),
                methods=methods,
                loc=_loc(tokens),
            ))
        for ext in sorted(self.externals - set(self.types)):
            decls.append(TypeDecl(type_id=ext, name=ext.rsplit(".", 1)[-1], kind="class", is_external=True))
        known = {d.type_id for d in decls}
        edges = tuple(
            DependencyEdge(a, b, k) for a, b, k in sorted(self.edges) if a in known and b in known
        )
        files = tuple(sorted((u.file, u.line_count) for u in self.units))
        return CodeModel(self.submission_id, tuple(sorted(decls, key=lambda d: d.type_id)), edges, files)


class _InitScanner:
    """Records instantiation edges from field initializers."""

    def __init__(self, builder: _Builder, info: _TypeInfo):
        self.b = builder
        self.info = info

    def scan(self, expr: ast.Expr) -> None:
        stack = [expr]
        while stack:
            e = stack.pop()
            if isinstance(e, ast.New):
                ty = self.b.ty_of(e.type, self.info.type_id, self.info.node.type_params)
                self.b.edge(self.info.type_id, ty.id, "instantiation")
                stack.extend(e.args)
            elif isinstance(e, ast.Node):
                stack.extend(v for v in vars(e).values() if isinstance(v, ast.Expr))


class _MethodWalker:
    """Walks one method body, building its statement tree and usage records."""

    def __init__(self, builder: _Builder, info: _TypeInfo, method: _MethodInfo):
        self.b = builder
        self.info = info
        self.m = method
        self.file = info.unit.file
        self.type_params = tuple(info.node.type_params)
        self.scopes: list[dict[str, _Ty]] = [{p.name: t for p, t in zip(method.node.params, method.param_tys)}]
        self.params = {p.name: t for p, t in zip(method.node.params, method.param_tys)}
        self.accesses: list[AttributeAccess] = []
        self.calls: list[CallSite] = []
        self.instantiations: list[str] = []
        self.cond_depth = 0
        self.group = 0
        self.decisions = [0]
        self.lifted: list[list[StatementNode]] = [[]]
        self.depth = 0

    # --- helpers ---------------------------------------------------------

    def span(self, node: ast.Node) -> Span:
        return Span(self.file, node.line, max(node.end_line, node.line))

    def lookup_local(self, name: str) -> Optional[_Ty]:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def declare(self, name: str, ty: _Ty) -> None:
        self.scopes[-1][name] = ty

    def field_ty(self, f: _FieldInfo) -> _Ty:
        return f.ty

    def record_access(self, f: _FieldInfo, node: ast.Node, via: str = "direct", write: bool = False, null_check: bool = False) -> None:
        self.accesses.append(AttributeAccess(
            owner_type_id=f.owner, field_id=f.decl.field_id, via=via, site=self.span(node),
            write=write, null_check=null_check, conditional=self.cond_depth > 0,
        ))

    # --- build -----------------------------------------------------------

    def build(self) -> MethodDecl:
        node = self.m.node
        in_iface = self.info.kind == "interface"
        static = "static" in node.modifiers
        abstract = node.body is None and not node.is_constructor
        body = None
        if node.body is not None:
            body = self.stmt_node(node.body, 0)
        tokens = self.info.unit.tokens[node.first: node.last + 1]
        used = _used_params(node, tokens)
        return MethodDecl(
            method_id=self.m.method_id,
            name=self.info.node.name.rsplit(".", 1)[-1] if node.is_constructor else node.name,
            visibility="public" if in_iface and "private" not in node.modifiers else _visibility(node.modifiers),
            is_static=static,
            is_abstract=abstract,
            is_constructor=node.is_constructor,
            parameters=tuple(
                Parameter(p.name, self.b.type_str(t), t.dims == 0 and is_primitive_name(t.id or ""))
                for p, t in zip(node.params, self.m.param_tys)
            ),
            return_type_id=self.b.type_str(self.m.return_ty),
            span=self.span(node),
            body=body,
            accesses=tuple(self.accesses),
            calls=tuple(self.calls),
            loc=_loc(tokens),
            tokens=tuple(_normalize(t) for t in tokens),
            token_lines=tuple(t.line for t in tokens),
            accessor_kind=self.m.accessor_kind,
            accessor_field=self.m.accessor_field,
            delegates_to=self.delegation_target(),
            used_params=used,
            instantiations=tuple(dict.fromkeys(self.instantiations)),
        )

    def delegation_target(self) -> Optional[str]:
        node = self.m.node
        if node.body is None or node.is_constructor or self.m.accessor_kind or len(node.body.stmts) != 1:
            return None
        stmt = node.body.stmts[0]
        expr = stmt.expr if isinstance(stmt, (ast.Return, ast.ExprStmt)) else None
        if not isinstance(expr, ast.MethodCall) or expr.target is None:
            return None
        params = {p.name for p in node.params}
        fname = _own_field_ref(expr.target, params)
        f = self.b.find_field(self.info.type_id, fname) if fname else None
        if f is None or f.decl.is_static:
            return None
        if all(isinstance(a, ast.Name) and a.ident in params for a in expr.args):
            return f.decl.field_id
        return None

    # --- statements ------------------------------------------------------

    def stmt_node(self, stmt: ast.Stmt, depth: int) -> Optional[StatementNode]:
        self.decisions.append(0)
        self.lifted.append([])
        saved_depth = self.depth
        self.depth = depth
        try:
            kind, children, extra = self._stmt(stmt, depth)
        finally:
            self.depth = saved_depth
            decisions = self.decisions.pop()
            lifted = self.lifted.pop()
        if kind is None:
            return None
        kids = tuple(c for c in children if c is not None) + tuple(lifted)
        span = self.span(stmt)
        for k in kids:
            if not span.contains(k.span):
                span = Span(span.file, min(span.start_line, k.span.start_line), max(span.end_line, k.span.end_line))
        return StatementNode(kind=kind, span=span, depth=depth, children=kids, decisions=decisions, **extra)

    def _stmt(self, s: ast.Stmt, depth: int):
        d = depth + 1
        if isinstance(s, ast.Block) or isinstance(s, ast.Sync):
            if isinstance(s, ast.Sync):
                self.expr(s.lock)
                s = s.block
            self.scopes.append({})
            try:
                return "block", [self.stmt_node(x, d) for x in s.stmts], {}
            finally:
                self.scopes.pop()
        if isinstance(s, ast.LocalVar):
            ty = self.b.ty_of(s.type, self.info.type_id, self.type_params)
            for name, init in s.names:
                if init is not None:
                    init_ty = self.expr(init)
                    if s.type.name == "var":
                        ty = init_ty
                self.declare(name, ty)
            return "local_decl", [], {}
        if isinstance(s, ast.ExprStmt):
            self.expr(s.expr)
            return "expression", [], {}
        if isinstance(s, ast.Return):
            if s.expr is not None:
                self.expr(s.expr)
            return "return", [], {}
        if isinstance(s, ast.Throw):
            self.expr(s.expr)
            return "throw", [], {}
        if isinstance(s, ast.Jump):
            return "jump", [], {}
        if isinstance(s, ast.Empty):
            return None, [], {}
        if isinstance(s, ast.If):
            return self._if(s, d)
        if isinstance(s, ast.Switch):
            return self._switch(s, d)
        if isinstance(s, ast.While):
            self.expr(s.cond)
            return "while", [self.branch(s.body, d)], {}
        if isinstance(s, ast.DoWhile):
            body = self.branch(s.body, d)
            self.expr(s.cond)
            return "do", [body], {}
        if isinstance(s, ast.For):
            self.scopes.append({})
            try:
                inits = [self.stmt_node(x, d) for x in s.init]
                if s.cond is not None:
                    self.expr(s.cond)
                self.cond_depth += 1
                for u in s.update:
                    self.expr(u)
                self.cond_depth -= 1
                return "for", inits + [self.branch(s.body, d)], {}
            finally:
                self.scopes.pop()
        if isinstance(s, ast.ForEach):
            it = self.expr(s.iterable)
            self.scopes.append({})
            try:
                if s.var_type.name == "var":
                    vty = _element_of(it)
                else:
                    vty = self.b.ty_of(s.var_type, self.info.type_id, self.type_params)
                self.declare(s.var, vty)
                return "for", [self.branch(s.body, d)], {}
            finally:
                self.scopes.pop()
        if isinstance(s, ast.Try):
            self.scopes.append({})
            try:
                kids = [self.stmt_node(r, d) for r in s.resources]
                kids.append(self.stmt_node(s.block, d))
                for c in s.catches:
                    kids.append(self.catch_node(c, d))
                if s.final is not None:
                    kids.append(self.stmt_node(s.final, d))
                return "try", kids, {}
            finally:
                self.scopes.pop()
        return None, [], {}

    def branch(self, s: ast.Stmt, depth: int) -> Optional[StatementNode]:
        self.cond_depth += 1
        try:
            return self.stmt_node(s, depth)
        finally:
            self.cond_depth -= 1

    def catch_node(self, c: ast.Catch, depth: int) -> StatementNode:
        self.scopes.append({c.var: self.b.ty_of(c.types[0], self.info.type_id, self.type_params)})
        self.cond_depth += 1
        try:
            block = self.stmt_node(c.block, depth + 1)
        finally:
            self.cond_depth -= 1
            self.scopes.pop()
        return StatementNode("catch", self.span(c), depth, (block,) if block else ())

    def _if(self, s: ast.If, d: int):
        conds = [s.cond]
        branches: list[ast.Stmt] = [s.then]
        other = s.other
        while isinstance(other, ast.If):
            conds.append(other.cond)
            branches.append(other.then)
            other = other.other
        if other is not None:
            branches.append(other)
        for i, c in enumerate(conds):
            if i:
                self.cond_depth += 1
            self.expr(c)
            if i:
                self.cond_depth -= 1
        kids = [self.branch(b, d) for b in branches]
        if len(conds) == 1:
            return "if", kids, {}
        extra: dict = {"arms": len(conds)}
        tags = [self.tag_compare(c) for c in conds]
        first = next((t for t in tags if t), None)
        if first:
            extra["discriminant"] = first
            extra["tag_labels"] = sum(1 for t in tags if t == first)
        return "else_chain", kids, extra

    def _switch(self, s: ast.Switch, d: int):
        sel_ty = self.expr(s.selector)
        disc = self.discriminant(s.selector, sel_ty)
        kids = []
        labels = 0
        tagged = 0
        self.scopes.append({})
        try:
            for case in s.cases:
                n = len(case.labels)
                labels += n
                tagged += sum(1 for lab in case.labels if self.is_constant(lab))
                self.cond_depth += 1
                try:
                    self.decisions.append(0)
                    self.lifted.append([])
                    body = [self.stmt_node(x, d + 1) for x in case.body]
                    case_decisions = self.decisions.pop()
                    lifted = self.lifted.pop()
                finally:
                    self.cond_depth -= 1
                kk = tuple(c for c in body if c is not None) + tuple(lifted)
                span = self.span(case)
                for k in kk:
                    if not span.contains(k.span):
                        span = Span(span.file, min(span.start_line, k.span.start_line), max(span.end_line, k.span.end_line))
                kids.append(StatementNode("case", span, d, kk, arms=n, decisions=case_decisions))
        finally:
            self.scopes.pop()
        extra: dict = {"arms": labels}
        if disc and tagged:
            extra["discriminant"] = disc
            extra["tag_labels"] = tagged
        return "switch", kids, extra

    # --- type-tag recognition ----------------------------------------------

    def discriminant(self, e: ast.Expr, ty: Optional[_Ty] = None) -> Optional[str]:
        """Key of a field/parameter of primitive, string or enum type, else None."""
        params = set(self.params)
        if isinstance(e, ast.Name) and self.lookup_local(e.ident) is not None:
            if e.ident in params and self.lookup_local(e.ident) is self.params[e.ident]:
                ty = self.params[e.ident]
                return f"param:{e.ident}" if self.tag_type(ty) else None
            return None
        fname = _own_field_ref(e, params) if isinstance(e, (ast.Name, ast.FieldAccess)) else None
        f = self.b.find_field(self.info.type_id, fname) if fname else None
        if f is None and isinstance(e, ast.FieldAccess):
            tty = self.peek_type(e.target)
            f = self.b.find_field(tty.id, e.name)
        if f is None and isinstance(e, ast.MethodCall) and not e.args:
            owner = self.info.type_id if e.target is None or isinstance(e.target, ast.This) else self.peek_type(e.target).id
            mi, _ = self.b.find_method(owner, e.name, 0)
            if mi is not None and mi.accessor_kind == "getter":
                f = self.b.find_field(mi.owner, mi.accessor_field.rsplit(".", 1)[-1])
        if f is not None and not f.decl.is_static and self.tag_type(f.ty):
            return f"field:{f.decl.field_id}"
        return None

    def tag_type(self, ty: _Ty) -> bool:
        if ty.dims:
            return False
        if ty.id is not None and is_primitive_name(ty.id) and ty.id not in ("boolean", "Boolean"):
            return True
        info = self.b.types.get(ty.id or "")
        return info is not None and info.kind == "enum"

    def is_constant(self, e: ast.Expr) -> bool:
        if isinstance(e, ast.Literal):
            return e.kind != "null"
        if isinstance(e, ast.Unary) and e.op == "-" and isinstance(e.operand, ast.Literal):
            return True
        if isinstance(e, ast.Name):
            if self.lookup_local(e.ident) is not None:
                return False
            f = self.b.find_field(self.info.type_id, e.ident)
            if f is not None:
                return f.decl.is_static and f.decl.is_final
            return True  # unqualified enum constant in a case label, or imported constant
        if isinstance(e, ast.FieldAccess):
            tty = self.peek_type(e.target)
            f = self.b.find_field(tty.id, e.name)
            if f is not None:
                return f.decl.is_static and f.decl.is_final
            return bool(_CONSTANT.match(e.name))
        return False

    def tag_compare(self, cond: ast.Expr) -> Optional[str]:
        if isinstance(cond, ast.Binary) and cond.op == "==":
            for a, b in ((cond.left, cond.right), (cond.right, cond.left)):
                if self.is_constant(b) and not self.is_constant(a):
                    return self.discriminant(a)
        if isinstance(cond, ast.MethodCall) and cond.name in ("equals", "equalsIgnoreCase") and len(cond.args) == 1 and cond.target is not None:
            a, b = cond.target, cond.args[0]
            if self.is_constant(a):
                a, b = b, a
            if self.is_constant(b):
                return self.discriminant(a)
        return None

    def peek_type(self, e: ast.Expr) -> _Ty:
        """Type of ``e`` without recording any usage."""
        saved = (len(self.accesses), len(self.calls), len(self.instantiations), self.group, list(self.decisions))
        lifted_len = [len(x) for x in self.lifted]
        ty = self.expr(e)
        del self.accesses[saved[0]:]
        del self.calls[saved[1]:]
        del self.instantiations[saved[2]:]
        self.group = saved[3]
        self.decisions[:] = saved[4]
        for lst, n in zip(self.lifted, lifted_len):
            del lst[n:]
        return ty

    # --- expressions -------------------------------------------------------

    def expr(self, e: Optional[ast.Expr], write: bool = False, null_check: bool = False) -> _Ty:
        if e is None:
            return _UNKNOWN
        if isinstance(e, ast.Name):
            return self.name(e, write, null_check)
        if isinstance(e, ast.Literal):
            return _Ty({"int": "int", "float": "double", "string": "String", "char": "char", "bool": "boolean"}.get(e.kind))
        if isinstance(e, ast.This):
            return _Ty(self.info.type_id)
        if isinstance(e, ast.Super):
            return _Ty(self.info.supertype)
        if isinstance(e, ast.FieldAccess):
            return self.field_access(e, write, null_check)
        if isinstance(e, ast.MethodCall):
            return self.call(e)[0]
        if isinstance(e, ast.New):
            return self.new(e)
        if isinstance(e, ast.NewArray):
            for x in e.dims:
                self.expr(x)
            if e.init is not None:
                self.expr(e.init)
            ty = self.b.ty_of(e.type, self.info.type_id, self.type_params)
            return ty
        if isinstance(e, ast.ArrayInit):
            for x in e.elements:
                self.expr(x)
            return _UNKNOWN
        if isinstance(e, ast.ArrayAccess):
            arr = self.expr(e.array, null_check=False)
            self.expr(e.index)
            if arr.dims:
                return _Ty(arr.id, arr.args, arr.dims - 1)
            return _UNKNOWN
        if isinstance(e, ast.Unary):
            ty = self.expr(e.operand, write=e.op in ("++", "--"))
            if e.op in ("++", "--"):
                self.expr(e.operand)  # also a read
            return _Ty("boolean") if e.op == "!" else ty
        if isinstance(e, ast.Binary):
            if e.op in ("&&", "||"):
                self.decisions[-1] += 1
            if e.op in ("==", "!="):
                lnull = isinstance(e.left, ast.Literal) and e.left.kind == "null"
                rnull = isinstance(e.right, ast.Literal) and e.right.kind == "null"
                self.expr(e.left, null_check=rnull)
                self.expr(e.right, null_check=lnull)
                return _Ty("boolean")
            lt = self.expr(e.left)
            if e.op in ("&&", "||"):
                self.cond_depth += 1
            rt = self.expr(e.right)
            if e.op in ("&&", "||"):
                self.cond_depth -= 1
            if e.op in ("<", ">", "<=", ">=", "&&", "||"):
                return _Ty("boolean")
            if e.op == "+" and ("String" in (lt.id, rt.id)):
                return _Ty("String")
            return lt if lt.id else rt
        if isinstance(e, ast.InstanceOf):
            self.expr(e.expr)
            if e.binding:
                self.declare(e.binding, self.b.ty_of(e.type, self.info.type_id, self.type_params))
            return _Ty("boolean")
        if isinstance(e, ast.Assign):
            self.expr(e.value)
            if e.op != "=":
                self.expr(e.target)
            return self.expr(e.target, write=True)
        if isinstance(e, ast.Conditional):
            self.decisions[-1] += 1
            self.expr(e.cond)
            self.cond_depth += 1
            a = self.expr(e.then)
            b = self.expr(e.other)
            self.cond_depth -= 1
            return a if a.id else b
        if isinstance(e, ast.Cast):
            self.expr(e.expr)
            return self.b.ty_of(e.type, self.info.type_id, self.type_params)
        if isinstance(e, ast.MethodRef):
            if not isinstance(e.target, ast.Name):
                self.expr(e.target)
            return _UNKNOWN
        if isinstance(e, ast.ClassLit):
            return _Ty("Class")
        if isinstance(e, ast.SwitchExpr):
            self.scopes.append({})
            try:
                kind, kids, extra = self._switch(e.switch, self.depth + 2)
            finally:
                self.scopes.pop()
            node = StatementNode(kind, self.span(e), self.depth + 1, tuple(kids), **extra)
            self.lifted[-1].append(node)
            return _UNKNOWN
        return _UNKNOWN  # Lambda and anything opaque

    def name(self, e: ast.Name, write: bool, null_check: bool) -> _Ty:
        local = self.lookup_local(e.ident)
        if local is not None:
            return local
        f = self.b.find_field(self.info.type_id, e.ident)
        if f is not None:
            self.record_access(f, e, write=write, null_check=null_check)
            return f.ty
        resolved = self.b.resolve_name(e.ident, self.info.type_id, self.type_params) if e.ident[:1].isupper() else None
        if resolved:
            return _Ty(resolved, static=True)
        return _UNKNOWN

    def field_access(self, e: ast.FieldAccess, write: bool, null_check: bool) -> _Ty:
        if isinstance(e.target, ast.This):
            owner = self.info.type_id
        elif isinstance(e.target, ast.Super):
            owner = self.info.supertype
        else:
            tty = self.expr(e.target)
            if tty.dims and e.name == "length":
                return _Ty("int")
            owner = tty.id
        f = self.b.find_field(owner, e.name)
        if f is not None:
            self.record_access(f, e, write=write, null_check=null_check)
            return f.ty
        if owner is None and isinstance(e.target, (ast.Name, ast.FieldAccess)):
            return _UNKNOWN
        return _UNKNOWN

    def chain_info(self, target: Optional[ast.Expr]) -> tuple[int, Optional[int]]:
        """Depth and group of the nearest call that ``target`` navigates from."""
        while isinstance(target, (ast.FieldAccess, ast.ArrayAccess)):
            target = target.target if isinstance(target, ast.FieldAccess) else target.array
        if isinstance(target, ast.MethodCall):
            return self._last_call_depth.get(id(target), (0, None))
        return 0, None

    _last_call_depth: dict

    def call(self, e: ast.MethodCall) -> tuple[_Ty, None]:
        if not hasattr(self, "_chain"):
            self._chain: dict[int, tuple[int, int]] = {}
        if e.name in ("this", "super") and e.target is None:
            for a in e.args:
                self.expr(a)
            owner = self.info.type_id if e.name == "this" else self.info.supertype
            if owner is not None and self.b.is_internal(owner):
                mi, amb = self.b.find_ctor(owner, len(e.args))
                self.add_call(e, owner, mi, "<init>", 1, self.next_group(), amb)
            return _UNKNOWN, None
        if e.target is None:
            recv = _Ty(self.info.type_id)
        elif isinstance(e.target, ast.This):
            recv = _Ty(self.info.type_id)
        elif isinstance(e.target, ast.Super):
            recv = _Ty(self.info.supertype)
        else:
            recv = self.expr(e.target)
        for a in e.args:
            self.expr(a)
        inner = e.target
        while isinstance(inner, (ast.FieldAccess, ast.ArrayAccess)):
            inner = inner.target if isinstance(inner, ast.FieldAccess) else inner.array
        if isinstance(inner, ast.MethodCall) and id(inner) in self._chain:
            depth, group = self._chain[id(inner)]
            depth += 1
        else:
            depth, group = 1, self.next_group()
        self._chain[id(e)] = (depth, group)
        mi, amb = self.b.find_method(recv.id, e.name, len(e.args))
        callee_type = mi.owner if mi is not None else recv.id
        if callee_type is not None and not self.b.is_internal(callee_type) and callee_type not in self.b.externals:
            if recv.id and not is_primitive_name(recv.id) and recv.id not in PRIMITIVES:
                self.b.external(recv.id)
            else:
                callee_type = None
        self.add_call(e, callee_type, mi, e.name, depth, group, amb)
        if mi is not None and mi.accessor_kind:
            fname = mi.accessor_field.rsplit(".", 1)[-1]
            f = self.b.find_field(mi.owner, fname)
            if f is not None:
                self.record_access(f, e, via="accessor", write=mi.accessor_kind == "setter")
        if mi is not None:
            return mi.return_ty, None
        if recv.id and not self.b.is_internal(recv.id) and recv.args:
            if e.name in _ELEMENT_METHODS:
                return _Ty(recv.args[-1]), None
            if e.name in ("iterator", "listIterator", "subList", "stream", "values", "keySet", "entrySet"):
                return _Ty(recv.id, recv.args), None
        return _UNKNOWN, None

    def next_group(self) -> int:
        self.group += 1
        return self.group

    def add_call(self, e: ast.MethodCall | ast.New, callee_type: Optional[str], mi: Optional[_MethodInfo],
                 name: str, depth: int, group: int, ambiguous: bool) -> None:
        self.calls.append(CallSite(
            caller_method_id=self.m.method_id,
            callee_type_id=callee_type,
            callee_method_id=mi.method_id if mi is not None else None,
            name=name,
            chain_depth=depth,
            group=group,
            site=self.span(e),
            ambiguous=ambiguous,
        ))
        if callee_type is not None:
            self.b.edge(self.info.type_id, callee_type, "call")

    def new(self, e: ast.New) -> _Ty:
        for a in e.args:
            self.expr(a)
        ty = self.b.ty_of(e.type, self.info.type_id, self.type_params)
        if ty.id is None or is_primitive_name(ty.id):
            return ty
        self.instantiations.append(ty.id)
        self.b.edge(self.info.type_id, ty.id, "instantiation")
        mi, amb = self.b.find_ctor(ty.id, len(e.args)) if self.b.is_internal(ty.id) else (None, False)
        self.add_call(e, ty.id, mi, "<init>", 1, self.next_group(), amb)
        return ty


# --- module helpers ----------------------------------------------------------


def _arity_ok(node: ast.MethodNode, arity: int) -> bool:
    n = len(node.params)
    if node.params and node.params[-1].varargs:
        return arity >= n - 1
    return arity == n


def _outer(type_id: str) -> Optional[str]:
    return type_id


def _visibility(mods: frozenset[str]) -> str:
    for v in ("public", "protected", "private"):
        if v in mods:
            return v
    return "package"


def _own_field_ref(e: ast.Expr, params: set[str]) -> Optional[str]:
    if isinstance(e, ast.FieldAccess) and isinstance(e.target, ast.This):
        return e.name
    if isinstance(e, ast.Name) and e.ident not in params:
        return e.ident
    return None


def _element_of(ty: _Ty) -> _Ty:
    if ty.dims:
        return _Ty(ty.id, ty.args, ty.dims - 1)
    if ty.args:
        return _Ty(ty.args[-1])
    return _UNKNOWN


def _loc(tokens: list) -> int:
    lines: set[int] = set()
    for t in tokens:
        lines.update(range(t.line, t.end_line + 1))
    return len(lines)


def _normalize(tok) -> str:
    if tok.kind == "identifier":
        return "ID"
    if tok.kind == "literal":
        return "LIT"
    return tok.lexeme


def _used_params(node: ast.MethodNode, tokens: list) -> tuple[str, ...]:
    if not node.params:
        return ()
    counts: dict[str, int] = {}
    names = {p.name for p in node.params}
    for t in tokens:
        if t.kind == "identifier" and t.lexeme in names:
            counts[t.lexeme] = counts.get(t.lexeme, 0) + 1
    return tuple(p.name for p in node.params if counts.get(p.name, 0) >= 2)


def build_model(units: list[CompilationUnit], submission_id: str = "submission") -> tuple[CodeModel, list[ParseDiagnostic]]:
    """Resolve names across one submission's files and build its code model."""
    builder = _Builder(units, submission_id)
    model = builder.build()
    return model, builder.diagnostics


def model_from_sources(sources: dict[str, str | bytes], submission_id: str = "submission") -> tuple[CodeModel, list[ParseDiagnostic]]:
    """Convenience: lex, parse and build from ``{relative_path: source}``."""
    units = [parse_source(src, name) for name, src in sorted(sources.items())]
    model, diags = build_model(units, submission_id)
    all_diags = [d for u in units for d in u.diagnostics] + diags
    return model, all_diags
