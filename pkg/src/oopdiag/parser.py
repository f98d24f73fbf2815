"""Recursive-descent parser for the Java subset found in introductory OO courses.

Parsing is total: malformed input produces ``ParseDiagnostic`` records and a
best-effort tree. Recovery is panic mode to the next ``;`` or the end of the
current brace block, and a member declaration that shows up inside a method
body is taken as evidence of a missing ``}`` so the rest of the class survives.
"""

from __future__ import annotations

from .lexer import Token, lex_with_diagnostics
from .syntax import (
    ArrayAccess, ArrayInit, Assign, Binary, Block, Case, Cast, Catch, ClassLit,
    CompilationUnit, Conditional, DoWhile, Empty, ErrorExpr, Expr, ExprStmt,
    FieldAccess, FieldNode, For, ForEach, If, InstanceOf, Jump, Lambda, Literal,
    LocalVar, MethodCall, MethodNode, MethodRef, Name, New, NewArray, Param,
    ParseDiagnostic, Return, Stmt, Super, Switch, SwitchExpr, Sync, This, Throw,
    Try, TypeDeclNode, TypeRef, Unary, While,
)

PRIMITIVE_KEYWORDS = frozenset({"byte", "short", "int", "long", "float", "double", "boolean", "char", "void"})
MODIFIERS = frozenset({
    "public", "private", "protected", "static", "final", "abstract", "native",
    "synchronized", "transient", "volatile", "strictfp", "default",
})
ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="})
BINARY_PRECEDENCE = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5, "==": 6, "!=": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "instanceof": 7,
    "<<": 8, ">>": 8, ">>>": 8, "+": 9, "-": 9, "*": 10, "/": 10, "%": 10,
}
TYPE_DECL_KEYWORDS = frozenset({"class", "interface", "enum"})
_CAST_FOLLOWERS = frozenset({"(", "!", "~", "this", "super", "new"})
_MAX_DEPTH = 120


class _Abort(Exception):
    """Unwinds to the nearest recovery point."""


class Parser:
    def __init__(self, tokens: list[Token], file: str = "<input>"):
        self.file = file
        self.toks = [t for t in tokens if not t.is_trivia]
        last_line = tokens[-1].end_line if tokens else 1
        self.toks.append(Token("eof", "", sum(len(t.lexeme) for t in tokens), last_line, 1))
        self.i = 0
        self.pending_gt = 0
        self.depth = 0
        self.no_lambda = False
        self.member_break = False
        self.diagnostics: list[ParseDiagnostic] = []

    # --- token helpers ---------------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        j = min(self.i + k, len(self.toks) - 1)
        return self.toks[j]

    def at(self, lexeme: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok.lexeme == lexeme and tok.kind in ("keyword", "punctuation", "operator", "identifier", "literal")

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"

    def advance(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def accept(self, lexeme: str) -> bool:
        if self.at(lexeme):
            self.advance()
            return True
        return False

    def error(self, message: str, tok: Token | None = None, recovery: str = "") -> None:
        tok = tok or self.peek()
        self.diagnostics.append(ParseDiagnostic("error", message, tok.line, tok.col, recovery))

    def expect(self, lexeme: str) -> Token:
        if self.at(lexeme):
            return self.advance()
        tok = self.peek()
        self.error(f"expected {lexeme!r} but found {tok.lexeme or 'end of file'!r}")
        raise _Abort()

    def ident(self) -> str:
        tok = self.peek()
        if tok.kind == "identifier":
            return self.advance().lexeme
        self.error(f"expected identifier but found {tok.lexeme or 'end of file'!r}")
        raise _Abort()

    def prev_line(self) -> int:
        return self.toks[max(self.i - 1, 0)].end_line

    # --- recovery ----------------------------------------------------------

    def skip_balanced(self) -> None:
        """Consume a bracketed group starting at the current opener."""
        pairs = {"{": "}", "(": ")", "[": "]"}
        stack = [pairs[self.advance().lexeme]]
        while stack and not self.at_eof():
            tok = self.advance()
            if tok.kind == "punctuation":
                if tok.lexeme in pairs:
                    stack.append(pairs[tok.lexeme])
                elif tok.lexeme == stack[-1]:
                    stack.pop()

    def recover(self, stop_at_block: bool) -> str:
        """Skip to just past the next ``;`` or block, or up to an enclosing ``}``."""
        while not self.at_eof():
            tok = self.peek()
            if tok.lexeme == ";" and tok.kind == "punctuation":
                self.advance()
                return "skipped to ';'"
            if tok.lexeme == "}" and tok.kind == "punctuation":
                return "skipped to '}'"
            if tok.lexeme in ("{", "(", "[") and tok.kind == "punctuation":
                self.skip_balanced()
                if stop_at_block and tok.lexeme == "{":
                    return "skipped block"
                continue
            self.advance()
        return "skipped to end of file"

    def _note_recovery(self, action: str) -> None:
        if self.diagnostics and not self.diagnostics[-1].recovery_action:
            self.diagnostics[-1].recovery_action = action

    # --- compilation unit ------------------------------------------------------

    def parse_unit(self) -> CompilationUnit:
        package = None
        imports: list[str] = []
        types: list[TypeDeclNode] = []
        try:
            self.skip_annotations()
            if self.accept("package"):
                package = self.qualified_name()
                self.expect(";")
        except _Abort:
            self._note_recovery(self.recover(stop_at_block=False))
        while self.at("import"):
            try:
                self.advance()
                self.accept("static")
                name = self.qualified_name(allow_star=True)
                imports.append(name)
                self.expect(";")
            except _Abort:
                self._note_recovery(self.recover(stop_at_block=False))
        while not self.at_eof():
            if self.accept(";"):
                continue
            start = self.i
            try:
                mods = self.modifiers()
                if self.at_type_decl():
                    types.extend(self.type_decl(mods, None))
                else:
                    self.error(f"expected a type declaration but found {self.peek().lexeme!r}")
                    raise _Abort()
            except _Abort:
                self._note_recovery(self.recover(stop_at_block=True))
            if self.i == start:
                self.advance()
        return CompilationUnit(self.file, package, imports, types, self.diagnostics, self.toks[:-1])

    def qualified_name(self, allow_star: bool = False) -> str:
        parts = [self.ident()]
        while self.at("."):
            self.advance()
            if allow_star and self.accept("*"):
                parts.append("*")
                break
            parts.append(self.ident())
        return ".".join(parts)

    def skip_annotations(self) -> None:
        while self.at("@") and not self.at("interface", 1):
            self.advance()
            self.qualified_name()
            if self.at("("):
                self.skip_balanced()

    def modifiers(self) -> frozenset[str]:
        mods = set()
        while True:
            self.skip_annotations()
            tok = self.peek()
            if tok.lexeme in MODIFIERS and tok.kind == "keyword":
                if tok.lexeme == "default" and self.at(":", 1):
                    break
                mods.add(self.advance().lexeme)
            elif tok.lexeme == "non" and self.at("-", 1) and self.peek(2).lexeme == "sealed":
                for _ in range(3):
                    self.advance()
            elif tok.lexeme == "sealed" and self.peek(1).lexeme in MODIFIERS | TYPE_DECL_KEYWORDS:
                self.advance()
            else:
                break
        return frozenset(mods)

    def at_type_decl(self) -> bool:
        tok = self.peek()
        if tok.kind == "keyword" and tok.lexeme in TYPE_DECL_KEYWORDS:
            return True
        if tok.lexeme == "record" and self.peek(1).kind == "identifier":
            return True
        return self.at("@") and self.at("interface", 1)

    # --- type declarations -------------------------------------------------

    def type_decl(self, mods: frozenset[str], outer: str | None) -> list[TypeDeclNode]:
        start_tok = self.peek()
        first = self.i
        if self.at("@"):
            self.advance()
            self.advance()
            self.ident()
            if self.at("{"):
                self.skip_balanced()
            return []
        keyword = self.advance().lexeme
        simple = self.ident()
        name = f"{outer}.{simple}" if outer else simple
        kind = "class" if keyword == "record" else keyword
        decl = TypeDeclNode(start_tok.line, start_tok.line, name, kind, mods)
        decl.first = first
        if self.at("<"):
            decl.type_params = self.type_params()
        nested: list[TypeDeclNode] = []
        if keyword == "record":
            self.expect("(")
            if not self.at(")"):
                while True:
                    p = self.param()
                    decl.fields.append(FieldNode(start_tok.line, start_tok.line, frozenset({"private", "final"}), p.type, p.name, None))
                    if not self.accept(","):
                        break
            self.expect(")")
        if self.accept("extends"):
            decl.extends.append(self.parse_type())
            while self.accept(","):
                decl.extends.append(self.parse_type())
        if self.accept("implements"):
            decl.implements.append(self.parse_type())
            while self.accept(","):
                decl.implements.append(self.parse_type())
        if self.peek().lexeme == "permits":
            self.advance()
            self.parse_type()
            while self.accept(","):
                self.parse_type()
        self.expect("{")
        if kind == "enum":
            self.enum_constants(decl)
        self.class_body(decl, nested)
        decl.end_line = self.prev_line()
        decl.last = self.i - 1
        return [decl] + nested

    def type_params(self) -> list[str]:
        names = []
        self.expect("<")
        while True:
            self.skip_annotations()
            names.append(self.ident())
            if self.accept("extends"):
                self.parse_type()
                while self.accept("&"):
                    self.parse_type()
            if not self.accept(","):
                break
        self.close_angle()
        return names

    def enum_constants(self, decl: TypeDeclNode) -> None:
        while self.peek().kind == "identifier":
            self.skip_annotations()
            tok = self.advance()
            decl.enum_constants.append((tok.lexeme, tok.line))
            if self.at("("):
                self.skip_balanced()
            if self.at("{"):
                self.skip_balanced()
            if not self.accept(","):
                break
        self.accept(";")

    def class_body(self, decl: TypeDeclNode, nested: list[TypeDeclNode]) -> None:
        while not self.at("}"):
            if self.at_eof():
                self.error(f"expected '}}' to close {decl.name!r} before end of file", recovery="closed at end of file")
                return
            if self.accept(";"):
                continue
            start = self.i
            try:
                self.member(decl, nested)
            except _Abort:
                self._note_recovery(self.recover(stop_at_block=True))
            if self.i == start:
                self.advance()
        self.advance()

    def member(self, decl: TypeDeclNode, nested: list[TypeDeclNode]) -> None:
        first = self.i
        start = self.peek()
        mods = self.modifiers()
        if self.at("{"):
            self.block(method_body=True)  # initializer block, not modeled
            return
        if self.at_type_decl():
            nested.extend(self.type_decl(mods, decl.name))
            return
        if self.at("<"):
            self.type_params()
        simple = decl.name.rsplit(".", 1)[-1]
        if self.peek().lexeme == simple and self.peek().kind == "identifier" and self.at("(", 1):
            self.advance()
            decl.methods.append(self.method_rest(start, first, mods, None, simple))
            return
        type_ = self.parse_type()
        name = self.ident()
        if self.at("("):
            decl.methods.append(self.method_rest(start, first, mods, type_, name))
            return
        while True:
            dims = 0
            while self.accept("["):
                self.expect("]")
                dims += 1
            ftype = TypeRef(type_.name, type_.args, type_.dims + dims)
            init = None
            if self.accept("="):
                init = self.var_init()
            decl.fields.append(FieldNode(start.line, self.prev_line(), mods, ftype, name, init))
            if not self.accept(","):
                break
            name = self.ident()
        self.expect(";")

    def method_rest(self, start: Token, first: int, mods: frozenset[str], rtype: TypeRef | None, name: str) -> MethodNode:
        self.expect("(")
        params: list[Param] = []
        if not self.at(")"):
            while True:
                params.append(self.param())
                if not self.accept(","):
                    break
        self.expect(")")
        while self.accept("["):
            self.expect("]")
        if self.accept("throws"):
            self.parse_type()
            while self.accept(","):
                self.parse_type()
        body = None
        if self.at("{"):
            body = self.block(method_body=True)
        elif self.accept("default"):
            self.expr()
            self.expect(";")
        else:
            self.expect(";")
        return MethodNode(start.line, self.prev_line(), mods, rtype, name, params, body, first, self.i - 1)

    def param(self) -> Param:
        self.modifiers()
        type_ = self.parse_type()
        varargs = self.accept("...")
        name = self.ident()
        dims = 0
        while self.accept("["):
            self.expect("]")
            dims += 1
        if varargs:
            dims += 1
        return Param(TypeRef(type_.name, type_.args, type_.dims + dims), name, varargs)

    # --- types -------------------------------------------------------------

    def close_angle(self) -> None:
        if self.pending_gt:
            self.pending_gt -= 1
            if not self.pending_gt:
                self.advance()
            return
        tok = self.peek()
        if tok.lexeme == ">":
            self.advance()
        elif tok.lexeme in (">>", ">>>"):
            self.pending_gt = len(tok.lexeme) - 1
        else:
            self.error(f"expected '>' but found {tok.lexeme!r}")
            raise _Abort()

    def parse_type(self) -> TypeRef:
        self.skip_annotations()
        tok = self.peek()
        if tok.kind == "keyword" and tok.lexeme in PRIMITIVE_KEYWORDS:
            self.advance()
            ref = TypeRef(tok.lexeme)
        elif tok.kind == "identifier":
            parts = [self.advance().lexeme]
            args: list[TypeRef] = []
            while True:
                if self.at("<") and not self.pending_gt:
                    args = self.type_args()
                if self.at(".") and self.peek(1).kind == "identifier":
                    self.advance()
                    parts.append(self.advance().lexeme)
                    continue
                break
            ref = TypeRef(".".join(parts), args)
        elif tok.lexeme == "?":
            self.advance()
            if self.accept("extends") or self.accept("super"):
                return self.parse_type()
            return TypeRef("Object")
        else:
            self.error(f"expected a type but found {tok.lexeme or 'end of file'!r}")
            raise _Abort()
        while self.at("[") and self.at("]", 1) and not self.pending_gt:
            self.advance()
            self.advance()
            ref.dims += 1
        return ref

    def type_args(self) -> list[TypeRef]:
        self.expect("<")
        args: list[TypeRef] = []
        if self.at(">"):  # diamond
            self.advance()
            return args
        while True:
            args.append(self.parse_type())
            if self.pending_gt or not self.accept(","):
                break
        self.close_angle()
        return args

    def try_type(self) -> TypeRef | None:
        saved = (self.i, self.pending_gt, len(self.diagnostics))
        try:
            ref = self.parse_type()
            if self.pending_gt:
                raise _Abort()
            return ref
        except _Abort:
            self.i, self.pending_gt = saved[0], saved[1]
            del self.diagnostics[saved[2]:]
            return None

    # --- statements --------------------------------------------------------

    def block(self, method_body: bool = False) -> Block:
        open_tok = self.expect("{")
        stmts: list[Stmt] = []
        while not self.at("}"):
            if self.at_eof():
                self.error("expected '}' before end of file", recovery="closed at end of file")
                return Block(open_tok.line, self.prev_line(), stmts)
            if self.member_break or self.looks_like_member():
                if not self.member_break:
                    self.error("member declaration inside a method body; assuming a missing '}'",
                               recovery="closed method body")
                    self.member_break = True
                if method_body:
                    self.member_break = False
                return Block(open_tok.line, self.prev_line(), stmts)
            start = self.i
            try:
                stmts.append(self.statement())
            except _Abort:
                self._note_recovery(self.recover(stop_at_block=False))
            if self.i == start:
                self.advance()
        self.advance()
        return Block(open_tok.line, self.prev_line(), stmts)

    def looks_like_member(self) -> bool:
        tok = self.peek()
        if tok.kind == "keyword" and tok.lexeme in ("public", "private", "protected"):
            return True
        if tok.kind == "keyword" and tok.lexeme == "static" and not self.at("{", 1):
            return True
        if tok.kind not in ("identifier", "keyword") or tok.lexeme in ("return", "new", "this", "super", "throw"):
            return False
        saved = (self.i, self.pending_gt, len(self.diagnostics))
        try:
            if self.try_type() is None or self.peek().kind != "identifier" or not self.at("(", 1):
                return False
            self.advance()
            self.skip_balanced()
            return self.at("{") or self.at("throws")
        finally:
            self.i, self.pending_gt = saved[0], saved[1]
            del self.diagnostics[saved[2]:]

    def statement(self) -> Stmt:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                self.error("statement nesting too deep")
                raise _Abort()
            return self._statement()
        finally:
            self.depth -= 1

    def _statement(self) -> Stmt:
        tok = self.peek()
        line = tok.line
        lx = tok.lexeme if tok.kind in ("keyword", "punctuation", "identifier") else ""
        if lx == "{":
            return self.block()
        if lx == ";":
            self.advance()
            return Empty(line, line)
        if lx == "if":
            self.advance()
            cond = self.paren_expr()
            then = self.statement()
            other = self.statement() if self.accept("else") else None
            return If(line, self.prev_line(), cond, then, other)
        if lx == "while":
            self.advance()
            cond = self.paren_expr()
            body = self.statement()
            return While(line, self.prev_line(), cond, body)
        if lx == "do":
            self.advance()
            body = self.statement()
            self.expect("while")
            cond = self.paren_expr()
            self.expect(";")
            return DoWhile(line, self.prev_line(), body, cond)
        if lx == "for":
            return self.for_stmt()
        if lx == "switch":
            sw = self.switch()
            self.accept(";")
            return sw
        if lx == "try":
            return self.try_stmt()
        if lx == "return":
            self.advance()
            expr = None if self.at(";") else self.expr()
            self.expect(";")
            return Return(line, self.prev_line(), expr)
        if lx == "throw":
            self.advance()
            expr = self.expr()
            self.expect(";")
            return Throw(line, self.prev_line(), expr)
        if lx in ("break", "continue"):
            self.advance()
            if self.peek().kind == "identifier":
                self.advance()
            self.expect(";")
            return Jump(line, line, lx)
        if lx == "yield" and tok.kind == "identifier" and not self.peek(1).lexeme in ("=", ".", "(", "[", "++", "--"):
            self.advance()
            expr = self.expr()
            self.expect(";")
            return Return(line, self.prev_line(), expr)
        if lx == "synchronized":
            self.advance()
            lock = self.paren_expr()
            return Sync(line, self.prev_line(), lock, self.block())
        if lx == "assert":
            self.advance()
            self.expr()
            if self.accept(":"):
                self.expr()
            self.expect(";")
            return Empty(line, self.prev_line())
        if tok.kind == "identifier" and self.at(":", 1):
            self.advance()
            self.advance()
            return self.statement()
        if lx in TYPE_DECL_KEYWORDS or (lx in ("abstract", "final") and self.peek(1).lexeme in TYPE_DECL_KEYWORDS):
            self.modifiers()
            decl_tok = self.peek()
            self.type_decl(frozenset(), "<local>")
            self.diagnostics.append(ParseDiagnostic("warning", "local type declaration ignored", decl_tok.line, decl_tok.col))
            return Empty(line, self.prev_line())
        local = self.try_local_var()
        if local is not None:
            self.expect(";")
            local.end_line = self.prev_line()
            return local
        expr = self.expr()
        self.expect(";")
        return ExprStmt(line, self.prev_line(), expr)

    def try_local_var(self) -> LocalVar | None:
        saved = (self.i, self.pending_gt, len(self.diagnostics))
        line = self.peek().line
        had_mods = bool(self.modifiers())
        type_ = self.try_type()
        if type_ is not None and self.peek().kind == "identifier" and self.peek(1).lexeme in ("=", ";", ",", "[", ":"):
            names = []
            while True:
                name = self.ident()
                dims = 0
                while self.accept("["):
                    self.expect("]")
                    dims += 1
                init = self.var_init() if self.accept("=") else None
                names.append((name, init))
                if not self.accept(","):
                    break
            return LocalVar(line, self.prev_line(), TypeRef(type_.name, type_.args, type_.dims), names)
        if had_mods:
            self.error("expected a local variable declaration")
            raise _Abort()
        self.i, self.pending_gt = saved[0], saved[1]
        del self.diagnostics[saved[2]:]
        return None

    def var_init(self) -> Expr:
        if self.at("{"):
            return self.array_init()
        return self.expr()

    def array_init(self) -> ArrayInit:
        open_tok = self.expect("{")
        elems: list[Expr] = []
        while not self.at("}"):
            elems.append(self.var_init())
            if not self.accept(","):
                break
        self.expect("}")
        return ArrayInit(open_tok.line, self.prev_line(), elems)

    def paren_expr(self) -> Expr:
        self.expect("(")
        expr = self.expr()
        self.expect(")")
        return expr

    def for_stmt(self) -> Stmt:
        line = self.advance().line
        self.expect("(")
        saved = (self.i, self.pending_gt, len(self.diagnostics))
        self.modifiers()
        type_ = self.try_type()
        if type_ is not None and self.peek().kind == "identifier" and self.at(":", 1):
            var = self.advance().lexeme
            self.advance()
            iterable = self.expr()
            self.expect(")")
            body = self.statement()
            return ForEach(line, self.prev_line(), type_, var, iterable, body)
        self.i, self.pending_gt = saved[0], saved[1]
        del self.diagnostics[saved[2]:]
        init: list[Stmt] = []
        if not self.at(";"):
            local = self.try_local_var()
            if local is not None:
                init.append(local)
            else:
                while True:
                    e = self.expr()
                    init.append(ExprStmt(e.line, e.end_line, e))
                    if not self.accept(","):
                        break
        self.expect(";")
        cond = None if self.at(";") else self.expr()
        self.expect(";")
        update: list[Expr] = []
        if not self.at(")"):
            while True:
                update.append(self.expr())
                if not self.accept(","):
                    break
        self.expect(")")
        body = self.statement()
        return For(line, self.prev_line(), init, cond, update, body)

    def switch(self) -> Switch:
        line = self.advance().line
        selector = self.paren_expr()
        self.expect("{")
        cases: list[Case] = []
        while not self.at("}"):
            if self.at_eof():
                self.error("expected '}' to close switch before end of file")
                break
            start = self.i
            try:
                cases.append(self.case())
            except _Abort:
                self._note_recovery(self.recover(stop_at_block=False))
            if self.i == start:
                self.advance()
        self.accept("}")
        return Switch(line, self.prev_line(), selector, cases)

    def case(self) -> Case:
        tok = self.peek()
        labels: list[Expr] = []
        is_default = False
        if self.accept("default"):
            is_default = True
        else:
            self.expect("case")
            saved = self.no_lambda
            self.no_lambda = True
            try:
                while True:
                    if self.accept("default"):
                        is_default = True
                    else:
                        labels.append(self.ternary())
                        if self.peek().kind == "identifier":
                            self.advance()  # type pattern binding
                    if not self.accept(","):
                        break
            finally:
                self.no_lambda = saved
        body: list[Stmt] = []
        if self.accept("->"):
            if self.at("{"):
                body.append(self.block())
            elif self.at("throw"):
                body.append(self.statement())
            else:
                e = self.expr()
                self.expect(";")
                body.append(ExprStmt(e.line, self.prev_line(), e))
        else:
            self.expect(":")
            while not (self.at("case") or self.at("default") or self.at("}") or self.at_eof()):
                if self.at("default") and self.at(":", 1):
                    break
                start = self.i
                try:
                    body.append(self.statement())
                except _Abort:
                    self._note_recovery(self.recover(stop_at_block=False))
                if self.i == start:
                    self.advance()
        return Case(tok.line, self.prev_line(), labels, body, is_default)

    def try_stmt(self) -> Try:
        line = self.advance().line
        resources: list[Stmt] = []
        if self.accept("("):
            while not self.at(")"):
                local = self.try_local_var()
                if local is not None:
                    resources.append(local)
                else:
                    e = self.expr()
                    resources.append(ExprStmt(e.line, e.end_line, e))
                if not self.accept(";"):
                    break
            self.expect(")")
        block = self.block()
        catches: list[Catch] = []
        while self.at("catch"):
            ctok = self.advance()
            self.expect("(")
            self.modifiers()
            types = [self.parse_type()]
            while self.accept("|"):
                types.append(self.parse_type())
            var = self.ident()
            self.expect(")")
            cblock = self.block()
            catches.append(Catch(ctok.line, self.prev_line(), types, var, cblock))
        final = self.block() if self.accept("finally") else None
        if not catches and final is None and not resources:
            self.error("'try' without 'catch' or 'finally'", recovery="kept try block")
        return Try(line, self.prev_line(), resources, block, catches, final)

    # --- expressions -------------------------------------------------------

    def expr(self) -> Expr:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                self.error("expression nesting too deep")
                raise _Abort()
            return self.assignment()
        finally:
            self.depth -= 1

    def assignment(self) -> Expr:
        left = self.ternary()
        tok = self.peek()
        if tok.kind == "operator" and tok.lexeme in ASSIGN_OPS:
            self.advance()
            value = self.expr()
            return Assign(left.line, value.end_line, tok.lexeme, left, value)
        return left

    def ternary(self) -> Expr:
        cond = self.binary(1)
        if self.at("?"):
            self.advance()
            then = self.expr()
            self.expect(":")
            other = self.lambda_or(self.ternary)
            return Conditional(cond.line, other.end_line, cond, then, other)
        return cond

    def lambda_or(self, fn):
        if self.at_lambda():
            return self.lambda_expr()
        return fn()

    def binary(self, min_prec: int) -> Expr:
        left = self.unary()
        while True:
            tok = self.peek()
            op = tok.lexeme
            prec = BINARY_PRECEDENCE.get(op) if tok.kind in ("operator", "keyword") else None
            if prec is None or prec < min_prec:
                return left
            self.advance()
            if op == "instanceof":
                self.accept("final")
                type_ = self.parse_type()
                binding = self.advance().lexeme if self.peek().kind == "identifier" else None
                left = InstanceOf(left.line, self.prev_line(), left, type_, binding)
                continue
            right = self.binary(prec + 1)
            left = Binary(left.line, right.end_line, op, left, right)

    def unary(self) -> Expr:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                self.error("expression nesting too deep")
                raise _Abort()
            return self._unary()
        finally:
            self.depth -= 1

    def _unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "operator" and tok.lexeme in ("+", "-", "++", "--", "!", "~"):
            self.advance()
            operand = self.unary()
            return Unary(tok.line, operand.end_line, tok.lexeme, operand)
        if self.at("("):
            if self.at_lambda():
                return self.lambda_expr()
            cast = self.try_cast()
            if cast is not None:
                return cast
        return self.postfix(self.primary())

    def try_cast(self) -> Expr | None:
        saved = (self.i, self.pending_gt, len(self.diagnostics))
        open_tok = self.advance()
        type_ = self.try_type()
        if type_ is not None and self.at(")"):
            self.advance()
            nxt = self.peek()
            primitive = type_.name in PRIMITIVE_KEYWORDS
            looks_like_type = primitive or type_.args or type_.dims or type_.name.rsplit(".", 1)[-1][:1].isupper()
            starts_operand = (
                nxt.kind in ("identifier", "literal")
                or (nxt.kind in ("keyword", "punctuation", "operator") and nxt.lexeme in _CAST_FOLLOWERS)
                or (nxt.kind == "keyword" and nxt.lexeme in PRIMITIVE_KEYWORDS)
                or (primitive and nxt.lexeme in ("+", "-", "++", "--"))
            )
            if looks_like_type and starts_operand:
                operand = self.lambda_or(self.unary)
                return Cast(open_tok.line, operand.end_line, type_, operand)
        self.i, self.pending_gt = saved[0], saved[1]
        del self.diagnostics[saved[2]:]
        return None

    def at_lambda(self) -> bool:
        if self.no_lambda:
            return False
        tok = self.peek()
        if tok.kind == "identifier" and self.at("->", 1):
            return True
        if not self.at("("):
            return False
        depth, j = 0, self.i
        while j < len(self.toks) - 1:
            lx = self.toks[j].lexeme
            if self.toks[j].kind == "punctuation":
                if lx == "(":
                    depth += 1
                elif lx == ")":
                    depth -= 1
                    if depth == 0:
                        nxt = self.toks[j + 1]
                        return nxt.lexeme == "->" and nxt.kind == "operator"
                elif lx in (";", "{", "}"):
                    return False
            j += 1
        return False

    def lambda_expr(self) -> Expr:
        tok = self.peek()
        if self.at("("):
            self.skip_balanced()
        else:
            self.advance()
        self.expect("->")
        saved = self.no_lambda
        self.no_lambda = False
        try:
            if self.at("{"):
                self.block()
            else:
                self.expr()
        finally:
            self.no_lambda = saved
        return Lambda(tok.line, self.prev_line())

    def args(self) -> list[Expr]:
        self.expect("(")
        out: list[Expr] = []
        if not self.at(")"):
            saved = self.no_lambda
            self.no_lambda = False
            try:
                while True:
                    out.append(self.lambda_or(self.expr))
                    if not self.accept(","):
                        break
            finally:
                self.no_lambda = saved
        self.expect(")")
        return out

    def postfix(self, expr: Expr) -> Expr:
        while True:
            tok = self.peek()
            if tok.lexeme == "." and tok.kind == "punctuation":
                self.advance()
                if self.at("<"):
                    self.type_args()
                nxt = self.peek()
                if nxt.kind == "identifier":
                    self.advance()
                    if self.at("("):
                        args = self.args()
                        expr = MethodCall(expr.line, self.prev_line(), expr, nxt.lexeme, args)
                    else:
                        expr = FieldAccess(expr.line, nxt.line, expr, nxt.lexeme)
                elif nxt.lexeme == "class":
                    self.advance()
                    expr = ClassLit(expr.line, nxt.line, TypeRef(_expr_name(expr)))
                elif nxt.lexeme == "this":
                    self.advance()
                    expr = This(expr.line, nxt.line)
                elif nxt.lexeme == "new":
                    expr = self.creation()
                elif nxt.lexeme == "super":
                    self.advance()
                    expr = Super(expr.line, nxt.line)
                else:
                    self.error(f"expected member name after '.' but found {nxt.lexeme!r}")
                    raise _Abort()
            elif tok.lexeme == "[" and tok.kind == "punctuation":
                if self.at("]", 1):
                    # Type[].class or Type[]::new
                    while self.at("[") and self.at("]", 1):
                        self.advance()
                        self.advance()
                    continue
                self.advance()
                index = self.expr()
                self.expect("]")
                expr = ArrayAccess(expr.line, self.prev_line(), expr, index)
            elif tok.kind == "operator" and tok.lexeme in ("++", "--"):
                self.advance()
                expr = Unary(expr.line, tok.line, tok.lexeme, expr, postfix=True)
            elif tok.lexeme == "::" and tok.kind == "punctuation":
                self.advance()
                name = self.advance().lexeme
                expr = MethodRef(expr.line, self.prev_line(), expr, name)
            else:
                return expr

    def primary(self) -> Expr:
        tok = self.peek()
        line = tok.line
        if tok.kind == "literal":
            self.advance()
            return Literal(line, tok.end_line, _literal_kind(tok.lexeme), tok.lexeme)
        if tok.kind == "identifier":
            if self.at("->", 1) and not self.no_lambda:
                return self.lambda_expr()
            self.advance()
            if self.at("("):
                args = self.args()
                return MethodCall(line, self.prev_line(), None, tok.lexeme, args)
            return Name(line, line, tok.lexeme)
        lx = tok.lexeme
        if tok.kind == "keyword":
            if lx == "this":
                self.advance()
                if self.at("("):
                    return MethodCall(line, self.prev_line(), None, "this", self.args())
                return This(line, line)
            if lx == "super":
                self.advance()
                if self.at("("):
                    return MethodCall(line, self.prev_line(), None, "super", self.args())
                return Super(line, line)
            if lx == "new":
                return self.creation()
            if lx == "switch":
                sw = self.switch()
                return SwitchExpr(line, sw.end_line, sw)
            if lx in PRIMITIVE_KEYWORDS:
                type_ = self.parse_type()
                if self.accept("::"):
                    self.advance()
                    return MethodRef(line, self.prev_line(), Name(line, line, type_.name), "new")
                self.expect(".")
                self.expect("class")
                return ClassLit(line, self.prev_line(), type_)
        if tok.kind == "punctuation":
            if lx == "(":
                self.advance()
                inner = self.expr()
                self.expect(")")
                return inner
            if lx == "{":
                return self.array_init()
        self.error(f"expected an expression but found {lx or 'end of file'!r}")
        raise _Abort()

    def creation(self) -> Expr:
        line = self.expect("new").line
        self.skip_annotations()
        tok = self.peek()
        if tok.kind == "keyword" and tok.lexeme in PRIMITIVE_KEYWORDS:
            self.advance()
            type_ = TypeRef(tok.lexeme)
        else:
            parts = [self.ident()]
            args: list[TypeRef] = []
            while True:
                if self.at("<"):
                    args = self.type_args()
                if self.at(".") and self.peek(1).kind == "identifier":
                    self.advance()
                    parts.append(self.advance().lexeme)
                    continue
                break
            type_ = TypeRef(".".join(parts), args)
        if self.at("["):
            dims: list[Expr] = []
            ndims = 0
            while self.at("["):
                self.advance()
                if self.at("]"):
                    self.advance()
                else:
                    dims.append(self.expr())
                    self.expect("]")
                ndims += 1
            init = self.array_init() if self.at("{") else None
            return NewArray(line, self.prev_line(), TypeRef(type_.name, type_.args, ndims), dims, init)
        call_args = self.args()
        anonymous = False
        if self.at("{"):
            self.skip_balanced()  # anonymous class body, opaque
            anonymous = True
        return New(line, self.prev_line(), type_, call_args, anonymous)


def _literal_kind(lexeme: str) -> str:
    if lexeme in ("true", "false"):
        return "bool"
    if lexeme == "null":
        return "null"
    if lexeme.startswith('"'):
        return "string"
    if lexeme.startswith("'"):
        return "char"
    if any(c in lexeme for c in ".eEfFdD") and not lexeme.lower().startswith("0x"):
        return "float"
    return "int"


def _expr_name(expr: Expr) -> str:
    if isinstance(expr, Name):
        return expr.ident
    if isinstance(expr, FieldAccess):
        return f"{_expr_name(expr.target)}.{expr.name}"
    return "?"


def parse(tokens: list[Token], file: str = "<input>") -> tuple[CompilationUnit, list[ParseDiagnostic]]:
    """Parse a token list (trivia included) into a compilation unit.

    Never raises on malformed input; problems are returned as diagnostics.
    """
    parser = Parser(tokens, file)
    try:
        unit = parser.parse_unit()
    except RecursionError:
        parser.member_break = False
        parser.diagnostics.append(ParseDiagnostic("error", "input nested too deeply to parse", 1, 1, "abandoned file"))
        unit = CompilationUnit(file, None, [], [], parser.diagnostics, parser.toks[:-1])
    for d in unit.diagnostics:
        d.file = file
    unit.line_count = tokens[-1].end_line if tokens else 0
    if tokens and tokens[-1].lexeme.endswith("\n"):
        unit.line_count -= 1
    return unit, unit.diagnostics


def parse_source(source: bytes | str, file: str = "<input>") -> CompilationUnit:
    """Lex and parse one file; lexer problems are merged into the diagnostics."""
    tokens, lex_diags = lex_with_diagnostics(source)
    unit, _ = parse([t for t in tokens if t.kind != "error"] if lex_diags else tokens, file)
    unit.diagnostics[:0] = [ParseDiagnostic(d.severity, d.message, d.line, d.col, "token dropped", file) for d in lex_diags]
    return unit
