"""Syntax tree produced by :mod:`oopdiag.parser`.

Nodes record 1-based ``line``/``end_line`` so the model builder can attach
source spans. Type declarations and methods also keep ``first``/``last``
indices into the file's non-trivia token list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class Node:
    line: int
    end_line: int


@dataclass
class TypeRef:
    name: str  # dotted raw name, no type arguments
    args: list[TypeRef] = field(default_factory=list)
    dims: int = 0

    def __str__(self) -> str:
        return self.name + "[]" * self.dims


# --- expressions -------------------------------------------------------------


@dataclass
class Expr(Node):
    pass


@dataclass
class Name(Expr):
    ident: str


@dataclass
class Literal(Expr):
    kind: str  # int float string char bool null
    text: str


@dataclass
class This(Expr):
    pass


@dataclass
class Super(Expr):
    pass


@dataclass
class FieldAccess(Expr):
    target: Expr
    name: str


@dataclass
class MethodCall(Expr):
    target: Optional[Expr]
    name: str
    args: list[Expr]


@dataclass
class New(Expr):
    type: TypeRef
    args: list[Expr]
    anonymous: bool = False


@dataclass
class NewArray(Expr):
    type: TypeRef
    dims: list[Expr]
    init: Optional[ArrayInit] = None


@dataclass
class ArrayInit(Expr):
    elements: list[Expr]


@dataclass
class ArrayAccess(Expr):
    array: Expr
    index: Expr


@dataclass
class Unary(Expr):
    op: str
    operand: Expr
    postfix: bool = False


@dataclass
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass
class InstanceOf(Expr):
    expr: Expr
    type: TypeRef
    binding: Optional[str] = None


@dataclass
class Assign(Expr):
    op: str
    target: Expr
    value: Expr


@dataclass
class Conditional(Expr):
    cond: Expr
    then: Expr
    other: Expr


@dataclass
class Cast(Expr):
    type: TypeRef
    expr: Expr


@dataclass
class Lambda(Expr):
    """Opaque: the body is skipped, not analyzed."""


@dataclass
class MethodRef(Expr):
    target: Expr
    name: str


@dataclass
class ClassLit(Expr):
    type: TypeRef


@dataclass
class SwitchExpr(Expr):
    switch: Switch


@dataclass
class ErrorExpr(Expr):
    pass


# --- statements --------------------------------------------------------------


@dataclass
class Stmt(Node):
    pass


@dataclass
class Block(Stmt):
    stmts: list[Stmt]


@dataclass
class LocalVar(Stmt):
    type: TypeRef
    names: list[tuple[str, Optional[Expr]]]


@dataclass
class If(Stmt):
    cond: Expr
    then: Stmt
    other: Optional[Stmt]


@dataclass
class Case(Node):
    labels: list[Expr]  # empty for default
    body: list[Stmt]
    is_default: bool = False


@dataclass
class Switch(Stmt):
    selector: Expr
    cases: list[Case]


@dataclass
class While(Stmt):
    cond: Expr
    body: Stmt


@dataclass
class DoWhile(Stmt):
    body: Stmt
    cond: Expr


@dataclass
class For(Stmt):
    init: list[Stmt]
    cond: Optional[Expr]
    update: list[Expr]
    body: Stmt


@dataclass
class ForEach(Stmt):
    var_type: TypeRef
    var: str
    iterable: Expr
    body: Stmt


@dataclass
class Catch(Node):
    types: list[TypeRef]
    var: str
    block: Block


@dataclass
class Try(Stmt):
    resources: list[Stmt]
    block: Block
    catches: list[Catch]
    final: Optional[Block]


@dataclass
class Return(Stmt):
    expr: Optional[Expr]


@dataclass
class Throw(Stmt):
    expr: Expr


@dataclass
class ExprStmt(Stmt):
    expr: Expr


@dataclass
class Jump(Stmt):
    keyword: str  # break continue yield


@dataclass
class Empty(Stmt):
    pass


@dataclass
class Sync(Stmt):
    lock: Expr
    block: Block


# --- declarations ------------------------------------------------------------


@dataclass
class Param:
    type: TypeRef
    name: str
    varargs: bool = False


@dataclass
class FieldNode(Node):
    modifiers: frozenset[str]
    type: TypeRef
    name: str
    init: Optional[Expr]


@dataclass
class MethodNode(Node):
    modifiers: frozenset[str]
    return_type: Optional[TypeRef]  # None for constructors
    name: str
    params: list[Param]
    body: Optional[Block]
    first: int = 0
    last: int = 0

    @property
    def is_constructor(self) -> bool:
        return self.return_type is None


@dataclass
class TypeDeclNode(Node):
    name: str  # flattened, e.g. Outer.Inner
    kind: str  # class interface enum
    modifiers: frozenset[str]
    extends: list[TypeRef] = field(default_factory=list)
    implements: list[TypeRef] = field(default_factory=list)
    fields: list[FieldNode] = field(default_factory=list)
    methods: list[MethodNode] = field(default_factory=list)
    enum_constants: list[tuple[str, int]] = field(default_factory=list)
    type_params: list[str] = field(default_factory=list)
    first: int = 0
    last: int = 0


@dataclass
class ParseDiagnostic:
    severity: str  # error warning
    message: str
    line: int
    col: int
    recovery_action: str = ""
    file: str = ""


@dataclass
class CompilationUnit:
    file: str
    package: Optional[str]
    imports: list[str]
    types: list[TypeDeclNode]
    diagnostics: list[ParseDiagnostic]
    tokens: list  # non-trivia lexer tokens
    line_count: int = 0
