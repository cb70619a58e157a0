"""Lexer, recursive-descent parser, and canonical renderer for a minimal
C-like statement language, just large enough to express counted loops in
both the classic three-slot form and the condition-folded micro form.

Statement grammar::

    program  := stmt*
    stmt     := ';'
              | '{' stmt* '}'
              | 'break' ';'                      (inside a loop only)
              | 'continue' ';'                   (inside a loop only)
              | 'for' '(' expr? ';' expr? ';' expr? ')' stmt
              | expr ';'

Expression grammar, loosest to tightest binding::

    assign   := IDENT '=' assign | compare
    compare  := additive (('<'|'<='|'>'|'>='|'=='|'!=') additive)*
    additive := unary (('+'|'-') unary)*
    unary    := '++' IDENT | IDENT '++' | IDENT | INT | '(' assign ')'

Integers are non-negative literals; the interpreter layer treats all
values as arbitrary-precision. `//` line comments and whitespace are
skipped during lexing and are not preserved: `render` always produces
the canonical layout, and `parse_program(render(p))` is structurally
equal to `p` for any well-formed program.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MicroforError


class LexError(MicroforError):
    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"unexpected character {char!r} at offset {position}")


class ParseError(MicroforError):
    """Parse failure; `span` is the offending token's (start, end) offsets."""

    def __init__(self, span: tuple[int, int], expected: str):
        self.span = span
        self.expected = expected
        super().__init__(f"at offsets {span[0]}..{span[1]}: expected {expected}")


# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------

KEYWORDS = frozenset({"for", "break", "continue"})

# Longest first so that maximal munch falls out of a linear scan.
PUNCTUATION = ("++", "<=", ">=", "==", "!=", "<", ">", "+", "-", "=",
               "(", ")", "{", "}", ";")

COMPARISON_OPS = frozenset({"<", "<=", ">", ">=", "==", "!="})
ADDITIVE_OPS = frozenset({"+", "-"})
BINARY_OPS = COMPARISON_OPS | ADDITIVE_OPS


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "int" | "punct" | "keyword"
    text: str
    span: tuple[int, int]  # offsets into the source text, end exclusive


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c == "_"


def tokenize(source: str) -> list[Token]:
    """Split source text into tokens, skipping whitespace and // comments.

    Any character outside the token alphabet raises LexError rather than
    being silently dropped, so token texts plus skipped gaps always
    reconstruct the input exactly.
    """
    tokens: list[Token] = []
    pos = 0
    length = len(source)
    while pos < length:
        c = source[pos]
        if c.isspace():
            pos += 1
            continue
        if source.startswith("//", pos):
            nl = source.find("\n", pos)
            pos = length if nl < 0 else nl + 1
            continue
        if c.isdigit():
            end = pos + 1
            while end < length and source[end].isdigit():
                end += 1
            tokens.append(Token("int", source[pos:end], (pos, end)))
            pos = end
            continue
        if _is_ident_start(c):
            end = pos + 1
            while end < length and _is_ident_char(source[end]):
                end += 1
            text = source[pos:end]
            kind = "keyword" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, (pos, end)))
            pos = end
            continue
        for punct in PUNCTUATION:
            if source.startswith(punct, pos):
                end = pos + len(punct)
                tokens.append(Token("punct", punct, (pos, end)))
                pos = end
                break
        else:
            raise LexError(pos, c)
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

class Expr:
    """Base class for expression nodes."""


@dataclass(frozen=True)
class IntLiteral(Expr):
    value: int


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Assign(Expr):
    target: str  # plain identifier, never a nested lvalue
    value: Expr


@dataclass(frozen=True)
class PostInc(Expr):
    target: str


@dataclass(frozen=True)
class PreInc(Expr):
    target: str


class Stmt:
    """Base class for statement nodes."""


@dataclass(frozen=True)
class ExprStmt(Stmt):
    expr: Expr


@dataclass(frozen=True)
class Block(Stmt):
    body: tuple[Stmt, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class ForLoop:
    """A for loop header plus body. Any header slot may be absent; an
    absent condition marks the loop as an infinite-candidate."""

    init: Expr | None
    cond: Expr | None
    update: Expr | None
    body: Stmt


@dataclass(frozen=True)
class For(Stmt):
    loop: ForLoop


@dataclass(frozen=True)
class Break(Stmt):
    pass


@dataclass(frozen=True)
class Continue(Stmt):
    pass


@dataclass(frozen=True)
class Empty(Stmt):
    pass


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token], source_len: int):
        self.tokens = tokens
        self.pos = 0
        self.source_len = source_len
        self.loop_depth = 0

    def _peek(self) -> Token | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def _at_punct(self, text: str, offset: int = 0) -> bool:
        i = self.pos + offset
        if i >= len(self.tokens):
            return False
        tok = self.tokens[i]
        return tok.kind == "punct" and tok.text == text

    def _error_span(self) -> tuple[int, int]:
        tok = self._peek()
        if tok is None:
            return (self.source_len, self.source_len)
        return tok.span

    def _fail(self, expected: str) -> ParseError:
        return ParseError(self._error_span(), expected)

    def _advance(self) -> Token:
        tok = self._peek()
        if tok is None:
            raise self._fail("a token, found end of input")
        self.pos += 1
        return tok

    def _expect_punct(self, text: str) -> Token:
        if not self._at_punct(text):
            raise self._fail(f"'{text}'")
        return self._advance()

    # statements -----------------------------------------------------------

    def parse_program(self) -> list[Stmt]:
        stmts = []
        while self._peek() is not None:
            stmts.append(self.parse_stmt())
        return stmts

    def parse_stmt(self) -> Stmt:
        tok = self._peek()
        if tok is None:
            raise self._fail("a statement")
        if tok.kind == "punct" and tok.text == ";":
            self._advance()
            return Empty()
        if tok.kind == "punct" and tok.text == "{":
            self._advance()
            body = []
            while not self._at_punct("}"):
                if self._peek() is None:
                    raise self._fail("'}'")
                body.append(self.parse_stmt())
            self._advance()
            return Block(tuple(body))
        if tok.kind == "keyword" and tok.text == "for":
            return self._parse_for()
        if tok.kind == "keyword" and tok.text in ("break", "continue"):
            if self.loop_depth == 0:
                raise ParseError(tok.span, f"'{tok.text}' inside a loop body")
            self._advance()
            self._expect_punct(";")
            return Break() if tok.text == "break" else Continue()
        expr = self.parse_expr()
        self._expect_punct(";")
        return ExprStmt(expr)

    def _parse_for(self) -> Stmt:
        self._advance()  # 'for'
        self._expect_punct("(")
        init = None if self._at_punct(";") else self.parse_expr()
        self._expect_punct(";")
        cond = None if self._at_punct(";") else self.parse_expr()
        self._expect_punct(";")
        update = None if self._at_punct(")") else self.parse_expr()
        self._expect_punct(")")
        self.loop_depth += 1
        try:
            body = self.parse_stmt()
        finally:
            self.loop_depth -= 1
        return For(ForLoop(init, cond, update, body))

    # expressions ----------------------------------------------------------

    def parse_expr(self) -> Expr:
        return self._parse_assign()

    def _parse_assign(self) -> Expr:
        tok = self._peek()
        if tok is not None and tok.kind == "ident" and self._at_punct("=", 1):
            self._advance()
            self._advance()
            return Assign(tok.text, self._parse_assign())
        return self._parse_compare()

    def _parse_compare(self) -> Expr:
        left = self._parse_additive()
        while (tok := self._peek()) is not None \
                and tok.kind == "punct" and tok.text in COMPARISON_OPS:
            self._advance()
            left = Binary(tok.text, left, self._parse_additive())
        return left

    def _parse_additive(self) -> Expr:
        left = self._parse_unary()
        while (tok := self._peek()) is not None \
                and tok.kind == "punct" and tok.text in ADDITIVE_OPS:
            self._advance()
            left = Binary(tok.text, left, self._parse_unary())
        return left

    def _parse_unary(self) -> Expr:
        if self._at_punct("++"):
            self._advance()
            tok = self._peek()
            if tok is None or tok.kind != "ident":
                raise self._fail("an identifier after '++'")
            self._advance()
            return PreInc(tok.text)
        tok = self._peek()
        if tok is None:
            raise self._fail("an expression")
        if tok.kind == "int":
            self._advance()
            return IntLiteral(int(tok.text))
        if tok.kind == "ident":
            self._advance()
            if self._at_punct("++"):
                self._advance()
                return PostInc(tok.text)
            return Var(tok.text)
        if tok.kind == "punct" and tok.text == "(":
            self._advance()
            inner = self.parse_expr()
            self._expect_punct(")")
            return inner
        raise self._fail("an expression")


def parse_program(source: str) -> list[Stmt]:
    """Parse source text into a statement list.

    Empty header slots in `for` parse to absent fields, and a trailing
    `;` after a loop's closing brace parses as a separate Empty statement.
    """
    return _Parser(tokenize(source), len(source)).parse_program()


def parse_loop(source: str) -> ForLoop:
    """Parse source expected to contain exactly one top-level for loop
    (Empty statements around it are tolerated) and return that loop."""
    loops = [s for s in parse_program(source) if isinstance(s, For)]
    if len(loops) != 1:
        raise ParseError((0, len(source)), "exactly one top-level for loop")
    return loops[0].loop


def first_loop(program: list[Stmt]) -> ForLoop | None:
    for stmt in program:
        if isinstance(stmt, For):
            return stmt.loop
    return None


# ---------------------------------------------------------------------------
# Canonical renderer
# ---------------------------------------------------------------------------

_PREC_ASSIGN = 0
_PREC_COMPARE = 1
_PREC_ADDITIVE = 2
_PREC_UNARY = 3

_INDENT = "    "


def _expr_prec(e: Expr) -> int:
    if isinstance(e, Assign):
        return _PREC_ASSIGN
    if isinstance(e, Binary):
        return _PREC_COMPARE if e.op in COMPARISON_OPS else _PREC_ADDITIVE
    return _PREC_UNARY


def render_expr(e: Expr, min_prec: int = _PREC_ASSIGN) -> str:
    """Render an expression, inserting parentheses only where the
    canonical grammar requires them."""
    if isinstance(e, IntLiteral):
        out = str(e.value)
    elif isinstance(e, Var):
        out = e.name
    elif isinstance(e, PostInc):
        out = f"{e.target}++"
    elif isinstance(e, PreInc):
        out = f"++{e.target}"
    elif isinstance(e, Assign):
        out = f"{e.target} = {render_expr(e.value, _PREC_ASSIGN)}"
    elif isinstance(e, Binary):
        prec = _expr_prec(e)
        out = (f"{render_expr(e.left, prec)} {e.op} "
               f"{render_expr(e.right, prec + 1)}")
    else:
        raise TypeError(f"not an expression node: {e!r}")
    if _expr_prec(e) < min_prec:
        return f"({out})"
    return out


def _render_stmt(s: Stmt) -> list[str]:
    if isinstance(s, Empty):
        return [";"]
    if isinstance(s, Break):
        return ["break;"]
    if isinstance(s, Continue):
        return ["continue;"]
    if isinstance(s, ExprStmt):
        return [f"{render_expr(s.expr)};"]
    if isinstance(s, Block):
        if not s.body:
            return ["{ }"]
        lines = ["{"]
        for child in s.body:
            lines.extend(_INDENT + line for line in _render_stmt(child))
        lines.append("}")
        return lines
    if isinstance(s, For):
        loop = s.loop
        init = render_expr(loop.init) if loop.init is not None else ""
        cond = f" {render_expr(loop.cond)}" if loop.cond is not None else ""
        update = f" {render_expr(loop.update)}" if loop.update is not None else ""
        header = f"for ({init};{cond};{update})"
        body_lines = _render_stmt(loop.body)
        return [f"{header} {body_lines[0]}"] + body_lines[1:]
    raise TypeError(f"not a statement node: {s!r}")


def render(program: list[Stmt]) -> str:
    """Render a program in the canonical layout (round-trips through
    parse_program)."""
    lines: list[str] = []
    for stmt in program:
        lines.extend(_render_stmt(stmt))
    return "\n".join(lines) + ("\n" if lines else "")


def render_loop(loop: ForLoop) -> str:
    return "\n".join(_render_stmt(For(loop)))


# ---------------------------------------------------------------------------
# JSON shape
# ---------------------------------------------------------------------------

def ast_to_dict(node: Expr | Stmt | ForLoop) -> dict:
    """Serialize an AST node to the documented JSON shape: every node is
    an object with a "kind" key plus kind-specific fields; absent loop
    header slots serialize as null."""
    if isinstance(node, IntLiteral):
        return {"kind": "Int", "value": node.value}
    if isinstance(node, Var):
        return {"kind": "Var", "name": node.name}
    if isinstance(node, Binary):
        return {"kind": "Binary", "op": node.op,
                "left": ast_to_dict(node.left), "right": ast_to_dict(node.right)}
    if isinstance(node, Assign):
        return {"kind": "Assign", "target": node.target,
                "value": ast_to_dict(node.value)}
    if isinstance(node, PostInc):
        return {"kind": "PostInc", "target": node.target}
    if isinstance(node, PreInc):
        return {"kind": "PreInc", "target": node.target}
    if isinstance(node, ExprStmt):
        return {"kind": "ExprStmt", "expr": ast_to_dict(node.expr)}
    if isinstance(node, Block):
        return {"kind": "Block", "body": [ast_to_dict(s) for s in node.body]}
    if isinstance(node, For):
        return {"kind": "For", **ast_to_dict(node.loop)}
    if isinstance(node, ForLoop):
        return {
            "init": ast_to_dict(node.init) if node.init is not None else None,
            "cond": ast_to_dict(node.cond) if node.cond is not None else None,
            "update": ast_to_dict(node.update) if node.update is not None else None,
            "body": ast_to_dict(node.body),
        }
    if isinstance(node, Break):
        return {"kind": "Break"}
    if isinstance(node, Continue):
        return {"kind": "Continue"}
    if isinstance(node, Empty):
        return {"kind": "Empty"}
    raise TypeError(f"not an AST node: {node!r}")


def program_to_dict(program: list[Stmt]) -> dict:
    return {"kind": "Program", "body": [ast_to_dict(s) for s in program]}
