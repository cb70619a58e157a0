"""Hypothesis strategies generating well-formed ASTs for round-trip and
transform property tests. Depth-bounded so rendered programs stay small.
"""

from hypothesis import strategies as st

from microfor.loop_ast import (
    Assign, Binary, Block, Break, Continue, Empty, ExprStmt, For, ForLoop,
    IntLiteral, PostInc, PreInc, Var,
)

IDENTIFIERS = ("i", "j", "n", "s", "a", "b2", "_tmp")
BINARY_OPS = ("<", "<=", ">", ">=", "==", "!=", "+", "-")

idents = st.sampled_from(IDENTIFIERS)


@st.composite
def exprs(draw, depth: int = 3):
    if depth <= 0:
        choices = ["int", "var", "postinc", "preinc"]
    else:
        choices = ["int", "var", "postinc", "preinc",
                   "binary", "binary", "assign"]
    kind = draw(st.sampled_from(choices))
    if kind == "int":
        return IntLiteral(draw(st.integers(min_value=0, max_value=999)))
    if kind == "var":
        return Var(draw(idents))
    if kind == "postinc":
        return PostInc(draw(idents))
    if kind == "preinc":
        return PreInc(draw(idents))
    if kind == "assign":
        return Assign(draw(idents), draw(exprs(depth=depth - 1)))
    return Binary(draw(st.sampled_from(BINARY_OPS)),
                  draw(exprs(depth=depth - 1)),
                  draw(exprs(depth=depth - 1)))


@st.composite
def stmts(draw, depth: int = 3, in_loop: bool = False):
    choices = ["empty", "expr", "expr"]
    if in_loop:
        choices += ["break", "continue"]
    if depth > 0:
        choices += ["block", "for"]
    kind = draw(st.sampled_from(choices))
    if kind == "empty":
        return Empty()
    if kind == "break":
        return Break()
    if kind == "continue":
        return Continue()
    if kind == "expr":
        return ExprStmt(draw(exprs(depth=min(depth, 3))))
    if kind == "block":
        body = draw(st.lists(stmts(depth=depth - 1, in_loop=in_loop),
                             max_size=3))
        return Block(tuple(body))
    header = st.none() | exprs(depth=2)
    return For(ForLoop(draw(header), draw(header), draw(header),
                       draw(stmts(depth=depth - 1, in_loop=True))))


@st.composite
def programs(draw, depth: int = 6):
    return draw(st.lists(stmts(depth=depth, in_loop=False), max_size=4))
