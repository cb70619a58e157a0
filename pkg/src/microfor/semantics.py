"""Reference interpreter for the loop language.

This is the ground-truth oracle the transformer is checked against: it
runs loops step by step over arbitrary-precision integers and records
what the induction variable looks like from inside the body. It is
deliberately slow and simple; timing comparisons belong to `bench`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import MicroforError
from .loop_ast import (
    Assign, Binary, Block, Break, Continue, Empty, Expr, ExprStmt, For,
    ForLoop, IntLiteral, PostInc, PreInc, Stmt, Var,
)

# Interpreter runs are desk-scale; anything longer is treated as runaway.
DEFAULT_FUEL = 10_000_000

Env = dict[str, int]


class UnboundVariableError(MicroforError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable {name!r}")


class FuelExhaustedError(MicroforError):
    """Raised when a run exceeds its iteration budget; the loop is most
    likely infinite (for example, an absent running condition with no
    break)."""


@dataclass
class Trace:
    """Observed behavior of one loop run.

    visible holds the induction variable's value at the top of each body
    execution, i.e. after the running condition (and any side effect it
    carries) has been evaluated.
    """

    visible: list[int] = field(default_factory=list)
    iterations: int = 0
    final: int = 0

    def __post_init__(self):
        if len(self.visible) != self.iterations:
            raise ValueError("len(visible) must equal iterations")

    def to_dict(self) -> dict:
        return {"visible": list(self.visible), "iterations": self.iterations,
                "final": self.final}


def lookup(env: Env, name: str) -> int:
    try:
        return env[name]
    except KeyError:
        raise UnboundVariableError(name) from None


def eval_expr(e: Expr, env: Env) -> int:
    """Evaluate an expression, updating env in place.

    Post-increment yields the old value and stores old + 1; pre-increment
    stores and yields old + 1; comparisons yield 0 or 1; assignment
    yields the assigned value.
    """
    if isinstance(e, IntLiteral):
        return e.value
    if isinstance(e, Var):
        return lookup(env, e.name)
    if isinstance(e, PostInc):
        old = lookup(env, e.target)
        env[e.target] = old + 1
        return old
    if isinstance(e, PreInc):
        new = lookup(env, e.target) + 1
        env[e.target] = new
        return new
    if isinstance(e, Assign):
        value = eval_expr(e.value, env)
        env[e.target] = value
        return value
    if isinstance(e, Binary):
        left = eval_expr(e.left, env)
        right = eval_expr(e.right, env)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "<":
            return int(left < right)
        if e.op == "<=":
            return int(left <= right)
        if e.op == ">":
            return int(left > right)
        if e.op == ">=":
            return int(left >= right)
        if e.op == "==":
            return int(left == right)
        if e.op == "!=":
            return int(left != right)
        raise ValueError(f"unknown operator {e.op!r}")
    raise TypeError(f"not an expression node: {e!r}")


class _Signal(enum.Enum):
    NORMAL = 0
    BREAK = 1
    CONTINUE = 2


@dataclass
class _Budget:
    remaining: int

    def spend(self) -> None:
        if self.remaining <= 0:
            raise FuelExhaustedError("iteration budget exhausted; "
                                     "the loop is probably infinite")
        self.remaining -= 1


def _exec_stmt(s: Stmt, env: Env, budget: _Budget) -> _Signal:
    if isinstance(s, (Empty,)):
        return _Signal.NORMAL
    if isinstance(s, Break):
        return _Signal.BREAK
    if isinstance(s, Continue):
        return _Signal.CONTINUE
    if isinstance(s, ExprStmt):
        eval_expr(s.expr, env)
        return _Signal.NORMAL
    if isinstance(s, Block):
        for child in s.body:
            sig = _exec_stmt(child, env, budget)
            if sig is not _Signal.NORMAL:
                return sig
        return _Signal.NORMAL
    if isinstance(s, For):
        _run_for(s.loop, env, budget, on_body=None)
        return _Signal.NORMAL
    raise TypeError(f"not a statement node: {s!r}")


def _run_for(loop: ForLoop, env: Env, budget: _Budget, on_body) -> None:
    # An absent condition counts as always-true: the loop ends only via
    # break or the budget. A false condition exits before the body runs,
    # but any side effect inside the condition has already happened.
    if loop.init is not None:
        eval_expr(loop.init, env)
    while True:
        if loop.cond is not None and eval_expr(loop.cond, env) == 0:
            return
        budget.spend()
        if on_body is not None:
            on_body()
        sig = _exec_stmt(loop.body, env, budget)
        if sig is _Signal.BREAK:
            return
        # CONTINUE falls through to the update, exactly like NORMAL does.
        if loop.update is not None:
            eval_expr(loop.update, env)


def run_loop(loop: ForLoop, env: Env, induction: str,
             fuel: int = DEFAULT_FUEL) -> Trace:
    """Run one loop to completion and trace the induction variable.

    env must bind every free variable the loop mentions, except ones the
    init slot assigns before first use. fuel bounds the total number of
    iterations across this loop and any nested ones.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    budget = _Budget(fuel)
    visible: list[int] = []
    _run_for(loop, env, budget,
             on_body=lambda: visible.append(lookup(env, induction)))
    return Trace(visible=visible, iterations=len(visible),
                 final=lookup(env, induction))


def run_program(program: list[Stmt], env: Env, fuel: int = DEFAULT_FUEL) -> Env:
    """Execute a statement list against env (in place) and return it."""
    budget = _Budget(fuel)
    for stmt in program:
        _exec_stmt(stmt, env, budget)
    return env


def induction_of(loop: ForLoop) -> str | None:
    """Best-effort guess at the loop-control variable: the init target,
    else the update target, else an increment target inside the
    condition (which is where the micro form keeps it)."""
    if isinstance(loop.init, Assign):
        return loop.init.target
    if isinstance(loop.update, (PostInc, PreInc)):
        return loop.update.target
    if isinstance(loop.update, Assign):
        return loop.update.target
    if loop.cond is not None:
        found = _find_increment_target(loop.cond)
        if found is not None:
            return found
    return None


def _find_increment_target(e: Expr) -> str | None:
    if isinstance(e, (PostInc, PreInc)):
        return e.target
    if isinstance(e, Binary):
        return _find_increment_target(e.left) or _find_increment_target(e.right)
    if isinstance(e, Assign):
        return _find_increment_target(e.value)
    return None


def free_variables(node: Expr | Stmt | ForLoop) -> set[str]:
    """Every identifier the node mentions, whether read or written."""
    names: set[str] = set()

    def walk_expr(e: Expr | None) -> None:
        if e is None:
            return
        if isinstance(e, Var):
            names.add(e.name)
        elif isinstance(e, (PostInc, PreInc)):
            names.add(e.target)
        elif isinstance(e, Assign):
            names.add(e.target)
            walk_expr(e.value)
        elif isinstance(e, Binary):
            walk_expr(e.left)
            walk_expr(e.right)

    def walk_stmt(s: Stmt) -> None:
        if isinstance(s, ExprStmt):
            walk_expr(s.expr)
        elif isinstance(s, Block):
            for child in s.body:
                walk_stmt(child)
        elif isinstance(s, For):
            walk_loop(s.loop)

    def walk_loop(loop: ForLoop) -> None:
        walk_expr(loop.init)
        walk_expr(loop.cond)
        walk_expr(loop.update)
        walk_stmt(loop.body)

    if isinstance(node, ForLoop):
        walk_loop(node)
    elif isinstance(node, Stmt):
        walk_stmt(node)
    else:
        walk_expr(node)
    return names
