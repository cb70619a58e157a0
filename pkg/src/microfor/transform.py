"""Legality analysis and rewriting of counted loops into the micro form.

The rewrite folds the update into the running condition: a loop shaped
`for (v = e0; v < e1; v++) body` becomes `for (v = e0; v++ < e1;) body`.
It is only sound as-is when nothing observes v, because the folded
update fires before the body instead of after it, so the body sees v
shifted by +1 and the value after exit is one higher.

Only the exact canonical shape is eligible: init `v = e0`, condition
`v < e1`, update `v++` or `++v`, where e0 does not read v and e1 is a
plain variable or literal other than v (and is therefore loop-invariant).
Anything else (`<=`, `!=`, strides, decrements, absent slots, an update
of some other variable) is refused, as is any body that writes v.

Body reads of v can be compensated by rewriting them to `(v - 1)`, and
an optional post-loop fixup `v = v - 1;` restores the exit value.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass, field

from .errors import MicroforError
from .loop_ast import (
    Assign, Binary, Block, Expr, ExprStmt, For, ForLoop, IntLiteral,
    PostInc, PreInc, Stmt, Var,
)
from .semantics import (
    DEFAULT_FUEL, Env, Trace, free_variables, induction_of, run_loop,
    run_program,
)


class Verdict(str, enum.Enum):
    CANONICAL_EXACT = "CanonicalExact"
    COMPENSABLE_BODY_USE = "CompensableBodyUse"
    INDUCTION_READ_AFTER_LOOP = "InductionReadAfterLoop"
    NOT_CANONICAL = "NotCanonical"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reason: str
    induction: str | None = None

    def __post_init__(self):
        if self.verdict is Verdict.NOT_CANONICAL and not self.reason:
            raise ValueError("NotCanonical requires a reason")

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "reason": self.reason,
                "induction": self.induction}


@dataclass(frozen=True)
class TransformOptions:
    """compensate rewrites body reads of the induction variable to
    `(v - 1)`; post_fixup appends `v = v - 1;` after the loop so the
    exit value matches the original's."""

    compensate: bool = False
    post_fixup: bool = False


@dataclass(frozen=True)
class TransformResult:
    loop: ForLoop
    fixup: Stmt | None = None


class NotTransformableError(MicroforError):
    def __init__(self, classification: Classification):
        self.classification = classification
        super().__init__(
            f"loop is not transformable ({classification.verdict.value}): "
            f"{classification.reason}")


class BodyWritesInductionError(MicroforError):
    def __init__(self, induction: str):
        self.induction = induction
        super().__init__(
            f"loop body writes the induction variable {induction!r}; "
            "folding the update into the condition would change behavior")


# ---------------------------------------------------------------------------
# Read/write detection
# ---------------------------------------------------------------------------

def _expr_reads(e: Expr | None, name: str) -> bool:
    if e is None:
        return False
    if isinstance(e, Var):
        return e.name == name
    if isinstance(e, (PostInc, PreInc)):
        return e.target == name  # increments read the old value
    if isinstance(e, Assign):
        return _expr_reads(e.value, name)
    if isinstance(e, Binary):
        return _expr_reads(e.left, name) or _expr_reads(e.right, name)
    return False


def _expr_writes(e: Expr | None, name: str) -> bool:
    if e is None:
        return False
    if isinstance(e, (PostInc, PreInc)):
        return e.target == name
    if isinstance(e, Assign):
        return e.target == name or _expr_writes(e.value, name)
    if isinstance(e, Binary):
        return _expr_writes(e.left, name) or _expr_writes(e.right, name)
    return False


def _stmt_walk(s: Stmt, pred) -> bool:
    if isinstance(s, ExprStmt):
        return pred(s.expr)
    if isinstance(s, Block):
        return any(_stmt_walk(child, pred) for child in s.body)
    if isinstance(s, For):
        loop = s.loop
        return (pred(loop.init) or pred(loop.cond) or pred(loop.update)
                or _stmt_walk(loop.body, pred))
    return False


def body_reads(body: Stmt, name: str) -> bool:
    return _stmt_walk(body, lambda e: _expr_reads(e, name))


def body_writes(body: Stmt, name: str) -> bool:
    return _stmt_walk(body, lambda e: _expr_writes(e, name))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def _canonical_mismatch(loop: ForLoop) -> str | None:
    """Return the first reason the header is not canonical, or None.

    Checked in init, update, condition order, so a non-unit update is
    reported even when the comparison is also wrong.
    """
    if loop.init is None:
        return "init is absent"
    if not isinstance(loop.init, Assign):
        return "init is not an assignment to a single variable"
    v = loop.init.target
    if _expr_reads(loop.init.value, v):
        return "init expression reads the induction variable"
    if loop.update is None:
        return "update is absent"
    if not isinstance(loop.update, (PostInc, PreInc)):
        return "update is not unit increment"
    if loop.update.target != v:
        return "update targets a different variable than init"
    if loop.cond is None:
        return "condition is absent"
    if not isinstance(loop.cond, Binary) or loop.cond.op not in (
            "<", "<=", ">", ">=", "==", "!="):
        return "condition is not a comparison"
    if loop.cond.op != "<":
        return "comparison is not <"
    if not isinstance(loop.cond.left, Var) or loop.cond.left.name != v:
        return "condition does not test the induction variable"
    bound = loop.cond.right
    if isinstance(bound, Var):
        if bound.name == v:
            return "bound expression reads the induction variable"
    elif not isinstance(bound, IntLiteral):
        return "bound expression is not a plain variable or literal"
    return None


def classify(loop: ForLoop,
             context_reads_induction: bool = False) -> Classification:
    """Decide whether (and how) the micro rewrite applies to a loop.

    context_reads_induction is the caller's claim about code after the
    loop; this function has no cross-statement dataflow view of its own.
    """
    mismatch = _canonical_mismatch(loop)
    induction = loop.init.target if isinstance(loop.init, Assign) else None
    if mismatch is not None:
        return Classification(Verdict.NOT_CANONICAL, mismatch, induction)
    v = induction  # canonical, so init is an Assign
    assert v is not None
    if context_reads_induction:
        return Classification(
            Verdict.INDUCTION_READ_AFTER_LOOP,
            "code after the loop reads the induction variable, whose exit "
            "value the rewrite shifts by +1", v)
    if body_reads(loop.body, v):
        return Classification(
            Verdict.COMPENSABLE_BODY_USE,
            "the body reads the induction variable, which the rewrite "
            "shifts by +1 unless compensated", v)
    return Classification(
        Verdict.CANONICAL_EXACT,
        "canonical counted loop; the induction variable is not observed", v)


# ---------------------------------------------------------------------------
# Rewriting
# ---------------------------------------------------------------------------

def _compensate_expr(e: Expr, name: str) -> Expr:
    if isinstance(e, Var):
        if e.name == name:
            return Binary("-", Var(name), IntLiteral(1))
        return e
    if isinstance(e, Assign):
        return Assign(e.target, _compensate_expr(e.value, name))
    if isinstance(e, Binary):
        return Binary(e.op, _compensate_expr(e.left, name),
                      _compensate_expr(e.right, name))
    return e


def _compensate_stmt(s: Stmt, name: str) -> Stmt:
    if isinstance(s, ExprStmt):
        return ExprStmt(_compensate_expr(s.expr, name))
    if isinstance(s, Block):
        return Block(tuple(_compensate_stmt(child, name) for child in s.body))
    if isinstance(s, For):
        loop = s.loop
        return For(ForLoop(
            _compensate_expr(loop.init, name) if loop.init is not None else None,
            _compensate_expr(loop.cond, name) if loop.cond is not None else None,
            _compensate_expr(loop.update, name) if loop.update is not None else None,
            _compensate_stmt(loop.body, name)))
    return s


def to_micro(loop: ForLoop,
             opts: TransformOptions = TransformOptions()) -> TransformResult:
    """Rewrite a canonical loop into the micro form.

    Raises NotTransformableError unless the loop classifies as
    CanonicalExact, or as CompensableBodyUse with opts.compensate set.
    Bodies that write the induction variable are refused outright.
    """
    c = classify(loop, context_reads_induction=False)
    if c.verdict is Verdict.NOT_CANONICAL:
        raise NotTransformableError(c)
    v = c.induction
    assert v is not None
    if body_writes(loop.body, v):
        raise BodyWritesInductionError(v)
    if c.verdict is Verdict.COMPENSABLE_BODY_USE and not opts.compensate:
        raise NotTransformableError(c)

    body = _compensate_stmt(loop.body, v) if opts.compensate else loop.body
    micro = ForLoop(init=loop.init,
                    cond=Binary("<", PostInc(v), loop.cond.right),
                    update=None,
                    body=body)
    fixup = None
    if opts.post_fixup:
        fixup = ExprStmt(Assign(v, Binary("-", Var(v), IntLiteral(1))))
    return TransformResult(loop=micro, fixup=fixup)


# ---------------------------------------------------------------------------
# Interpreter-backed equivalence checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampleCheck:
    n: int
    iterations_equal: bool
    visible_equal: bool
    final_equal: bool
    body_effects_equal: bool


@dataclass(frozen=True)
class EquivalenceReport:
    rows: tuple[SampleCheck, ...] = field(default_factory=tuple)

    @property
    def all_iterations_equal(self) -> bool:
        return all(r.iterations_equal for r in self.rows)

    @property
    def all_body_effects_equal(self) -> bool:
        return all(r.body_effects_equal for r in self.rows)

    @property
    def fully_equivalent(self) -> bool:
        return all(r.iterations_equal and r.visible_equal and r.final_equal
                   and r.body_effects_equal for r in self.rows)

    def to_dict(self) -> dict:
        return {"rows": [dataclasses.asdict(r) for r in self.rows]}


def _run_sample(loop: ForLoop, names: set[str], induction: str,
                bound_var: str, n: int, fixup: Stmt | None,
                fuel: int) -> tuple[Trace, int, Env]:
    env: Env = {name: 0 for name in names}
    env[bound_var] = n
    trace = run_loop(loop, env, induction, fuel=fuel)
    if fixup is not None:
        run_program([fixup], env, fuel=fuel)
    return trace, env[induction], env


def equivalence_check(original: ForLoop, transformed: ForLoop,
                      samples: list[int], *, bound_var: str = "n",
                      transformed_fixup: Stmt | None = None,
                      fuel: int = DEFAULT_FUEL) -> EquivalenceReport:
    """Run both loops on each sample bound and compare what they did.

    Every free variable starts at 0 except bound_var, which takes the
    sample value. Body effects are the non-induction bindings at exit;
    transformed_fixup (if given) runs after the transformed loop before
    its exit value is read, so a post-loop fixup can be validated too.
    """
    induction = induction_of(original)
    if induction is None:
        raise ValueError("cannot determine the induction variable "
                         "of the original loop")
    names = free_variables(original) | free_variables(transformed)
    rows = []
    for n in samples:
        o_trace, o_final, o_env = _run_sample(
            original, names, induction, bound_var, n, None, fuel)
        t_trace, t_final, t_env = _run_sample(
            transformed, names, induction, bound_var, n, transformed_fixup, fuel)
        o_effects = {k: v for k, v in o_env.items() if k != induction}
        t_effects = {k: v for k, v in t_env.items() if k != induction}
        rows.append(SampleCheck(
            n=n,
            iterations_equal=o_trace.iterations == t_trace.iterations,
            visible_equal=o_trace.visible == t_trace.visible,
            final_equal=o_final == t_final,
            body_effects_equal=o_effects == t_effects,
        ))
    return EquivalenceReport(tuple(rows))
