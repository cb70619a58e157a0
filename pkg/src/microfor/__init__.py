"""Toolkit for the micro for loop rewrite: parse counted loops, decide
when folding the update into the running condition is legal, perform
the rewrite (with optional compensation), interpret both forms to
compare behavior, model per-iteration cost, and benchmark or replay
timing comparisons.
"""

from .bench import (
    BenchConfig, EfficiencyRow, StatsSummary, efficiency, replay, run_pair,
    summarize, sweep,
)
from .cost_model import (
    CostModel, CycleDecomposition, JumpCycleRanges, Prediction,
    cycle_decomposition, fit_from_table, predict, theoretical_efficiency,
)
from .errors import MicroforError
from .loop_ast import (
    Assign, Binary, Block, Break, Continue, Empty, Expr, ExprStmt, For,
    ForLoop, IntLiteral, LexError, ParseError, PostInc, PreInc, Stmt, Token,
    Var, parse_loop, parse_program, render, render_expr, render_loop,
    tokenize,
)
from .semantics import (
    Env, Trace, eval_expr, free_variables, induction_of, run_loop,
    run_program,
)
from .transform import (
    Classification, EquivalenceReport, TransformOptions, TransformResult,
    Verdict, classify, equivalence_check, to_micro,
)

__version__ = "0.1.0"
