"""Command line entry point.

Subcommands: parse, analyze, transform, interpret, predict, bench,
stats, asm-verify, report. Every subcommand supports --json. Exit
codes: 0 success, 1 internal error, 2 bad usage or input, 3 check
skipped (asm-verify without a usable compiler/host).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import asmcheck, bench, loop_ast, report, semantics, transform
from .cost_model import CostModel, cycle_decomposition, predict, \
    theoretical_efficiency
from .errors import MicroforError
from .reference_data import (
    THEORETICAL_ROWS, data_path, default_cost_model,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_SKIPPED = 3


def _read_source(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise MicroforError("config file must hold a JSON object")
    return cfg


def _resolve_model(args, config: dict) -> CostModel:
    if getattr(args, "model", None):
        with open(args.model, encoding="utf-8") as fh:
            return CostModel.from_dict(json.load(fh))
    if "model" in config:
        return CostModel.from_dict(config["model"])
    return default_cost_model()


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_parse(args, config) -> int:
    program = loop_ast.parse_program(_read_source(args.file))
    if args.emit_ast or args.json:
        print(json.dumps(loop_ast.program_to_dict(program), indent=2))
    else:
        print(loop_ast.render(program), end="")
    return EXIT_OK


def _find_loop(program: list[loop_ast.Stmt], path: str) -> loop_ast.ForLoop:
    loop = loop_ast.first_loop(program)
    if loop is None:
        raise MicroforError(f"{path}: no top-level for loop found")
    return loop


def _cmd_analyze(args, config) -> int:
    program = loop_ast.parse_program(_read_source(args.file))
    loop = _find_loop(program, args.file)
    c = transform.classify(loop, context_reads_induction=args.context_reads)
    print(json.dumps(c.to_dict(), indent=2))
    return EXIT_OK


def _cmd_transform(args, config) -> int:
    program = loop_ast.parse_program(_read_source(args.file))
    loop = _find_loop(program, args.file)
    opts = transform.TransformOptions(compensate=args.compensate,
                                      post_fixup=args.post_fixup)
    try:
        result = transform.to_micro(loop, opts)
    except (transform.NotTransformableError,
            transform.BodyWritesInductionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    rewritten: list[loop_ast.Stmt] = []
    replaced = False
    for stmt in program:
        if not replaced and isinstance(stmt, loop_ast.For):
            rewritten.append(loop_ast.For(result.loop))
            if result.fixup is not None:
                rewritten.append(result.fixup)
            replaced = True
        else:
            rewritten.append(stmt)
    output = loop_ast.render(rewritten)
    if args.output:
        Path(args.output).write_text(output, encoding="utf-8")
        _emit(args, {"output": args.output,
                     "source": output}, f"wrote {args.output}\n")
    elif args.json:
        print(json.dumps({"source": output}, indent=2))
    else:
        print(output, end="")
    return EXIT_OK


def _cmd_interpret(args, config) -> int:
    program = loop_ast.parse_program(_read_source(args.file))
    loop = _find_loop(program, args.file)
    env: semantics.Env = {}
    for binding in args.bind or []:
        name, _, value = binding.partition("=")
        if not name or not value.lstrip("-").isdigit():
            raise MicroforError(f"bad --bind {binding!r}, expected name=int")
        env[name] = int(value)
    induction = args.induction or semantics.induction_of(loop)
    if induction is None:
        raise MicroforError("cannot infer the induction variable; "
                            "pass --induction")
    prefix = []
    for stmt in program:
        if isinstance(stmt, loop_ast.For):
            break
        prefix.append(stmt)
    semantics.run_program(prefix, env, fuel=args.fuel)
    trace = semantics.run_loop(loop, env, induction, fuel=args.fuel)
    print(json.dumps(trace.to_dict()))
    return EXIT_OK


def _cmd_predict(args, config) -> int:
    model = _resolve_model(args, config)
    if args.table_4:
        text = report.theoretical_table_csv(
            [predict(model, n) for n, _, _ in THEORETICAL_ROWS])
        if args.csv:
            Path(args.csv).write_text(text, encoding="utf-8")
            print(f"wrote {args.csv}")
        else:
            print(text, end="")
        return EXIT_OK
    if args.n is None:
        raise MicroforError("pass --n <count> or --table-4")
    p = predict(model, int(float(args.n)))
    payload = {"n": p.n, "t_micro_s": p.t_micro,
               "t_traditional_s": p.t_traditional,
               "difference_s": p.difference,
               "efficiency_pct": theoretical_efficiency(model)}
    if args.clock_hz:
        d = cycle_decomposition(model, float(args.clock_hz))
        payload["cycles_traditional"] = d.cycles_traditional
        payload["cycles_micro"] = d.cycles_micro
        payload["within_jump_range"] = d.within_jump_range
    text = (f"n: {p.n}\n"
            f"t_micro_s: {p.t_micro:.9f}\n"
            f"t_traditional_s: {p.t_traditional:.9f}\n"
            f"difference_s: {p.difference:.9f}\n"
            f"efficiency_pct: {theoretical_efficiency(model):.2f}\n")
    _emit(args, payload, text)
    return EXIT_OK


def _parse_n_list(raw: str) -> list[int]:
    try:
        return [int(float(part)) for part in raw.split(",") if part]
    except ValueError:
        raise MicroforError(f"bad --n value {raw!r}") from None


def _cmd_bench(args, config) -> int:
    defaults = config.get("bench", {})
    reps = args.reps if args.reps is not None else int(defaults.get("reps", 5))
    warmup = args.warmup if args.warmup is not None \
        else int(defaults.get("warmup", 1))
    body = args.body or defaults.get("body", "accumulator")
    n_values = _parse_n_list(args.n)
    result = bench.sweep(n_values, reps=reps, warmup=warmup, body=body)
    if not result.rows:
        for entry in result.entries:
            print(f"error: n={entry.n}: {entry.error}", file=sys.stderr)
        return EXIT_USAGE
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            bench.write_rows_csv(result.rows, fh)
    lines = []
    for entry in result.entries:
        if entry.row is not None:
            r = entry.row
            lines.append(f"n={r.n} t_for_ms={r.t_for_ms:.3f} "
                         f"t_micro_ms={r.t_micro_ms:.3f} "
                         f"efficiency_pct={r.efficiency_pct:.2f}")
        else:
            lines.append(f"n={entry.n} failed: {entry.error}")
    lines.append(report.stats_block(result.summary).rstrip())
    payload = {
        "rows": [vars(e.row) if e.row else {"n": e.n, "error": e.error}
                 for e in result.entries],
        "summary": result.summary.to_dict() if result.summary else None,
    }
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_stats(args, config) -> int:
    if bool(args.input) == bool(args.replay):
        raise MicroforError("pass exactly one of --input or --replay")
    if args.replay:
        source = data_path("recorded_timings.csv").read_text(encoding="utf-8") \
            if args.replay == "bundled" else _read_source(args.replay)
        rows, summary = bench.replay(
            bench.read_timings_csv(source.splitlines()))
        row_lines = [f"n={r.n} efficiency_pct={r.efficiency_pct:.2f}"
                     for r in rows]
        payload = {"rows": [vars(r) for r in rows],
                   "summary": summary.to_dict() if summary else None}
        text = "\n".join(row_lines + [report.stats_block(summary).rstrip()])
    else:
        values = bench.read_column_csv(
            _read_source(args.input).splitlines())
        summary = bench.summarize(values)
        payload = {"count": len(values), "summary": summary.to_dict()}
        text = (f"count: {len(values)}\n"
                + report.stats_block(summary).rstrip())
    _emit(args, payload, text + "\n")
    return EXIT_OK


def _cmd_asm_verify(args, config) -> int:
    result = asmcheck.verify(keep_artifacts=args.keep_artifacts)
    lines = []
    for variant, count in result.fixture.items():
        lines.append(f"fixture {variant}: unconditional={count.unconditional} "
                     f"conditional={count.conditional}")
    if result.live is not None:
        lines.append(f"compiler: {result.compiler}")
        for variant, count in result.live.items():
            lines.append(f"live {variant}: unconditional={count.unconditional} "
                         f"conditional={count.conditional} total={count.total}")
    if result.skip_reason:
        lines.append(f"skipped: {result.skip_reason}")
    if result.artifacts_dir:
        lines.append(f"artifacts: {result.artifacts_dir}")
    lines.append(f"verdict: {result.verdict}")
    _emit(args, result.to_dict(), "\n".join(lines) + "\n")
    if result.verdict == "skip":
        return EXIT_SKIPPED
    return EXIT_OK if result.verdict == "pass" else EXIT_INTERNAL


def _cmd_report(args, config) -> int:
    model = _resolve_model(args, config)
    timings = None
    if args.replay and args.replay != "bundled":
        timings = bench.read_timings_csv(
            _read_source(args.replay).splitlines())
    bundle = report.build_bundle(model=model, timings=timings)
    written = report.write_report(bundle, args.out_dir)
    payload = {"files": [str(p) for p in written]}
    _emit(args, payload, "\n".join(f"wrote {p}" for p in written) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument grammar
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="microfor",
        description="Analyze, rewrite, interpret, model, and benchmark "
                    "counted for loops in their traditional and "
                    "condition-folded micro forms.")
    parser.add_argument("--config", metavar="FILE",
                        help="JSON config pinning the cost model and bench "
                             "defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true",
                       help="machine-readable JSON output")
        return p

    p = add("parse", _cmd_parse, "parse a source file and print it "
                                 "canonically or as an AST")
    p.add_argument("file")
    p.add_argument("--emit-ast", action="store_true",
                   help="print the AST as JSON")

    p = add("analyze", _cmd_analyze,
            "classify the first for loop for rewrite legality (JSON)")
    p.add_argument("file")
    p.add_argument("--context-reads", action="store_true",
                   help="declare that code after the loop reads the "
                        "induction variable")

    p = add("transform", _cmd_transform,
            "rewrite the first for loop into the micro form")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write the result here instead "
                                          "of stdout")
    p.add_argument("--compensate", action="store_true",
                   help="rewrite body reads of the induction variable "
                        "to (v - 1)")
    p.add_argument("--post-fixup", action="store_true",
                   help="append v = v - 1; after the loop")

    p = add("interpret", _cmd_interpret,
            "run the first for loop and emit its trace as JSON")
    p.add_argument("file")
    p.add_argument("--bind", action="append", metavar="NAME=INT",
                   help="bind a variable before running (repeatable)")
    p.add_argument("--induction", help="induction variable to trace "
                                       "(default: inferred)")
    p.add_argument("--fuel", type=int, default=semantics.DEFAULT_FUEL,
                   help="iteration budget before giving up")

    p = add("predict", _cmd_predict,
            "evaluate the per-iteration cost model")
    p.add_argument("--n", help="iteration count to predict")
    p.add_argument("--table-4", action="store_true",
                   help="regenerate the bundled 7-row theoretical table "
                        "as CSV")
    p.add_argument("--model", metavar="FILE",
                   help="JSON file with per_iter_time_traditional and "
                        "per_iter_time_micro")
    p.add_argument("--clock-hz", help="also show the per-iteration cycle "
                                      "view at this clock")
    p.add_argument("--csv", metavar="FILE", help="write CSV here")

    p = add("bench", _cmd_bench, "time both loop forms live")
    p.add_argument("--n", required=True,
                   help="iteration count, or comma-separated list for a "
                        "sweep (e.g. 1e6,2e6)")
    p.add_argument("--reps", type=int, help="timed repetitions (default 5)")
    p.add_argument("--warmup", type=int, help="warmup repetitions (default 1)")
    p.add_argument("--body", choices=("accumulator", "empty"),
                   help="loop body (default accumulator)")
    p.add_argument("--csv", metavar="FILE", help="write rows as CSV")

    p = add("stats", _cmd_stats, "summarize efficiency percentages")
    p.add_argument("--input", metavar="FILE",
                   help="single-column CSV of efficiency percentages")
    p.add_argument("--replay", metavar="FILE",
                   help="CSV with n,t_for_ms,t_micro_ms to replay through "
                        "the pipeline ('bundled' for the packaged recording)")

    p = add("asm-verify", _cmd_asm_verify,
            "count jump instructions in compiled kernels of both forms")
    p.add_argument("--keep-artifacts", action="store_true",
                   help="keep the generated C and assembly files")

    p = add("report", _cmd_report,
            "write the full report (markdown, CSVs, SVG)")
    p.add_argument("--out-dir", default="report", help="output directory")
    p.add_argument("--replay", metavar="FILE", default="bundled",
                   help="timings CSV to replay (default: bundled recording)")
    p.add_argument("--model", metavar="FILE", help="cost model JSON")

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        config = _load_config(args.config)
        return args.handler(args, config)
    except MicroforError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
