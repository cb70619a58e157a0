/**
 * Bridge to the primary `microfor` toolkit, used strictly through its
 * command line interface: `parse` for canonical rendering and
 * `parse --emit-ast` for the JSON AST. MICROFOR_BIN overrides the
 * executable; `python3 -m microfor` is the fallback when the console
 * script is not on PATH.
 */

import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

export function primaryCommand(): string[] | null {
  const override = process.env.MICROFOR_BIN;
  if (override !== undefined && override !== "") return [override];
  if (runnable(["microfor"])) return ["microfor"];
  if (runnable(["python3", "-m", "microfor"])) {
    return ["python3", "-m", "microfor"];
  }
  return null;
}

function runnable(command: string[]): boolean {
  try {
    execFileSync(command[0], [...command.slice(1), "--help"], {
      stdio: "ignore",
      timeout: 30_000,
    });
    return true;
  } catch {
    return false;
  }
}

function runPrimary(command: string[], args: string[], source: string): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "microfor-src-"));
  try {
    const file = path.join(dir, "loop.src");
    fs.writeFileSync(file, source, "utf-8");
    return execFileSync(command[0], [...command.slice(1), ...args, file], {
      encoding: "utf-8",
      timeout: 60_000,
    });
  } finally {
    fs.rmSync(dir, { recursive: true, force: true });
  }
}

/** Canonical rendering of a statement, via `microfor parse`. */
export function canonicalize(command: string[], source: string): string {
  return runPrimary(command, ["parse"], source);
}

/** JSON AST of a statement, via `microfor parse --emit-ast`. */
export function parseToAst(command: string[], source: string): unknown {
  return JSON.parse(runPrimary(command, ["parse", "--emit-ast"], source));
}

export interface RoundTripResult {
  ok: boolean;
  canonical: string;
  detail: string;
}

/**
 * Checks that a loop statement survives the primary parser: it parses,
 * its canonical form re-parses to the same canonical form, and the AST
 * is a single for statement.
 */
export function loopRoundTripsThroughPrimary(
  command: string[],
  loopStatement: string,
): RoundTripResult {
  const canonical = canonicalize(command, loopStatement);
  const again = canonicalize(command, canonical);
  if (again !== canonical) {
    return { ok: false, canonical, detail: "canonical form is not stable" };
  }
  const ast = parseToAst(command, loopStatement) as {
    kind?: string;
    body?: Array<{ kind?: string }>;
  };
  const forNodes = (ast.body ?? []).filter((node) => node.kind === "For");
  if (ast.kind !== "Program" || forNodes.length !== 1) {
    return { ok: false, canonical, detail: "AST is not a single for loop" };
  }
  return { ok: true, canonical, detail: "parses and re-renders stably" };
}
