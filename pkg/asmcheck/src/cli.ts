#!/usr/bin/env node
/**
 * asm-verify command: prints jump counts for both loop variants and a
 * pass/skip/fail verdict. Exit codes: 0 pass, 1 fail or error, 3 skip.
 */

import { totalJumps, type JumpCount } from "./jumps.js";
import { verify, type VerifyResult } from "./verify.js";

const USAGE = `usage: microfor-asm-verify [--keep-artifacts] [--json]

Counts jump instructions in compiled kernels of the traditional and
micro for loop forms. Passes when the traditional kernel has strictly
more jumps at -O0; skips (exit 3) without a C compiler or off x86-64.`;

function formatCounts(prefix: string, variant: string, c: JumpCount): string {
  return (
    `${prefix} ${variant}: unconditional=${c.unconditional} ` +
    `conditional=${c.conditional} total=${totalJumps(c)}`
  );
}

function render(result: VerifyResult): string {
  const lines: string[] = [];
  for (const variant of ["traditional", "micro"] as const) {
    lines.push(formatCounts("fixture", variant, result.fixture[variant]));
  }
  if (result.compiler !== null) lines.push(`compiler: ${result.compiler}`);
  if (result.live !== null) {
    for (const variant of ["traditional", "micro"] as const) {
      lines.push(formatCounts("live", variant, result.live[variant]));
    }
  }
  if (result.parserRoundTrip !== null) {
    lines.push(`primary parser: ${result.parserRoundTrip}`);
  }
  if (result.skipReason !== null) lines.push(`skipped: ${result.skipReason}`);
  if (result.artifactsDir !== null) {
    lines.push(`artifacts: ${result.artifactsDir}`);
  }
  lines.push(`verdict: ${result.verdict}`);
  return lines.join("\n");
}

export function main(argv: string[]): number {
  let keepArtifacts = false;
  let json = false;
  for (const arg of argv) {
    if (arg === "--keep-artifacts") keepArtifacts = true;
    else if (arg === "--json") json = true;
    else if (arg === "--help" || arg === "-h") {
      console.log(USAGE);
      return 0;
    } else {
      console.error(`unknown argument: ${arg}\n${USAGE}`);
      return 2;
    }
  }
  let result: VerifyResult;
  try {
    result = verify(keepArtifacts);
  } catch (error) {
    console.error(`error: ${(error as Error).message}`);
    return 1;
  }
  console.log(json ? JSON.stringify(result, null, 2) : render(result));
  if (result.verdict === "skip") return 3;
  return result.verdict === "pass" ? 0 : 1;
}

process.exit(main(process.argv.slice(2)));
