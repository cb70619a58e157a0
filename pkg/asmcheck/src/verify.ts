/**
 * The full verification: fixture counts always run; the live half
 * compiles both emitted kernels at -O0 and requires the traditional
 * kernel to carry strictly more jump instructions than the micro one.
 * Missing compiler or a non-x86-64 host downgrades the live half to a
 * skip, never a failure.
 */

import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { compileToAsm, compilerVersion, findCompiler } from "./compiler.js";
import { emitKernel, kernelFunctionName, type KernelSpec } from "./kernels.js";
import {
  FIXTURE_LABEL,
  countJumps,
  totalJumps,
  type JumpCount,
} from "./jumps.js";
import { loopRoundTripsThroughPrimary, primaryCommand } from "./primary.js";
import { kernelLoopStatement } from "./kernels.js";

export type Verdict = "pass" | "skip" | "fail";

export interface VariantCounts {
  traditional: JumpCount;
  micro: JumpCount;
}

export interface VerifyResult {
  verdict: Verdict;
  fixture: VariantCounts;
  live: VariantCounts | null;
  compiler: string | null;
  skipReason: string | null;
  artifactsDir: string | null;
  parserRoundTrip: string | null; // null when the primary CLI is absent
}

const FIXTURES_DIR = new URL("../fixtures/", import.meta.url);

export function fixtureListing(variant: "traditional" | "micro"): string {
  return fs.readFileSync(
    new URL(`listing_${variant}.s`, FIXTURES_DIR),
    "utf-8",
  );
}

export function fixtureCounts(): VariantCounts {
  return {
    traditional: countJumps(fixtureListing("traditional"), FIXTURE_LABEL),
    micro: countJumps(fixtureListing("micro"), FIXTURE_LABEL),
  };
}

export function hostIsX8664(): boolean {
  return process.arch === "x64";
}

function checkPrimaryRoundTrip(): string | null {
  const command = primaryCommand();
  if (command === null) return null;
  for (const variant of ["traditional", "micro"] as const) {
    const loop = kernelLoopStatement(emitKernel({ variant }));
    const result = loopRoundTripsThroughPrimary(command, loop);
    if (!result.ok) {
      throw new Error(
        `kernel loop '${loop}' failed the primary parser check: ` +
          result.detail,
      );
    }
  }
  return "both kernel loop statements round-trip through the primary parser";
}

export function verify(keepArtifacts = false): VerifyResult {
  const fixture = fixtureCounts();
  const base = {
    fixture,
    live: null,
    compiler: null,
    skipReason: null,
    artifactsDir: null,
    parserRoundTrip: checkPrimaryRoundTrip(),
  };

  const compiler = findCompiler();
  if (compiler === null) {
    return {
      ...base,
      verdict: "skip",
      skipReason: "no C compiler found",
    };
  }
  if (!hostIsX8664()) {
    return {
      ...base,
      verdict: "skip",
      compiler: compilerVersion(compiler),
      skipReason: `host is ${process.arch}, not x86-64`,
    };
  }

  const artifactsDir = keepArtifacts
    ? fs.mkdtempSync(path.join(os.tmpdir(), "microfor-asm-"))
    : null;
  const live = {} as VariantCounts;
  for (const variant of ["traditional", "micro"] as const) {
    const spec: KernelSpec = { variant };
    const asm = compileToAsm(emitKernel(spec), {
      compiler,
      keepDir: artifactsDir === null
        ? undefined
        : path.join(artifactsDir, variant),
    });
    live[variant] = countJumps(asm, kernelFunctionName(spec));
  }
  const verdict: Verdict =
    totalJumps(live.traditional) > totalJumps(live.micro) ? "pass" : "fail";
  return {
    ...base,
    verdict,
    live,
    compiler: compilerVersion(compiler),
    artifactsDir,
  };
}
