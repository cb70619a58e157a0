import { execFileSync } from "node:child_process";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { compileToAsm, findCompiler } from "../src/compiler.js";
import { countJumps, totalJumps } from "../src/jumps.js";
import { emitKernel, kernelFunctionName } from "../src/kernels.js";
import { hostIsX8664, verify } from "../src/verify.js";

const liveTarget = findCompiler() !== null && hostIsX8664();

const CLI = path.join(
  path.dirname(fileURLToPath(import.meta.url)),
  "..",
  "dist",
  "cli.js",
);

interface CliRun {
  status: number;
  stdout: string;
}

function runCli(args: string[], env?: Record<string, string>): CliRun {
  try {
    const stdout = execFileSync(process.execPath, [CLI, ...args], {
      encoding: "utf-8",
      env: env ?? process.env,
      timeout: 60_000,
    });
    return { status: 0, stdout };
  } catch (error) {
    const failure = error as { status?: number; stdout?: string };
    return { status: failure.status ?? 1, stdout: failure.stdout ?? "" };
  }
}

describe.runIf(liveTarget)("live assembly check", () => {
  it("gives the traditional kernel strictly more jumps at -O0", () => {
    const counts: Record<string, ReturnType<typeof countJumps>> = {};
    for (const variant of ["traditional", "micro"] as const) {
      const spec = { variant };
      const asm = compileToAsm(emitKernel(spec));
      counts[variant] = countJumps(asm, kernelFunctionName(spec));
    }
    expect(totalJumps(counts.traditional)).toBeGreaterThan(
      totalJumps(counts.micro),
    );
    expect(counts.micro.conditional).toBeGreaterThanOrEqual(1);
  });

  it("verify() passes and reports the compiler", () => {
    const result = verify();
    expect(result.verdict).toBe("pass");
    expect(result.compiler).toBeTruthy();
    expect(result.live).not.toBeNull();
    expect(result.fixture.traditional).toEqual({
      unconditional: 1,
      conditional: 1,
    });
  });

  it("cli exits 0 and prints the verdict", () => {
    const run = runCli([]);
    expect(run.status).toBe(0);
    expect(run.stdout).toContain("verdict: pass");
    expect(run.stdout).toContain(
      "fixture traditional: unconditional=1 conditional=1 total=2",
    );
    expect(run.stdout).toContain(
      "fixture micro: unconditional=0 conditional=1 total=1",
    );
  });

  it("cli --json emits machine-readable counts", () => {
    const run = runCli(["--json"]);
    const doc = JSON.parse(run.stdout);
    expect(doc.verdict).toBe("pass");
    expect(doc.live.micro.unconditional).toBe(0);
  });
});

describe("skip behavior", () => {
  it("cli exits 3 when no compiler can be found", () => {
    const run = runCli([], {
      PATH: "", // nothing discoverable
      MICROFOR_CC: "",
      CC: "",
    });
    expect(run.status).toBe(3);
    expect(run.stdout).toContain("verdict: skip");
    expect(run.stdout).toContain("no C compiler found");
    // the fixture half still ran
    expect(run.stdout).toContain("fixture micro");
  });

  it("cli rejects unknown flags with exit 2", () => {
    const run = runCli(["--bogus"]);
    expect(run.status).toBe(2);
  });

  it("cli --help exits 0", () => {
    const run = runCli(["--help"]);
    expect(run.status).toBe(0);
    expect(run.stdout).toContain("usage:");
  });
});
