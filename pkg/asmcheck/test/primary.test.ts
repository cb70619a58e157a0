import { describe, expect, it } from "vitest";

import { emitKernel, kernelLoopStatement } from "../src/kernels.js";
import {
  canonicalize,
  loopRoundTripsThroughPrimary,
  parseToAst,
  primaryCommand,
} from "../src/primary.js";

const primary = primaryCommand();

describe.runIf(primary !== null)("primary toolkit integration", () => {
  const command = primary as string[];

  it("kernel loop statements round-trip through the primary parser", () => {
    for (const variant of ["traditional", "micro"] as const) {
      const loop = kernelLoopStatement(emitKernel({ variant }));
      const result = loopRoundTripsThroughPrimary(command, loop);
      expect(result.ok, `${variant}: ${result.detail}`).toBe(true);
    }
  });

  it("canonicalizes the traditional header to the expected layout", () => {
    const canonical = canonicalize(command, "for( i=0; i<n; i++){ }");
    expect(canonical).toBe("for (i = 0; i < n; i++) { }\n");
  });

  it("sees the micro kernel loop as a for node with an empty update slot", () => {
    const loop = kernelLoopStatement(emitKernel({ variant: "micro" }));
    const ast = parseToAst(command, loop) as {
      body: Array<{ kind: string; update: unknown; cond: { kind: string } }>;
    };
    expect(ast.body[0].kind).toBe("For");
    expect(ast.body[0].update).toBeNull();
    expect(ast.body[0].cond.kind).toBe("Binary");
  });
});

describe.runIf(primary === null)("primary toolkit missing", () => {
  it("is reported as unavailable rather than failing", () => {
    expect(primary).toBeNull();
  });
});
