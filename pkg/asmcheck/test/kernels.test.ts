import { describe, expect, it } from "vitest";

import {
  emitKernel,
  kernelFunctionName,
  kernelLoopStatement,
} from "../src/kernels.js";

describe("emitKernel", () => {
  it("emits the classic three-slot header for the traditional variant", () => {
    const source = emitKernel({ variant: "traditional" });
    expect(source).toContain("for (i = 0; i < n; i++)");
    expect(source).not.toContain("#include");
  });

  it("emits the condition-folded header for the micro variant", () => {
    const source = emitKernel({ variant: "micro" });
    expect(source).toContain("for (i = 0; i++ < n;)");
  });

  it("is deterministic", () => {
    const spec = { variant: "micro" as const, boundParam: "count" };
    expect(emitKernel(spec)).toBe(emitKernel(spec));
  });

  it("derives the function name from the variant unless overridden", () => {
    expect(kernelFunctionName({ variant: "traditional" })).toBe(
      "kernel_traditional",
    );
    expect(
      kernelFunctionName({ variant: "micro", functionName: "probe" }),
    ).toBe("probe");
  });

  it("honors a custom bound parameter name", () => {
    const source = emitKernel({ variant: "micro", boundParam: "limit" });
    expect(source).toContain("for (i = 0; i++ < limit;)");
    expect(source).toContain("int kernel_micro(int limit)");
  });

  it("exposes the loop statement for external checks", () => {
    const loop = kernelLoopStatement(emitKernel({ variant: "traditional" }));
    expect(loop).toBe("for (i = 0; i < n; i++) { }");
  });
});
