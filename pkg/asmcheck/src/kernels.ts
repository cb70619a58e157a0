/**
 * C kernel emission: one standalone function per loop variant, no
 * includes, deterministic text. The loop statement inside each kernel
 * is kept simple enough to round-trip through the primary toolkit's
 * parser (see primary.ts).
 */

export type Variant = "traditional" | "micro";

export interface KernelSpec {
  variant: Variant;
  functionName?: string;
  boundParam?: string;
}

export function kernelFunctionName(spec: KernelSpec): string {
  return spec.functionName ?? `kernel_${spec.variant}`;
}

export function emitKernel(spec: KernelSpec): string {
  const fn = kernelFunctionName(spec);
  const n = spec.boundParam ?? "n";
  const header =
    spec.variant === "traditional"
      ? `for (i = 0; i < ${n}; i++)`
      : `for (i = 0; i++ < ${n};)`;
  return [
    `int ${fn}(int ${n}) {`,
    "    int i;",
    `    ${header} { }`,
    "    return i;",
    "}",
    "",
  ].join("\n");
}

/** The loop statement line inside an emitted kernel. */
export function kernelLoopStatement(source: string): string {
  const line = source
    .split("\n")
    .map((l) => l.trim())
    .find((l) => l.startsWith("for"));
  if (line === undefined) throw new Error("kernel has no for statement");
  return line;
}
