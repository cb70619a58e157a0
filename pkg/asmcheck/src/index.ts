export {
  FIXTURE_LABEL,
  FunctionNotFoundError,
  countJumps,
  totalJumps,
  type JumpCount,
} from "./jumps.js";
export {
  emitKernel,
  kernelFunctionName,
  kernelLoopStatement,
  type KernelSpec,
  type Variant,
} from "./kernels.js";
export {
  CompileFailedError,
  compileToAsm,
  compilerVersion,
  findCompiler,
  type CompileOptions,
} from "./compiler.js";
export {
  canonicalize,
  loopRoundTripsThroughPrimary,
  parseToAst,
  primaryCommand,
  type RoundTripResult,
} from "./primary.js";
export {
  fixtureCounts,
  fixtureListing,
  hostIsX8664,
  verify,
  type VariantCounts,
  type Verdict,
  type VerifyResult,
} from "./verify.js";
