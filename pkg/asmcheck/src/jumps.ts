/**
 * x86-64 jump counting over textual assembly.
 *
 * Counts are taken between a function's label and its end marker
 * (.size / .cfi_endproc, the next non-local label, or end of text for
 * bare fixture listings). Only the x86-64 mnemonic tables ship here;
 * checks on other targets should be skipped rather than miscounted.
 */

export interface JumpCount {
  unconditional: number;
  conditional: number;
}

export const totalJumps = (c: JumpCount): number =>
  c.unconditional + c.conditional;

export const FIXTURE_LABEL = ".LFB0";

const UNCONDITIONAL = new Set(["jmp", "jmpq", "jmpl"]);

const CONDITIONAL = new Set([
  "ja", "jae", "jb", "jbe", "jc", "jcxz", "jecxz", "jrcxz", "je", "jg",
  "jge", "jl", "jle", "jna", "jnae", "jnb", "jnbe", "jnc", "jne", "jng",
  "jnge", "jnl", "jnle", "jno", "jnp", "jns", "jnz", "jo", "jp", "jpe",
  "jpo", "js", "jz",
]);

const LABEL_RE = /^([A-Za-z_.$][\w.$]*):/;

export class FunctionNotFoundError extends Error {
  constructor(functionName: string) {
    super(`label '${functionName}' not found in assembly`);
    this.name = "FunctionNotFoundError";
  }
}

function mnemonicOf(line: string): string | null {
  const stripped = line.trim();
  if (stripped === "" || stripped.startsWith("#")) return null;
  if (LABEL_RE.test(stripped) && stripped.endsWith(":")) return null;
  if (stripped.startsWith(".")) return null; // assembler directive
  return stripped.split(/\s+/)[0].toLowerCase();
}

export function countJumps(assembly: string, functionName: string): JumpCount {
  const lines = assembly.split("\n");
  const start = lines.findIndex((line) => line.trim() === `${functionName}:`);
  if (start < 0) throw new FunctionNotFoundError(functionName);

  let unconditional = 0;
  let conditional = 0;
  for (const line of lines.slice(start + 1)) {
    const stripped = line.trim();
    if (stripped.startsWith(".size") || stripped.startsWith(".cfi_endproc")) {
      break;
    }
    const label = LABEL_RE.exec(stripped);
    if (
      label !== null &&
      stripped.endsWith(":") &&
      !label[1].startsWith(".L") &&
      label[1] !== functionName
    ) {
      break; // another function begins
    }
    const mnemonic = mnemonicOf(line);
    if (mnemonic === null) continue;
    if (UNCONDITIONAL.has(mnemonic)) unconditional += 1;
    else if (CONDITIONAL.has(mnemonic)) conditional += 1;
  }
  return { unconditional, conditional };
}
