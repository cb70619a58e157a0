/**
 * Locating and driving the system C compiler. The MICROFOR_CC and CC
 * environment variables override the search; otherwise the first of
 * cc, gcc, clang on PATH wins.
 */

import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

const ENV_OVERRIDES = ["MICROFOR_CC", "CC"];
const CANDIDATES = ["cc", "gcc", "clang"];

export class CompileFailedError extends Error {
  constructor(public readonly diagnostics: string) {
    super(`C compiler failed:\n${diagnostics}`);
    this.name = "CompileFailedError";
  }
}

function which(command: string): string | null {
  if (command.includes(path.sep)) {
    return isExecutable(command) ? command : null;
  }
  for (const dir of (process.env.PATH ?? "").split(path.delimiter)) {
    if (dir === "") continue;
    const candidate = path.join(dir, command);
    if (isExecutable(candidate)) return candidate;
  }
  return null;
}

function isExecutable(file: string): boolean {
  try {
    fs.accessSync(file, fs.constants.X_OK);
    return fs.statSync(file).isFile();
  } catch {
    return false;
  }
}

export function findCompiler(): string | null {
  for (const name of ENV_OVERRIDES) {
    const override = process.env[name];
    if (override !== undefined && override !== "") {
      const found = which(override);
      if (found !== null) return found;
    }
  }
  for (const candidate of CANDIDATES) {
    const found = which(candidate);
    if (found !== null) return found;
  }
  return null;
}

export function compilerVersion(compiler: string): string {
  try {
    const out = execFileSync(compiler, ["--version"], {
      encoding: "utf-8",
      timeout: 30_000,
    });
    return out.split("\n")[0] || compiler;
  } catch {
    return compiler;
  }
}

export interface CompileOptions {
  optimization?: string; // -O level, default "0" to match the listings
  compiler?: string;
  keepDir?: string; // receive kernel.c / kernel.s instead of a temp dir
}

export function compileToAsm(
  source: string,
  options: CompileOptions = {},
): string {
  const compiler = options.compiler ?? findCompiler();
  if (compiler === null) {
    throw new Error(
      "no C compiler found (set MICROFOR_CC or CC, or install cc/gcc/clang)",
    );
  }
  const level = options.optimization ?? "0";
  const workdir =
    options.keepDir ?? fs.mkdtempSync(path.join(os.tmpdir(), "microfor-asm-"));
  if (options.keepDir !== undefined) {
    fs.mkdirSync(workdir, { recursive: true });
  }
  try {
    const src = path.join(workdir, "kernel.c");
    const asm = path.join(workdir, "kernel.s");
    fs.writeFileSync(src, source, "utf-8");
    try {
      execFileSync(compiler, ["-S", `-O${level}`, "-o", asm, src], {
        encoding: "utf-8",
        timeout: 120_000,
        stdio: ["ignore", "pipe", "pipe"],
      });
    } catch (error) {
      const stderr = (error as { stderr?: string }).stderr ?? String(error);
      throw new CompileFailedError(stderr.trim());
    }
    return fs.readFileSync(asm, "utf-8");
  } finally {
    if (options.keepDir === undefined) {
      fs.rmSync(workdir, { recursive: true, force: true });
    }
  }
}
