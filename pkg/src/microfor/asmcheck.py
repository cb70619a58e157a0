"""Emit C kernels for both loop forms, compile them to assembly, and
count jump instructions.

The point being verified: at the lowest optimization level the
traditional form needs an unconditional jump into its test plus a
conditional back-branch, while the condition-folded micro form needs
only the conditional back-branch. Counting is x86-64 mnemonic matching
over the named function's span; other targets downgrade the live check
to skipped. Bundled fixture listings make the counting itself testable
with no compiler installed.
"""

from __future__ import annotations

import os
import platform
import re
import shutil
import subprocess
import tempfile
from dataclasses import dataclass

from .errors import MicroforError
from .reference_data import read_data_text

COMPILER_ENV_VARS = ("MICROFOR_CC", "CC")
COMPILER_CANDIDATES = ("cc", "gcc", "clang")

UNCONDITIONAL_JUMPS = frozenset({"jmp", "jmpq", "jmpl"})
CONDITIONAL_JUMPS = frozenset({
    "ja", "jae", "jb", "jbe", "jc", "jcxz", "jecxz", "jrcxz", "je", "jg",
    "jge", "jl", "jle", "jna", "jnae", "jnb", "jnbe", "jnc", "jne", "jng",
    "jnge", "jnl", "jnle", "jno", "jnp", "jns", "jnz", "jo", "jp", "jpe",
    "jpo", "js", "jz",
})

FIXTURE_LABEL = ".LFB0"

_LABEL_RE = re.compile(r"^([A-Za-z_.$][\w.$]*):")


class CompilerNotFoundError(MicroforError):
    pass


class CompileFailedError(MicroforError):
    def __init__(self, diagnostics: str):
        self.diagnostics = diagnostics
        super().__init__(f"C compiler failed:\n{diagnostics}")


class FunctionNotFoundError(MicroforError):
    pass


@dataclass(frozen=True)
class KernelSpec:
    variant: str  # "traditional" | "micro"
    function_name: str = ""
    bound_param: str = "n"

    def __post_init__(self):
        if self.variant not in ("traditional", "micro"):
            raise ValueError("variant must be 'traditional' or 'micro'")
        if not self.function_name:
            object.__setattr__(self, "function_name", f"kernel_{self.variant}")


@dataclass(frozen=True)
class JumpCount:
    unconditional: int
    conditional: int

    def __post_init__(self):
        if self.unconditional < 0 or self.conditional < 0:
            raise ValueError("jump counts must be non-negative")

    @property
    def total(self) -> int:
        return self.unconditional + self.conditional


def emit_kernel(spec: KernelSpec) -> str:
    """Deterministic standalone C source holding one loop of the
    requested variant. The loop statement itself stays parseable by
    this package's own parser."""
    n = spec.bound_param
    if spec.variant == "traditional":
        header = f"for (i = 0; i < {n}; i++)"
    else:
        header = f"for (i = 0; i++ < {n};)"
    return (f"int {spec.function_name}(int {n}) {{\n"
            f"    int i;\n"
            f"    {header} {{ }}\n"
            f"    return i;\n"
            f"}}\n")


def find_compiler() -> str | None:
    """C compiler path from MICROFOR_CC / CC, else the first of cc, gcc,
    clang found on PATH. None when there is nothing to run."""
    for var in COMPILER_ENV_VARS:
        override = os.environ.get(var)
        if override:
            found = shutil.which(override)
            if found:
                return found
    for name in COMPILER_CANDIDATES:
        found = shutil.which(name)
        if found:
            return found
    return None


def compiler_version(compiler: str) -> str:
    try:
        out = subprocess.run([compiler, "--version"], capture_output=True,
                             text=True, timeout=30)
        return out.stdout.splitlines()[0] if out.stdout else compiler
    except (OSError, subprocess.SubprocessError):
        return compiler


def compile_to_asm(source: str, optimization: str = "0",
                   compiler: str | None = None,
                   keep_dir: str | None = None) -> str:
    """Compile C source to assembly text at the given optimization level
    (default lowest). keep_dir, when set, receives kernel.c/kernel.s
    instead of a temporary directory."""
    if compiler is None:
        compiler = find_compiler()
        if compiler is None:
            raise CompilerNotFoundError("no C compiler found (set MICROFOR_CC "
                                        "or CC, or install cc/gcc/clang)")

    def _run(workdir: str) -> str:
        src = os.path.join(workdir, "kernel.c")
        asm = os.path.join(workdir, "kernel.s")
        with open(src, "w", encoding="utf-8") as fh:
            fh.write(source)
        proc = subprocess.run(
            [compiler, "-S", f"-O{optimization}", "-o", asm, src],
            capture_output=True, text=True, timeout=120)
        if proc.returncode != 0:
            raise CompileFailedError(proc.stderr.strip())
        with open(asm, encoding="utf-8") as fh:
            return fh.read()

    if keep_dir is not None:
        os.makedirs(keep_dir, exist_ok=True)
        return _run(keep_dir)
    with tempfile.TemporaryDirectory(prefix="microfor-asm-") as workdir:
        return _run(workdir)


def _instruction_mnemonic(line: str) -> str | None:
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    if _LABEL_RE.match(stripped) and stripped.endswith(":"):
        return None
    if stripped.startswith("."):
        return None  # assembler directive
    return stripped.split()[0].lower()


def count_jumps(assembly: str, function_name: str) -> JumpCount:
    """Count unconditional and conditional jump mnemonics between the
    named label and the function's end marker (.size/.cfi_endproc or the
    next non-local label; end of text for bare fixtures)."""
    lines = assembly.splitlines()
    start = None
    for idx, line in enumerate(lines):
        if line.strip() == f"{function_name}:":
            start = idx + 1
            break
    if start is None:
        raise FunctionNotFoundError(f"label {function_name!r} not found")

    unconditional = 0
    conditional = 0
    for line in lines[start:]:
        stripped = line.strip()
        if stripped.startswith(".size") or stripped.startswith(".cfi_endproc"):
            break
        match = _LABEL_RE.match(stripped)
        if match and stripped.endswith(":") and not match.group(1).startswith(".L") \
                and match.group(1) != function_name:
            break  # another function begins
        mnemonic = _instruction_mnemonic(line)
        if mnemonic in UNCONDITIONAL_JUMPS:
            unconditional += 1
        elif mnemonic in CONDITIONAL_JUMPS:
            conditional += 1
    return JumpCount(unconditional=unconditional, conditional=conditional)


def fixture_listing(variant: str) -> str:
    return read_data_text(f"listing_{variant}.s")


def fixture_counts() -> dict[str, JumpCount]:
    """Jump counts over the bundled reference listings; runs anywhere."""
    return {variant: count_jumps(fixture_listing(variant), FIXTURE_LABEL)
            for variant in ("traditional", "micro")}


def host_is_x86_64() -> bool:
    return platform.machine().lower() in ("x86_64", "amd64", "x64")


@dataclass(frozen=True)
class VerifyResult:
    verdict: str  # "pass" | "skip" | "fail"
    fixture: dict[str, JumpCount]
    live: dict[str, JumpCount] | None
    compiler: str | None
    skip_reason: str | None = None
    artifacts_dir: str | None = None

    def to_dict(self) -> dict:
        def counts(d):
            return {k: {"unconditional": v.unconditional,
                        "conditional": v.conditional} for k, v in d.items()}
        return {"verdict": self.verdict, "fixture": counts(self.fixture),
                "live": counts(self.live) if self.live else None,
                "compiler": self.compiler, "skip_reason": self.skip_reason,
                "artifacts_dir": self.artifacts_dir}


def verify(keep_artifacts: bool = False) -> VerifyResult:
    """Full check: fixture counts always, then a live compile of both
    kernels when a compiler and an x86-64 host are available. Passing
    means the traditional kernel has strictly more jump instructions
    than the micro kernel at the lowest optimization level."""
    fixture = fixture_counts()
    compiler = find_compiler()
    if compiler is None:
        return VerifyResult(verdict="skip", fixture=fixture, live=None,
                            compiler=None, skip_reason="no C compiler found")
    if not host_is_x86_64():
        return VerifyResult(
            verdict="skip", fixture=fixture, live=None,
            compiler=compiler_version(compiler),
            skip_reason=f"host is {platform.machine()}, not x86-64")

    artifacts_dir = tempfile.mkdtemp(prefix="microfor-asm-") \
        if keep_artifacts else None
    live = {}
    for variant in ("traditional", "micro"):
        spec = KernelSpec(variant=variant)
        keep = os.path.join(artifacts_dir, variant) if artifacts_dir else None
        asm = compile_to_asm(emit_kernel(spec), compiler=compiler,
                             keep_dir=keep)
        live[variant] = count_jumps(asm, spec.function_name)
    verdict = "pass" if live["traditional"].total > live["micro"].total \
        else "fail"
    return VerifyResult(verdict=verdict, fixture=fixture, live=live,
                        compiler=compiler_version(compiler),
                        artifacts_dir=artifacts_dir)
