"""Micro-benchmark harness for the two loop forms, plus the statistics
engine over efficiency percentages.

Methodology: both variants run as native host loops with an accumulator
body whose result is consumed (so the work cannot be discarded), or an
empty body for comparison. Runs are interleaved A/B/A/B across
repetitions to decorrelate clock drift, preceded by warmup repetitions,
and aggregated by median on the monotonic high-resolution clock.
Measurements are strictly serial; nothing else may run inside a timing
window.

A measured time below ELISION_FLOOR_NS_PER_ITER nanoseconds per
iteration is rejected as ElisionDetectedError: no real execution of the
loop mechanism is that fast, so the work must have been optimized away.

The harness reports whatever it measures. On a modern runtime the two
forms often time the same or the micro form slower, so efficiency may
legitimately come out near zero or negative; recorded datasets can be
replayed through the same pipeline instead (see `replay`).
"""

from __future__ import annotations

import csv
import gc
import math
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TextIO

from .errors import MicroforError

ELISION_FLOOR_NS_PER_ITER = 0.1

CSV_HEADER = ("n", "t_for_ms", "t_micro_ms", "efficiency_pct")


class ClockUnavailableError(MicroforError):
    pass


class ElisionDetectedError(MicroforError):
    pass


class ZeroBaselineError(MicroforError):
    pass


class InsufficientDataError(MicroforError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    n: int
    reps: int = 5
    warmup: int = 1
    body: str = "accumulator"  # "accumulator" | "empty"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.reps < 3:
            raise ValueError("reps must be at least 3 for a meaningful median")
        if self.warmup < 1:
            raise ValueError("warmup must be at least 1")
        if self.body not in ("accumulator", "empty"):
            raise ValueError("body must be 'accumulator' or 'empty'")


@dataclass(frozen=True)
class EfficiencyRow:
    n: int
    t_for_ms: float
    t_micro_ms: float
    efficiency_pct: float


@dataclass(frozen=True)
class StatsSummary:
    mean: float
    sample_std: float
    sample_var: float
    population_std: float
    population_var: float

    def to_dict(self) -> dict:
        return {"mean": self.mean, "sample_std": self.sample_std,
                "sample_var": self.sample_var,
                "population_std": self.population_std,
                "population_var": self.population_var}


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------

def efficiency(t_for: float, t_micro: float) -> float:
    """Percent saving of the micro form: (t_for - t_micro) / t_for * 100.
    Negative when the micro form is slower."""
    if t_for == 0:
        raise ZeroBaselineError("baseline time is zero")
    return (t_for - t_micro) / t_for * 100.0


def summarize(values: Sequence[float]) -> StatsSummary:
    """Mean plus sample and population variance and standard deviation.

    sample_var divides by k - 1, population_var by k; needs k >= 2.
    """
    k = len(values)
    if k < 2:
        raise InsufficientDataError(f"need at least 2 values, got {k}")
    mean = sum(values) / k
    ssq = sum((x - mean) ** 2 for x in values)
    sample_var = ssq / (k - 1)
    population_var = ssq / k
    return StatsSummary(mean=mean,
                        sample_std=math.sqrt(sample_var),
                        sample_var=sample_var,
                        population_std=math.sqrt(population_var),
                        population_var=population_var)


# ---------------------------------------------------------------------------
# Loop kernels
# ---------------------------------------------------------------------------
# The micro variant evaluates the continuation test and then increments
# before the body runs, so the body-visible counter is already advanced
# and the exit value is n + 1. Accumulator results have closed forms the
# harness checks after timing, which also forces the work to be live.

def _traditional_accumulator(n: int) -> tuple[int, int]:
    total = 0
    i = 0
    while i < n:
        total += i
        i += 1
    return total, i


def _traditional_empty(n: int) -> tuple[int, int]:
    i = 0
    while i < n:
        i += 1
    return 0, i


def _micro_accumulator(n: int) -> tuple[int, int]:
    total = 0
    i = 0
    while True:
        keep = i < n
        i += 1
        if not keep:
            break
        total += i
    return total, i


def _micro_empty(n: int) -> tuple[int, int]:
    i = 0
    while True:
        keep = i < n
        i += 1
        if not keep:
            break
    return 0, i


def _expected_results(n: int, body: str) -> tuple[tuple[int, int], tuple[int, int]]:
    if body == "accumulator":
        return (n * (n - 1) // 2, n), (n * (n + 1) // 2, n + 1)
    return (0, n), (0, n + 1)


# ---------------------------------------------------------------------------
# Measurement
# ---------------------------------------------------------------------------

def _default_timer() -> int:
    return time.perf_counter_ns()


def _check_clock() -> None:
    if not time.get_clock_info("perf_counter").monotonic:
        raise ClockUnavailableError("no monotonic high-resolution clock")


def check_elision(duration_ns: float, n: int) -> None:
    """Reject a measurement too fast to be a real loop execution."""
    if duration_ns < ELISION_FLOOR_NS_PER_ITER * n:
        raise ElisionDetectedError(
            f"measured {duration_ns:.0f} ns for {n} iterations, below the "
            f"{ELISION_FLOOR_NS_PER_ITER} ns/iteration floor; the loop was "
            "optimized away")


def _time_once(kernel: Callable[[int], tuple[int, int]], n: int,
               expected: tuple[int, int],
               timer: Callable[[], int]) -> float:
    start = timer()
    result = kernel(n)
    duration_ns = timer() - start
    if result != expected:
        raise MicroforError(f"kernel produced {result}, expected {expected}")
    check_elision(duration_ns, n)
    return duration_ns


def run_pair(config: BenchConfig,
             timer: Callable[[], int] | None = None) -> EfficiencyRow:
    """Time both loop forms under one configuration.

    timer is injectable for testing and must return monotonic
    nanoseconds; the default is the process monotonic clock.
    """
    if timer is None:
        _check_clock()
        timer = _default_timer
    if config.body == "accumulator":
        trad, micro = _traditional_accumulator, _micro_accumulator
    else:
        trad, micro = _traditional_empty, _micro_empty
    expected_trad, expected_micro = _expected_results(config.n, config.body)

    # Collector pauses inside a timing window would be attributed to the
    # loop under test, so keep it off while measuring.
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(config.warmup):
            _time_once(trad, config.n, expected_trad, timer)
            _time_once(micro, config.n, expected_micro, timer)

        trad_ns: list[float] = []
        micro_ns: list[float] = []
        for _ in range(config.reps):
            trad_ns.append(_time_once(trad, config.n, expected_trad, timer))
            micro_ns.append(_time_once(micro, config.n, expected_micro, timer))
    finally:
        if gc_was_enabled:
            gc.enable()

    t_for_ms = statistics.median(trad_ns) / 1e6
    t_micro_ms = statistics.median(micro_ns) / 1e6
    return EfficiencyRow(n=config.n, t_for_ms=t_for_ms, t_micro_ms=t_micro_ms,
                         efficiency_pct=efficiency(t_for_ms, t_micro_ms))


# ---------------------------------------------------------------------------
# Sweeps and replay
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepEntry:
    n: int
    row: EfficiencyRow | None = None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    entries: tuple[SweepEntry, ...] = field(default_factory=tuple)
    summary: StatsSummary | None = None  # None marks insufficient data

    @property
    def rows(self) -> list[EfficiencyRow]:
        return [e.row for e in self.entries if e.row is not None]


def sweep(n_values: Sequence[int], *, reps: int = 5, warmup: int = 1,
          body: str = "accumulator",
          timer: Callable[[], int] | None = None) -> SweepResult:
    """run_pair over several n values, then summarize the efficiency
    column. A failing row is recorded with its error and the sweep
    continues; fewer than two successful rows leave the summary None."""
    if not n_values:
        raise ValueError("n_values must be non-empty")
    entries = []
    for n in n_values:
        try:
            row = run_pair(BenchConfig(n=n, reps=reps, warmup=warmup,
                                       body=body), timer=timer)
            entries.append(SweepEntry(n=n, row=row))
        except (MicroforError, ValueError) as exc:
            entries.append(SweepEntry(n=n, error=str(exc)))
    efficiencies = [e.row.efficiency_pct for e in entries if e.row is not None]
    summary = summarize(efficiencies) if len(efficiencies) >= 2 else None
    return SweepResult(entries=tuple(entries), summary=summary)


def replay(timings: Iterable[tuple[int, float, float]]
           ) -> tuple[list[EfficiencyRow], StatsSummary | None]:
    """Push recorded (n, t_for_ms, t_micro_ms) rows through the same
    efficiency and summary pipeline as live runs. Deterministic."""
    rows = [EfficiencyRow(n=n, t_for_ms=t_for, t_micro_ms=t_micro,
                          efficiency_pct=efficiency(t_for, t_micro))
            for n, t_for, t_micro in timings]
    summary = summarize([r.efficiency_pct for r in rows]) if len(rows) >= 2 \
        else None
    return rows, summary


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def _fmt(value: float) -> str:
    return format(value, ".6g")


def write_rows_csv(rows: Iterable[EfficiencyRow], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.n, _fmt(r.t_for_ms), _fmt(r.t_micro_ms),
                         f"{r.efficiency_pct:.2f}"])


def read_timings_csv(lines: Iterable[str]) -> list[tuple[int, float, float]]:
    """Read recorded timing rows with columns n, t_for_ms, t_micro_ms."""
    reader = csv.DictReader(lines)
    required = {"n", "t_for_ms", "t_micro_ms"}
    if reader.fieldnames is None or not required <= set(reader.fieldnames):
        raise MicroforError(
            "timings CSV must have columns n, t_for_ms, t_micro_ms")
    return [(int(float(row["n"])), float(row["t_for_ms"]),
             float(row["t_micro_ms"])) for row in reader]


def read_column_csv(lines: Iterable[str]) -> list[float]:
    """Read a single-column CSV of efficiency percentages; a non-numeric
    first line is treated as a header."""
    values = []
    for idx, raw in enumerate(lines):
        cell = raw.strip().split(",")[0]
        if not cell:
            continue
        try:
            values.append(float(cell))
        except ValueError:
            if idx == 0:
                continue
            raise MicroforError(f"non-numeric value {cell!r} in column CSV") \
                from None
    return values
