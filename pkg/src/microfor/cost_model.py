"""Per-iteration time model for the two loop forms.

The model is linear through the origin: running a loop of n iterations
takes t = n * c seconds, with one constant c per variant. Constants are
recovered from a table of (n, time) rows by a least-squares slope fit,
and every prediction, the efficiency figure, and the cycle view derive
from the two constants alone.

Only the ratio of cycle count to clock frequency is identifiable from
timing data, so the model stores time constants; cycle_decomposition
exposes the (deliberately underdetermined) cycles-at-a-given-clock view
and checks the per-iteration gap against the unconditional-jump cycle
range, whose saving is what separates the two variants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import MicroforError


class InconsistentTableError(MicroforError):
    """A table row deviates from the fitted line beyond tolerance."""


@dataclass(frozen=True)
class JumpCycleRanges:
    """Modeled cycle cost ranges for an unconditional jump and for a
    conditional jump."""

    jmp_min: int = 23
    jmp_max: int = 32
    cond_min: int = 25
    cond_max: int = 33

    def __post_init__(self):
        if self.jmp_min > self.jmp_max or self.cond_min > self.cond_max:
            raise ValueError("cycle range min must not exceed max")

    @property
    def jmp_average(self) -> float:
        return (self.jmp_min + self.jmp_max) / 2

    @property
    def cond_average(self) -> float:
        return (self.cond_min + self.cond_max) / 2


@dataclass(frozen=True)
class CostModel:
    per_iter_time_traditional: float  # seconds per iteration
    per_iter_time_micro: float

    def __post_init__(self):
        if self.per_iter_time_traditional <= 0 or self.per_iter_time_micro <= 0:
            raise ValueError("per-iteration times must be strictly positive")

    def to_dict(self) -> dict:
        return {"per_iter_time_traditional": self.per_iter_time_traditional,
                "per_iter_time_micro": self.per_iter_time_micro}

    @classmethod
    def from_dict(cls, d: dict) -> "CostModel":
        return cls(per_iter_time_traditional=float(d["per_iter_time_traditional"]),
                   per_iter_time_micro=float(d["per_iter_time_micro"]))


@dataclass(frozen=True)
class Prediction:
    n: int
    t_micro: float  # seconds
    t_traditional: float
    difference: float  # t_traditional - t_micro


@dataclass(frozen=True)
class CycleDecomposition:
    cycles_traditional: float  # per iteration, at the stated clock
    cycles_micro: float
    difference: float
    within_jump_range: bool


def _fit_slope(points: list[tuple[float, float]], label: str,
               rel_tol: float) -> float:
    """Least-squares slope through the origin, with a consistency check
    that every row sits on the fitted line to rel_tol."""
    sxx = sum(n * n for n, _ in points)
    sxy = sum(n * t for n, t in points)
    slope = sxy / sxx
    if slope <= 0:
        raise InconsistentTableError(f"{label}: fitted slope is not positive")
    for n, t in points:
        if n == 0:
            if abs(t) > 1e-9:
                raise InconsistentTableError(
                    f"{label}: nonzero time {t!r} at n = 0")
            continue
        expected = n * slope
        if abs(t - expected) / expected > rel_tol:
            raise InconsistentTableError(
                f"{label}: row n={n} time {t!r} deviates from the fitted "
                f"line ({expected!r}) by more than {rel_tol:g} relative")
    return slope


def fit_from_table(rows: Iterable[tuple[float, float, float]],
                   rel_tol: float = 1e-3) -> CostModel:
    """Fit per-iteration constants from (n, t_micro, t_traditional) rows.

    Requires at least one row with n > 0. Raises InconsistentTableError
    when any row is off the fitted line by more than rel_tol relative,
    or when the fit comes out non-positive or inverted.
    """
    rows = list(rows)
    if not any(n > 0 for n, _, _ in rows):
        raise ValueError("need at least one row with n > 0")
    c_micro = _fit_slope([(n, tm) for n, tm, _ in rows], "micro", rel_tol)
    c_trad = _fit_slope([(n, tt) for n, _, tt in rows], "traditional", rel_tol)
    if c_trad <= c_micro:
        raise InconsistentTableError(
            "fitted traditional constant does not exceed the micro constant")
    return CostModel(per_iter_time_traditional=c_trad,
                     per_iter_time_micro=c_micro)


def predict(model: CostModel, n: int) -> Prediction:
    """Predicted times for an n-iteration run of each variant."""
    if n < 0:
        raise ValueError("n must be non-negative")
    t_micro = n * model.per_iter_time_micro
    t_trad = n * model.per_iter_time_traditional
    return Prediction(n=n, t_micro=t_micro, t_traditional=t_trad,
                      difference=t_trad - t_micro)


def theoretical_efficiency(model: CostModel) -> float:
    """Percent saving of micro over traditional. Under the linear model
    this is (c_trad - c_micro) / c_trad * 100 for every n > 0."""
    c_trad = model.per_iter_time_traditional
    return (c_trad - model.per_iter_time_micro) / c_trad * 100.0


def cycle_decomposition(model: CostModel, clock_hz: float,
                        ranges: JumpCycleRanges = JumpCycleRanges()
                        ) -> CycleDecomposition:
    """Per-iteration cycle counts at a stated clock, and whether the gap
    between the variants falls inside the unconditional-jump range.

    The clock frequency is not recoverable from timing data, so this is
    a view for a caller-chosen clock, not a claim the model makes.
    """
    if clock_hz <= 0:
        raise ValueError("clock_hz must be positive")
    cycles_trad = model.per_iter_time_traditional * clock_hz
    cycles_micro = model.per_iter_time_micro * clock_hz
    diff = cycles_trad - cycles_micro
    return CycleDecomposition(
        cycles_traditional=cycles_trad,
        cycles_micro=cycles_micro,
        difference=diff,
        within_jump_range=ranges.jmp_min <= diff <= ranges.jmp_max)
