import io
import itertools
import math
import statistics

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from microfor.bench import (
    BenchConfig, ElisionDetectedError, InsufficientDataError, StatsSummary,
    ZeroBaselineError, check_elision, efficiency, read_column_csv,
    read_timings_csv, replay, run_pair, summarize, sweep, write_rows_csv,
)
from microfor.reference_data import RECORDED_EFFICIENCY_PCT, RECORDED_TIMINGS

# Recomputed offline with the statistics stdlib module over the bundled
# two-decimal efficiency column; frozen here as ground truth.
EXPECTED_STATS = {
    "mean": 13.023571428571428,
    "sample_std": 4.0878235833205485,
    "sample_var": 16.71030164835165,
    "population_std": 3.9391253690977375,
    "population_var": 15.516708673469388,
}


# ---------------------------------------------------------------------------
# efficiency
# ---------------------------------------------------------------------------

def test_efficiency_first_recorded_row():
    assert math.isclose(efficiency(140, 120), 14.285714285714286)
    assert abs(efficiency(140, 120) - 14.28) <= 0.01


def test_efficiency_large_row():
    assert abs(efficiency(2960, 2310) - 21.96) <= 0.01


def test_efficiency_equal_times_is_zero():
    assert efficiency(123.0, 123.0) == 0.0


def test_efficiency_can_be_negative():
    assert efficiency(100.0, 120.0) == -20.0


def test_efficiency_zero_baseline():
    with pytest.raises(ZeroBaselineError):
        efficiency(0.0, 1.0)


def test_every_recorded_row_matches_reported_column():
    for (n, t_for, t_micro), reported in zip(RECORDED_TIMINGS,
                                             RECORDED_EFFICIENCY_PCT):
        assert abs(efficiency(t_for, t_micro) - reported) <= 0.01, n


@given(st.floats(min_value=0.001, max_value=1e6),
       st.floats(min_value=0.0, max_value=1e6))
def test_efficiency_complement_identity(a, b):
    assert math.isclose(efficiency(a, b), 100.0 * (1.0 - b / a),
                        rel_tol=1e-9, abs_tol=1e-9)


# ---------------------------------------------------------------------------
# summarize
# ---------------------------------------------------------------------------

def test_summary_of_reported_column_matches_frozen_oracle():
    s = summarize(RECORDED_EFFICIENCY_PCT)
    for key, expected in EXPECTED_STATS.items():
        assert math.isclose(getattr(s, key), expected, rel_tol=1e-12), key


def test_summary_agrees_with_statistics_stdlib():
    values = [3.5, 9.25, 0.0, 14.0, 7.125]
    s = summarize(values)
    assert math.isclose(s.mean, statistics.mean(values), rel_tol=1e-12)
    assert math.isclose(s.sample_std, statistics.stdev(values), rel_tol=1e-12)
    assert math.isclose(s.sample_var, statistics.variance(values),
                        rel_tol=1e-12)
    assert math.isclose(s.population_std, statistics.pstdev(values),
                        rel_tol=1e-12)
    assert math.isclose(s.population_var, statistics.pvariance(values),
                        rel_tol=1e-12)


def test_summary_constant_data():
    s = summarize([5, 5, 5])
    assert s == StatsSummary(mean=5, sample_std=0, sample_var=0,
                             population_std=0, population_var=0)


def test_summary_two_point_case():
    s = summarize([0, 10])
    assert s.mean == 5
    assert s.population_var == 25
    assert s.sample_var == 50


def test_summary_requires_two_values():
    with pytest.raises(InsufficientDataError):
        summarize([42.0])


@settings(max_examples=100)
@given(st.lists(st.floats(min_value=-1e4, max_value=1e4), min_size=2,
                max_size=30))
def test_summary_internal_identities(values):
    s = summarize(values)
    k = len(values)
    assert math.isclose(s.population_var, s.sample_var * (k - 1) / k,
                        rel_tol=1e-12, abs_tol=1e-12)
    assert math.isclose(s.sample_std ** 2, s.sample_var,
                        rel_tol=1e-12, abs_tol=1e-12)
    assert math.isclose(s.population_std ** 2, s.population_var,
                        rel_tol=1e-12, abs_tol=1e-12)
    assert s.sample_var >= s.population_var


# ---------------------------------------------------------------------------
# run_pair
# ---------------------------------------------------------------------------

def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(n=0)
    with pytest.raises(ValueError):
        BenchConfig(n=10, reps=2)
    with pytest.raises(ValueError):
        BenchConfig(n=10, warmup=0)
    with pytest.raises(ValueError):
        BenchConfig(n=10, body="nop")


@pytest.mark.parametrize("body", ["accumulator", "empty"])
def test_run_pair_contract_bounds(body):
    row = run_pair(BenchConfig(n=50_000, reps=3, body=body))
    assert row.t_for_ms > 0 and row.t_micro_ms > 0
    assert abs(row.efficiency_pct) < 100


def test_run_pair_back_to_back_stability():
    config = BenchConfig(n=1_000_000, reps=7, warmup=2)
    first = run_pair(config)
    second = run_pair(config)
    assert abs(first.t_for_ms - second.t_for_ms) / first.t_for_ms < 0.20


def test_elision_floor_fires():
    with pytest.raises(ElisionDetectedError):
        check_elision(duration_ns=50.0, n=1_000_000)
    check_elision(duration_ns=1e9, n=1_000_000)  # sane timing passes


def test_run_pair_detects_elided_measurement():
    # a timer that barely advances simulates a loop optimized to nothing
    ticks = itertools.count(step=10)
    with pytest.raises(ElisionDetectedError):
        run_pair(BenchConfig(n=1_000_000, reps=3, body="empty"),
                 timer=lambda: next(ticks))


def test_run_pair_timing_grows_with_n():
    # cheap monotonicity sanity check; the strict linear-fit gate runs at
    # full scale in the acceptance suite
    rows = [run_pair(BenchConfig(n=n, reps=3)) for n in (50_000, 400_000)]
    assert rows[1].t_for_ms > rows[0].t_for_ms
    assert rows[1].t_micro_ms > rows[0].t_micro_ms


# ---------------------------------------------------------------------------
# sweep and replay
# ---------------------------------------------------------------------------

def test_sweep_single_value_has_no_summary():
    result = sweep([10_000], reps=3)
    assert len(result.entries) == 1
    assert result.entries[0].row is not None
    assert result.summary is None  # insufficient data marker


def test_sweep_continues_past_failed_rows():
    # 2000 ns per measurement clears the elision floor at n around 1000
    # but sits under it at n = 50000, so only the middle row fails
    ticks = itertools.count(step=2_000)
    result = sweep([1_000, 50_000, 2_000], reps=3, body="empty",
                   timer=lambda: next(ticks))
    assert result.entries[0].row is not None
    assert result.entries[1].error is not None
    assert result.entries[2].row is not None
    assert result.summary is not None


def test_sweep_rejects_empty_n_list():
    with pytest.raises(ValueError):
        sweep([])


def test_replay_reproduces_reported_column():
    rows, summary = replay(RECORDED_TIMINGS)
    assert len(rows) == 14
    for row, reported in zip(rows, RECORDED_EFFICIENCY_PCT):
        assert abs(row.efficiency_pct - reported) <= 0.01
    assert summary is not None
    # summary over exact (unrounded) efficiencies; close to the frozen
    # two-decimal-column statistics but not identical by construction
    assert abs(summary.mean - EXPECTED_STATS["mean"]) < 0.01
    assert abs(summary.sample_std - EXPECTED_STATS["sample_std"]) < 0.01


def test_replay_is_deterministic():
    assert replay(RECORDED_TIMINGS) == replay(RECORDED_TIMINGS)


# ---------------------------------------------------------------------------
# CSV round trips
# ---------------------------------------------------------------------------

def test_rows_csv_format():
    rows, _ = replay([(50_000_000, 140, 120)])
    out = io.StringIO()
    write_rows_csv(rows, out)
    assert out.getvalue() == ("n,t_for_ms,t_micro_ms,efficiency_pct\n"
                              "50000000,140,120,14.29\n")


def test_read_timings_csv():
    lines = ["n,t_for_ms,t_micro_ms", "100,2.5,2.0", "200,5,4"]
    assert read_timings_csv(lines) == [(100, 2.5, 2.0), (200, 5.0, 4.0)]


def test_read_timings_csv_rejects_missing_columns():
    with pytest.raises(Exception):
        read_timings_csv(["a,b", "1,2"])


def test_read_column_csv_with_and_without_header():
    assert read_column_csv(["efficiency_pct", "14.28", "13.79"]) == \
        [14.28, 13.79]
    assert read_column_csv(["14.28", "13.79"]) == [14.28, 13.79]
