"""Composes the theoretical table, a replayed (or measured) efficiency
table, the statistics block, and an efficiency-vs-n plot into files:
markdown, two CSVs, and a hand-rolled SVG that is byte-identical for
identical input data.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from . import bench
from .cost_model import CostModel, Prediction, predict
from .reference_data import (
    RECORDED_TIMINGS, THEORETICAL_ROWS, default_cost_model,
)

N_SCALE = 1e8  # n axis is displayed in units of 1e8 iterations

THEORY_CSV_HEADER = ("n", "t_micro_s", "t_traditional_s", "difference_s")


@dataclass(frozen=True)
class ReportBundle:
    theoretical: list[Prediction]
    efficiency: list[bench.EfficiencyRow]
    stats: bench.StatsSummary | None
    plot_points: list[tuple[float, float]]  # (n / 1e8, efficiency %)


def build_bundle(model: CostModel | None = None,
                 timings: list[tuple[int, float, float]] | None = None
                 ) -> ReportBundle:
    """Evaluate the model over the bundled n values and replay timing
    rows (bundled recording by default) through the bench pipeline."""
    model = model or default_cost_model()
    if timings is None:
        timings = list(RECORDED_TIMINGS)
    theoretical = [predict(model, n) for n, _, _ in THEORETICAL_ROWS]
    rows, stats = bench.replay(timings)
    points = [(r.n / N_SCALE, r.efficiency_pct) for r in rows]
    return ReportBundle(theoretical=theoretical, efficiency=rows,
                        stats=stats, plot_points=points)


def theoretical_table_csv(predictions: list[Prediction]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(THEORY_CSV_HEADER)
    for p in predictions:
        writer.writerow([p.n, f"{p.t_micro:.9f}", f"{p.t_traditional:.9f}",
                         f"{p.difference:.9f}"])
    return out.getvalue()


def efficiency_table_csv(rows: list[bench.EfficiencyRow]) -> str:
    out = io.StringIO()
    bench.write_rows_csv(rows, out)
    return out.getvalue()


def stats_block(stats: bench.StatsSummary | None) -> str:
    if stats is None:
        return "insufficient data for statistics (need at least 2 rows)\n"
    return (f"mean: {stats.mean:.3f}\n"
            f"sample_std: {stats.sample_std:.3f}\n"
            f"sample_var: {stats.sample_var:.3f}\n"
            f"population_std: {stats.population_std:.3f}\n"
            f"population_var: {stats.population_var:.3f}\n")


def report_markdown(bundle: ReportBundle) -> str:
    lines = ["# Loop form comparison", ""]
    lines += ["## Theoretical per-iteration model", "",
              "| n | micro (s) | traditional (s) | difference (s) |",
              "| ---: | ---: | ---: | ---: |"]
    for p in bundle.theoretical:
        lines.append(f"| {p.n} | {p.t_micro:.9f} | {p.t_traditional:.9f} "
                     f"| {p.difference:.9f} |")
    lines += ["", "## Measured / replayed efficiency", "",
              "| n | for loop (ms) | micro for loop (ms) | efficiency (%) |",
              "| ---: | ---: | ---: | ---: |"]
    for r in bundle.efficiency:
        lines.append(f"| {r.n} | {r.t_for_ms:g} | {r.t_micro_ms:g} "
                     f"| {r.efficiency_pct:.2f} |")
    lines += ["", "## Efficiency statistics", "", "```",
              stats_block(bundle.stats).rstrip(), "```", "",
              "![efficiency vs n](efficiency_vs_n.svg)", ""]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_W, _H = 640, 400
_ML, _MR, _MT, _MB = 60, 20, 20, 50


def efficiency_svg(points: list[tuple[float, float]]) -> str:
    """Line-and-dots plot of efficiency (%) against n (in 1e8 units).
    Pure string assembly with fixed formatting, so identical data yields
    identical bytes."""
    if not points:
        raise ValueError("need at least one data point")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_max = max(xs) * 1.05 or 1.0
    y_max = max(max(ys) * 1.1, 1.0)
    y_min = min(0.0, min(ys) * 1.1)
    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def sx(x: float) -> float:
        return _ML + x / x_max * plot_w

    def sy(y: float) -> float:
        return _MT + (y_max - y) / (y_max - y_min) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_ML}" y1="{sy(0):.2f}" x2="{_W - _MR}" y2="{sy(0):.2f}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" '
        'stroke="black" stroke-width="1"/>',
    ]
    for k in range(6):  # axis ticks at five even divisions
        xv = x_max * k / 5
        yv = y_min + (y_max - y_min) * k / 5
        parts.append(f'<text x="{sx(xv):.2f}" y="{_H - _MB + 20}" '
                     f'font-size="12" text-anchor="middle">{xv:.1f}</text>')
        parts.append(f'<text x="{_ML - 8}" y="{sy(yv):.2f}" font-size="12" '
                     f'text-anchor="end" dominant-baseline="middle">'
                     f'{yv:.1f}</text>')
    parts.append(f'<text x="{_ML + plot_w / 2:.2f}" y="{_H - 10}" '
                 'font-size="13" text-anchor="middle">'
                 'iterations n (1e8)</text>')
    parts.append(f'<text x="15" y="{_MT + plot_h / 2:.2f}" font-size="13" '
                 f'text-anchor="middle" transform="rotate(-90 15 '
                 f'{_MT + plot_h / 2:.2f})">efficiency (%)</text>')
    polyline = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in points)
    parts.append(f'<polyline points="{polyline}" fill="none" '
                 'stroke="steelblue" stroke-width="2"/>')
    for x, y in points:
        parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" '
                     'fill="steelblue"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_report(bundle: ReportBundle, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "theoretical_table.csv": theoretical_table_csv(bundle.theoretical),
        "efficiency_table.csv": efficiency_table_csv(bundle.efficiency),
        "report.md": report_markdown(bundle),
        "efficiency_vs_n.svg": efficiency_svg(bundle.plot_points),
    }
    written = []
    for name, content in files.items():
        path = out / name
        path.write_text(content, encoding="utf-8")
        written.append(path)
    return written
