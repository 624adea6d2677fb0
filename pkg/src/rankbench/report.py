"""Aggregation views: heatmap tables, CSV exports, and a self-contained
HTML report with inline SVG charts.

Rendering is a pure function of the aggregates: no timestamps, no
external assets, so identical inputs produce identical bytes.
"""

from __future__ import annotations

import csv
import html
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import metrics
from .errors import EmptyGridError
from .pipeline import Aggregate, SweepRecord
from .stats import ScoreTable, friedman, nemenyi_cd

COLOR_EXPONENT = 5

_RED = (215, 48, 39)
_BLUE = (69, 117, 180)
_GREEN = (26, 152, 80)
_LIGHT = (247, 251, 255)
_DARK_BLUE = (8, 48, 107)

_PALETTE = ["#4575b4", "#d73027", "#1a9850", "#fdae61", "#984ea3",
            "#ff7f00", "#a65628", "#66c2a5", "#999999"]


def _lerp(a, b, t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    rgb = tuple(round(a[i] + (b[i] - a[i]) * t) for i in range(3))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def fmt(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.4f}"


@dataclass
class HeatmapCell:
    value: Optional[float]
    fraction: Optional[float]
    color: str
    best: bool


@dataclass
class HeatmapTable:
    title: str
    rankers: list
    datasets: list
    cells: list  # cells[row][col], None for missing
    exponent: float = COLOR_EXPONENT


def _grid(aggregates: list[Aggregate], attr: str):
    rankers = sorted({a.ranker for a in aggregates})
    datasets = sorted({a.dataset for a in aggregates})
    values = {(a.ranker, a.dataset): getattr(a, attr) for a in aggregates}
    return rankers, datasets, values


def build_heatmap(aggregates: list[Aggregate], attr: str = "mean_validation_score",
                  title: str = "Mean validation score", higher_better: bool = True,
                  exponent: float = COLOR_EXPONENT,
                  low_color=_RED, high_color=_BLUE) -> HeatmapTable:
    """Rankers x datasets table colored by per-dataset relative performance.

    Each dataset column is scaled independently; the exponential ramp
    (fraction^exponent) stretches differences among the top performers.
    Missing cells stay empty.
    """
    if not aggregates:
        raise EmptyGridError("no aggregates to tabulate")
    rankers, datasets, values = _grid(aggregates, attr)
    cells: list[list[Optional[HeatmapCell]]] = [[None] * len(datasets) for _ in rankers]
    for j, ds in enumerate(datasets):
        col = [(i, values.get((rk, ds))) for i, rk in enumerate(rankers)]
        present = [(i, v) for i, v in col if v is not None]
        if not present:
            continue
        vals = np.asarray([v for _, v in present], dtype=np.float64)
        if higher_better:
            fractions = metrics.relative_performance(vals)
            best_value = vals.max()
        else:
            best_value = vals.min()
            fractions = np.where(vals > 0, np.divide(best_value, vals,
                                                     out=np.ones_like(vals),
                                                     where=vals > 0),
                                 np.where(vals == best_value, 1.0, 0.0))
        for (i, v), frac in zip(present, fractions):
            cells[i][j] = HeatmapCell(value=float(v), fraction=float(frac),
                                      color=_lerp(low_color, high_color,
                                                  float(frac) ** exponent),
                                      best=bool(v == best_value))
    return HeatmapTable(title=title, rankers=rankers, datasets=datasets,
                        cells=cells, exponent=exponent)


def standard_heatmaps(aggregates: list[Aggregate]) -> list[HeatmapTable]:
    """The usual report tables; ground-truth ones appear when available."""
    out = [build_heatmap(aggregates)]
    if any(a.stability_mean_stdev is not None for a in aggregates):
        subset = [a for a in aggregates if a.stability_mean_stdev is not None]
        out.append(build_heatmap(subset, attr="stability_mean_stdev",
                                 title="Stability (mean importance stdev, lower is better)",
                                 higher_better=False, exponent=1.0,
                                 low_color=_RED, high_color=_GREEN))
    if any(a.r2_mean is not None for a in aggregates):
        subset = [a for a in aggregates if a.r2_mean is not None]
        out.append(build_heatmap(subset, attr="r2_mean",
                                 title="Importance R2 against ground truth",
                                 higher_better=True, exponent=1.0,
                                 low_color=_LIGHT, high_color=_GREEN))
    if any(a.logloss_mean is not None for a in aggregates):
        subset = [a for a in aggregates if a.logloss_mean is not None]
        out.append(build_heatmap(subset, attr="logloss_mean",
                                 title="Log loss against ground truth (lower is better)",
                                 higher_better=False, exponent=1.0,
                                 low_color=_LIGHT, high_color=_DARK_BLUE))
    return out


# ---------------------------------------------------------------------------
# Statistics over the aggregate grid
# ---------------------------------------------------------------------------

def compute_stats(aggregates: list[Aggregate]) -> Optional[dict]:
    """Friedman + Nemenyi over a complete (dataset x ranker) grid.

    Returns None when fewer than 2 rankers or 2 datasets, or when the
    grid has holes.
    """
    rankers, datasets, values = _grid(aggregates, "mean_validation_score")
    if len(rankers) < 2 or len(datasets) < 2:
        return None
    table = np.empty((len(datasets), len(rankers)))
    for i, ds in enumerate(datasets):
        for j, rk in enumerate(rankers):
            v = values.get((rk, ds))
            if v is None:
                return None
            table[i, j] = v
    score_table = ScoreTable(datasets=datasets, rankers=rankers, values=table)
    chi2, p, avg_ranks = friedman(score_table)
    cd = nemenyi_cd(len(rankers), len(datasets), alpha=0.05)
    return {"friedman_chi2": chi2, "friedman_p": p, "nemenyi_cd_0.05": cd,
            "average_ranks": dict(zip(rankers, avg_ranks.tolist())),
            "n_datasets": len(datasets)}


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------

def export_csv(aggregates: list[Aggregate], out_dir,
               stats_summary: Optional[dict] = None) -> dict:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {}

    curves_path = out_dir / "curves.csv"
    with open(curves_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset", "ranker", "validator", "k", "mean_score", "stdev"])
        for a in sorted(aggregates, key=lambda a: (a.dataset, a.ranker)):
            for k, mean, std in zip(a.curve_sizes, a.curve_mean, a.curve_std):
                writer.writerow([a.dataset, a.ranker, a.validator, k,
                                 fmt(mean), fmt(std) if a.n_bootstraps > 1 else "n/a"])
    paths["curves"] = curves_path

    # relative performance is per dataset, against the best ranker there
    rel: dict[tuple, float] = {}
    heat = build_heatmap(aggregates)
    for i, rk in enumerate(heat.rankers):
        for j, ds in enumerate(heat.datasets):
            cell = heat.cells[i][j]
            if cell is not None:
                rel[(rk, ds)] = cell.fraction

    scores_path = out_dir / "scores.csv"
    with open(scores_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset", "ranker", "validator", "mean_validation",
                         "relative_performance", "r2", "logloss",
                         "stability_mean_stdev", "nogueira_phi", "fit_time_mean"])
        for a in sorted(aggregates, key=lambda a: (a.dataset, a.ranker)):
            writer.writerow([
                a.dataset, a.ranker, a.validator,
                fmt(a.mean_validation_score),
                fmt(rel.get((a.ranker, a.dataset))),
                fmt(a.r2_mean), fmt(a.logloss_mean),
                fmt(a.stability_mean_stdev), fmt(a.nogueira_phi),
                fmt(a.fit_time_mean),
            ])
    paths["scores"] = scores_path

    stats_path = out_dir / "stats.csv"
    with open(stats_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["statistic", "value"])
        if stats_summary is None:
            writer.writerow(["note", "needs >=2 rankers and >=2 datasets on a complete grid"])
        else:
            writer.writerow(["friedman_chi2", fmt(stats_summary["friedman_chi2"])])
            writer.writerow(["friedman_p", fmt(stats_summary["friedman_p"])])
            writer.writerow(["nemenyi_cd_0.05", fmt(stats_summary["nemenyi_cd_0.05"])])
            for rk, rank in sorted(stats_summary["average_ranks"].items()):
                writer.writerow([f"average_rank:{rk}", fmt(rank)])
    paths["stats"] = stats_path
    return paths


# ---------------------------------------------------------------------------
# SVG primitives
# ---------------------------------------------------------------------------

def _svg_line_chart(series: list[tuple[str, list, list]], width=640, height=320,
                    x_label="", y_label="", title="") -> str:
    """Simple multi-line chart. series = [(label, xs, ys), ...]."""
    pad = 48
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys if np.isfinite(y)]
    if not xs_all or not ys_all:
        return "<p>(no data)</p>"
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def px(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def py(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    parts = [f'<svg width="{width}" height="{height}" xmlns="http://www.w3.org/2000/svg">']
    parts.append(f'<text x="{width / 2:.0f}" y="16" text-anchor="middle" '
                 f'font-size="13" font-weight="bold">{html.escape(title)}</text>')
    parts.append(f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" '
                 f'y2="{height - pad}" stroke="#333"/>')
    parts.append(f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="#333"/>')
    for frac in (0.0, 0.5, 1.0):
        xv = x0 + frac * (x1 - x0)
        yv = y0 + frac * (y1 - y0)
        parts.append(f'<text x="{px(xv):.1f}" y="{height - pad + 16}" text-anchor="middle" '
                     f'font-size="10">{xv:.3g}</text>')
        parts.append(f'<text x="{pad - 6}" y="{py(yv):.1f}" text-anchor="end" '
                     f'font-size="10">{yv:.3g}</text>')
    parts.append(f'<text x="{width / 2:.0f}" y="{height - 8}" text-anchor="middle" '
                 f'font-size="11">{html.escape(x_label)}</text>')
    parts.append(f'<text x="14" y="{height / 2:.0f}" text-anchor="middle" font-size="11" '
                 f'transform="rotate(-90 14 {height / 2:.0f})">{html.escape(y_label)}</text>')
    for idx, (label, xs, ys) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        points = " ".join(f"{px(x):.1f},{py(y):.1f}" for x, y in zip(xs, ys)
                          if np.isfinite(y))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                     f'points="{points}"/>')
        ly = pad + 14 * idx
        parts.append(f'<rect x="{width - pad - 110}" y="{ly - 8}" width="10" height="10" '
                     f'fill="{color}"/>')
        parts.append(f'<text x="{width - pad - 96}" y="{ly + 1}" font-size="10">'
                     f'{html.escape(label)}</text>')
    parts.append("</svg>")
    return "".join(parts)


def _svg_importance_bars(agg: Aggregate, width=640, height=260) -> str:
    if not agg.importance_mean:
        return ""
    means = np.asarray(agg.importance_mean)
    stds = np.asarray(agg.importance_stdev or [0.0] * means.size)
    truth = np.asarray(agg.ground_truth) if agg.ground_truth else None
    p = means.size
    pad = 44
    top = max(float((means + stds).max()),
              float(truth.max()) if truth is not None else 0.0, 1e-9)
    bar_w = (width - 2 * pad) / p

    def py(v):
        return height - pad - v / top * (height - 2 * pad)

    parts = [f'<svg width="{width}" height="{height}" xmlns="http://www.w3.org/2000/svg">']
    parts.append(f'<text x="{width / 2:.0f}" y="16" text-anchor="middle" font-size="13" '
                 f'font-weight="bold">{html.escape(agg.ranker)} on {html.escape(agg.dataset)}'
                 f' (mean stdev {fmt(agg.stability_mean_stdev)})</text>')
    parts.append(f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" '
                 f'y2="{height - pad}" stroke="#333"/>')
    for f in range(p):
        x = pad + f * bar_w
        parts.append(f'<rect x="{x + 1:.1f}" y="{py(means[f]):.1f}" width="{bar_w - 2:.1f}" '
                     f'height="{height - pad - py(means[f]):.1f}" fill="#4575b4"/>')
        if stds[f] > 0:
            cx = x + bar_w / 2
            parts.append(f'<line x1="{cx:.1f}" y1="{py(means[f] - stds[f]):.1f}" '
                         f'x2="{cx:.1f}" y2="{py(means[f] + stds[f]):.1f}" '
                         f'stroke="#d73027" stroke-width="1.2"/>')
        if truth is not None and truth[f] > 0:
            cx = x + bar_w / 2
            parts.append(f'<circle cx="{cx:.1f}" cy="{py(truth[f]):.1f}" r="2.5" '
                         f'fill="none" stroke="#1a9850" stroke-width="1.5"/>')
    parts.append(f'<text x="{width / 2:.0f}" y="{height - 8}" text-anchor="middle" '
                 f'font-size="11">feature index (bars: mean importance, red: stdev, '
                 f'green circles: ground truth)</text>')
    parts.append("</svg>")
    return "".join(parts)


def _heatmap_html(table: HeatmapTable) -> str:
    parts = [f"<h3>{html.escape(table.title)}</h3>",
             '<table class="heat"><tr><th></th>']
    for ds in table.datasets:
        parts.append(f"<th>{html.escape(ds)}</th>")
    parts.append("</tr>")
    for i, rk in enumerate(table.rankers):
        parts.append(f"<tr><th>{html.escape(rk)}</th>")
        for j in range(len(table.datasets)):
            cell = table.cells[i][j]
            if cell is None:
                parts.append("<td></td>")
            else:
                weight = "bold" if cell.best else "normal"
                parts.append(f'<td style="background:{cell.color};font-weight:{weight}">'
                             f"{fmt(cell.value)}</td>")
        parts.append("</tr>")
    parts.append("</table>")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Full HTML document
# ---------------------------------------------------------------------------

_STYLE = """
body { font-family: sans-serif; margin: 24px; color: #222; }
table.heat { border-collapse: collapse; margin: 8px 0 20px; }
table.heat td, table.heat th { border: 1px solid #999; padding: 4px 10px;
  font-size: 13px; text-align: right; color: #111; }
table.heat td { background-clip: padding-box; }
h2 { border-bottom: 1px solid #ccc; padding-bottom: 4px; }
"""


def render_html(aggregates: list[Aggregate], out_path,
                stats_summary: Optional[dict] = None,
                sweeps: Optional[list[SweepRecord]] = None) -> Path:
    """Write one self-contained HTML file (inline SVG, no external assets)."""
    out_path = Path(out_path)
    parts = ["<!DOCTYPE html><html><head><meta charset='utf-8'>",
             "<title>Feature-ranking benchmark report</title>",
             f"<style>{_STYLE}</style></head><body>",
             "<h1>Feature-ranking benchmark report</h1>"]

    if not aggregates:
        parts.append("<p><em>No data: the input directory contained no run records.</em></p>")
    else:
        parts.append("<h2>Score tables</h2>")
        for table in standard_heatmaps(aggregates):
            parts.append(_heatmap_html(table))

        if stats_summary is not None:
            parts.append("<h2>Significance</h2><table class='heat'>")
            parts.append(f"<tr><th>Friedman chi2</th><td>{fmt(stats_summary['friedman_chi2'])}</td></tr>")
            parts.append(f"<tr><th>Friedman p</th><td>{fmt(stats_summary['friedman_p'])}</td></tr>")
            parts.append(f"<tr><th>Nemenyi CD (a=0.05)</th><td>{fmt(stats_summary['nemenyi_cd_0.05'])}</td></tr>")
            for rk, rank in sorted(stats_summary["average_ranks"].items()):
                parts.append(f"<tr><th>avg rank: {html.escape(rk)}</th><td>{fmt(rank)}</td></tr>")
            parts.append("</table>")

        parts.append("<h2>Validation curves</h2>")
        by_dataset: dict[str, list[Aggregate]] = {}
        for a in aggregates:
            by_dataset.setdefault(f"{a.dataset} [{a.validator}]", []).append(a)
        for key in sorted(by_dataset):
            series = [(a.ranker, a.curve_sizes, a.curve_mean)
                      for a in sorted(by_dataset[key], key=lambda a: a.ranker)
                      if a.curve_sizes]
            if series:
                parts.append(_svg_line_chart(series, title=key,
                                             x_label="subset size k",
                                             y_label="validation score"))

        parts.append("<h2>Estimated importances</h2>")
        for a in sorted(aggregates, key=lambda a: (a.dataset, a.ranker)):
            svg = _svg_importance_bars(a)
            if svg:
                parts.append(svg)

    if sweeps:
        parts.append("<h2>Sample-size sweep</h2>")
        sizes = sorted({s.sample_size for s in sweeps})
        fit_means = [float(np.mean([s.fit_time_seconds for s in sweeps
                                    if s.sample_size == size])) for size in sizes]
        score_means = [float(np.mean([s.mean_score() for s in sweeps
                                      if s.sample_size == size])) for size in sizes]
        parts.append(_svg_line_chart([("fit time", sizes, fit_means)],
                                     title="Fitting time vs sample size",
                                     x_label="training samples", y_label="seconds"))
        parts.append(_svg_line_chart([("mean validation score", sizes, score_means)],
                                     title="Learning curve",
                                     x_label="training samples", y_label="score"))

    parts.append("</body></html>")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text("".join(parts), encoding="utf-8")
    return out_path
