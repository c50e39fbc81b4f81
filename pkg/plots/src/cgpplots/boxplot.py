"""Effort-distribution box plot: one box per algorithm.

Quartiles use numpy's linear interpolation, the same method the harness
stats command uses, so plotted medians equal reported medians exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from cgpplots.results import MissingDataError, Row, read_results

__all__ = ["PlotJob", "boxplot", "group_stats"]


@dataclass(frozen=True)
class PlotJob:
    input_path: str
    output_path: str
    group_field: str = "algorithm"
    metric: str = "node_evals"
    scale: str = "linear"

    def __post_init__(self) -> None:
        if self.scale not in ("linear", "log"):
            raise ValueError(f"scale must be linear or log, got {self.scale!r}")
        if self.group_field not in ("algorithm", "cell_id"):
            raise ValueError(f"cannot group by {self.group_field!r}")
        if self.metric not in ("node_evals", "generations", "duration_ms"):
            raise ValueError(f"cannot plot metric {self.metric!r}")


def group_stats(rows: list[Row], group_field: str, metric: str) -> dict[str, dict]:
    """Per-group distribution stats, keyed by group label.

    Whiskers extend to the most extreme points within 1.5 IQR of the box;
    values beyond are fliers.  Failed runs are listed separately so plots
    can mark them.
    """
    groups: dict[str, list[Row]] = {}
    for row in rows:
        groups.setdefault(getattr(row, group_field), []).append(row)

    stats = {}
    for label in sorted(groups):
        members = groups[label]
        values = np.array([getattr(r, metric) for r in members], dtype=np.float64)
        q1, med, q3 = np.percentile(values, [25, 50, 75], method="linear")
        iqr = q3 - q1
        in_lo = values[values >= q1 - 1.5 * iqr]
        in_hi = values[values <= q3 + 1.5 * iqr]
        whislo = float(in_lo.min()) if in_lo.size else float(q1)
        whishi = float(in_hi.max()) if in_hi.size else float(q3)
        stats[label] = {
            "count": len(members),
            "success_rate": sum(r.success for r in members) / len(members),
            "min": float(values.min()),
            "q1": float(q1),
            "median": float(med),
            "q3": float(q3),
            "max": float(values.max()),
            "mean": float(values.mean()),
            "whislo": whislo,
            "whishi": whishi,
            "fliers": [float(v) for v in values[(values < whislo) | (values > whishi)]],
            "failed_values": [
                float(getattr(r, metric)) for r in members if not r.success
            ],
        }
    return stats


def boxplot(job: PlotJob) -> dict[str, dict]:
    """Render the box plot and return the stats it was drawn from."""
    rows = read_results(job.input_path)
    if not rows:
        raise MissingDataError(f"{job.input_path} has no records")
    stats = group_stats(rows, job.group_field, job.metric)
    for label, s in stats.items():
        if s["count"] == 0:
            raise MissingDataError(f"no records for {label}")

    labels = list(stats)
    bxp_stats = [
        {
            "label": label,
            "med": stats[label]["median"],
            "q1": stats[label]["q1"],
            "q3": stats[label]["q3"],
            "whislo": stats[label]["whislo"],
            "whishi": stats[label]["whishi"],
            "fliers": stats[label]["fliers"],
        }
        for label in labels
    ]

    fig, ax = plt.subplots(figsize=(1.8 + 1.4 * len(labels), 4.8))
    ax.bxp(bxp_stats, showfliers=True)
    for pos, label in enumerate(labels, start=1):
        failed = stats[label]["failed_values"]
        if failed:
            ax.plot([pos] * len(failed), failed, "rx", markersize=8,
                    label="failed run" if pos == 1 else None)
    if any(stats[label]["failed_values"] for label in labels):
        ax.legend(loc="best")
    ax.set_ylabel(job.metric.replace("_", " "))
    ax.set_yscale(job.scale)
    ax.set_title(f"{job.metric} by {job.group_field}")
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(job.output_path, dpi=150)
    plt.close(fig)
    return stats
