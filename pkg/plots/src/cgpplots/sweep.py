"""Sweep heatmaps: median effort over the n_nodes x base_rate grid.

One panel per algorithm.  Cells aggregate every record at that size/rate
(for schemes swept over k or floor this is the best cell: the minimum
median across those extra dimensions).  Cells with failures are annotated
with their success rate.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from cgpplots.results import MissingDataError, Row, read_results

__all__ = ["sweep_grid", "sweep_heatmap"]


def sweep_grid(rows: list[Row], algorithm: str):
    """(n_nodes values, base_rate values, median matrix, success matrix)."""
    mine = [r for r in rows if r.algorithm == algorithm]
    if not mine:
        raise MissingDataError(f"no records for {algorithm}")
    by_cell: dict[str, list[Row]] = {}
    for row in mine:
        by_cell.setdefault(row.cell_id, []).append(row)

    # per grid cell: median effort and success rate; then reduce over any
    # k/floor dimensions by keeping the best (lowest-median) cell
    best: dict[tuple[int, float], tuple[float, float]] = {}
    for members in by_cell.values():
        values = np.array([r.node_evals for r in members], dtype=np.float64)
        med = float(np.percentile(values, 50, method="linear"))
        rate = sum(r.success for r in members) / len(members)
        key = (members[0].n_nodes, members[0].base_rate)
        if key not in best or med < best[key][0]:
            best[key] = (med, rate)

    n_values = sorted({key[0] for key in best})
    r_values = sorted({key[1] for key in best})
    medians = np.full((len(n_values), len(r_values)), np.nan)
    success = np.full((len(n_values), len(r_values)), np.nan)
    for (n, r), (med, rate) in best.items():
        medians[n_values.index(n), r_values.index(r)] = med
        success[n_values.index(n), r_values.index(r)] = rate
    return n_values, r_values, medians, success


def sweep_heatmap(input_path: str, output_path: str, scale: str = "log") -> None:
    rows = read_results(input_path)
    if not rows:
        raise MissingDataError(f"{input_path} has no records")
    algorithms = sorted({r.algorithm for r in rows})

    fig, axes = plt.subplots(
        1, len(algorithms), figsize=(1.0 + 4.2 * len(algorithms), 4.2), squeeze=False
    )
    for ax, algorithm in zip(axes[0], algorithms):
        n_values, r_values, medians, success = sweep_grid(rows, algorithm)
        shown = np.log10(medians) if scale == "log" else medians
        image = ax.imshow(shown, aspect="auto", origin="lower", cmap="viridis_r")
        ax.set_xticks(range(len(r_values)), [str(r) for r in r_values])
        ax.set_yticks(range(len(n_values)), [str(n) for n in n_values])
        ax.set_xlabel("base_rate")
        ax.set_ylabel("n_nodes")
        ax.set_title(algorithm)
        for i in range(len(n_values)):
            for j in range(len(r_values)):
                if np.isnan(medians[i, j]):
                    continue
                text = f"{medians[i, j]:,.0f}"
                if success[i, j] < 1.0:
                    text += f"\n{success[i, j]:.0%} ok"
                ax.text(j, i, text, ha="center", va="center", fontsize=7)
        label = "log10 median node_evals" if scale == "log" else "median node_evals"
        fig.colorbar(image, ax=ax, label=label)
    fig.tight_layout()
    fig.savefig(output_path, dpi=150)
    plt.close(fig)
