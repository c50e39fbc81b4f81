"""Distribution summaries and median ratios over result records.

Quartiles use numpy's linear interpolation so any downstream consumer that
recomputes them from the same CSV gets bit-equal values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from multicgp.harness.results import ResultRecord

__all__ = ["DistSummary", "group_records", "pairwise_ratios", "summarize"]


@dataclass(frozen=True)
class DistSummary:
    algorithm: str
    cell_id: str
    count: int
    success_rate: float
    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "cell_id": self.cell_id,
            "count": self.count,
            "success_rate": self.success_rate,
            "min": self.min,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "max": self.max,
            "mean": self.mean,
        }


def group_records(
    records: list[ResultRecord],
) -> dict[tuple[str, str], list[ResultRecord]]:
    groups: dict[tuple[str, str], list[ResultRecord]] = {}
    for record in records:
        groups.setdefault((record.algorithm, record.cell_id), []).append(record)
    return groups


def summarize(records: list[ResultRecord]) -> list[DistSummary]:
    """One node-evals distribution summary per (algorithm, cell)."""
    summaries = []
    for (algorithm, cell_id), group in sorted(group_records(records).items()):
        efforts = np.array([r.node_evals for r in group], dtype=np.float64)
        q1, med, q3 = np.percentile(efforts, [25, 50, 75], method="linear")
        summaries.append(
            DistSummary(
                algorithm=algorithm,
                cell_id=cell_id,
                count=len(group),
                success_rate=sum(r.success for r in group) / len(group),
                min=float(efforts.min()),
                q1=float(q1),
                median=float(med),
                q3=float(q3),
                max=float(efforts.max()),
                mean=float(efforts.mean()),
            )
        )
    return summaries


def pairwise_ratios(summaries: list[DistSummary]) -> dict[str, float]:
    """median(a)/median(b) for every ordered algorithm pair.

    Only defined when each algorithm appears with exactly one cell, as in
    comparison output; otherwise returns an empty mapping.
    """
    by_algo: dict[str, list[DistSummary]] = {}
    for s in summaries:
        by_algo.setdefault(s.algorithm, []).append(s)
    if any(len(group) != 1 for group in by_algo.values()) or len(by_algo) < 2:
        return {}
    medians = {algo: group[0].median for algo, group in by_algo.items()}
    return {
        f"{a}/{b}": medians[a] / medians[b]
        for a in sorted(medians)
        for b in sorted(medians)
        if a != b and medians[b] > 0
    }
