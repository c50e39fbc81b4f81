"""Result records and their delimited-text persistence.

The column set and ordering are a stable external interface; rows are
canonically sorted by (algorithm, cell_id, replicate) before writing so
reruns and parallel execution produce identical files.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from multicgp.harness.config import fmt_num

__all__ = ["COLUMNS", "ResultRecord", "read_results", "write_results"]

COLUMNS = (
    "algorithm",
    "cell_id",
    "n_nodes",
    "base_rate",
    "scheme",
    "k",
    "floor",
    "replicate",
    "seed",
    "success",
    "node_evals",
    "generations",
    "duration_ms",
)


@dataclass(frozen=True)
class ResultRecord:
    """One run of one algorithm at one grid cell.

    For single_task this is the whole 9-run sequential protocol: node_evals
    and generations are totals and success means all nine runs succeeded.
    """

    algorithm: str
    cell_id: str
    n_nodes: int
    base_rate: float
    scheme: str
    k: float | None
    floor: float | None
    replicate: int
    seed: int
    success: bool
    node_evals: int
    generations: int
    duration_ms: int

    @property
    def sort_key(self) -> tuple:
        return (self.algorithm, self.cell_id, self.replicate)

    def to_row(self) -> list[str]:
        return [
            self.algorithm,
            self.cell_id,
            str(self.n_nodes),
            fmt_num(self.base_rate),
            self.scheme,
            "" if self.k is None else fmt_num(self.k),
            "" if self.floor is None else fmt_num(self.floor),
            str(self.replicate),
            str(self.seed),
            "true" if self.success else "false",
            str(self.node_evals),
            str(self.generations),
            str(self.duration_ms),
        ]

    @classmethod
    def from_row(cls, row: list[str]) -> "ResultRecord":
        if len(row) != len(COLUMNS):
            raise ValueError(f"expected {len(COLUMNS)} columns, got {len(row)}")
        return cls(
            algorithm=row[0],
            cell_id=row[1],
            n_nodes=int(row[2]),
            base_rate=float(row[3]),
            scheme=row[4],
            k=None if row[5] == "" else float(row[5]),
            floor=None if row[6] == "" else float(row[6]),
            replicate=int(row[7]),
            seed=int(row[8]),
            success={"true": True, "false": False}[row[9]],
            node_evals=int(row[10]),
            generations=int(row[11]),
            duration_ms=int(row[12]),
        )


def write_results(path: str, records: list[ResultRecord]) -> None:
    ordered = sorted(records, key=lambda r: r.sort_key)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(COLUMNS)
        for record in ordered:
            writer.writerow(record.to_row())


def read_results(path: str) -> list[ResultRecord]:
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != COLUMNS:
            raise ValueError(f"{path} does not have the expected result columns")
        return [ResultRecord.from_row(row) for row in reader]
