"""Reader for the harness results-CSV schema.

The column set is a frozen external interface; any mismatch is a parse
error rather than a best-effort guess.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

__all__ = ["COLUMNS", "MissingDataError", "ParseError", "Row", "read_results"]

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


class ParseError(Exception):
    """Results file does not match the expected schema."""


class MissingDataError(Exception):
    """A requested group has no records to plot."""


@dataclass(frozen=True)
class Row:
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


def _parse_row(raw: list[str], line: int) -> Row:
    if len(raw) != len(COLUMNS):
        raise ParseError(f"line {line}: expected {len(COLUMNS)} columns, got {len(raw)}")
    try:
        return Row(
            algorithm=raw[0],
            cell_id=raw[1],
            n_nodes=int(raw[2]),
            base_rate=float(raw[3]),
            scheme=raw[4],
            k=None if raw[5] == "" else float(raw[5]),
            floor=None if raw[6] == "" else float(raw[6]),
            replicate=int(raw[7]),
            seed=int(raw[8]),
            success={"true": True, "false": False}[raw[9]],
            node_evals=int(raw[10]),
            generations=int(raw[11]),
            duration_ms=int(raw[12]),
        )
    except (KeyError, ValueError) as exc:
        raise ParseError(f"line {line}: {exc}") from exc


def read_results(path: str) -> list[Row]:
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != COLUMNS:
            raise ParseError(f"{path}: header does not match the results schema")
        return [_parse_row(raw, i) for i, raw in enumerate(reader, start=2)]
