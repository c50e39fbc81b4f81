"""The nine elementary two-input Boolean tasks and circuit fitness.

Truth tables are 4-bit masks over the input rows (a,b) =
(0,0),(0,1),(1,0),(1,1), with the most significant bit holding row
(0,0).  Under that convention input terminal I0 carries mask 0b0011
(the a column) and I1 carries 0b0101 (the b column), so one pass of
bitwise NAND arithmetic evaluates a circuit on all four rows at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from multicgp.genome import Genome

__all__ = [
    "ROW_MASK",
    "INPUT_MASKS",
    "TruthTable",
    "TaskSuite",
    "FitnessVector",
    "canonical_suite",
    "load_suite",
    "evaluate_outputs",
    "fitness",
    "fitness_from_masks",
]

ROW_MASK = 0b1111
INPUT_MASKS = (0b0011, 0b0101)

# Expected masks, rows (0,0),(0,1),(1,0),(1,1), MSB first.  The unary and
# asymmetric tasks fix operand a: NOT is !a, AND_N is a & !b, OR_N is a | !b.
_CANONICAL_TABLES = (
    ("AND", 0b0001),
    ("AND_N", 0b0010),
    ("EQU", 0b1001),
    ("NAND", 0b1110),
    ("NOR", 0b1000),
    ("NOT", 0b1100),
    ("OR", 0b0111),
    ("OR_N", 0b1011),
    ("XOR", 0b0110),
)


@dataclass(frozen=True)
class TruthTable:
    name: str
    expected: int

    def __post_init__(self) -> None:
        if not 0 <= self.expected <= ROW_MASK:
            raise ValueError(f"expected mask {self.expected} outside [0, 15]")


@dataclass(frozen=True)
class TaskSuite:
    tasks: tuple[TruthTable, ...]

    def __post_init__(self) -> None:
        names = [t.name for t in self.tasks]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate task names in suite: {names}")

    def __len__(self) -> int:
        return len(self.tasks)

    def __getitem__(self, idx: int) -> TruthTable:
        return self.tasks[idx]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.tasks)

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class FitnessVector:
    """Per-task fraction-correct values plus their unweighted mean."""

    per_task: tuple[float, ...]
    scalar: float

    def perfect(self) -> bool:
        return all(f == 1.0 for f in self.per_task)


def canonical_suite() -> TaskSuite:
    """The nine-task suite in alphabetical order."""
    return TaskSuite(tuple(TruthTable(name, mask) for name, mask in _CANONICAL_TABLES))


def load_suite(path: str | Path) -> TaskSuite:
    """Read a custom suite from a JSON file.

    The file holds a list of {"name": ..., "mask": ...} entries where
    mask is either an int in [0, 15] or a 4-character bit string such as
    "0110" (MSB = row (0,0)).
    """
    with open(path, "r", encoding="utf-8") as fh:
        entries = json.load(fh)
    if not isinstance(entries, list) or not entries:
        raise ValueError(f"suite file {path} must hold a non-empty list")
    tables = []
    for entry in entries:
        unknown = set(entry) - {"name", "mask"}
        if unknown:
            raise ValueError(f"unknown suite keys {sorted(unknown)} in {path}")
        mask = entry["mask"]
        if isinstance(mask, str):
            if len(mask) != 4 or set(mask) - {"0", "1"}:
                raise ValueError(f"mask string {mask!r} is not 4 bits")
            mask = int(mask, 2)
        tables.append(TruthTable(str(entry["name"]), int(mask)))
    return TaskSuite(tuple(tables))


def evaluate_outputs(genome: Genome) -> tuple[int, ...]:
    """Evaluate all four input rows at once; returns one 4-bit mask per output."""
    if genome.params.n_inputs != 2:
        raise ValueError("bit-parallel evaluation is defined for 2-input genomes")
    wires = list(INPUT_MASKS)
    for a, b in genome.node_genes.tolist():
        wires.append(~(wires[a] & wires[b]) & ROW_MASK)
    return tuple(wires[g] for g in genome.output_genes.tolist())


def _check_assignment(
    n_outputs: int, suite: TaskSuite, assignment: Sequence[int]
) -> None:
    if len(assignment) != n_outputs:
        raise ValueError(
            f"assignment length {len(assignment)} != n_outputs {n_outputs}"
        )
    if len(set(assignment)) != len(assignment):
        raise ValueError(f"assignment maps two outputs to one task: {assignment}")
    for t in assignment:
        if not 0 <= t < len(suite):
            raise ValueError(f"task index {t} outside suite of {len(suite)}")


def fitness_from_masks(
    masks: Iterable[int],
    suite: TaskSuite,
    assignment: Sequence[int],
    binary: bool = False,
) -> FitnessVector:
    """Score already-evaluated output masks against their assigned tasks.

    per_task is ordered like the outputs/assignment.  With binary=True a
    task scores 1.0 only when all four rows match, else 0.0.
    """
    masks = tuple(masks)
    _check_assignment(len(masks), suite, assignment)
    per_task = []
    for mask, task_idx in zip(masks, assignment):
        matches = (~(mask ^ suite[task_idx].expected) & ROW_MASK).bit_count()
        if binary:
            per_task.append(1.0 if matches == 4 else 0.0)
        else:
            per_task.append(matches / 4.0)
    return FitnessVector(
        per_task=tuple(per_task), scalar=sum(per_task) / len(per_task)
    )


def fitness(
    genome: Genome,
    suite: TaskSuite,
    assignment: Sequence[int],
    binary: bool = False,
) -> FitnessVector:
    """Evaluate a genome and score it; see fitness_from_masks."""
    return fitness_from_masks(evaluate_outputs(genome), suite, assignment, binary)
