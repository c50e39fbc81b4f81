"""Circuit export: DOT graph text, task-overlap matrix, genome files.

A genome file is the JSON form of Genome.to_dict plus an optional "tasks"
list naming the task each output serves; files without it must have one
output per canonical task.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from multicgp.contribution import contributions
from multicgp.genome import Genome, decode
from multicgp.harness.config import ConfigError, fmt_num
from multicgp.tasks import FitnessVector, TaskSuite, canonical_suite

__all__ = [
    "OverlapMatrix",
    "export_dot",
    "load_genome_file",
    "overlap",
    "save_genome_file",
]

# One fill color per canonical task index; nodes shared by several tasks are
# drawn gold with every contributing task named in the label.
PALETTE = (
    "#aec7e8",
    "#ffbb78",
    "#98df8a",
    "#ff9896",
    "#c5b0d5",
    "#c49c94",
    "#f7b6d2",
    "#dbdb8d",
    "#9edae5",
)
SHARED_COLOR = "#ffd700"
INACTIVE_COLOR = "#e0e0e0"


def _wire_vertex(wire: int, n_inputs: int) -> str:
    return f"in{wire}" if wire < n_inputs else f"n{wire - n_inputs}"


def export_dot(
    genome: Genome,
    fitness: FitnessVector,
    assignment: list[int],
    suite: TaskSuite | None = None,
    include_inactive: bool = False,
) -> str:
    """Directed-graph text for a genome: inputs, active gates, output taps.

    Gates are colored by the set of tasks whose output cones contain them;
    inactive gates are omitted unless include_inactive is set.
    """
    suite = suite if suite is not None else canonical_suite()
    params = genome.params
    cmap = contributions(genome, assignment)
    active = decode(genome).all_active

    lines = ["digraph circuit {", "  rankdir=LR;"]
    for i in range(params.n_inputs):
        lines.append(f'  in{i} [shape=circle label="i{i}"];')

    drawn = set()
    for i in range(params.n_nodes):
        tasks = sorted(cmap.node_tasks[i])
        if i in active:
            names = ",".join(suite[t].name for t in tasks)
            color = PALETTE[tasks[0] % len(PALETTE)] if len(tasks) == 1 else SHARED_COLOR
            label = f"n{i} NAND\\n{names}"
        elif include_inactive:
            color = INACTIVE_COLOR
            label = f"n{i} NAND"
        else:
            continue
        drawn.add(i)
        lines.append(
            f'  n{i} [shape=box style=filled fillcolor="{color}" label="{label}"];'
        )

    for o in range(params.n_outputs):
        task_name = suite[assignment[o]].name
        fit = fmt_num(fitness.per_task[o])
        lines.append(f'  out{o} [shape=plaintext label="{task_name} f={fit}"];')

    for i in sorted(drawn):
        a, b = (int(g) for g in genome.node_genes[i])
        lines.append(f"  {_wire_vertex(a, params.n_inputs)} -> n{i};")
        lines.append(f"  {_wire_vertex(b, params.n_inputs)} -> n{i};")
    for o, gene in enumerate(int(g) for g in genome.output_genes):
        lines.append(f"  {_wire_vertex(gene, params.n_inputs)} -> out{o};")

    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class OverlapMatrix:
    """counts[s][t] = number of active nodes shared by outputs s and t."""

    counts: tuple[tuple[int, ...], ...]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.counts]


def overlap(genome: Genome) -> OverlapMatrix:
    per_output = decode(genome).per_output
    counts = tuple(
        tuple(len(a & b) for b in per_output) for a in per_output
    )
    return OverlapMatrix(counts=counts)


def save_genome_file(path: str, genome: Genome, tasks: list[str] | None = None) -> None:
    record = genome.to_dict()
    if tasks is not None:
        record["tasks"] = list(tasks)
    with open(path, "w") as f:
        json.dump(record, f, indent=2)
        f.write("\n")


def load_genome_file(path: str, suite: TaskSuite | None = None):
    """Read a genome file; returns (genome, assignment).

    The assignment comes from the "tasks" names when present, else defaults
    to the canonical order for suite-sized genomes.
    """
    suite = suite if suite is not None else canonical_suite()
    try:
        with open(path) as f:
            record = json.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    tasks = record.pop("tasks", None)
    try:
        genome = Genome.from_dict(record)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid genome in {path}: {exc}") from exc
    if tasks is not None:
        try:
            assignment = [suite.index(name) for name in tasks]
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if len(assignment) != genome.params.n_outputs:
            raise ConfigError(
                f"{path} names {len(assignment)} tasks for "
                f"{genome.params.n_outputs} outputs"
            )
    elif genome.params.n_outputs == len(suite):
        assignment = list(range(len(suite)))
    else:
        raise ConfigError(
            f"{path} has no task names and {genome.params.n_outputs} outputs; "
            f"cannot infer an assignment"
        )
    return genome, assignment
