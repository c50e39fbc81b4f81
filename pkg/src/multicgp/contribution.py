"""Task-contribution tracking and fitness-weighted mutation rates.

Each gate is credited to every task whose output it is backward-reachable
from.  Its mutation weight is then a nonincreasing function of the mean
fitness of those tasks, so circuitry serving well-solved tasks is
disturbed less while unsolved regions keep mutating at the full rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from multicgp.genome import Genome, MutationWeights, decode
from multicgp.tasks import FitnessVector

__all__ = ["ContributionMap", "WeightScheme", "contributions", "node_weights"]

SCHEME_KINDS = ("constant", "linear", "exponential")


@dataclass(frozen=True)
class ContributionMap:
    """node_tasks[i] holds the task indices node i feeds; output_task[o]
    is the task assigned to output o."""

    node_tasks: tuple[frozenset[int], ...]
    output_task: tuple[int, ...]


@dataclass(frozen=True)
class WeightScheme:
    """Weight function w(f) on mean task fitness f in [0, 1].

    constant:     w(f) = 1
    linear:       w(f) = 1 - f
    exponential:  w(f) = exp(-k * f)

    All three satisfy w(0) = 1 and are nonincreasing; the result is
    clamped from below at `floor`.
    """

    kind: str
    k: float = 1.0
    floor: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in SCHEME_KINDS:
            raise ValueError(f"unknown scheme kind {self.kind!r}, want one of {SCHEME_KINDS}")
        if self.kind == "exponential" and self.k <= 0:
            raise ValueError(f"exponential decay rate must be > 0, got {self.k}")
        if not 0.0 <= self.floor <= 1.0:
            raise ValueError(f"floor must lie in [0, 1], got {self.floor}")

    def weight(self, mean_fitness: float) -> float:
        if self.kind == "constant":
            w = 1.0
        elif self.kind == "linear":
            w = 1.0 - mean_fitness
        else:
            w = math.exp(-self.k * mean_fitness)
        return max(self.floor, w)


def contributions(genome: Genome, assignment: Sequence[int]) -> ContributionMap:
    """Map every node to the set of tasks whose active subgraph contains it.

    Nodes reachable from no output get the empty set.
    """
    assignment = tuple(int(t) for t in assignment)
    if len(assignment) != genome.params.n_outputs:
        raise ValueError(
            f"assignment length {len(assignment)} != n_outputs {genome.params.n_outputs}"
        )
    active = decode(genome)
    node_tasks: list[set[int]] = [set() for _ in range(genome.params.n_nodes)]
    for out_idx, task_idx in enumerate(assignment):
        for node in active.per_output[out_idx]:
            node_tasks[node].add(task_idx)
    return ContributionMap(
        node_tasks=tuple(frozenset(s) for s in node_tasks),
        output_task=assignment,
    )


def node_weights(
    cmap: ContributionMap,
    fitness: FitnessVector,
    scheme: WeightScheme,
    weight_outputs: bool = True,
) -> MutationWeights:
    """Convert per-task fitness into per-node and per-output mutation weights.

    A node contributing to no output mutates at the full base rate
    (weight 1): inactive genes are the neutral material CGP drifts
    through.  Output genes take the weight of their single assigned
    task, unless weight_outputs is False, which pins them at 1.

    Raises ValueError if the contribution map mentions a task index the
    fitness vector does not cover.
    """
    task_fitness = {task: fitness.per_task[pos] for pos, task in enumerate(cmap.output_task)}
    node = np.ones(len(cmap.node_tasks))
    for i, tasks in enumerate(cmap.node_tasks):
        if not tasks:
            continue
        try:
            mean = sum(task_fitness[t] for t in tasks) / len(tasks)
        except KeyError as exc:
            raise ValueError(f"task index {exc.args[0]} has no fitness entry") from exc
        node[i] = scheme.weight(mean)
    if weight_outputs:
        output = np.array(
            [scheme.weight(task_fitness[t]) for t in cmap.output_task]
        )
    else:
        output = np.ones(len(cmap.output_task))
    return MutationWeights(node=node, output=output)
