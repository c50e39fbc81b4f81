"""(1+lambda) evolution strategy with neutral drift and effort accounting.

One parent, lambda mutated offspring per generation.  The best offspring
replaces the parent whenever its scalar fitness is at least the parent's,
so equal-fitness moves across plateaus are accepted.  Computational
effort is counted in node-evaluations: every evaluated individual
contributes its full genome size, active or not.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

from multicgp.contribution import WeightScheme, contributions, node_weights
from multicgp.genome import Genome, GenomeParams, MutationWeights, mutate, random_genome
from multicgp.rng import derive_seed, make_rng
from multicgp.tasks import FitnessVector, TaskSuite, evaluate_outputs, fitness_from_masks

__all__ = [
    "EsConfig",
    "EffortCounter",
    "RunResult",
    "SingleTaskSuiteResult",
    "run",
    "run_single_task_suite",
    "run_multibehavior",
]

GenerationCallback = Callable[[int, Genome, FitnessVector, int], None]


@dataclass(frozen=True)
class EsConfig:
    """Everything one evolutionary run depends on.

    binary_fitness switches per-task scoring from fraction-correct to
    solved/unsolved; weight_outputs=False exempts output genes from the
    fitness-weighted mutation scheme.  Both exist for ablation runs.
    """

    genome_params: GenomeParams
    base_rate: float
    scheme: WeightScheme
    budget: int
    seed: int
    lam: int = 4
    binary_fitness: bool = False
    weight_outputs: bool = True

    def __post_init__(self) -> None:
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if self.budget <= 0:
            raise ValueError(f"budget must be > 0, got {self.budget}")
        if not 0.0 < self.base_rate <= 1.0:
            raise ValueError(f"base_rate must lie in (0, 1], got {self.base_rate}")


@dataclass
class EffortCounter:
    """Node-evaluation bookkeeping; node_evals == individuals * n_nodes."""

    n_nodes: int
    individuals: int = 0

    @property
    def node_evals(self) -> int:
        return self.individuals * self.n_nodes

    def count(self, individuals: int = 1) -> None:
        self.individuals += individuals


@dataclass(frozen=True)
class RunResult:
    success: bool
    node_evals: int
    generations: int
    final_fitness: FitnessVector
    final_genome: Genome
    seed: int

    @property
    def individuals(self) -> int:
        return self.node_evals // self.final_genome.params.n_nodes


@dataclass(frozen=True)
class SingleTaskSuiteResult:
    """Nine sequential single-task runs and their pooled effort."""

    results: tuple[RunResult, ...]
    total_node_evals: int
    success: bool

    @property
    def total_generations(self) -> int:
        return sum(r.generations for r in self.results)


def run(
    config: EsConfig,
    suite: TaskSuite,
    assignment: Sequence[int],
    on_generation: GenerationCallback | None = None,
) -> RunResult:
    """Run the (1+lambda) ES until the parent is perfect or budget runs out.

    Termination is checked at generation boundaries only: success the
    moment the current parent solves every assigned task, failure once
    node_evals >= budget, so a run may overshoot the budget by at most
    one generation of evaluations.  Deterministic given config.seed.
    """
    params = config.genome_params
    assignment = tuple(int(t) for t in assignment)
    if len(assignment) != params.n_outputs:
        raise ValueError(
            f"assignment length {len(assignment)} != n_outputs {params.n_outputs}"
        )

    rng = make_rng(config.seed)
    effort = EffortCounter(params.n_nodes)

    parent = random_genome(params, rng)
    parent_fit = fitness_from_masks(
        evaluate_outputs(parent), suite, assignment, config.binary_fitness
    )
    effort.count()

    # The constant scheme yields weight 1 everywhere, so the contribution
    # pass would be pure overhead; reuse a fixed all-ones vector instead.
    constant_weights = (
        MutationWeights.uniform(params) if config.scheme.kind == "constant" else None
    )
    weights: MutationWeights | None = None

    generations = 0
    while True:
        if parent_fit.perfect():
            success = True
            break
        if effort.node_evals >= config.budget:
            success = False
            break

        if constant_weights is not None:
            weights = constant_weights
        elif weights is None:  # parent changed (or first generation)
            cmap = contributions(parent, assignment)
            weights = node_weights(
                cmap, parent_fit, config.scheme, config.weight_outputs
            )

        best: Genome | None = None
        best_fit: FitnessVector | None = None
        ties = 0
        for _ in range(config.lam):
            child = mutate(parent, config.base_rate, weights, rng)
            child_fit = fitness_from_masks(
                evaluate_outputs(child), suite, assignment, config.binary_fitness
            )
            effort.count()
            if best_fit is None or child_fit.scalar > best_fit.scalar:
                best, best_fit, ties = child, child_fit, 1
            elif child_fit.scalar == best_fit.scalar:
                # Reservoir draw keeps the choice uniform over tied children.
                ties += 1
                if rng.random() < 1.0 / ties:
                    best, best_fit = child, child_fit

        generations += 1
        assert best is not None and best_fit is not None
        if best_fit.scalar >= parent_fit.scalar:  # >= admits neutral drift
            parent, parent_fit = best, best_fit
            weights = None if constant_weights is None else weights
        if on_generation is not None:
            on_generation(generations, parent, parent_fit, effort.node_evals)

    return RunResult(
        success=success,
        node_evals=effort.node_evals,
        generations=generations,
        final_fitness=parent_fit,
        final_genome=parent,
        seed=config.seed,
    )


def run_single_task_suite(config: EsConfig, suite: TaskSuite) -> SingleTaskSuiteResult:
    """Solve every task in its own run and pool the node-evaluations.

    Each task's run gets a seed derived from (config.seed, task index),
    so the sequence is reproducible and tasks stay independent.
    """
    if config.genome_params.n_outputs != 1:
        raise ValueError("single-task runs need a 1-output genome")
    results = []
    for task_idx in range(len(suite)):
        task_config = replace(config, seed=derive_seed(config.seed, "task", task_idx))
        results.append(run(task_config, suite, (task_idx,)))
    return SingleTaskSuiteResult(
        results=tuple(results),
        total_node_evals=sum(r.node_evals for r in results),
        success=all(r.success for r in results),
    )


def run_multibehavior(config: EsConfig, suite: TaskSuite) -> RunResult:
    """One run over a genome with a dedicated output per task."""
    if config.genome_params.n_outputs != len(suite):
        raise ValueError(
            f"multi-behavior genome needs {len(suite)} outputs, "
            f"got {config.genome_params.n_outputs}"
        )
    return run(config, suite, tuple(range(len(suite))))
