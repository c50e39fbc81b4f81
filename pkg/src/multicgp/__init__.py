"""Multitask Cartesian GP over a NAND-only primitive set.

A single-row CGP genome carries one output tap per Boolean task, so the
same internal gates can serve several tasks at once.  A (1+4) evolution
strategy with contribution-weighted mutation searches for circuits that
solve all tasks simultaneously; the harness compares that against solving
each task in its own run.
"""

from multicgp.genome import (
    ActiveSet,
    Genome,
    GenomeParams,
    MutationWeights,
    decode,
    mutate,
    random_genome,
)
from multicgp.tasks import (
    FitnessVector,
    TaskSuite,
    TruthTable,
    canonical_suite,
    evaluate_outputs,
    fitness,
)
from multicgp.contribution import (
    ContributionMap,
    WeightScheme,
    contributions,
    node_weights,
)
from multicgp.evolve import (
    EffortCounter,
    EsConfig,
    RunResult,
    SingleTaskSuiteResult,
    run,
    run_multibehavior,
    run_single_task_suite,
)

__version__ = "0.1.0"

__all__ = [
    "ActiveSet",
    "ContributionMap",
    "EffortCounter",
    "EsConfig",
    "FitnessVector",
    "Genome",
    "GenomeParams",
    "MutationWeights",
    "RunResult",
    "SingleTaskSuiteResult",
    "TaskSuite",
    "TruthTable",
    "WeightScheme",
    "canonical_suite",
    "contributions",
    "decode",
    "evaluate_outputs",
    "fitness",
    "mutate",
    "node_weights",
    "random_genome",
    "run",
    "run_multibehavior",
    "run_single_task_suite",
]
