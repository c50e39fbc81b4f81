"""Experiment harness: sweeps, algorithm comparison, persistence, export."""

from multicgp.harness.config import (
    ALGORITHMS,
    Cell,
    ConfigError,
    DEFAULT_TUNED,
    ExperimentConfig,
    load_config,
    load_tuned,
)
from multicgp.harness.dot import OverlapMatrix, export_dot, load_genome_file, overlap
from multicgp.harness.experiment import CompareResult, SweepResult, compare, sweep
from multicgp.harness.results import ResultRecord, read_results, write_results
from multicgp.harness.stats import DistSummary, pairwise_ratios, summarize

__all__ = [
    "ALGORITHMS",
    "Cell",
    "ConfigError",
    "DEFAULT_TUNED",
    "ExperimentConfig",
    "load_config",
    "load_tuned",
    "OverlapMatrix",
    "export_dot",
    "load_genome_file",
    "overlap",
    "CompareResult",
    "SweepResult",
    "compare",
    "sweep",
    "ResultRecord",
    "read_results",
    "write_results",
    "DistSummary",
    "pairwise_ratios",
    "summarize",
]
