"""Sweep and comparison protocols: seeded runs, ranking, persistence.

Every run's seed is derived from (master_seed, algorithm, cell_id,
replicate), so the full experiment is reproducible from the manifest alone
and independent of execution order or worker count.
"""

from __future__ import annotations

import json
import multiprocessing
import statistics
import time
from dataclasses import dataclass
from typing import Any, Mapping

import multicgp
from multicgp.contribution import WeightScheme
from multicgp.evolve import EsConfig, run_multibehavior, run_single_task_suite
from multicgp.genome import GenomeParams
from multicgp.harness.config import (
    ALGO_SCHEME,
    Cell,
    ConfigError,
    ExperimentConfig,
    dump_tuned,
)
from multicgp.harness.results import ResultRecord, write_results
from multicgp.harness.stats import DistSummary, pairwise_ratios, summarize
from multicgp.rng import derive_seed
from multicgp.tasks import canonical_suite

__all__ = [
    "CellSummary",
    "CompareResult",
    "RunSpec",
    "SweepResult",
    "build_es_config",
    "compare",
    "execute_spec",
    "run_one",
    "sweep",
]


@dataclass(frozen=True)
class RunSpec:
    """Everything one worker needs to produce one ResultRecord."""

    algorithm: str
    cell: Cell
    replicate: int
    seed: int
    budget: int
    lam: int = 4
    levels_back: int | None = None
    binary_fitness: bool = False
    weight_outputs: bool = True
    record_duration: bool = True


def build_es_config(spec: RunSpec) -> EsConfig:
    n_outputs = 1 if spec.algorithm == "single_task" else 9
    try:
        scheme = WeightScheme(
            ALGO_SCHEME[spec.algorithm],
            k=1.0 if spec.cell.k is None else spec.cell.k,
            floor=0.0 if spec.cell.floor is None else spec.cell.floor,
        )
        params = GenomeParams(
            n_nodes=spec.cell.n_nodes,
            n_outputs=n_outputs,
            levels_back=spec.levels_back,
        )
        return EsConfig(
            genome_params=params,
            base_rate=spec.cell.base_rate,
            scheme=scheme,
            budget=spec.budget,
            seed=spec.seed,
            lam=spec.lam,
            binary_fitness=spec.binary_fitness,
            weight_outputs=spec.weight_outputs,
        )
    except ValueError as exc:  # config-sourced values, so a config error
        raise ConfigError(str(exc)) from exc


def execute_spec(spec: RunSpec) -> ResultRecord:
    config = build_es_config(spec)
    suite = canonical_suite()
    start = time.perf_counter()
    if spec.algorithm == "single_task":
        result = run_single_task_suite(config, suite)
        success, node_evals = result.success, result.total_node_evals
        generations = result.total_generations
    else:
        run_result = run_multibehavior(config, suite)
        success, node_evals = run_result.success, run_result.node_evals
        generations = run_result.generations
    elapsed_ms = round((time.perf_counter() - start) * 1000)
    return ResultRecord(
        algorithm=spec.algorithm,
        cell_id=spec.cell.cell_id,
        n_nodes=spec.cell.n_nodes,
        base_rate=spec.cell.base_rate,
        scheme=ALGO_SCHEME[spec.algorithm],
        k=spec.cell.k,
        floor=spec.cell.floor,
        replicate=spec.replicate,
        seed=spec.seed,
        success=success,
        node_evals=node_evals,
        generations=generations,
        duration_ms=elapsed_ms if spec.record_duration else 0,
    )


def _make_spec(
    config: ExperimentConfig, algorithm: str, cell: Cell, replicate: int
) -> RunSpec:
    overrides = config.algo_overrides(algorithm)
    return RunSpec(
        algorithm=algorithm,
        cell=cell,
        replicate=replicate,
        seed=derive_seed(config.master_seed, algorithm, cell.cell_id, replicate),
        budget=config.budget,
        record_duration=config.record_durations,
        **overrides,
    )


def _run_specs(specs: list[RunSpec], workers: int) -> list[ResultRecord]:
    if workers <= 1 or len(specs) <= 1:
        records = [execute_spec(spec) for spec in specs]
    else:
        with multiprocessing.get_context("fork").Pool(workers) as pool:
            records = pool.map(execute_spec, specs)
    return sorted(records, key=lambda r: r.sort_key)


def _write_manifest(config: ExperimentConfig, command: str) -> None:
    manifest = {
        "command": command,
        "version": multicgp.__version__,
        "config": config.manifest_dict(),
    }
    with open(config.manifest_path, "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")


@dataclass(frozen=True)
class CellSummary:
    """Ranking view of one grid cell: failures are charged the full budget."""

    algorithm: str
    cell: Cell
    count: int
    success_rate: float
    median_effort: float
    mean_effort: float


@dataclass(frozen=True)
class SweepResult:
    best: dict[str, Cell]
    summaries: list[CellSummary]
    records: list[ResultRecord]


def _rank_cells(summaries: list[CellSummary]) -> list[CellSummary]:
    return sorted(
        summaries,
        key=lambda s: (-s.success_rate, s.median_effort, s.cell.cell_id),
    )


def sweep(config: ExperimentConfig, write: bool = True) -> SweepResult:
    """Run the grid for every algorithm and pick each one's best cell."""
    specs = [
        _make_spec(config, algorithm, cell, replicate)
        for algorithm in config.algorithms
        for cell in config.grid_cells(algorithm)
        for replicate in range(config.replicates)
    ]
    records = _run_specs(specs, config.workers)

    by_cell: dict[tuple[str, str], list[ResultRecord]] = {}
    cells: dict[tuple[str, str], Cell] = {}
    for algorithm in config.algorithms:
        for cell in config.grid_cells(algorithm):
            cells[(algorithm, cell.cell_id)] = cell
    for record in records:
        by_cell.setdefault((record.algorithm, record.cell_id), []).append(record)

    summaries = []
    for key, group in sorted(by_cell.items()):
        efforts = [r.node_evals if r.success else config.budget for r in group]
        summaries.append(
            CellSummary(
                algorithm=key[0],
                cell=cells[key],
                count=len(group),
                success_rate=sum(r.success for r in group) / len(group),
                median_effort=float(statistics.median(efforts)),
                mean_effort=float(statistics.fmean(efforts)),
            )
        )

    best = {}
    for algorithm in config.algorithms:
        ranked = _rank_cells([s for s in summaries if s.algorithm == algorithm])
        best[algorithm] = ranked[0].cell

    if write:
        write_results(config.results_path, records)
        _write_manifest(config, "sweep")
        with open(config.tuned_path, "w") as f:
            f.write(dump_tuned(best))
    return SweepResult(best=best, summaries=summaries, records=records)


@dataclass(frozen=True)
class CompareResult:
    summaries: list[DistSummary]
    ratios: dict[str, float]
    records: list[ResultRecord]


def compare(
    config: ExperimentConfig,
    tuned: Mapping[str, Cell] | None = None,
    write: bool = True,
) -> CompareResult:
    """Tuned-configuration comparison across the requested algorithms.

    tuned, when given, must cover every requested algorithm; otherwise the
    config's tuned cells (falling back to packaged defaults) are used.
    """
    if tuned is not None:
        missing = [a for a in config.algorithms if a not in tuned]
        if missing:
            raise ConfigError(f"tuned cells missing for: {', '.join(missing)}")
    cell_of = {
        algorithm: tuned[algorithm] if tuned is not None else config.tuned_cell(algorithm)
        for algorithm in config.algorithms
    }
    specs = [
        _make_spec(config, algorithm, cell_of[algorithm], replicate)
        for algorithm in config.algorithms
        for replicate in range(config.replicates)
    ]
    records = _run_specs(specs, config.workers)
    summaries = summarize(records)
    ratios = pairwise_ratios(summaries)
    if write:
        write_results(config.results_path, records)
        _write_manifest(config, "compare")
    return CompareResult(summaries=summaries, ratios=ratios, records=records)


def run_one(
    config: ExperimentConfig,
    algorithm: str,
    seed: int,
    tuned: Mapping[str, Cell] | None = None,
) -> tuple[ResultRecord, Any]:
    """One replicate at the tuned cell under an explicit seed.

    Returns the record plus the underlying engine result, whose final genome
    callers may save for export.
    """
    if algorithm not in config.algorithms:
        raise ConfigError(f"algorithm {algorithm!r} not in config")
    cell = tuned[algorithm] if tuned is not None else config.tuned_cell(algorithm)
    overrides = config.algo_overrides(algorithm)
    spec = RunSpec(
        algorithm=algorithm,
        cell=cell,
        replicate=0,
        seed=seed,
        budget=config.budget,
        record_duration=config.record_durations,
        **overrides,
    )
    es_config = build_es_config(spec)
    suite = canonical_suite()
    start = time.perf_counter()
    if algorithm == "single_task":
        result: Any = run_single_task_suite(es_config, suite)
        success, node_evals = result.success, result.total_node_evals
        generations = result.total_generations
    else:
        result = run_multibehavior(es_config, suite)
        success, node_evals = result.success, result.node_evals
        generations = result.generations
    elapsed_ms = round((time.perf_counter() - start) * 1000)
    record = ResultRecord(
        algorithm=algorithm,
        cell_id=cell.cell_id,
        n_nodes=cell.n_nodes,
        base_rate=cell.base_rate,
        scheme=ALGO_SCHEME[algorithm],
        k=cell.k,
        floor=cell.floor,
        replicate=0,
        seed=seed,
        success=success,
        node_evals=node_evals,
        generations=generations,
        duration_ms=elapsed_ms if config.record_durations else 0,
    )
    return record, result
