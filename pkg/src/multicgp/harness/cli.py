"""Command-line driver: sweep, compare, run, export-dot, overlap, stats.

Exit codes: 0 success, 1 configuration error (including bad usage),
2 runtime or persistence error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from multicgp.harness.config import ALGORITHMS, ConfigError, load_config, load_tuned
from multicgp.harness.dot import export_dot, load_genome_file, overlap, save_genome_file
from multicgp.harness.experiment import compare, run_one, sweep
from multicgp.harness.results import read_results
from multicgp.harness.stats import pairwise_ratios, summarize
from multicgp.tasks import canonical_suite, fitness

__all__ = ["build_parser", "main"]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors are config errors
        self.exit(1, f"{self.prog}: error: {message}\n")


def _print_table(rows: list[list[str]]) -> None:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def cmd_sweep(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    result = sweep(config)
    rows = [["algorithm", "cell", "success", "median", "mean"]]
    for s in sorted(
        result.summaries,
        key=lambda s: (s.algorithm, -s.success_rate, s.median_effort),
    ):
        rows.append([
            s.algorithm,
            s.cell.cell_id,
            f"{s.success_rate:.2f}",
            f"{s.median_effort:.0f}",
            f"{s.mean_effort:.0f}",
        ])
    _print_table(rows)
    print()
    for algorithm in config.algorithms:
        print(f"best {algorithm}: {result.best[algorithm].cell_id}")
    print(f"\nwrote {config.results_path}, {config.manifest_path}, {config.tuned_path}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    tuned = load_tuned(args.tuned) if args.tuned else None
    result = compare(config, tuned)
    rows = [["algorithm", "cell", "success", "min", "q1", "median", "q3", "max"]]
    for s in result.summaries:
        rows.append([
            s.algorithm,
            s.cell_id,
            f"{s.success_rate:.2f}",
            f"{s.min:.0f}",
            f"{s.q1:.0f}",
            f"{s.median:.0f}",
            f"{s.q3:.0f}",
            f"{s.max:.0f}",
        ])
    _print_table(rows)
    if result.ratios:
        print()
        for pair, value in sorted(result.ratios.items()):
            print(f"median-ratio {pair} = {value:.3f}")
    print(f"\nwrote {config.results_path}, {config.manifest_path}")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    tuned = load_tuned(args.tuned) if args.tuned else None
    record, engine_result = run_one(config, args.algo, args.seed, tuned)
    if args.save_genome:
        if args.algo == "single_task":
            raise ConfigError("--save-genome requires a multi-behavior algorithm")
        save_genome_file(
            args.save_genome,
            engine_result.final_genome,
            tasks=list(canonical_suite().names),
        )
    print(json.dumps(dataclasses.asdict(record)))
    return 0


def cmd_export_dot(args: argparse.Namespace) -> int:
    genome, assignment = load_genome_file(args.genome_file)
    suite = canonical_suite()
    fit = fitness(genome, suite, assignment)
    text = export_dot(
        genome, fit, assignment, suite, include_inactive=args.include_inactive
    )
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_overlap(args: argparse.Namespace) -> int:
    genome, assignment = load_genome_file(args.genome_file)
    suite = canonical_suite()
    names = [suite[t].name for t in assignment]
    matrix = overlap(genome)
    if args.json:
        print(json.dumps({"tasks": names, "counts": matrix.to_lists()}))
        return 0
    rows = [[""] + names]
    for name, row in zip(names, matrix.counts):
        rows.append([name] + [str(v) for v in row])
    _print_table(rows)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    records = read_results(args.results_file)
    summaries = summarize(records)
    ratios = pairwise_ratios(summaries)
    if args.json:
        print(json.dumps({
            "groups": [s.to_dict() for s in summaries],
            "ratios": ratios,
        }))
        return 0
    rows = [["algorithm", "cell", "count", "success",
             "min", "q1", "median", "q3", "max", "mean"]]
    for s in summaries:
        rows.append([
            s.algorithm,
            s.cell_id,
            str(s.count),
            f"{s.success_rate:.2f}",
            f"{s.min:.0f}",
            f"{s.q1:.0f}",
            f"{s.median:.0f}",
            f"{s.q3:.0f}",
            f"{s.max:.0f}",
            f"{s.mean:.0f}",
        ])
    _print_table(rows)
    if ratios:
        print()
        for pair, value in sorted(ratios.items()):
            print(f"median-ratio {pair} = {value:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multicgp", description="Boolean-circuit evolution harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run the parameter grid, emit tuned cells")
    p.add_argument("config")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="compare algorithms at their tuned cells")
    p.add_argument("config")
    p.add_argument("--tuned", help="tuned-cell TOML overriding packaged defaults")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("run", help="one replicate of one algorithm")
    p.add_argument("config")
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--tuned", help="tuned-cell TOML overriding packaged defaults")
    p.add_argument("--save-genome", metavar="PATH",
                   help="write the final genome as a JSON genome file")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("export-dot", help="emit graph text for a genome file")
    p.add_argument("genome_file")
    p.add_argument("--include-inactive", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("overlap", help="task-pair active-node overlap matrix")
    p.add_argument("genome_file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("stats", help="distribution summaries for a results file")
    p.add_argument("results_file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime/persistence failures
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
