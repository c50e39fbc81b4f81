"""Command-line entry points: plot-effort and plot-sweep."""

from __future__ import annotations

import argparse
import sys

from cgpplots.boxplot import PlotJob, boxplot
from cgpplots.results import MissingDataError, ParseError
from cgpplots.sweep import sweep_heatmap

__all__ = ["main_effort", "main_sweep"]


def _run(action) -> int:
    try:
        action()
        return 0
    except (ParseError, MissingDataError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main_effort(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-effort",
        description="box plot of node-evaluation effort per algorithm",
    )
    parser.add_argument("results")
    parser.add_argument("-o", "--output", required=True)
    parser.add_argument("--metric", default="node_evals",
                        choices=("node_evals", "generations", "duration_ms"))
    parser.add_argument("--scale", default="linear", choices=("linear", "log"))
    args = parser.parse_args(argv)
    job = PlotJob(
        input_path=args.results,
        output_path=args.output,
        metric=args.metric,
        scale=args.scale,
    )
    return _run(lambda: boxplot(job))


def main_sweep(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-sweep",
        description="heatmap of median effort over the parameter grid",
    )
    parser.add_argument("results")
    parser.add_argument("-o", "--output", required=True)
    parser.add_argument("--scale", default="log", choices=("linear", "log"))
    args = parser.parse_args(argv)
    return _run(lambda: sweep_heatmap(args.results, args.output, scale=args.scale))


if __name__ == "__main__":
    sys.exit(main_effort())
