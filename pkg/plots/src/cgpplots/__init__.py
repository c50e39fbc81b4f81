"""Plotting for circuit-evolution result files.

Consumes only the public results-CSV schema; has no dependency on the
engine package.
"""

from cgpplots.results import MissingDataError, ParseError, read_results
from cgpplots.boxplot import PlotJob, boxplot, group_stats
from cgpplots.sweep import sweep_heatmap

__all__ = [
    "MissingDataError",
    "ParseError",
    "PlotJob",
    "boxplot",
    "group_stats",
    "read_results",
    "sweep_heatmap",
]

__version__ = "0.1.0"
