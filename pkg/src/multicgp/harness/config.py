"""Experiment configuration: strict TOML parsing, grids, tuned cells.

Unknown keys anywhere in a config file are errors, so typos fail loudly
instead of silently running a default.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

__all__ = [
    "ALGORITHMS",
    "ALGO_SCHEME",
    "Cell",
    "ConfigError",
    "DEFAULT_TUNED",
    "DEFAULT_OVERRIDES",
    "ExperimentConfig",
    "fmt_num",
    "load_config",
    "load_tuned",
]

ALGORITHMS = ("single_task", "multi_constant", "multi_linear", "multi_exponential")

# Mutation-weight scheme used by each algorithm.  single_task is plain CGP,
# so it runs under the constant (unweighted) scheme.
ALGO_SCHEME = {
    "single_task": "constant",
    "multi_constant": "constant",
    "multi_linear": "linear",
    "multi_exponential": "exponential",
}

# EsConfig fields that may be overridden per algorithm in a config file.
OVERRIDE_FIELDS = {
    "lam": int,
    "levels_back": int,
    "binary_fitness": bool,
    "weight_outputs": bool,
}


class ConfigError(Exception):
    """Invalid experiment configuration or malformed input file."""


def fmt_num(x: float) -> str:
    """Compact, deterministic number formatting shared by cell ids and CSV."""
    f = float(x)
    return str(int(f)) if f == int(f) else repr(f)


@dataclass(frozen=True)
class Cell:
    """One point of the parameter grid.

    k is set only for the exponential scheme, floor only for the linear and
    exponential schemes; both stay None where the scheme ignores them.
    """

    n_nodes: int
    base_rate: float
    k: float | None = None
    floor: float | None = None

    @property
    def cell_id(self) -> str:
        parts = [f"n{self.n_nodes}", f"r{fmt_num(self.base_rate)}"]
        if self.k is not None:
            parts.append(f"k{fmt_num(self.k)}")
        if self.floor is not None:
            parts.append(f"f{fmt_num(self.floor)}")
        return "_".join(parts)


# Tuned cells: per-algorithm winners of an offline grid search ranked by
# (success rate, then median node-evals), each confirmed at 100 seeds under
# the default solved/unsolved protocol.  Used by `compare` and `run` when no
# tuned file is supplied.
DEFAULT_TUNED: dict[str, Cell] = {
    "single_task": Cell(n_nodes=15, base_rate=0.3),
    "multi_constant": Cell(n_nodes=30, base_rate=0.03),
    "multi_linear": Cell(n_nodes=30, base_rate=0.3, floor=0.0),
    "multi_exponential": Cell(n_nodes=40, base_rate=0.6, k=10.0, floor=0.0),
}

# Default run protocol scores each task as solved/unsolved: a task pays off
# only once its whole truth table is correct, so mutation weights separate
# finished from unfinished circuitry instead of freezing partial credit.
# Per-row scoring is available via binary_fitness=false in [overrides.*].
DEFAULT_OVERRIDES: dict[str, dict[str, Any]] = {
    algo: {"binary_fitness": True} for algo in ALGORITHMS
}

_TOP_KEYS = {
    "algorithms",
    "replicates",
    "master_seed",
    "budget",
    "workers",
    "record_durations",
    "results_path",
    "manifest_path",
    "tuned_path",
    "sweep",
    "tuned",
    "overrides",
}
_SWEEP_KEYS = {"n_nodes", "base_rate", "k", "floor"}


def _check_keys(section: Mapping[str, Any], allowed: set[str], where: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


@dataclass(frozen=True)
class ExperimentConfig:
    algorithms: tuple[str, ...] = ALGORITHMS
    replicates: int = 50
    master_seed: int = 1
    budget: int = 50_000_000
    workers: int = 1
    record_durations: bool = True
    results_path: str = "results.csv"
    manifest_path: str = "manifest.json"
    tuned_path: str = "tuned.toml"
    sweep_n_nodes: tuple[int, ...] = (10, 20, 50, 100)
    sweep_base_rate: tuple[float, ...] = (0.01, 0.02, 0.05, 0.1)
    sweep_k: tuple[float, ...] = (1.0, 2.0, 5.0, 10.0)
    sweep_floor: tuple[float, ...] = (0.0, 0.01)
    tuned: Mapping[str, Cell] = field(default_factory=dict)
    overrides: Mapping[str, Mapping[str, Any]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _require(len(self.algorithms) > 0, "algorithms must be nonempty")
        for algo in self.algorithms:
            _require(algo in ALGORITHMS, f"unknown algorithm {algo!r}")
        _require(len(set(self.algorithms)) == len(self.algorithms),
                 "duplicate algorithm")
        _require(self.replicates >= 1, "replicates must be >= 1")
        _require(self.budget >= 1, "budget must be >= 1")
        _require(self.workers >= 1, "workers must be >= 1")
        _require(self.master_seed >= 0, "master_seed must be >= 0")
        for name in ("sweep_n_nodes", "sweep_base_rate", "sweep_k", "sweep_floor"):
            _require(len(getattr(self, name)) > 0, f"{name} grid must be nonempty")

    def tuned_cell(self, algorithm: str) -> Cell:
        if algorithm in self.tuned:
            return self.tuned[algorithm]
        return DEFAULT_TUNED[algorithm]

    def algo_overrides(self, algorithm: str) -> dict[str, Any]:
        merged = dict(DEFAULT_OVERRIDES.get(algorithm, {}))
        merged.update(self.overrides.get(algorithm, {}))
        return merged

    def grid_cells(self, algorithm: str) -> list[Cell]:
        """Grid product restricted to the parameters the scheme uses."""
        scheme = ALGO_SCHEME[algorithm]
        ks = self.sweep_k if scheme == "exponential" else (None,)
        floors = self.sweep_floor if scheme in ("linear", "exponential") else (None,)
        return [
            Cell(n_nodes=n, base_rate=r, k=k, floor=fl)
            for n in self.sweep_n_nodes
            for r in self.sweep_base_rate
            for k in ks
            for fl in floors
        ]

    def manifest_dict(self) -> dict:
        return {
            "algorithms": list(self.algorithms),
            "replicates": self.replicates,
            "master_seed": self.master_seed,
            "budget": self.budget,
            "workers": self.workers,
            "record_durations": self.record_durations,
            "sweep": {
                "n_nodes": list(self.sweep_n_nodes),
                "base_rate": list(self.sweep_base_rate),
                "k": list(self.sweep_k),
                "floor": list(self.sweep_floor),
            },
            "tuned": {
                algo: _cell_dict(self.tuned_cell(algo)) for algo in self.algorithms
            },
            "overrides": {
                algo: dict(sorted(self.algo_overrides(algo).items()))
                for algo in self.algorithms
            },
        }


def _cell_dict(cell: Cell) -> dict:
    d: dict[str, Any] = {"n_nodes": cell.n_nodes, "base_rate": cell.base_rate}
    if cell.k is not None:
        d["k"] = cell.k
    if cell.floor is not None:
        d["floor"] = cell.floor
    return d


def _parse_cell(algorithm: str, section: Mapping[str, Any], where: str) -> Cell:
    scheme = ALGO_SCHEME[algorithm]
    allowed = {"n_nodes", "base_rate"}
    if scheme == "exponential":
        allowed |= {"k", "floor"}
    elif scheme == "linear":
        allowed |= {"floor"}
    _check_keys(section, allowed, where)
    _require("n_nodes" in section and "base_rate" in section,
             f"{where} needs n_nodes and base_rate")
    k = float(section["k"]) if "k" in section else (
        1.0 if scheme == "exponential" else None)
    floor = float(section["floor"]) if "floor" in section else (
        0.0 if scheme in ("linear", "exponential") else None)
    return Cell(
        n_nodes=int(section["n_nodes"]),
        base_rate=float(section["base_rate"]),
        k=k,
        floor=floor,
    )


def _parse_overrides(section: Mapping[str, Any], where: str) -> dict[str, Any]:
    _check_keys(section, set(OVERRIDE_FIELDS), where)
    parsed: dict[str, Any] = {}
    for key, value in section.items():
        want = OVERRIDE_FIELDS[key]
        # bool is an int subclass; require exact types so "lam = true" fails
        if type(value) is not want:
            raise ConfigError(
                f"{where}.{key} must be {want.__name__}, got {type(value).__name__}"
            )
        parsed[key] = value
    return parsed


def _load_toml(path: str) -> dict:
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML in {path}: {exc}") from exc


def load_config(path: str) -> ExperimentConfig:
    raw = _load_toml(path)
    _check_keys(raw, _TOP_KEYS, path)

    kwargs: dict[str, Any] = {}
    for key in ("replicates", "master_seed", "budget", "workers"):
        if key in raw:
            _require(isinstance(raw[key], int) and not isinstance(raw[key], bool),
                     f"{key} must be an integer")
            kwargs[key] = raw[key]
    if "record_durations" in raw:
        _require(isinstance(raw["record_durations"], bool),
                 "record_durations must be a boolean")
        kwargs["record_durations"] = raw["record_durations"]
    for key in ("results_path", "manifest_path", "tuned_path"):
        if key in raw:
            _require(isinstance(raw[key], str), f"{key} must be a string")
            kwargs[key] = raw[key]
    if "algorithms" in raw:
        _require(isinstance(raw["algorithms"], list), "algorithms must be a list")
        kwargs["algorithms"] = tuple(raw["algorithms"])

    sweep = raw.get("sweep", {})
    _require(isinstance(sweep, dict), "[sweep] must be a table")
    _check_keys(sweep, _SWEEP_KEYS, "[sweep]")
    if "n_nodes" in sweep:
        kwargs["sweep_n_nodes"] = tuple(int(n) for n in sweep["n_nodes"])
    if "base_rate" in sweep:
        kwargs["sweep_base_rate"] = tuple(float(r) for r in sweep["base_rate"])
    if "k" in sweep:
        kwargs["sweep_k"] = tuple(float(k) for k in sweep["k"])
    if "floor" in sweep:
        kwargs["sweep_floor"] = tuple(float(f) for f in sweep["floor"])

    algorithms = kwargs.get("algorithms", ALGORITHMS)
    tuned_raw = raw.get("tuned", {})
    _require(isinstance(tuned_raw, dict), "[tuned] must be a table")
    _check_keys(tuned_raw, set(ALGORITHMS), "[tuned]")
    kwargs["tuned"] = {
        algo: _parse_cell(algo, section, f"[tuned.{algo}]")
        for algo, section in tuned_raw.items()
    }

    overrides_raw = raw.get("overrides", {})
    _require(isinstance(overrides_raw, dict), "[overrides] must be a table")
    _check_keys(overrides_raw, set(ALGORITHMS), "[overrides]")
    kwargs["overrides"] = {
        algo: _parse_overrides(section, f"[overrides.{algo}]")
        for algo, section in overrides_raw.items()
    }

    try:
        return ExperimentConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_tuned(path: str) -> dict[str, Cell]:
    """Read a tuned-cell file: one top-level table per algorithm."""
    raw = _load_toml(path)
    _check_keys(raw, set(ALGORITHMS), path)
    return {
        algo: _parse_cell(algo, section, f"[{algo}]")
        for algo, section in raw.items()
    }


def dump_tuned(cells: Mapping[str, Cell]) -> str:
    """Tuned cells as TOML text, the inverse of load_tuned."""
    lines = []
    for algo in ALGORITHMS:
        if algo not in cells:
            continue
        lines.append(f"[{algo}]")
        for key, value in _cell_dict(cells[algo]).items():
            lines.append(f"{key} = {value}")
        lines.append("")
    return "\n".join(lines)
