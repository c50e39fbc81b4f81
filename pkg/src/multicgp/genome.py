"""Single-row, NAND-only Cartesian GP genomes.

A genome is a fixed-length integer gene sequence: two connection genes
per internal node plus one tap gene per output.  Wire indices run
0..n_inputs-1 for the input terminals, then n_inputs+i for node i.
There are no function genes -- every node is a NAND gate -- so adding a
function-gene column later would be a purely additive layout change.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GenomeParams",
    "Genome",
    "ActiveSet",
    "MutationWeights",
    "random_genome",
    "decode",
    "mutate",
]


@dataclass(frozen=True)
class GenomeParams:
    """Geometry of a genome.

    levels_back=None leaves connections unconstrained: node i may read
    any input terminal or any earlier node.  With a finite levels_back,
    node i's connections are restricted to wire indices in
    [max(0, n_inputs + i - levels_back), n_inputs + i).
    """

    n_nodes: int
    n_outputs: int = 1
    n_inputs: int = 2
    levels_back: int | None = None

    def __post_init__(self) -> None:
        if self.n_nodes < 1 or self.n_outputs < 1 or self.n_inputs < 1:
            raise ValueError(
                f"counts must be >= 1, got n_nodes={self.n_nodes}, "
                f"n_outputs={self.n_outputs}, n_inputs={self.n_inputs}"
            )
        if self.levels_back is not None and self.levels_back < 1:
            raise ValueError(f"levels_back must be >= 1, got {self.levels_back}")

    @property
    def n_wires(self) -> int:
        return self.n_inputs + self.n_nodes

    def connection_bounds(self, node_idx: int) -> tuple[int, int]:
        """Half-open [lo, hi) legal wire range for one node's connections."""
        hi = self.n_inputs + node_idx
        lo = 0 if self.levels_back is None else max(0, hi - self.levels_back)
        return lo, hi

    def connection_lows(self) -> np.ndarray:
        """Per-node lower connection bounds as an int array."""
        his = self.n_inputs + np.arange(self.n_nodes)
        if self.levels_back is None:
            return np.zeros(self.n_nodes, dtype=np.int64)
        return np.maximum(0, his - self.levels_back)

    def connection_highs(self) -> np.ndarray:
        """Per-node exclusive upper connection bounds."""
        return self.n_inputs + np.arange(self.n_nodes, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class Genome:
    """Immutable genome value.

    node_genes has shape (n_nodes, 2) and output_genes shape
    (n_outputs,); both arrays are frozen after validation.
    """

    params: GenomeParams
    node_genes: np.ndarray
    output_genes: np.ndarray

    def __post_init__(self) -> None:
        node_genes = np.ascontiguousarray(self.node_genes, dtype=np.int64)
        output_genes = np.ascontiguousarray(self.output_genes, dtype=np.int64)
        object.__setattr__(self, "node_genes", node_genes)
        object.__setattr__(self, "output_genes", output_genes)
        self._validate()
        node_genes.setflags(write=False)
        output_genes.setflags(write=False)

    def _validate(self) -> None:
        p = self.params
        if self.node_genes.shape != (p.n_nodes, 2):
            raise ValueError(
                f"node_genes shape {self.node_genes.shape}, expected {(p.n_nodes, 2)}"
            )
        if self.output_genes.shape != (p.n_outputs,):
            raise ValueError(
                f"output_genes shape {self.output_genes.shape}, expected {(p.n_outputs,)}"
            )
        lows = p.connection_lows()[:, None]
        highs = p.connection_highs()[:, None]
        if not ((self.node_genes >= lows).all() and (self.node_genes < highs).all()):
            raise ValueError("connection gene outside its legal feed-forward range")
        if not ((self.output_genes >= 0).all() and (self.output_genes < p.n_wires).all()):
            raise ValueError("output gene outside [0, n_wires)")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Genome):
            return NotImplemented
        return (
            self.params == other.params
            and np.array_equal(self.node_genes, other.node_genes)
            and np.array_equal(self.output_genes, other.output_genes)
        )

    def __hash__(self) -> int:
        return hash(
            (self.params, self.node_genes.tobytes(), self.output_genes.tobytes())
        )

    def to_dict(self) -> dict:
        """Flat serializable record: {params, node_genes, output_genes}."""
        return {
            "params": {
                "n_inputs": self.params.n_inputs,
                "n_nodes": self.params.n_nodes,
                "n_outputs": self.params.n_outputs,
                "levels_back": self.params.levels_back,
            },
            "node_genes": [[int(a), int(b)] for a, b in self.node_genes],
            "output_genes": [int(g) for g in self.output_genes],
        }

    @classmethod
    def from_dict(cls, record: dict) -> "Genome":
        p = record["params"]
        params = GenomeParams(
            n_nodes=int(p["n_nodes"]),
            n_outputs=int(p["n_outputs"]),
            n_inputs=int(p.get("n_inputs", 2)),
            levels_back=None if p.get("levels_back") is None else int(p["levels_back"]),
        )
        return cls(
            params=params,
            node_genes=np.array(record["node_genes"], dtype=np.int64).reshape(
                params.n_nodes, 2
            ),
            output_genes=np.array(record["output_genes"], dtype=np.int64),
        )


@dataclass(frozen=True)
class ActiveSet:
    """Nodes backward-reachable from each output tap (inputs excluded)."""

    per_output: tuple[frozenset[int], ...]
    all_active: frozenset[int]


@dataclass(frozen=True)
class MutationWeights:
    """Per-node and per-output-gene mutation weight multipliers in [0, 1]."""

    node: np.ndarray
    output: np.ndarray

    def __post_init__(self) -> None:
        node = np.ascontiguousarray(self.node, dtype=np.float64)
        output = np.ascontiguousarray(self.output, dtype=np.float64)
        object.__setattr__(self, "node", node)
        object.__setattr__(self, "output", output)
        if node.ndim != 1 or output.ndim != 1:
            raise ValueError("weights must be 1-D vectors")
        if (node < 0).any() or (node > 1).any() or (output < 0).any() or (output > 1).any():
            raise ValueError("weights must lie in [0, 1]")

    @classmethod
    def uniform(cls, params: GenomeParams) -> "MutationWeights":
        return cls(np.ones(params.n_nodes), np.ones(params.n_outputs))


def random_genome(params: GenomeParams, rng: np.random.Generator) -> Genome:
    """Sample a genome with every legal gene value equally likely."""
    lows = params.connection_lows()
    highs = params.connection_highs()
    node_genes = rng.integers(lows[:, None], highs[:, None], size=(params.n_nodes, 2))
    output_genes = rng.integers(0, params.n_wires, size=params.n_outputs)
    return Genome(params=params, node_genes=node_genes, output_genes=output_genes)


def decode(genome: Genome) -> ActiveSet:
    """Backward reachability from each output tap.

    Output taps wired straight to an input terminal yield an empty set.
    """
    n_inputs = genome.params.n_inputs
    node_genes = genome.node_genes.tolist()
    per_output = []
    all_active: set[int] = set()
    for gene in genome.output_genes.tolist():
        active: set[int] = set()
        stack = [gene - n_inputs] if gene >= n_inputs else []
        while stack:
            node = stack.pop()
            if node in active:
                continue
            active.add(node)
            for conn in node_genes[node]:
                if conn >= n_inputs:
                    pred = conn - n_inputs
                    if pred not in active:
                        stack.append(pred)
        per_output.append(frozenset(active))
        all_active |= active
    return ActiveSet(per_output=tuple(per_output), all_active=frozenset(all_active))


def mutate(
    genome: Genome,
    base_rate: float,
    weights: MutationWeights,
    rng: np.random.Generator,
) -> Genome:
    """Per-gene Bernoulli mutation with resample-in-place semantics.

    Each connection gene of node i is independently redrawn uniformly
    from its full legal range with probability base_rate * weights.node[i];
    output gene j likewise with base_rate * weights.output[j].  A redraw
    may land on the current value, so the effective per-gene change rate
    is (1 - 1/range) times the resample rate.  The input genome is left
    untouched.
    """
    params = genome.params
    if not 0.0 <= base_rate <= 1.0:
        raise ValueError(f"base_rate must lie in [0, 1], got {base_rate}")
    if weights.node.shape != (params.n_nodes,):
        raise ValueError(
            f"node weight vector has length {weights.node.shape[0]}, "
            f"expected {params.n_nodes}"
        )
    if weights.output.shape != (params.n_outputs,):
        raise ValueError(
            f"output weight vector has length {weights.output.shape[0]}, "
            f"expected {params.n_outputs}"
        )

    lows = params.connection_lows()
    highs = params.connection_highs()
    # Fresh values are drawn for every gene and applied selectively; this
    # keeps the generator stream length fixed regardless of which genes fire.
    node_hits = rng.random(size=(params.n_nodes, 2)) < base_rate * weights.node[:, None]
    node_draws = rng.integers(lows[:, None], highs[:, None], size=(params.n_nodes, 2))
    node_genes = np.where(node_hits, node_draws, genome.node_genes)

    output_hits = rng.random(size=params.n_outputs) < base_rate * weights.output
    output_draws = rng.integers(0, params.n_wires, size=params.n_outputs)
    output_genes = np.where(output_hits, output_draws, genome.output_genes)

    return Genome(params=params, node_genes=node_genes, output_genes=output_genes)
