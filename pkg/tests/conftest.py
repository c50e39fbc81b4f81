"""Shared hand-built circuit fixtures.

Wire numbering: 0 = input a, 1 = input b, 2+i = node i.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from multicgp.genome import Genome, GenomeParams

# One circuit per task, each solving exactly its task: (node gene pairs, output wire).
# NAND is a direct wire to a single gate; XOR is the classical 4-gate build;
# EQU inverts it for 5 gates.
HAND_CIRCUITS = {
    "AND": ([(0, 1), (2, 2)], 3),
    "AND_N": ([(1, 1), (0, 2), (3, 3)], 4),
    "EQU": ([(0, 1), (0, 2), (1, 2), (3, 4), (5, 5)], 6),
    "NAND": ([(0, 1)], 2),
    "NOR": ([(0, 0), (1, 1), (2, 3), (4, 4)], 5),
    "NOT": ([(0, 0)], 2),
    "OR": ([(0, 0), (1, 1), (2, 3)], 4),
    "OR_N": ([(0, 0), (2, 1)], 3),
    "XOR": ([(0, 1), (0, 2), (1, 2), (3, 4)], 5),
}

# 13 shared gates solving all nine tasks at once; see all_nine_genome().
ALL_NINE_NODES = [
    (0, 1),    # n0  wire 2: a NAND b
    (2, 2),    # n1  wire 3: AND
    (0, 0),    # n2  wire 4: !a
    (1, 1),    # n3  wire 5: !b
    (4, 5),    # n4  wire 6: OR
    (6, 6),    # n5  wire 7: NOR
    (0, 2),    # n6  wire 8: a NAND (a NAND b)
    (1, 2),    # n7  wire 9: b NAND (a NAND b)
    (8, 9),    # n8  wire 10: XOR
    (10, 10),  # n9  wire 11: EQU
    (0, 5),    # n10 wire 12: a NAND !b
    (12, 12),  # n11 wire 13: AND_N
    (4, 1),    # n12 wire 14: OR_N
]
# Output taps in canonical task order AND..XOR.
ALL_NINE_OUTPUTS = [3, 13, 11, 2, 7, 4, 6, 14, 10]


def build_genome(node_pairs, outputs, n_nodes=None, levels_back=None) -> Genome:
    """Assemble a genome from wire-index gene pairs, padding unused nodes."""
    n_nodes = n_nodes or len(node_pairs)
    pairs = list(node_pairs) + [(0, 0)] * (n_nodes - len(node_pairs))
    params = GenomeParams(
        n_nodes=n_nodes, n_outputs=len(outputs), levels_back=levels_back
    )
    return Genome(
        params=params,
        node_genes=np.array(pairs, dtype=np.int64),
        output_genes=np.array(outputs, dtype=np.int64),
    )


def hand_circuit(task_name: str) -> Genome:
    pairs, out = HAND_CIRCUITS[task_name]
    return build_genome(pairs, [out])


@pytest.fixture
def all_nine_genome() -> Genome:
    """Hand-built 13-gate circuit solving all nine tasks simultaneously."""
    return build_genome(ALL_NINE_NODES, ALL_NINE_OUTPUTS)
