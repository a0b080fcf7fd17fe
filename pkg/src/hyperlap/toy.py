"""The six-vertex worked example and its published reference values.

Hyperedge order follows the published matrix rows: edges ``e1..e8`` then
triangles. The published score table labels the triangles so that its
``t1`` is {3,5,6} and its ``t3`` is {1,3,4} (the first and last triangle rows
of ``L_H`` swapped); :data:`REFERENCE_ROW_OF` maps each table row to our
registry order.
"""

from __future__ import annotations

import numpy as np

from .hypergraph import SimplexRegistry, register_hypergraph

TOY_VERTICES = (1, 2, 3, 4, 5, 6)
TOY_HYPEREDGES = (
    (1, 2),
    (1, 3),
    (3, 4),
    (1, 4),
    (3, 6),
    (5, 6),
    (4, 5),
    (3, 5),
    (1, 3, 4),
    (3, 4, 5),
    (3, 5, 6),
)
HYPEREDGE_NAMES = ("e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "t3", "t2", "t1")


def toy_registry() -> SimplexRegistry:
    return register_hypergraph(TOY_VERTICES, TOY_HYPEREDGES)


REFERENCE_L0 = np.array(
    [
        [5, 1, 2, 2, 0, 0],
        [1, 2, 0, 0, 0, 0],
        [2, 0, 8, 3, 3, 2],
        [2, 0, 3, 6, 2, 0],
        [0, 0, 3, 2, 6, 2],
        [0, 0, 2, 0, 2, 4],
    ],
    dtype=np.int64,
)

# As printed, including the two diagonal entries (v4, v5) that disagree with
# REFERENCE_L0 and with the neighbour-count rule.
REFERENCE_LH = np.array(
    [
        [5, 1, 2, 2, 0, 0, 2, 3, 1, 3, 0, 0, 0, 0, 4, 0, 0],
        [1, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [2, 0, 8, 3, 3, 2, 0, 3, 4, 1, 3, 1, 1, 4, 4, 4, 4],
        [2, 0, 3, 5, 2, 0, 0, 1, 4, 3, 0, 0, 3, 1, 4, 4, 0],
        [0, 0, 3, 2, 5, 2, 0, 0, 1, 0, 1, 3, 3, 4, 0, 4, 4],
        [0, 0, 2, 0, 2, 4, 0, 0, 0, 0, 3, 3, 0, 1, 0, 0, 4],
        [2, 2, 0, 0, 0, 0, 3, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0],
        [3, 0, 3, 1, 0, 0, 1, 4, 2, 2, 1, 0, 0, 1, 4, 1, 1],
        [1, 0, 4, 4, 1, 0, 0, 2, 5, 2, 1, 0, 2, 2, 4, 4, 1],
        [3, 0, 1, 3, 0, 0, 1, 2, 2, 4, 0, 0, 1, 0, 4, 1, 0],
        [0, 0, 3, 0, 1, 3, 0, 1, 1, 0, 4, 2, 0, 2, 1, 1, 4],
        [0, 0, 1, 0, 3, 3, 0, 0, 0, 0, 2, 4, 1, 2, 0, 1, 4],
        [0, 0, 1, 3, 3, 0, 0, 0, 2, 1, 0, 1, 4, 2, 1, 4, 1],
        [0, 0, 4, 1, 4, 1, 0, 1, 2, 0, 2, 2, 2, 5, 1, 4, 4],
        [4, 0, 4, 4, 0, 0, 1, 4, 4, 4, 1, 0, 1, 1, 7, 3, 1],
        [0, 0, 4, 4, 4, 0, 0, 1, 4, 1, 1, 1, 4, 4, 3, 7, 3],
        [0, 0, 4, 0, 4, 4, 0, 1, 1, 0, 4, 4, 1, 4, 1, 3, 7],
    ],
    dtype=np.int64,
)

# (row, col) entries of REFERENCE_LH that are misprinted.
REFERENCE_LH_MISPRINTS = ((3, 3), (4, 4))

# Score table rows in printed order e1..e8, t1, t2, t3, with columns
# (dff, degree, betweenness, closeness, diffusion index).
REFERENCE_SCORES_NAMES = ("e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "t1", "t2", "t3")
REFERENCE_SCORES = {
    "dff": (1.412, 1.218, 1.123, 1.245, 1.231, 1.259, 1.231, 1.123, 1.092, 1.061, 1.081),
    "degree": (7, 20, 28, 18, 19, 17, 19, 28, 31, 34, 32),
    "betweenness": (0.026, 0.054, 0.034, 0.026, 0.017, 0.004, 0.015, 0.028, 0.021, 0.024, 0.065),
    "closeness": (0.533, 0.762, 0.800, 0.696, 0.696, 0.615, 0.696, 0.762, 0.727, 0.762, 0.800),
    "diffusion_index": (0.078, 0.057, 0.029, 0.052, 0.045, 0.044, 0.040, 0.031, 0.125, 0.111, 0.139),
}
REFERENCE_RANKS = {
    "dff": (11, 6, 4, 9, 8, 10, 7, 5, 3, 1, 2),
    "degree": (11, 6, 4, 9, 8, 10, 7, 5, 3, 1, 2),
    "betweenness": (6, 2, 3, 5, 9, 11, 10, 4, 8, 7, 1),
    "closeness": (11, 3, 2, 7, 8, 10, 9, 4, 6, 5, 1),
    "diffusion_index": (4, 5, 11, 6, 7, 8, 9, 10, 2, 3, 1),
}
# Table row -> hyperedge vertex set.
REFERENCE_ROW_OF = dict(zip(REFERENCE_SCORES_NAMES, TOY_HYPEREDGES[:8] + ((3, 5, 6), (3, 4, 5), (1, 3, 4))))


def reference_by_hyperedge(measure: str) -> dict[tuple[int, ...], float]:
    """Published scores keyed by hyperedge vertex set."""
    return {REFERENCE_ROW_OF[name]: v for name, v in zip(REFERENCE_SCORES_NAMES, REFERENCE_SCORES[measure])}


def reference_ranks_by_hyperedge(measure: str) -> dict[tuple[int, ...], int]:
    return {REFERENCE_ROW_OF[name]: r for name, r in zip(REFERENCE_SCORES_NAMES, REFERENCE_RANKS[measure])}
