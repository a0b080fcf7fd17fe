"""Degree, closeness and betweenness of hyperedges on the simplex graph.

The simplex graph has one node per simplex (vertices included) and an edge
wherever the off-diagonal entry of ``L_H`` is positive, weighted by that
entry. Scores are computed for every node but reported for hyperedges only.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .hypergraph import SimplexRegistry

Direction = Literal["ascending", "descending"]
MEASURES = ("dff", "degree", "betweenness", "closeness")
DIRECTIONS: dict[str, Direction] = {
    "dff": "ascending",
    "degree": "descending",
    "betweenness": "descending",
    "closeness": "descending",
}
SOURCE_BATCH = 128


@dataclass
class SimplexGraph:
    adjacency: sp.csr_matrix

    @classmethod
    def from_lh(cls, lh) -> "SimplexGraph":
        adj = sp.csr_matrix(lh, dtype=float, copy=True)
        adj.setdiag(0)
        adj.eliminate_zeros()
        return cls(adj)

    @property
    def size(self) -> int:
        return self.adjacency.shape[0]

    @property
    def num_edges(self) -> int:
        return self.adjacency.nnz // 2


@dataclass
class CentralityResult:
    measure: str
    scores: dict[int, float]
    direction: Direction
    ranking: list[int] = field(default_factory=list)
    raw: dict[int, float] | None = None

    def __post_init__(self) -> None:
        if not self.ranking:
            self.ranking = rank(self.scores, self.direction)

    def rank_of(self) -> dict[int, int]:
        """1-based rank per hyperedge id."""
        return {sid: pos + 1 for pos, sid in enumerate(self.ranking)}


def rank(scores: dict[int, float], direction: Direction) -> list[int]:
    """Ids from most to least influential; ties keep ascending id order."""
    if direction == "ascending":
        return sorted(scores, key=lambda i: (scores[i], i))
    if direction == "descending":
        return sorted(scores, key=lambda i: (-scores[i], i))
    raise ValueError(f"unknown direction {direction!r}")


def _report(registry: SimplexRegistry, values: np.ndarray) -> dict[int, float]:
    return {sid: float(values[sid]) for sid in registry.hyperedge_ids()}


def degree_centrality(lh, registry: SimplexRegistry) -> CentralityResult:
    """Sum of off-diagonal ``L_H`` entries in each hyperedge's row."""
    lh = sp.csr_matrix(lh)
    deg = np.asarray(lh.sum(axis=1)).ravel() - lh.diagonal()
    return CentralityResult("degree", _report(registry, deg), "descending")


def shortest_path_lengths(graph: SimplexGraph, source: int, weighted: bool = False) -> np.ndarray:
    """Hop counts (or sums of ``1/weight``) from ``source``; unreachable is ``inf``."""
    return _distances(graph, [source], weighted)[0]


def _distances(graph: SimplexGraph, sources, weighted: bool) -> np.ndarray:
    if weighted:
        inv = graph.adjacency.copy()
        inv.data = 1.0 / inv.data
        return csgraph.dijkstra(inv, directed=False, indices=sources)
    return csgraph.shortest_path(graph.adjacency, method="D", unweighted=True, directed=False, indices=sources)


def closeness_centrality(
    graph: SimplexGraph, registry: SimplexRegistry, weighted: bool = False
) -> CentralityResult:
    """``(r-1)/sum(d) * (r-1)/(N-1)`` with ``r`` the size of the reachable set.

    On a connected graph this is ``(N-1)/sum(d)`` over all simplices.
    """
    size = graph.size
    ids = list(registry.hyperedge_ids())
    values = np.zeros(size)
    for start in range(0, len(ids), 512):
        batch = ids[start : start + 512]
        dist = _distances(graph, batch, weighted)
        finite = np.isfinite(dist)
        total = np.where(finite, dist, 0.0).sum(axis=1)
        reach = finite.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            score = np.where(total > 0, (reach - 1) / total * (reach - 1) / max(size - 1, 1), 0.0)
        values[batch] = score
    return CentralityResult("closeness", _report(registry, values), "descending")


def _brandes_batch(adj: sp.csr_matrix, sources: list[int]) -> np.ndarray:
    """Unweighted dependency sums contributed by ``sources`` (Brandes, level-synchronous)."""
    size = adj.shape[0]
    b = len(sources)
    cols = np.arange(b)
    sigma = np.zeros((size, b))
    seen = np.zeros((size, b), dtype=bool)
    sigma[sources, cols] = 1.0
    seen[sources, cols] = True
    frontier = sigma.copy()
    levels = [seen.copy()]
    while True:
        reach = adj @ frontier
        new = (reach > 0) & ~seen
        if not new.any():
            break
        sigma[new] = reach[new]
        seen |= new
        frontier = np.where(new, reach, 0.0)
        levels.append(new)
    delta = np.zeros((size, b))
    for d in range(len(levels) - 1, 0, -1):
        coef = np.where(levels[d], (1.0 + delta) / np.where(sigma > 0, sigma, 1.0), 0.0)
        pull = adj @ coef
        prev = levels[d - 1]
        delta[prev] += sigma[prev] * pull[prev]
    delta[sources, cols] = 0.0
    return delta.sum(axis=1)


def raw_betweenness(graph: SimplexGraph, weighted: bool = False, workers: int = 1) -> np.ndarray:
    """Unordered-pair betweenness sums over all simplices as endpoints."""
    size = graph.size
    if weighted:
        import networkx as nx

        inv = graph.adjacency.copy()
        inv.data = 1.0 / inv.data
        g = nx.from_scipy_sparse_array(inv)
        bc = nx.betweenness_centrality(g, normalized=False, weight="weight")
        return np.array([bc[i] for i in range(size)])
    pattern = graph.adjacency.copy()
    pattern.data = np.ones_like(pattern.data)
    batches = [list(range(s, min(s + SOURCE_BATCH, size))) for s in range(0, size, SOURCE_BATCH)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda src: _brandes_batch(pattern, src), batches))
    else:
        parts = [_brandes_batch(pattern, src) for src in batches]
    total = np.zeros(size)
    for part in parts:  # fixed batch order keeps the sum independent of workers
        total += part
    return total / 2.0


def betweenness_centrality(
    graph: SimplexGraph, registry: SimplexRegistry, weighted: bool = False, workers: int = 1
) -> CentralityResult:
    """Betweenness normalised by ``2 / ((N-1)(N-2))``."""
    size = graph.size
    raw = raw_betweenness(graph, weighted=weighted, workers=workers)
    scale = 2.0 / ((size - 1) * (size - 2)) if size > 2 else 0.0
    return CentralityResult(
        "betweenness", _report(registry, raw * scale), "descending", raw=_report(registry, raw)
    )


def compute_centralities(
    registry: SimplexRegistry,
    measures=MEASURES,
    lh=None,
    weighted: bool = False,
    dff_config=None,
    workers: int = 1,
) -> dict[str, CentralityResult]:
    """Run the requested measures on one registry, building ``L_H`` once."""
    from .laplacian import assemble_lh
    from .spectral import DffConfig, decompose, dff_scores

    lh = assemble_lh(registry) if lh is None else lh
    out: dict[str, CentralityResult] = {}
    graph = SimplexGraph.from_lh(lh)
    for measure in measures:
        if measure == "degree":
            out[measure] = degree_centrality(lh, registry)
        elif measure == "closeness":
            out[measure] = closeness_centrality(graph, registry, weighted=weighted)
        elif measure == "betweenness":
            out[measure] = betweenness_centrality(graph, registry, weighted=weighted, workers=workers)
        elif measure == "dff":
            config = dff_config or DffConfig()
            dec = decompose(lh, config.operator, config.m)
            out[measure] = CentralityResult("dff", dff_scores(dec, registry, config), "ascending")
        else:
            raise ValueError(f"unknown measure {measure!r}")
    return out
