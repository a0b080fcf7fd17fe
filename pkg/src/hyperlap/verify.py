"""Self-check against the six-vertex worked example."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import toy
from .centrality import SimplexGraph, betweenness_centrality, closeness_centrality, degree_centrality
from .laplacian import assemble_lh, build_lk
from .spectral import DffConfig, calibrate_t, decompose, dff_scores


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _matrix_check(name, built, expected, allowed=()) -> Check:
    bad = [(int(i), int(j)) for i, j in zip(*np.nonzero(built != expected))]
    unexpected = [p for p in bad if p not in allowed]
    if unexpected:
        cells = ", ".join(f"({i},{j}) built {built[i, j]} expected {expected[i, j]}" for i, j in unexpected[:10])
        return Check(name, False, f"{len(unexpected)} mismatched entries: {cells}")
    note = f"; documented misprints at {bad}" if bad else ""
    return Check(name, True, f"{built.shape[0]}x{built.shape[1]} exact{note}")


def _score_check(name, registry, scores, measure, decimals) -> Check:
    expected = toy.reference_by_hyperedge(measure)
    bad = []
    for verts, want in expected.items():
        got = scores[registry.id_of(verts)]
        if decimals is None:
            ok = got == want
        else:
            ok = round(got, decimals) == round(want, decimals)
        if not ok:
            bad.append(f"{verts}: {got:.4f} vs {want}")
    if bad:
        return Check(name, False, "; ".join(bad))
    return Check(name, True, "all 11 hyperedges match" + ("" if decimals is None else f" to {decimals} decimals"))


def verify_toy(l0=None, lh=None) -> list[Check]:
    """Run every worked-example check; ``l0``/``lh`` replace the built matrices."""
    registry = toy.toy_registry()
    l0 = build_lk(registry, 0).toarray() if l0 is None else np.asarray(l0)
    lh = assemble_lh(registry).toarray() if lh is None else np.asarray(lh)
    checks = [
        _matrix_check("L_0", l0, toy.REFERENCE_L0),
        _matrix_check("L_H", lh, toy.REFERENCE_LH, allowed=toy.REFERENCE_LH_MISPRINTS),
    ]
    graph = SimplexGraph.from_lh(lh)
    checks.append(_score_check("degree", registry, degree_centrality(lh, registry).scores, "degree", None))
    checks.append(_score_check("closeness", registry, closeness_centrality(graph, registry).scores, "closeness", 3))
    checks.append(
        _score_check("betweenness", registry, betweenness_centrality(graph, registry).scores, "betweenness", 3)
    )
    dec = decompose(lh)
    ref = {registry.id_of(v): r for v, r in toy.reference_ranks_by_hyperedge("dff").items()}
    best_t, rho = calibrate_t(dec, registry, ref)
    checks.append(Check("dff ranking", rho >= 0.9, f"best t={best_t:.4g}, spearman={rho:.4f}"))
    checks.append(_score_check("dff values (t=0.01)", registry, dff_scores(dec, registry, DffConfig(t=0.01)), "dff", 3))
    return checks
