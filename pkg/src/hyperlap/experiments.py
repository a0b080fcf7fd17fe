"""Removal experiments scored by the SIR diffusion index.

The diffusion index of a removal is ``R_s = (F1 - F2) / F1`` where ``F1``
and ``F2`` are the mean final affected scales before and after removing
hyperedges. ``mu`` is fixed from the original network's threshold unless
``recompute_mu`` is set.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import rankdata

from .centrality import CentralityResult
from .errors import ArgumentError
from .hypergraph import SimplexRegistry, remove_hyperedges
from .sir import ContactNetwork, SirOutcome, SirParams, mean_affected_scale

DEFAULT_RATIOS = tuple(round(0.01 * i, 2) for i in range(1, 26))
DEFAULT_MU_RATIOS = tuple(round(1.0 + 0.1 * i, 1) for i in range(11))
TABLE_COLUMNS = ("centrality", "step", "x", "F1", "F2", "Rs", "stderr", "rho")


def spearman(x, y) -> float:
    """Pearson correlation of average ranks."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ArgumentError(f"need two equal-length sequences, got {x.shape} and {y.shape}")
    if len(x) < 2:
        raise ArgumentError("need at least two observations")
    rx, ry = rankdata(x) - (len(x) + 1) / 2, rankdata(y) - (len(y) + 1) / 2
    denom = math.sqrt(float(rx @ rx) * float(ry @ ry))
    if denom == 0:
        return float("nan")
    return float(np.clip((rx @ ry) / denom, -1.0, 1.0))


def diffusion_index(f1: float, f2: float) -> float:
    if not f1 > 0:
        raise ArgumentError(f"F1 must be positive, got {f1}")
    return (f1 - f2) / f1


def partition(ranking: list[int], parts: int) -> list[list[int]]:
    """Split a ranking into ``parts`` consecutive chunks whose sizes differ by at most one."""
    if not 1 <= parts <= len(ranking):
        raise ArgumentError(f"parts must lie in 1..{len(ranking)}, got {parts}")
    base, extra = divmod(len(ranking), parts)
    out, pos = [], 0
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        out.append(list(ranking[pos : pos + size]))
        pos += size
    return out


def top_fraction(ranking: list[int], fraction: float) -> list[int]:
    if not 0 < fraction <= 1:
        raise ArgumentError(f"fraction must lie in (0, 1], got {fraction}")
    return list(ranking[: math.ceil(fraction * len(ranking) - 1e-9)])


@dataclass
class DatasetStats:
    vertices: int
    hyperedges: int
    avg_degree: float
    k_max: int


def dataset_report(registry: SimplexRegistry) -> DatasetStats:
    """Counts, average weighted degree from ``L_0`` and maximum hyperedge size."""
    net = ContactNetwork.from_registry(registry)
    return DatasetStats(
        vertices=registry.num_vertices,
        hyperedges=registry.num_hyperedges,
        avg_degree=float(net.degrees().mean()),
        k_max=registry.n + 1,
    )


class _Evaluator:
    """Caches the baseline simulation for each ``mu`` on one registry."""

    def __init__(self, registry: SimplexRegistry, params: SirParams, workers: int = 1, recompute_mu: bool = False):
        self.registry = registry
        self.params = params
        self.workers = workers
        self.recompute_mu = recompute_mu
        self.network = ContactNetwork.from_registry(registry)
        self._base: dict[float, SirOutcome] = {}

    def mu_for(self, mu_ratio: float) -> float:
        return SirParams(**{**asdict(self.params), "mu_ratio": mu_ratio}).resolve_mu(self.network)

    def baseline(self, mu: float) -> SirOutcome:
        if mu not in self._base:
            self._base[mu] = mean_affected_scale(self.network, self.params, mu=mu, workers=self.workers)
        return self._base[mu]

    def removal(self, ids: list[int], mu: float, mu_ratio: float) -> dict:
        base = self.baseline(mu)
        if ids:
            net = ContactNetwork.from_registry(remove_hyperedges(self.registry, ids))
            mu2 = SirParams(**{**asdict(self.params), "mu_ratio": mu_ratio}).resolve_mu(net) if self.recompute_mu else mu
            after = mean_affected_scale(net, self.params, mu=mu2, workers=self.workers)
        else:
            after = base
        f1, f2 = base.F, after.F
        rs = diffusion_index(f1, f2)
        diffs = (base.per_trial() - after.per_trial()) / f1
        se = float(diffs.std(ddof=1) / math.sqrt(len(diffs))) if len(diffs) > 1 else float("nan")
        return {"removed": len(ids), "F1": f1, "F2": f2, "Rs": rs, "stderr": se}


@dataclass
class DiffusionIndexReport:
    experiment: str
    config: dict
    rows: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, default=_jsonable)

    def table(self) -> str:
        """Tab-separated plot table with a header row."""
        lines = ["\t".join(TABLE_COLUMNS)]
        for row in self.rows:
            lines.append("\t".join(_cell(row.get(col, "")) for col in TABLE_COLUMNS))
        return "\n".join(lines) + "\n"

    def write(self, out_dir: str | Path, stem: str | None = None) -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = stem or self.experiment
        doc, tab = out / f"{stem}.json", out / f"{stem}.tsv"
        doc.write_text(self.to_json() + "\n", encoding="utf-8")
        header = "# " + json.dumps(self.config, sort_keys=True, default=_jsonable) + "\n"
        tab.write_text(header + self.table(), encoding="utf-8")
        return doc, tab


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _config(params: SirParams, **extra) -> dict:
    return {"sir": asdict(params), **extra}


def _oriented(result: CentralityResult, ids: list[int]) -> float:
    mean = float(np.mean([result.scores[i] for i in ids]))
    return -mean if result.direction == "ascending" else mean


def part_removal_experiment(
    registry: SimplexRegistry,
    centrality: CentralityResult,
    parts: int = 50,
    params: SirParams | None = None,
    workers: int = 1,
    recompute_mu: bool = False,
    evaluator: _Evaluator | None = None,
) -> DiffusionIndexReport:
    """Remove each ranked part on its own and correlate part order with ``R_s``.

    ``summary["rho"]`` pairs part position (most influential first) with
    ``R_s``; ``summary["rho_score"]`` pairs the part's mean centrality
    score, oriented so that larger means more influential, with ``R_s``.
    """
    params = params or SirParams()
    if registry.num_hyperedges == 0:
        raise ArgumentError("registry has no hyperedges to remove")
    ev = evaluator or _Evaluator(registry, params, workers, recompute_mu)
    mu = ev.mu_for(params.mu_ratio)
    chunks = partition(centrality.ranking, parts)
    report = DiffusionIndexReport(
        "rank-removal",
        _config(params, centrality=centrality.measure, parts=parts, mu=mu, recompute_mu=recompute_mu),
    )
    for step, ids in enumerate(chunks, 1):
        res = ev.removal(ids, mu, params.mu_ratio)
        report.rows.append(
            {"centrality": centrality.measure, "step": step, "x": step, "score": _oriented(centrality, ids), **res}
        )
    rs = [row["Rs"] for row in report.rows]
    position = [parts - row["step"] for row in report.rows]
    scores = [row["score"] for row in report.rows]
    rho = spearman(position, rs) if parts > 1 else float("nan")
    rho_score = spearman(scores, rs) if parts > 1 else float("nan")
    for row in report.rows:
        row["rho"] = rho
    report.summary = {"rho": rho, "rho_score": rho_score, "F1": report.rows[0]["F1"] if report.rows else None}
    return report


def ratio_sweep(
    registry: SimplexRegistry,
    centralities: dict[str, CentralityResult],
    ratios=DEFAULT_RATIOS,
    params: SirParams | None = None,
    workers: int = 1,
    recompute_mu: bool = False,
) -> DiffusionIndexReport:
    """``R_s`` after removing the top fraction ``p`` of each ranking."""
    params = params or SirParams()
    ratios = [float(p) for p in ratios]
    for p in ratios:
        if not 0 < p <= 1:
            raise ArgumentError(f"ratios must lie in (0, 1], got {p}")
    ev = _Evaluator(registry, params, workers, recompute_mu)
    mu = ev.mu_for(params.mu_ratio)
    report = DiffusionIndexReport("ratio-sweep", _config(params, ratios=ratios, mu=mu, recompute_mu=recompute_mu))
    for name, result in centralities.items():
        for step, p in enumerate(ratios, 1):
            res = ev.removal(top_fraction(result.ranking, p), mu, params.mu_ratio)
            report.rows.append({"centrality": name, "step": step, "x": p, **res})
    return report


def infection_sweep(
    registry: SimplexRegistry,
    centralities: dict[str, CentralityResult],
    mu_ratios=DEFAULT_MU_RATIOS,
    fraction: float = 0.05,
    params: SirParams | None = None,
    workers: int = 1,
    recompute_mu: bool = False,
) -> DiffusionIndexReport:
    """``R_s`` after removing the top ``fraction`` of each ranking, per ``mu / mu_c``."""
    params = params or SirParams()
    mu_ratios = [float(r) for r in mu_ratios]
    for r in mu_ratios:
        if not r > 0:
            raise ArgumentError(f"mu ratios must be positive, got {r}")
    ev = _Evaluator(registry, params, workers, recompute_mu)
    report = DiffusionIndexReport(
        "infection-sweep", _config(params, mu_ratios=mu_ratios, fraction=fraction, recompute_mu=recompute_mu)
    )
    for name, result in centralities.items():
        removed = top_fraction(result.ranking, fraction)
        for step, ratio in enumerate(mu_ratios, 1):
            mu = ev.mu_for(ratio)
            res = ev.removal(removed, mu, ratio)
            report.rows.append({"centrality": name, "step": step, "x": ratio, "mu": mu, **res})
    return report
