"""Discrete-time SIR on the weighted vertex contact network.

Contact weights are the off-diagonal entries of the vertex Laplacian
``L_0``: ``w(u, v)`` is the total weight of hyperedges containing both
``u`` and ``v``. An infected vertex infects a susceptible neighbour with
probability ``1 - (1 - mu)^w``.

Every random draw is a hash of ``(master seed, seed vertex, trial, round,
target vertex, stream)``, so a trial's outcome does not depend on batching,
worker count, or which other trials run alongside it. Simulations on two
networks with the same vertex set share random numbers, which keeps
before/after comparisons low-variance and makes identical networks give
identical results.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import ArgumentError, DegenerateNetworkError, SimulationError
from .hypergraph import SimplexRegistry

log = logging.getLogger(__name__)

ROW_BUDGET = 4_000_000  # cells of the (jobs x vertices) state arrays per chunk

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_INFECT, _RECOVER = 0, 1


def _mix(x: np.ndarray) -> np.ndarray:
    """splitmix64 finaliser (wrapping uint64 arithmetic)."""
    x = (x ^ (x >> np.uint64(30))) * _M1
    x = (x ^ (x >> np.uint64(27))) * _M2
    return x ^ (x >> np.uint64(31))


def counter_uniforms(master: int, *counters) -> np.ndarray:
    """Uniforms in [0, 1) that are a pure function of the counter tuple."""
    with np.errstate(over="ignore"):
        h = _mix(np.atleast_1d(np.uint64(master % 2**64) + _GOLDEN))
        for c in counters:
            h = _mix((h ^ np.asarray(c, dtype=np.uint64)) + _GOLDEN)
    return (h >> np.uint64(11)).astype(np.float64) * (1.0 / 2**53)


@dataclass
class ContactNetwork:
    vertices: tuple[int, ...]
    weights: sp.csr_matrix

    @classmethod
    def from_registry(cls, registry: SimplexRegistry) -> "ContactNetwork":
        from .laplacian import build_lk

        l0 = build_lk(registry, 0, weighted=True)
        l0.setdiag(0)
        l0.eliminate_zeros()
        return cls(registry.vertices, l0.tocsr())

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degrees(self) -> np.ndarray:
        """Weighted degree of every vertex."""
        return np.asarray(self.weights.sum(axis=1)).ravel()


@dataclass
class SirParams:
    """Simulation settings. ``mu`` overrides ``mu_ratio * mu_c`` when given."""

    mu_ratio: float = 1.5
    mu: float | None = None
    beta: float = 1.0
    trials: int = 100
    seed: int = 0
    max_steps: int | None = None

    def __post_init__(self) -> None:
        if not 0 < self.beta <= 1:
            raise ArgumentError(f"beta must lie in (0, 1], got {self.beta}")
        if self.trials < 1:
            raise ArgumentError(f"trials must be at least 1, got {self.trials}")
        if self.mu is not None and not 0 <= self.mu <= 1:
            raise ArgumentError(f"mu must lie in [0, 1], got {self.mu}")
        if self.mu_ratio < 0:
            raise ArgumentError(f"mu_ratio must be non-negative, got {self.mu_ratio}")

    def resolve_mu(self, network: ContactNetwork) -> float:
        if self.mu is not None:
            return self.mu
        if self.mu_ratio == 0:
            return 0.0
        mu = self.mu_ratio * critical_infection_rate(network)
        if mu > 1:
            log.warning("mu_ratio * mu_c = %.4g exceeds 1; clipping", mu)
            mu = 1.0
        return mu


@dataclass
class SirOutcome:
    """Affected counts ``counts[seed, trial]`` (the seed itself included)."""

    counts: np.ndarray
    mu: float
    params: SirParams = field(repr=False)

    @property
    def n(self) -> int:
        return self.counts.shape[0]

    @property
    def mean_counts(self) -> np.ndarray:
        return self.counts.mean(axis=1)

    @property
    def scale(self) -> np.ndarray:
        """``F(u) = n_u / n`` averaged over trials, one entry per seed vertex."""
        return self.mean_counts / self.n

    @property
    def F(self) -> float:
        total = int(self.counts.sum())
        return total / (self.n * self.n * self.counts.shape[1])

    def per_trial(self) -> np.ndarray:
        """Network-wide mean scale for each trial index."""
        return self.counts.sum(axis=0) / (self.n * self.n)


def critical_infection_rate(network: ContactNetwork) -> float:
    """``<k> / (<k^2> - <k>)`` over weighted degrees."""
    k = network.degrees()
    if network.weights.nnz == 0:
        raise DegenerateNetworkError("contact network has no contacts")
    k1 = float(k.mean())
    k2 = float((k**2).mean())
    if k2 <= k1:
        raise DegenerateNetworkError(f"<k^2> = {k2:g} does not exceed <k> = {k1:g}")
    return k1 / (k2 - k1)


def edge_infection_prob(mu: float, w):
    """``1 - (1 - mu)^w``."""
    if not 0 <= mu <= 1:
        raise ArgumentError(f"mu must lie in [0, 1], got {mu}")
    return -np.expm1(np.asarray(w, dtype=float) * np.log1p(-mu)) if mu < 1 else np.where(np.asarray(w) > 0, 1.0, 0.0)


def simulate(
    weights: sp.csr_matrix,
    mu: float,
    beta: float,
    master_seed: int,
    seeds: np.ndarray,
    trials: np.ndarray,
    max_steps: int | None = None,
) -> np.ndarray:
    """Ever-infected counts for each ``(seed vertex, trial index)`` job."""
    n = weights.shape[0]
    seeds = np.asarray(seeds, dtype=np.int64)
    trials = np.asarray(trials, dtype=np.int64)
    jobs = len(seeds)
    cap = max_steps if max_steps is not None else 10 * n + 100
    ever = np.zeros((jobs, n), dtype=bool)
    infected = np.zeros((jobs, n), dtype=bool)
    rows = np.arange(jobs)
    ever[rows, seeds] = True
    infected[rows, seeds] = True
    if mu <= 0:
        return ever.sum(axis=1)
    log_escape = np.log1p(-mu) if mu < 1 else -np.inf
    active = rows
    step = 0
    while active.size:
        step += 1
        if step > cap:
            raise SimulationError(f"{active.size} epidemics still running after {cap} rounds")
        sub = infected[active]
        ir, ic = np.nonzero(sub)
        carriers = sp.csr_matrix((np.ones(len(ir)), (ir, ic)), shape=(len(active), n))
        exposure = (carriers @ weights).tocoo()
        job = active[exposure.row]
        fresh = ~ever[job, exposure.col]
        job, target, load = job[fresh], exposure.col[fresh], exposure.data[fresh]
        with np.errstate(invalid="ignore"):
            p_inf = -np.expm1(load * log_escape) if mu < 1 else np.ones_like(load)
        draws = counter_uniforms(master_seed, seeds[job], trials[job], step, target, _INFECT)
        hit = draws < p_inf
        if beta >= 1:
            infected[active] = False
        else:
            cj = active[ir]
            rec = counter_uniforms(master_seed, seeds[cj], trials[cj], step, ic, _RECOVER) < beta
            infected[cj[rec], ic[rec]] = False
        infected[job[hit], target[hit]] = True
        ever[job[hit], target[hit]] = True
        active = active[infected[active].any(axis=1)]
    return ever.sum(axis=1)


def _chunk_job(args):
    return simulate(*args)


def run_sir(network: ContactNetwork, seed_vertex: int, params: SirParams, trial: int, mu: float | None = None) -> int:
    """Number of vertices ever infected when ``seed_vertex`` (an index) starts infected."""
    if not 0 <= seed_vertex < network.n:
        raise ArgumentError(f"seed vertex index {seed_vertex} outside 0..{network.n - 1}")
    mu = params.resolve_mu(network) if mu is None else mu
    counts = simulate(network.weights, mu, params.beta, params.seed, [seed_vertex], [trial], params.max_steps)
    return int(counts[0])


def mean_affected_scale(
    network: ContactNetwork, params: SirParams, mu: float | None = None, workers: int = 1
) -> SirOutcome:
    """Simulate every (seed vertex, trial) pair and collect the counts."""
    mu = params.resolve_mu(network) if mu is None else mu
    n, trials = network.n, params.trials
    seeds = np.repeat(np.arange(n), trials)
    trial_idx = np.tile(np.arange(trials), n)
    chunk = max(1, ROW_BUDGET // max(n, 1))
    tasks = [
        (network.weights, mu, params.beta, params.seed, seeds[s : s + chunk], trial_idx[s : s + chunk], params.max_steps)
        for s in range(0, len(seeds), chunk)
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk_job, tasks))
    else:
        parts = [_chunk_job(t) for t in tasks]
    counts = np.concatenate(parts).reshape(n, trials)
    return SirOutcome(counts, mu, params)
