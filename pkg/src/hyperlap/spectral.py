"""Eigendecomposition, heat-kernel diffusion distance and DFF centrality."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ArgumentError, NumericalError
from .hypergraph import SimplexRegistry

log = logging.getLogger(__name__)

FULL_DECOMPOSITION_LIMIT = 5000
DEFAULT_TRUNCATION = 2000

Operator = Literal["simplex-graph", "lh"]
Support = Literal["all", "hyperedges"]


@dataclass
class SpectralDecomposition:
    """Ascending eigenvalues with orthonormal eigenvectors stored as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    warnings: list[str] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.eigenvalues)

    @property
    def size(self) -> int:
        return self.eigenvectors.shape[0]

    def truncated(self, m: int) -> "SpectralDecomposition":
        return SpectralDecomposition(self.eigenvalues[:m], self.eigenvectors[:, :m], list(self.warnings))


@dataclass
class DffConfig:
    """Diffusion time, simplex distribution and spectral truncation for DFF.

    ``distribution`` is either a keyword (``"all"``: uniform over every
    simplex, ``"hyperedges"``: uniform over dimensions >= 1) or an explicit
    probability vector over all simplex ids.
    """

    t: float = 0.01
    distribution: Support | np.ndarray = "all"
    m: int | None = None
    operator: Operator = "simplex-graph"

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise ArgumentError(f"diffusion time must be positive, got {self.t}")

    def weights(self, registry: SimplexRegistry) -> np.ndarray:
        size = len(registry)
        if isinstance(self.distribution, str):
            w = np.zeros(size)
            if self.distribution == "all":
                w[:] = 1.0
            elif self.distribution == "hyperedges":
                w[registry.count(0) :] = 1.0
            else:
                raise ArgumentError(f"unknown distribution {self.distribution!r}")
            if w.sum() == 0:
                raise ArgumentError("distribution has empty support")
            return w / w.sum()
        w = np.asarray(self.distribution, dtype=float)
        if w.shape != (size,) or (w < 0).any():
            raise ArgumentError("distribution must be a non-negative vector over all simplices")
        total = w.sum()
        if abs(total - 1.0) > 1e-12:
            raise ArgumentError(f"distribution sums to {total!r}, expected 1")
        return w


def eig_sym(matrix, m: int | None = None, symmetry_tol: float = 1e-9) -> SpectralDecomposition:
    """Smallest ``m`` eigenpairs of a symmetric matrix (all of them when ``m`` is None)."""
    size = matrix.shape[0]
    if matrix.shape != (size, size):
        raise ArgumentError(f"matrix must be square, got shape {matrix.shape}")
    asym = abs(matrix - matrix.T)
    asym = asym.max() if asym.size else 0.0
    if asym > symmetry_tol:
        raise ArgumentError(f"matrix is not symmetric (max asymmetry {asym:g})")
    if m is None or m >= size - 1:
        dense = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix)
        try:
            vals, vecs = np.linalg.eigh(dense.astype(float))
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"dense eigensolver failed on {size}x{size} matrix: {exc}") from exc
        if m is not None:
            vals, vecs = vals[:m], vecs[:, :m]
    else:
        if m < 1:
            raise ArgumentError(f"m must be positive, got {m}")
        op = sp.csr_matrix(matrix, dtype=float) if sp.issparse(matrix) else np.asarray(matrix, dtype=float)
        try:
            vals, vecs = spla.eigsh(op, k=m, which="SA", tol=1e-10, maxiter=20 * size)
        except spla.ArpackNoConvergence as exc:
            raise NumericalError(
                f"eigsh did not converge: {len(exc.eigenvalues)} of {m} pairs after {20 * size} iterations"
            ) from exc
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
    dec = SpectralDecomposition(vals, vecs)
    scale = max(1.0, float(np.abs(vals).max())) if len(vals) else 1.0
    if len(vals) and vals[0] < -1e-9 * scale:
        msg = f"negative eigenvalue {vals[0]:.3e}"
        dec.warnings.append(msg)
        log.warning(msg)
    return dec


def eig_check(matrix, dec: SpectralDecomposition) -> tuple[float, float]:
    """Largest orthonormality defect and largest scaled residual of ``dec``."""
    vecs = dec.eigenvectors
    gram = vecs.T @ vecs
    ortho = float(np.abs(gram - np.eye(dec.m)).max()) if dec.m else 0.0
    applied = matrix @ vecs
    res = np.linalg.norm(applied - vecs * dec.eigenvalues, axis=0)
    scaled = res / np.maximum(1.0, np.abs(dec.eigenvalues))
    return ortho, float(scaled.max()) if dec.m else 0.0


def reference_eigenvalues(matrix) -> np.ndarray:
    """Eigenvalues from LAPACK's ``evr`` driver, independent of :func:`eig_sym`."""
    dense = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix)
    return scipy.linalg.eigh(dense.astype(float), eigvals_only=True, driver="evr")


def simplex_graph_laplacian(lh) -> sp.csr_matrix:
    """Combinatorial Laplacian ``D - A`` with ``A`` the off-diagonal part of ``L_H``."""
    lh = sp.csr_matrix(lh, dtype=float)
    adj = lh - sp.diags(lh.diagonal())
    adj.eliminate_zeros()
    deg = np.asarray(adj.sum(axis=1)).ravel()
    return (sp.diags(deg) - adj).tocsr()


def heat_operator(lh, operator: Operator = "simplex-graph"):
    if operator == "simplex-graph":
        return simplex_graph_laplacian(lh)
    if operator == "lh":
        return sp.csr_matrix(lh, dtype=float)
    raise ArgumentError(f"unknown operator {operator!r}")


def decompose(lh, operator: Operator = "simplex-graph", m: int | None = None) -> SpectralDecomposition:
    """Decompose the heat operator, truncating large problems by default."""
    size = lh.shape[0]
    if m is None and size > FULL_DECOMPOSITION_LIMIT:
        m = DEFAULT_TRUNCATION
    return eig_sym(heat_operator(lh, operator), m)


def diffusion_distance2(dec: SpectralDecomposition, i: int, j: int, t: float) -> float:
    """Squared diffusion distance between simplex indices ``i`` and ``j``."""
    if not t > 0:
        raise ArgumentError(f"diffusion time must be positive, got {t}")
    diff = dec.eigenvectors[i] - dec.eigenvectors[j]
    return float(np.sum(np.exp(-2.0 * dec.eigenvalues * t) * diff**2))


def diffusion_distance2_matrix(dec: SpectralDecomposition, t: float, rows=None) -> np.ndarray:
    """Pairwise squared diffusion distances (``rows`` x all indices)."""
    emb = dec.eigenvectors * np.exp(-dec.eigenvalues * t)
    sq = np.einsum("ij,ij->i", emb, emb)
    sub = emb if rows is None else emb[rows]
    out = sq[rows if rows is not None else slice(None), None] + sq[None, :] - 2.0 * sub @ emb.T
    if rows is None:
        out = 0.5 * (out + out.T)
    np.maximum(out, 0.0, out=out)
    return out


def dff_all(dec: SpectralDecomposition, weights: np.ndarray, t: float) -> np.ndarray:
    """``F(i) = sum_j d_t^2(i, j) w_j`` for every simplex index ``i``."""
    if not t > 0:
        raise ArgumentError(f"diffusion time must be positive, got {t}")
    phi = dec.eigenvectors
    damp = np.exp(-2.0 * dec.eigenvalues * t)
    total = weights.sum()
    mean_phi = weights @ phi
    mean_sq = weights @ (phi**2)
    per_k = total * phi**2 - 2.0 * phi * mean_phi + mean_sq
    return per_k @ damp


def dff_scores(
    dec: SpectralDecomposition, registry: SimplexRegistry, config: DffConfig | None = None
) -> dict[int, float]:
    """DFF score per hyperedge id (dimension >= 1); smaller means more influential."""
    config = config or DffConfig()
    d = dec if config.m is None else dec.truncated(config.m)
    scores = dff_all(d, config.weights(registry), config.t)
    return {sid: float(scores[sid]) for sid in registry.hyperedge_ids()}


def calibrate_t(
    dec: SpectralDecomposition,
    registry: SimplexRegistry,
    reference: dict[int, float],
    grid: np.ndarray | None = None,
    distribution: Support | np.ndarray = "all",
) -> tuple[float, float]:
    """Diffusion time on a log grid whose DFF ranking best matches ``reference``.

    ``reference`` maps hyperedge ids to reference ranks (1 = most
    influential). Returns ``(best_t, spearman)``; the first best grid point
    wins ties.
    """
    from .experiments import spearman

    grid = np.logspace(-2, 1, 61) if grid is None else np.asarray(grid)
    ids = sorted(reference)
    ref = np.array([reference[i] for i in ids], dtype=float)
    best_t, best_rho = float(grid[0]), -np.inf
    for t in grid:
        scores = dff_scores(dec, registry, DffConfig(t=float(t), distribution=distribution))
        rho = spearman([scores[i] for i in ids], ref)
        if rho > best_rho + 1e-12:
            best_t, best_rho = float(t), rho
    return best_t, float(best_rho)
