"""Graph-based relevance ranking of candidate units.

Candidates carry term vectors on both language sides. Three similarity
matrices drive the rankers: same-side target and source cosines (zero
diagonal) and a cross-language matrix, the entrywise geometric mean of the
two sides. The coupled fixed point reinforces source scores u and target
scores v through the cross matrix; PageRank and a fused-matrix variant
serve as extractive baselines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .similarity import cosine


@dataclass
class SimilarityMatrices:
    source_raw: np.ndarray
    target_raw: np.ndarray
    cross_raw: np.ndarray
    source_norm: np.ndarray
    target_norm: np.ndarray
    cross_norm: np.ndarray

    @property
    def n(self) -> int:
        return self.source_raw.shape[0]


@dataclass
class RankScores:
    u: np.ndarray
    v: np.ndarray
    iterations: int
    converged: bool


def row_normalize(matrix: np.ndarray) -> np.ndarray:
    """Scale each row to sum 1; all-zero rows stay zero."""
    sums = matrix.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(sums > 0, matrix / np.where(sums > 0, sums, 1.0), 0.0)
    return out


def build_matrices(units: Sequence) -> SimilarityMatrices:
    """Pairwise cosine matrices over the units' two term-vector sides.

    Same-side matrices zero the diagonal; the cross matrix is the
    entrywise sqrt of the product of the two sides and keeps its diagonal.
    """
    n = len(units)
    if n < 1:
        raise ValueError("need at least one unit")
    source = np.zeros((n, n))
    target = np.zeros((n, n))
    cross = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            cos_src = cosine(units[i].source_vector, units[j].source_vector)
            cos_tgt = cosine(units[i].target_vector, units[j].target_vector)
            if i != j:
                source[i, j] = source[j, i] = cos_src
                target[i, j] = target[j, i] = cos_tgt
            cross[i, j] = cross[j, i] = np.sqrt(cos_src * cos_tgt)
    return SimilarityMatrices(
        source_raw=source,
        target_raw=target,
        cross_raw=cross,
        source_norm=row_normalize(source),
        target_norm=row_normalize(target),
        cross_norm=row_normalize(cross),
    )


def corank(
    m: SimilarityMatrices,
    alpha: float = 0.5,
    beta: float = 0.5,
    tol: float = 1e-6,
    max_iter: int = 200,
) -> RankScores:
    """Coupled source/target fixed point.

    Each sweep computes, from the previous iterates,
    u <- alpha * source_norm^T u + beta * cross_norm^T v and
    v <- alpha * target_norm^T v + beta * cross_norm^T u,
    then rescales both to sum 1. Stops when the max infinity-norm change
    of u and v drops below *tol*.
    """
    if abs(alpha + beta - 1.0) > 1e-12 or alpha < 0 or beta < 0:
        raise ValueError(f"alpha and beta must be non-negative and sum to 1, "
                         f"got {alpha}, {beta}")
    n = m.n
    if n == 0:
        raise ValueError("empty unit set")
    u = np.full(n, 1.0 / n)
    v = np.full(n, 1.0 / n)
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        u_next = alpha * (m.source_norm.T @ u) + beta * (m.cross_norm.T @ v)
        v_next = alpha * (m.target_norm.T @ v) + beta * (m.cross_norm.T @ u)
        if u_next.sum() > 0:
            u_next = u_next / u_next.sum()
        if v_next.sum() > 0:
            v_next = v_next / v_next.sum()
        delta = max(
            np.max(np.abs(u_next - u), initial=0.0),
            np.max(np.abs(v_next - v), initial=0.0),
        )
        u, v = u_next, v_next
        if delta < tol:
            converged = True
            break
    return RankScores(u=u, v=v, iterations=iterations, converged=converged)


def pagerank(
    matrix: np.ndarray,
    damping: float = 0.85,
    tol: float = 1e-6,
    max_iter: int = 200,
) -> np.ndarray:
    """Damped power iteration with uniform teleport over a row-normalized
    similarity matrix. The returned vector sums to 1."""
    if not 0 < damping < 1:
        raise ValueError(f"damping must be in (0, 1), got {damping}")
    n = matrix.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    x = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    for _ in range(max_iter):
        x_next = damping * (matrix.T @ x) + teleport
        if np.max(np.abs(x_next - x)) < tol:
            x = x_next
            break
        x = x_next
    return x / x.sum()


def simfusion(
    m: SimilarityMatrices,
    lam: float = 0.5,
    damping: float = 0.85,
    tol: float = 1e-6,
    max_iter: int = 200,
) -> np.ndarray:
    """PageRank over the convex fusion of the two same-side matrices:
    lam * target + (1 - lam) * source, row-normalized."""
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    fused = lam * m.target_raw + (1.0 - lam) * m.source_raw
    return pagerank(row_normalize(fused), damping=damping, tol=tol, max_iter=max_iter)
