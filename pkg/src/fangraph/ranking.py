"""Weighted PageRank on undirected graphs, plus percentile-band slicing.

Each undirected edge acts as two directed edges whose transition
probability is proportional to edge weight; vertices with no edges are
dangling and their mass is redistributed uniformly. With damping d:

    p(v) = (1 - d)/n + d * [ sum_u w_uv / k_u * p(u) + (sum over dangling u of p(u)) / n ]

The iteration preserves sum(p) = 1, so scores normalize exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import FangraphError
from .graphs import Partition, WeightedGraph

__all__ = ["RankConfig", "RankVector", "pagerank", "percentile_partition"]


@dataclass(frozen=True)
class RankConfig:
    damping: float = 0.85
    tolerance: float = 1e-10  # L1 change between iterates
    max_iterations: int = 200

    def __post_init__(self):
        if not 0 < self.damping < 1:
            raise FangraphError("damping must be in (0, 1)")
        if not self.tolerance > 0:
            raise FangraphError("tolerance must be > 0")
        if self.max_iterations < 1:
            raise FangraphError("max_iterations must be >= 1")


@dataclass(frozen=True)
class RankVector:
    scores: np.ndarray
    iterations_used: int
    converged: bool


def pagerank(g: WeightedGraph, cfg: RankConfig | None = None) -> RankVector:
    """Power iteration until the L1 change drops below tolerance."""
    cfg = cfg or RankConfig()
    if g.n == 0:
        raise FangraphError("pagerank undefined on the empty graph")
    n = g.n
    d = cfg.damping
    deg = g.degrees()
    dangling = deg == 0.0
    inv_deg = np.where(dangling, 0.0, 1.0 / np.where(dangling, 1.0, deg))
    adj = sparse.csr_matrix((g.weights, g.neighbors, g.offsets), shape=(n, n))

    x = np.full(n, 1.0 / n)
    base = (1.0 - d) / n
    iterations = 0
    converged = False
    for iterations in range(1, cfg.max_iterations + 1):
        y = x * inv_deg
        dangling_mass = float(x[dangling].sum())
        x_next = base + d * (adj @ y + dangling_mass / n)
        if float(np.abs(x_next - x).sum()) < cfg.tolerance:
            x = x_next
            converged = True
            break
        x = x_next
    return RankVector(x, iterations, converged)


def percentile_partition(ranks, fractions) -> Partition:
    """Slice vertices into bands of the given score-descending fractions.

    Band b receives the next round(fraction_b * n) vertices (half rounds
    away from zero); the last band absorbs the rounding remainder. Ties in
    score are broken by ascending vertex id. Every band must end up
    non-empty because partitions require every community id used.
    """
    scores = np.asarray(getattr(ranks, "scores", ranks), dtype=np.float64)
    fr = [float(f) for f in fractions]
    if not fr:
        raise FangraphError("fractions must be non-empty")
    if any(f <= 0 for f in fr):
        raise FangraphError("fractions must be positive")
    if abs(sum(fr) - 1.0) > 1e-9:
        raise FangraphError(f"fractions must sum to 1, got {sum(fr)}")
    n = scores.size
    if n == 0:
        raise FangraphError("no vertices to slice")

    order = np.argsort(-scores, kind="stable")  # desc score, ties asc id
    assignment = np.empty(n, dtype=np.int64)
    pos = 0
    for b, f in enumerate(fr):
        if b == len(fr) - 1:
            size = n - pos
        else:
            size = min(int(np.floor(f * n + 0.5)), n - pos)
        if size <= 0:
            raise FangraphError(f"rank band {b} would be empty (n={n})")
        assignment[order[pos : pos + size]] = b
        pos += size
    return Partition(assignment)
