"""One-mode projection of membership graphs.

Two same-side vertices are connected by the number of opposite-side
neighbors they share; edges below a minimum weight are pruned. Exact
counting costs sum(d_p^2) over pivot degrees d_p, so the product is
evaluated in row blocks sized by that work bound and thresholded
immediately, keeping peak memory proportional to a block, not to the
all-pairs result.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import FangraphError
from .graphs import BipartiteGraph, WeightedGraph, csr_from_undirected

__all__ = ["ProjectionConfig", "project"]

log = logging.getLogger(__name__)

# upper bound on accumulated pair terms per matmul block (~hundreds of MB)
_BLOCK_WORK = 25_000_000


@dataclass(frozen=True)
class ProjectionConfig:
    side: str = "left"
    min_weight: int = 1
    pivot_degree_cap: int = 0  # 0 = exact, no pivot skipped

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise FangraphError(f"side must be 'left' or 'right', got {self.side!r}")
        if int(self.min_weight) < 1:
            raise FangraphError("min_weight must be >= 1")
        if int(self.pivot_degree_cap) < 0:
            raise FangraphError("pivot_degree_cap must be >= 0")


def _membership_matrix(b: BipartiteGraph) -> sparse.csr_matrix:
    data = np.ones(b.neighbors.size, dtype=np.float64)
    return sparse.csr_matrix(
        (data, b.neighbors, b.offsets), shape=(b.n_left, b.n_right)
    )


def project(b: BipartiteGraph, cfg: ProjectionConfig) -> WeightedGraph:
    """Project onto ``cfg.side``; vertices of that side are all retained,
    including ones isolated by the weight threshold."""
    m = _membership_matrix(b)
    if cfg.side == "right":
        m = m.T.tocsr()
    n = m.shape[0]

    if m.nnz == 0 or n == 0:
        return WeightedGraph(
            n, np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int64), np.empty(0)
        )

    pivot_deg = np.asarray(m.sum(axis=0)).ravel()
    if cfg.pivot_degree_cap:
        keep = pivot_deg <= cfg.pivot_degree_cap
        skipped = int((~keep).sum())
        if skipped:
            log.warning(
                "projection: skipping %d pivot(s) with degree > %d",
                skipped,
                cfg.pivot_degree_cap,
            )
            m = m[:, keep].tocsr()
            pivot_deg = pivot_deg[keep]

    mt = m.T.tocsr()

    # row work = sum of pivot degrees over the row's memberships
    indptr = m.indptr
    cw = np.concatenate(([0.0], np.cumsum(pivot_deg[m.indices])))
    work = cw[indptr[1:]] - cw[indptr[:-1]]

    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    ws: list[np.ndarray] = []
    lo = 0
    cum = np.cumsum(work)
    while lo < n:
        # largest hi with block work <= budget, at least one row
        target = (cum[lo - 1] if lo else 0.0) + _BLOCK_WORK
        hi = int(np.searchsorted(cum, target, side="right"))
        hi = max(hi, lo + 1)
        block = (m[lo:hi] @ mt).tocoo()
        rows = block.row.astype(np.int64) + lo
        cols = block.col.astype(np.int64)
        vals = block.data
        mask = (vals >= cfg.min_weight) & (rows < cols)
        if mask.any():
            us.append(rows[mask])
            vs.append(cols[mask])
            ws.append(vals[mask])
        lo = hi

    if not us:
        return WeightedGraph(
            n, np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int64), np.empty(0)
        )
    return csr_from_undirected(
        n, np.concatenate(us), np.concatenate(vs), np.concatenate(ws)
    )
