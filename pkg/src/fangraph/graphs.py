"""Core graph containers: fan-artist membership graphs, weighted unipartite
graphs in compressed adjacency form, and dense community partitions.

All three types are immutable after construction and safe to share across
threads. Vertex ids are dense integers; mapping from external labels happens
in :mod:`fangraph.ingest`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import FangraphError

__all__ = [
    "BipartiteGraph",
    "WeightedGraph",
    "Partition",
    "build_bipartite",
    "build_weighted",
]


def _as_int_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64)
    if arr.size and arr.min() < 0:
        raise FangraphError(f"{name} ids must be non-negative")
    return arr


@dataclass(frozen=True)
class BipartiteGraph:
    """Directed fan-to-artist membership structure.

    Left vertices (fans) hold sorted adjacency lists of right vertices
    (artists). There are no left-left or right-right edges by construction.
    """

    n_left: int
    n_right: int
    offsets: np.ndarray  # int64, length n_left + 1
    neighbors: np.ndarray  # int64, concatenated sorted right ids

    @property
    def edge_count(self) -> int:
        return int(self.neighbors.size)

    def neighbors_of(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n_left:
            raise FangraphError(f"left vertex {v} out of range (n_left={self.n_left})")
        return self.neighbors[self.offsets[v] : self.offsets[v + 1]]

    def left_degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def right_degrees(self) -> np.ndarray:
        return np.bincount(self.neighbors, minlength=self.n_right).astype(np.int64)

    def validate(self) -> None:
        """Full invariant scan, meant for tests."""
        if self.offsets.size != self.n_left + 1 or self.offsets[0] != 0:
            raise FangraphError("offsets malformed")
        if self.offsets[-1] != self.neighbors.size:
            raise FangraphError("edge_count inconsistent with adjacency")
        if np.any(np.diff(self.offsets) < 0):
            raise FangraphError("offsets not monotone")
        if self.neighbors.size:
            if self.neighbors.min() < 0 or self.neighbors.max() >= self.n_right:
                raise FangraphError("right id out of range")
        for v in range(self.n_left):
            row = self.neighbors[self.offsets[v] : self.offsets[v + 1]]
            if row.size > 1 and np.any(np.diff(row) <= 0):
                raise FangraphError(f"adjacency of left vertex {v} not strictly increasing")


def build_bipartite(
    edges: Iterable[tuple[int, int]] | np.ndarray,
    n_left: int | None = None,
    n_right: int | None = None,
) -> BipartiteGraph:
    """Build a membership graph from (left, right) id pairs.

    Duplicate pairs collapse to a single membership (a fan joins a board at
    most once). ``n_left``/``n_right`` may declare extra isolated vertices
    beyond the largest ids seen in ``edges``.
    """
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        nl = int(n_left or 0)
        nr = int(n_right or 0)
        return BipartiteGraph(nl, nr, np.zeros(nl + 1, dtype=np.int64), np.empty(0, dtype=np.int64))
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FangraphError("edges must be (left, right) pairs")
    if arr.min() < 0:
        raise FangraphError("vertex ids must be non-negative")

    arr = np.unique(arr, axis=0)  # dedup + lexicographic sort by (left, right)
    left, right = arr[:, 0], arr[:, 1]

    nl = int(left.max()) + 1
    nr = int(right.max()) + 1
    if n_left is not None:
        if n_left < nl:
            raise FangraphError(f"n_left={n_left} smaller than max left id {nl - 1}")
        nl = int(n_left)
    if n_right is not None:
        if n_right < nr:
            raise FangraphError(f"n_right={n_right} smaller than max right id {nr - 1}")
        nr = int(n_right)

    counts = np.bincount(left, minlength=nl)
    offsets = np.zeros(nl + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return BipartiteGraph(nl, nr, offsets, np.ascontiguousarray(right))


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph stored in symmetric CSR form.

    Every undirected edge (u, v, w) is stored twice, under u and under v,
    with the same weight; ``total_weight`` is therefore 2m. No self-loops,
    all weights positive, neighbor lists strictly increasing.
    """

    n: int
    offsets: np.ndarray  # int64, length n + 1
    neighbors: np.ndarray  # int64
    weights: np.ndarray  # float64, parallel to neighbors
    total_weight: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total_weight", float(self.weights.sum()))

    @property
    def edge_count(self) -> int:
        """Number of distinct undirected edges."""
        return int(self.neighbors.size) // 2

    def degree(self, v: int) -> float:
        """Weighted degree (strength) of v; 0.0 for isolated vertices."""
        if not 0 <= v < self.n:
            raise FangraphError(f"vertex {v} out of range (n={self.n})")
        return float(self.weights[self.offsets[v] : self.offsets[v + 1]].sum())

    def degrees(self) -> np.ndarray:
        """Weighted degree of every vertex."""
        cum = np.concatenate(([0.0], np.cumsum(self.weights)))
        return cum[self.offsets[1:]] - cum[self.offsets[:-1]]

    def count_degrees(self) -> np.ndarray:
        """Number of neighbors of every vertex (unweighted)."""
        return np.diff(self.offsets)

    def edge_list(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Distinct undirected edges as (u, v, w) arrays with u < v."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.offsets))
        mask = rows < self.neighbors
        return rows[mask], self.neighbors[mask], self.weights[mask]

    def validate(self) -> None:
        """Full invariant scan including symmetry, meant for tests."""
        if self.offsets.size != self.n + 1 or self.offsets[0] != 0:
            raise FangraphError("offsets malformed")
        if self.offsets[-1] != self.neighbors.size or self.neighbors.size != self.weights.size:
            raise FangraphError("array lengths inconsistent")
        if self.weights.size and self.weights.min() <= 0:
            raise FangraphError("weights must be positive")
        if abs(self.total_weight - float(self.weights.sum())) > 1e-9 * max(1.0, self.total_weight):
            raise FangraphError("total_weight inconsistent")
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.offsets))
        if np.any(rows == self.neighbors):
            raise FangraphError("self-loop stored")
        for v in range(self.n):
            row = self.neighbors[self.offsets[v] : self.offsets[v + 1]]
            if row.size > 1 and np.any(np.diff(row) <= 0):
                raise FangraphError(f"adjacency of vertex {v} not strictly increasing")
        # symmetry: transposing the edge list and re-sorting must reproduce it
        order = np.lexsort((rows, self.neighbors))
        if not np.array_equal(self.neighbors[order], rows) or not np.array_equal(
            rows[order], self.neighbors
        ):
            raise FangraphError("adjacency not symmetric")
        if not np.array_equal(self.weights[order], self.weights):
            raise FangraphError("weights not symmetric")


def csr_from_undirected(
    n: int, u: np.ndarray, v: np.ndarray, w: np.ndarray
) -> WeightedGraph:
    """Assemble symmetric CSR storage from *distinct* undirected edges.

    Callers guarantee u != v elementwise and (u, v) pairs unique as
    unordered pairs; both orientations are materialized here.
    """
    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    wt = np.concatenate([w, w])
    order = np.lexsort((dst, src))
    src, dst, wt = src[order], dst[order], wt[order]
    counts = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return WeightedGraph(n, offsets, np.ascontiguousarray(dst), np.ascontiguousarray(wt))


def build_weighted(
    edges: Iterable[tuple[int, int, float]] | Sequence[np.ndarray],
    n: int | None = None,
) -> WeightedGraph:
    """Build an undirected weighted graph from (u, v, w) triples.

    Duplicate (u, v) pairs, in either orientation, have their weights summed
    (standard multigraph collapse). Self-loops and non-positive weights are
    rejected. ``n`` may declare extra isolated vertices.
    """
    if isinstance(edges, (tuple, list)) and len(edges) == 3 and isinstance(edges[0], np.ndarray):
        u, v, w = edges
        u = _as_int_array(u, "vertex")
        v = _as_int_array(v, "vertex")
        w = np.asarray(w, dtype=np.float64)
    else:
        rows = list(edges)
        if rows:
            u = _as_int_array([r[0] for r in rows], "vertex")
            v = _as_int_array([r[1] for r in rows], "vertex")
            w = np.asarray([r[2] for r in rows], dtype=np.float64)
        else:
            u = v = np.empty(0, dtype=np.int64)
            w = np.empty(0, dtype=np.float64)

    if u.size == 0:
        nn = int(n or 0)
        return WeightedGraph(
            nn, np.zeros(nn + 1, dtype=np.int64), np.empty(0, dtype=np.int64), np.empty(0)
        )

    loops = u == v
    if loops.any():
        bad = int(np.flatnonzero(loops)[0])
        raise FangraphError(f"self-loop on vertex {int(u[bad])} rejected")
    if w.min() <= 0:
        raise FangraphError("edge weights must be positive")

    nn = int(max(u.max(), v.max())) + 1
    if n is not None:
        if n < nn:
            raise FangraphError(f"n={n} smaller than max vertex id {nn - 1}")
        nn = int(n)

    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    key = lo * nn + hi
    uniq, inverse = np.unique(key, return_inverse=True)
    ws = np.bincount(inverse, weights=w)
    return csr_from_undirected(nn, uniq // nn, uniq % nn, ws)


@dataclass(frozen=True)
class Partition:
    """Dense community assignment over vertices.

    Community ids are 0..k-1 and every id is used by at least one vertex.
    """

    assignment: np.ndarray  # int64
    k: int = field(init=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.assignment, dtype=np.int64))
        object.__setattr__(self, "assignment", arr)
        if arr.size == 0:
            object.__setattr__(self, "k", 0)
            return
        if arr.min() < 0:
            raise FangraphError("community ids must be non-negative")
        k = int(arr.max()) + 1
        if np.any(np.bincount(arr, minlength=k) == 0):
            raise FangraphError("community ids must be dense (every id used)")
        object.__setattr__(self, "k", k)

    def __len__(self) -> int:
        return int(self.assignment.size)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k).astype(np.int64)

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Densify arbitrary integer labels, ordered by ascending label."""
        labels = np.asarray(labels)
        _, inverse = np.unique(labels, return_inverse=True)
        return cls(inverse.astype(np.int64))
