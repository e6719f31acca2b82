"""Distribution and partition diagnostics.

Covers degree histograms with log-binned companions, discrete power-law
tail fitting, community size profiles, per-community top-item tables,
concentration (dominance) metrics, and concordance between two
partitions of the same vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.special import zeta

from .errors import FangraphError
from .graphs import BipartiteGraph, Partition

__all__ = [
    "DegreeHistogram",
    "PowerLawFit",
    "LabeledTable",
    "DominanceMetrics",
    "ConcordanceResult",
    "degree_histogram",
    "histogram_from_degrees",
    "fit_power_law",
    "community_sizes",
    "top_items_per_community",
    "dominance_metrics",
    "gini",
    "nmi",
    "partition_concordance",
    "genre_purity",
]


@dataclass(frozen=True)
class DegreeHistogram:
    """Exact degree counts plus a ratio-2 log-binned series for plotting."""

    side: str
    degrees: np.ndarray  # distinct positive degrees, ascending
    counts: np.ndarray
    zero_count: int
    log_bins: np.ndarray  # rows of (lo, hi, count) with hi = 2 * lo


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    kmin: int
    ks_statistic: float
    n_tail: int


@dataclass(frozen=True)
class LabeledTable:
    """Rows of (label, value), value descending, ties by label ascending."""

    rows: tuple[tuple[str, float], ...]

    def __post_init__(self):
        for (la, va), (lb, vb) in zip(self.rows, self.rows[1:]):
            if vb > va or (vb == va and lb < la):
                raise FangraphError("table rows out of order")

    def __len__(self):
        return len(self.rows)

    def values(self) -> np.ndarray:
        return np.asarray([v for _, v in self.rows], dtype=np.float64)

    @classmethod
    def from_counts(cls, labels: Sequence[str], values: Sequence[float]) -> "LabeledTable":
        lab = np.asarray(list(labels), dtype=str)
        val = np.asarray(values, dtype=np.float64)
        order = np.lexsort((lab, -val))
        return cls(tuple((str(lab[i]), float(val[i])) for i in order))


@dataclass(frozen=True)
class DominanceMetrics:
    top1_share: float
    top1_over_top10: float
    gini: float


@dataclass(frozen=True)
class ConcordanceResult:
    agreement: float
    nmi: float


def histogram_from_degrees(values, side: str) -> DegreeHistogram:
    deg = np.asarray(values, dtype=np.int64)
    zero_count = int((deg == 0).sum())
    pos = deg[deg > 0]
    if pos.size == 0:
        return DegreeHistogram(
            side, np.empty(0, np.int64), np.empty(0, np.int64), zero_count, np.empty((0, 3))
        )
    ks, counts = np.unique(pos, return_counts=True)
    edges = [1]
    while edges[-1] <= ks[-1]:
        edges.append(edges[-1] * 2)
    hist, _ = np.histogram(pos, bins=np.asarray(edges))
    log_bins = np.column_stack(
        [np.asarray(edges[:-1]), np.asarray(edges[1:]), hist]
    ).astype(np.float64)
    log_bins = log_bins[log_bins[:, 2] > 0]
    return DegreeHistogram(side, ks, counts.astype(np.int64), zero_count, log_bins)


def degree_histogram(b: BipartiteGraph, side: str) -> DegreeHistogram:
    """Membership-count histogram of one side of a bipartite graph."""
    if side == "left":
        return histogram_from_degrees(b.left_degrees(), side)
    if side == "right":
        return histogram_from_degrees(b.right_degrees(), side)
    raise FangraphError(f"side must be 'left' or 'right', got {side!r}")


def _fit_at(samples: np.ndarray, kmin: int) -> PowerLawFit:
    tail = samples[samples >= kmin]
    n_tail = int(tail.size)
    if n_tail < 2:
        raise FangraphError(f"fewer than 2 samples at or above kmin={kmin}")
    vals, cnts = np.unique(tail, return_counts=True)
    if vals.size == 1:
        raise FangraphError("degenerate sample: all tail values equal")
    alpha = 1.0 + n_tail / float(np.log(tail / (kmin - 0.5)).sum())
    emp_cdf = np.cumsum(cnts) / n_tail
    z0 = zeta(alpha, kmin)
    fit_cdf = 1.0 - zeta(alpha, vals + 1) / z0
    ks = float(np.max(np.abs(emp_cdf - fit_cdf)))
    return PowerLawFit(float(alpha), int(kmin), ks, n_tail)


def fit_power_law(degrees, kmin="auto") -> PowerLawFit:
    """Discrete maximum-likelihood power-law fit of a degree sample.

    The exponent estimate is alpha = 1 + n / sum(ln(k_i / (kmin - 1/2))) over
    the tail k_i >= kmin; goodness is the maximum gap between the empirical
    tail CDF and the fitted discrete power law. ``kmin="auto"`` scans the
    observed degrees for the KS-minimizing cutoff, preferring cutoffs that
    keep at least 50 tail samples when any such cutoff exists.
    """
    k = np.asarray(degrees, dtype=np.int64)
    if k.size == 0:
        raise FangraphError("empty degree sample")
    if k.min() < 1:
        raise FangraphError("degrees must be positive integers")
    if kmin != "auto":
        kmin = int(kmin)
        if kmin < 1:
            raise FangraphError("kmin must be >= 1")
        return _fit_at(k, kmin)

    cands = np.unique(k)
    tail_sizes = k.size - np.searchsorted(np.sort(k), cands, side="left")
    eligible = cands[tail_sizes >= 50]
    scan = eligible if eligible.size else cands
    best: PowerLawFit | None = None
    for c in scan:
        try:
            fit = _fit_at(k, int(c))
        except FangraphError:
            continue
        if best is None or fit.ks_statistic < best.ks_statistic:
            best = fit
    if best is None:
        raise FangraphError("degenerate sample: no usable power-law cutoff")
    return best


def community_sizes(p: Partition) -> list[tuple[int, int]]:
    """(community id, size) pairs, sizes descending, ties by ascending id."""
    sizes = p.sizes()
    order = np.lexsort((np.arange(p.k), -sizes))
    return [(int(c), int(sizes[c])) for c in order]


def top_items_per_community(
    b: BipartiteGraph,
    fan_partition: Partition,
    k: int | None = None,
    labels: Sequence[str] | None = None,
) -> dict[int, LabeledTable]:
    """Per fan community, the opposite-side items ranked by membership count.

    ``k=None`` returns full tables; otherwise tables are truncated to the
    top k rows. Labels default to stringified item ids.
    """
    if len(fan_partition) != b.n_left:
        raise FangraphError("fan partition does not cover the left side")
    if k is not None and k < 1:
        raise FangraphError("k must be >= 1")
    if labels is None:
        lab_all = np.asarray([str(i) for i in range(b.n_right)], dtype=str)
    else:
        if len(labels) != b.n_right:
            raise FangraphError("labels must cover all right vertices")
        lab_all = np.asarray(list(labels), dtype=str)

    tables: dict[int, LabeledTable] = {c: LabeledTable(()) for c in range(fan_partition.k)}
    if b.edge_count:
        rows = np.repeat(np.arange(b.n_left, dtype=np.int64), np.diff(b.offsets))
        comm = fan_partition.assignment[rows]
        key = comm * np.int64(b.n_right) + b.neighbors
        uniq, cnt = np.unique(key, return_counts=True)
        comm_ids = (uniq // b.n_right).astype(np.int64)
        item_ids = (uniq % b.n_right).astype(np.int64)
        labs = lab_all[item_ids]
        order = np.lexsort((labs, -cnt, comm_ids))
        comm_sorted = comm_ids[order]
        starts = np.searchsorted(comm_sorted, np.arange(fan_partition.k + 1))
        for c in range(fan_partition.k):
            seg = order[starts[c] : starts[c + 1]]
            if k is not None:
                seg = seg[:k]
            tables[c] = LabeledTable(
                tuple((str(labs_i), float(cnt_i)) for labs_i, cnt_i in zip(labs[seg], cnt[seg]))
            )
    return tables


def gini(values) -> float:
    """Gini coefficient of a non-negative value vector; 0 iff all equal."""
    x = np.sort(np.asarray(values, dtype=np.float64))
    n = x.size
    if n == 0:
        raise FangraphError("gini undefined on empty input")
    total = float(x.sum())
    if total <= 0:
        raise FangraphError("gini requires a positive total")
    ranks = np.arange(1, n + 1, dtype=np.float64)
    return float(2.0 * (ranks * x).sum() / (n * total) - (n + 1.0) / n)


def dominance_metrics(table: LabeledTable) -> DominanceMetrics:
    """Concentration of a ranked count table: top-1 share of the whole table,
    top-1 share of the top-10 mass, and the Gini coefficient."""
    if len(table) == 0:
        raise FangraphError("dominance undefined on an empty table")
    vals = table.values()
    top1 = float(vals[0])
    return DominanceMetrics(
        top1_share=top1 / float(vals.sum()),
        top1_over_top10=top1 / float(vals[:10].sum()),
        gini=gini(vals),
    )


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def nmi(a, b) -> float:
    """Normalized mutual information (arithmetic-mean normalization).

    Two identical single-community labelings have zero entropy on both
    sides; that 0/0 case is defined as 1.
    """
    la = np.asarray(getattr(a, "assignment", a), dtype=np.int64)
    lb = np.asarray(getattr(b, "assignment", b), dtype=np.int64)
    if la.size != lb.size:
        raise FangraphError("labelings must cover the same vertices")
    n = la.size
    if n == 0:
        raise FangraphError("nmi undefined on empty labelings")
    ka = int(la.max()) + 1
    kb = int(lb.max()) + 1
    key = la * np.int64(kb) + lb
    uniq, cnt = np.unique(key, return_counts=True)
    na = np.bincount(la, minlength=ka)
    nb = np.bincount(lb, minlength=kb)
    ci = cnt / n
    mi = float(
        (ci * np.log(cnt.astype(np.float64) * n / (na[uniq // kb] * nb[uniq % kb]))).sum()
    )
    ha = _entropy(na, n)
    hb = _entropy(nb, n)
    if ha + hb == 0.0:
        return 1.0
    return 2.0 * mi / (ha + hb)


def partition_concordance(a: Partition, b: Partition) -> ConcordanceResult:
    """Agreement under the best bijective community matching, plus NMI.

    Agreement is the matched contingency mass over n, with the matching
    chosen by Hungarian assignment; both scores are invariant to relabeling
    either partition.
    """
    la = a.assignment
    lb = b.assignment
    if la.size != lb.size:
        raise FangraphError("partitions must cover the same vertices")
    n = la.size
    if n == 0:
        raise FangraphError("concordance undefined on empty partitions")
    contingency = np.zeros((a.k, b.k), dtype=np.int64)
    key = la * np.int64(b.k) + lb
    uniq, cnt = np.unique(key, return_counts=True)
    contingency[uniq // b.k, uniq % b.k] = cnt
    ri, ci = linear_sum_assignment(contingency, maximize=True)
    agreement = float(contingency[ri, ci].sum()) / n
    return ConcordanceResult(agreement=agreement, nmi=nmi(la, lb))


def genre_purity(
    b: BipartiteGraph, fan_partition: Partition, artist_genres
) -> dict[int, tuple[float, int]]:
    """Per fan community: (purity, plurality genre) of its memberships.

    Purity is the fraction of the community's memberships that point at
    artists of its most common genre. Communities without memberships are
    omitted.
    """
    genres = np.asarray(artist_genres, dtype=np.int64)
    if genres.size != b.n_right:
        raise FangraphError("genre vector must cover all right vertices")
    if len(fan_partition) != b.n_left:
        raise FangraphError("fan partition does not cover the left side")
    out: dict[int, tuple[float, int]] = {}
    if not b.edge_count:
        return out
    g = int(genres.max()) + 1 if genres.size else 1
    rows = np.repeat(np.arange(b.n_left, dtype=np.int64), np.diff(b.offsets))
    comm = fan_partition.assignment[rows]
    key = comm * np.int64(g) + genres[b.neighbors]
    uniq, cnt = np.unique(key, return_counts=True)
    mat = np.zeros((fan_partition.k, g), dtype=np.int64)
    mat[uniq // g, uniq % g] = cnt
    totals = mat.sum(axis=1)
    for c in range(fan_partition.k):
        if totals[c] == 0:
            continue
        top_genre = int(np.argmax(mat[c]))
        out[c] = (float(mat[c, top_genre]) / float(totals[c]), top_genre)
    return out
