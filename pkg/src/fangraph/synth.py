"""Deterministic synthetic data: preferential-attachment fan markets and
planted-partition benchmark graphs.

All randomness flows through numpy's Philox counter-based generator, keyed
by the config seed, with a fixed draw order documented on each generator;
identical configs therefore reproduce byte-identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import FangraphError
from .graphs import BipartiteGraph, Partition, WeightedGraph, build_bipartite, build_weighted

__all__ = ["MarketGenConfig", "PlantedConfig", "gen_market", "gen_planted"]


@dataclass(frozen=True)
class MarketGenConfig:
    n_fans: int
    n_artists: int
    memberships_per_fan: int = 5
    attachment_bias: float = 1.0
    n_genres: int = 1
    genre_affinity: float = 0.0
    genre_skew: float = 0.0  # fan genre preference ~ (genre id + 1)^-skew; 0 = uniform
    seed: int = 0

    def __post_init__(self):
        if self.n_fans < 1 or self.n_artists < 1 or self.memberships_per_fan < 1:
            raise FangraphError("n_fans, n_artists, memberships_per_fan must be >= 1")
        if self.attachment_bias < 0:
            raise FangraphError("attachment_bias must be >= 0")
        if self.n_genres < 1:
            raise FangraphError("n_genres must be >= 1")
        if self.n_genres > self.n_artists:
            raise FangraphError("n_genres cannot exceed n_artists")
        if not 0.0 <= self.genre_affinity <= 1.0:
            raise FangraphError("genre_affinity must be in [0, 1]")
        if self.genre_skew < 0:
            raise FangraphError("genre_skew must be >= 0")


@dataclass(frozen=True)
class PlantedConfig:
    block_sizes: tuple[int, ...]
    p_in: float
    p_out: float
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "block_sizes", tuple(int(s) for s in self.block_sizes))
        if not self.block_sizes or any(s < 1 for s in self.block_sizes):
            raise FangraphError("block_sizes must be non-empty positive integers")
        if not 0 < self.p_in <= 1:
            raise FangraphError("p_in must be in (0, 1]")
        if not 0 <= self.p_out < 1:
            raise FangraphError("p_out must be in [0, 1)")
        if not self.p_in > self.p_out:
            raise FangraphError("p_in must exceed p_out")


@njit(cache=True)
def _fenwick_add(tree, i, delta):
    j = i + 1
    n = tree.size - 1
    while j <= n:
        tree[j] += delta
        j += j & (-j)


@njit(cache=True)
def _fenwick_prefix(tree, i):
    # sum of weights of artists 0..i-1
    s = 0.0
    j = i
    while j > 0:
        s += tree[j]
        j -= j & (-j)
    return s


@njit(cache=True)
def _fenwick_search(tree, target, log2n):
    # smallest index with prefix sum > target
    pos = 0
    rem = target
    bit = 1 << log2n
    n = tree.size - 1
    while bit > 0:
        nxt = pos + bit
        if nxt <= n and tree[nxt] <= rem:
            rem -= tree[nxt]
            pos = nxt
        bit >>= 1
    return pos


def _split_genres(n_artists: int, n_genres: int) -> np.ndarray:
    """Contiguous genre blocks; sizes differ by at most one."""
    base = n_artists // n_genres
    rem = n_artists % n_genres
    sizes = np.full(n_genres, base, dtype=np.int64)
    sizes[:rem] += 1
    starts = np.zeros(n_genres + 1, dtype=np.int64)
    np.cumsum(sizes, out=starts[1:])
    return starts


@njit(cache=True)
def _market_kernel(counts, prefs, coins, picks, genre_start, affinity, bias, artists_out):
    n_artists = genre_start[-1]
    log2n = 0
    while (1 << (log2n + 1)) <= n_artists:
        log2n += 1
    tree = np.zeros(n_artists + 1, dtype=np.float64)
    cur_w = np.ones(n_artists, dtype=np.float64)
    deg = np.zeros(n_artists, dtype=np.int64)
    for a in range(n_artists):
        _fenwick_add(tree, a, 1.0)
    j = 0
    for f in range(counts.size):
        pref = prefs[f]
        for _ in range(counts[f]):
            if coins[j] < affinity:
                lo = genre_start[pref]
                hi = genre_start[pref + 1]
            else:
                lo = 0
                hi = n_artists
            plo = _fenwick_prefix(tree, lo)
            phi = _fenwick_prefix(tree, hi)
            target = plo + picks[j] * (phi - plo)
            a = _fenwick_search(tree, target, log2n)
            if a < lo:
                a = lo
            elif a >= hi:
                a = hi - 1
            artists_out[j] = a
            deg[a] += 1
            new_w = (deg[a] + 1.0) ** bias
            _fenwick_add(tree, a, new_w - cur_w[a])
            cur_w[a] = new_w
            j += 1
    return j


def gen_market(cfg: MarketGenConfig) -> tuple[BipartiteGraph, np.ndarray]:
    """Generate a fan-artist membership graph with tunable rich-get-richer
    concentration and genre structure.

    Per fan: a membership count of max(1, Poisson(memberships_per_fan)) and a
    preferred genre drawn with probability proportional to
    (genre id + 1) ** -genre_skew (uniform at skew 0). Per membership: with
    probability genre_affinity the artist is drawn from the fan's genre
    block, otherwise from all artists; the draw weights are
    (current degree + 1) ** attachment_bias, updated after every pick
    (duplicate picks collapse in the returned graph). Philox draw order:
    membership counts, genre preferences, per-membership affinity coins,
    per-membership picks.

    Returns the graph and the per-artist genre assignment.
    """
    rng = np.random.Generator(np.random.Philox(key=np.uint64(cfg.seed)))
    counts = rng.poisson(cfg.memberships_per_fan, cfg.n_fans).astype(np.int64)
    np.maximum(counts, 1, out=counts)
    if cfg.genre_skew > 0:
        gw = (np.arange(1, cfg.n_genres + 1, dtype=np.float64)) ** (-cfg.genre_skew)
        gcdf = np.cumsum(gw / gw.sum())
        prefs = np.searchsorted(gcdf, rng.random(cfg.n_fans), side="right").astype(np.int64)
        np.minimum(prefs, cfg.n_genres - 1, out=prefs)
    else:
        prefs = rng.integers(0, cfg.n_genres, cfg.n_fans, dtype=np.int64)
    total = int(counts.sum())
    coins = rng.random(total)
    picks = rng.random(total)

    genre_start = _split_genres(cfg.n_artists, cfg.n_genres)
    artists = np.empty(total, dtype=np.int64)
    _market_kernel(
        counts,
        prefs,
        coins,
        picks,
        genre_start,
        float(cfg.genre_affinity),
        float(cfg.attachment_bias),
        artists,
    )
    fans = np.repeat(np.arange(cfg.n_fans, dtype=np.int64), counts)
    edges = np.stack([fans, artists], axis=1)
    graph = build_bipartite(edges, n_left=cfg.n_fans, n_right=cfg.n_artists)

    genres = np.empty(cfg.n_artists, dtype=np.int64)
    for gid in range(cfg.n_genres):
        genres[genre_start[gid] : genre_start[gid + 1]] = gid
    return graph, genres


def gen_planted(cfg: PlantedConfig) -> tuple[WeightedGraph, Partition]:
    """Unit-weight planted-partition graph plus its ground-truth blocks.

    Upper-triangle pairs are visited in row-major order with one uniform
    draw each (Philox, keyed by seed); a pair becomes an edge when the draw
    falls below p_in (same block) or p_out (different blocks).
    """
    sizes = np.asarray(cfg.block_sizes, dtype=np.int64)
    n = int(sizes.sum())
    blocks = np.repeat(np.arange(sizes.size, dtype=np.int64), sizes)
    iu, iv = np.triu_indices(n, k=1)
    prob = np.where(blocks[iu] == blocks[iv], cfg.p_in, cfg.p_out)
    rng = np.random.Generator(np.random.Philox(key=np.uint64(cfg.seed)))
    keep = rng.random(iu.size) < prob
    u, v = iu[keep].astype(np.int64), iv[keep].astype(np.int64)
    if u.size:
        graph = build_weighted((u, v, np.ones(u.size)), n=n)
    else:
        graph = build_weighted([], n=n)
    return graph, Partition(blocks)
