"""End-to-end analysis: membership file -> projections -> communities ->
ranking -> diagnostics -> report document, series files and figures.

Everything is deterministic under a fixed config; the resolved manifest is
embedded in the report so a run can be reproduced byte-for-byte.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, replace
from typing import Any

import numpy as np

from . import __version__
from .community import LouvainConfig, louvain, relabel_by_size
from .errors import ConfigError, FangraphError
from .figures import community_sizes_figure, degree_figure, rank_profile_figure
from .graphml import write_graphml
from .graphs import Partition, WeightedGraph
from .ingest import read_bipartite_edges, read_genre_map
from .projection import ProjectionConfig, project
from .ranking import RankConfig, pagerank, percentile_partition
from .report import SegmentationReport, write_report, write_series
from .stats import (
    community_sizes,
    degree_histogram,
    dominance_metrics,
    fit_power_law,
    genre_purity,
    partition_concordance,
    top_items_per_community,
)

__all__ = ["AnalyzeConfig", "run_analyze"]


@dataclass(frozen=True)
class AnalyzeConfig:
    fan_min_weight: int = 3
    artist_min_weight: int = 2
    fan_pivot_cap: int = 0
    artist_pivot_cap: int = 0
    resolution: float = 1.0
    fan_resolution: float | None = None  # None = use `resolution`
    artist_resolution: float | None = None
    damping: float = 0.85
    top_k: int = 10
    rank_band_fractions: Any = "auto"  # "auto" = artist community shares, ascending
    seed: int = 0
    figures: bool = True
    graphml: bool = False

    def __post_init__(self):
        if self.top_k < 1:
            raise ConfigError("top_k must be >= 1")
        fr = self.rank_band_fractions
        if fr != "auto":
            fr = tuple(float(f) for f in fr)
            if not fr or any(f <= 0 for f in fr) or abs(sum(fr) - 1.0) > 1e-9:
                raise ConfigError("rank_band_fractions must be positive and sum to 1")
            object.__setattr__(self, "rank_band_fractions", fr)

    @classmethod
    def from_file(cls, path: str, **overrides) -> "AnalyzeConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"bad config file {path}: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"bad config file {path}: expected an object")
        raw.pop("schema_version", None)
        known = set(cls.__dataclass_fields__)
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            cfg = cls(**raw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None
        return replace(cfg, **overrides) if overrides else cfg


def _loglog_series(hist):
    rows = [(int(k), int(c)) for k, c in zip(hist.degrees, hist.counts)]
    logrows = [(float(lo), float(hi), int(c)) for lo, hi, c in hist.log_bins]
    return rows, logrows


def _active_subgraph(g: WeightedGraph) -> tuple[WeightedGraph, np.ndarray]:
    """Induced subgraph on vertices with at least one edge.

    Community and ranking analyses run on this active part; vertices pruned
    to isolation by the weight threshold are reported separately instead of
    appearing as singleton communities and tied rank-band filler.
    """
    deg = np.diff(g.offsets)
    active = np.flatnonzero(deg > 0)
    if active.size == g.n:
        return g, active
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[active] = np.arange(active.size, dtype=np.int64)
    offsets = np.zeros(active.size + 1, dtype=np.int64)
    np.cumsum(deg[active], out=offsets[1:])
    sub = WeightedGraph(int(active.size), offsets, remap[g.neighbors], g.weights.copy())
    return sub, active


def _lift_partition(active_part: Partition, active: np.ndarray, n_full: int) -> Partition:
    """Extend an active-subgraph partition to all vertices; isolated vertices
    become trailing singleton communities, preserving the active ids."""
    full = np.full(n_full, -1, dtype=np.int64)
    full[active] = active_part.assignment
    isolated = np.flatnonzero(full < 0)
    full[isolated] = active_part.k + np.arange(isolated.size, dtype=np.int64)
    return Partition(full)


def _auto_fractions(partition: Partition) -> list[float]:
    sizes = np.sort(partition.sizes())  # ascending: smallest community = top band
    return [float(s) / float(len(partition)) for s in sizes]


def run_analyze(
    in_path: str,
    out_dir: str,
    cfg: AnalyzeConfig,
    genres_path: str | None = None,
    delimiter: str = "\t",
    threads: int = 1,
) -> SegmentationReport:
    written: list[str] = []
    try:
        return _run_analyze(in_path, out_dir, cfg, genres_path, delimiter, threads, written)
    except BaseException:
        for path in written:
            try:
                os.unlink(path)
            except OSError:
                pass
        raise


def _run_analyze(in_path, out_dir, cfg, genres_path, delimiter, threads, written):
    with open(in_path, encoding="utf-8") as fh:
        bip, fans, artists = read_bipartite_edges(fh, delimiter)
    if bip.edge_count == 0:
        raise FangraphError(f"empty input graph: {in_path}")

    genres = None
    if genres_path is not None:
        with open(genres_path, encoding="utf-8") as fh:
            gmap = read_genre_map(fh, delimiter)
        genres = np.zeros(bip.n_right, dtype=np.int64)
        for a in range(bip.n_right):
            genres[a] = gmap.get(artists.label(a), 0)

    os.makedirs(out_dir, exist_ok=True)
    report = SegmentationReport()
    report.manifest = {
        "subcommand": "analyze",
        "toolkit_version": __version__,
        "input": in_path,
        "genres": genres_path,
        "out_dir": out_dir,
        "delimiter": delimiter,
        "threads": int(threads),
        "parameters": _jsonable(asdict(cfg)),
    }
    report.graph = {
        "n_fans": bip.n_left,
        "n_artists": bip.n_right,
        "memberships": bip.edge_count,
    }

    def emit_series(name, header, rows):
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            write_series(fh, header, rows)
        written.append(path)
        report.series[name.removesuffix(".tsv")] = name

    def emit_figure(name, render):
        path = os.path.join(out_dir, name)
        render(path)
        written.append(path)
        report.figures[name.removesuffix(".png")] = name

    # degree distributions and the popularity-side power-law fit
    hist_left = degree_histogram(bip, "left")
    hist_right = degree_histogram(bip, "right")
    fit = None
    right_deg = bip.right_degrees()
    try:
        fit = fit_power_law(right_deg[right_deg > 0], kmin="auto")
        report.powerlaw = {
            "alpha": fit.alpha,
            "kmin": fit.kmin,
            "ks": fit.ks_statistic,
            "n_tail": fit.n_tail,
            "side": "artist",
        }
    except FangraphError as exc:
        report.powerlaw = {"error": str(exc)}
    for hist, name in ((hist_left, "degree_hist_fan"), (hist_right, "degree_hist_artist")):
        rows, logrows = _loglog_series(hist)
        emit_series(f"{name}.tsv", ["degree", "count"], rows)
        emit_series(f"{name}_logbin.tsv", ["bin_lo", "bin_hi", "count"], logrows)

    # fan side: co-membership communities and their composition
    fan_graph = project(
        bip, ProjectionConfig("left", cfg.fan_min_weight, cfg.fan_pivot_cap)
    )
    fan_isolated = int((fan_graph.count_degrees() == 0).sum())
    report.fan_projection = {
        "n": fan_graph.n,
        "edges": fan_graph.edge_count,
        "isolated": fan_isolated,
        "min_weight": cfg.fan_min_weight,
    }
    if fan_graph.edge_count:
        fan_active, fan_idx = _active_subgraph(fan_graph)
        fan_gamma = cfg.fan_resolution if cfg.fan_resolution is not None else cfg.resolution
        res = louvain(fan_active, LouvainConfig(resolution=fan_gamma, seed=cfg.seed))
        fan_part = relabel_by_size(res.partition)
        fan_full = _lift_partition(fan_part, fan_idx, fan_graph.n)
        report.fan_projection["active"] = fan_active.n
        report.fan_projection["communities"] = fan_part.k
        report.fan_projection["modularity"] = res.modularity
        report.fan_projection["levels"] = res.levels
        sizes = community_sizes(fan_part)
        emit_series("community_sizes_fan.tsv", ["community", "size"], sizes)
        tables = top_items_per_community(
            bip, fan_full, k=None, labels=artists.labels()
        )
        purity = genre_purity(bip, fan_full, genres) if genres is not None else {}
        for cid, size in sizes:
            table = tables[cid]
            entry: dict[str, Any] = {
                "id": cid,
                "size": size,
                "top_items": [
                    [lab, int(v) if v == int(v) else v]
                    for lab, v in table.rows[: cfg.top_k]
                ],
            }
            if len(table):
                dom = dominance_metrics(table)
                entry["dominance"] = {
                    "top1_share": dom.top1_share,
                    "top1_over_top10": dom.top1_over_top10,
                    "gini": dom.gini,
                }
            else:
                entry["dominance"] = None
            if cid in purity:
                entry["genre_purity"], entry["top_genre"] = purity[cid]
            report.communities.append(entry)
        if cfg.figures:
            emit_figure(
                "community_sizes_fan.png",
                lambda p: community_sizes_figure(sizes, p, "fan community sizes"),
            )

    # artist side: popularity ranking vs community structure
    artist_graph = project(
        bip, ProjectionConfig("right", cfg.artist_min_weight, cfg.artist_pivot_cap)
    )
    report.artist_projection = {
        "n": artist_graph.n,
        "edges": artist_graph.edge_count,
        "isolated": int((artist_graph.count_degrees() == 0).sum()),
        "min_weight": cfg.artist_min_weight,
    }
    if artist_graph.edge_count:
        art_active, art_idx = _active_subgraph(artist_graph)
        art_gamma = (
            cfg.artist_resolution if cfg.artist_resolution is not None else cfg.resolution
        )
        res_a = louvain(
            art_active, LouvainConfig(resolution=art_gamma, seed=cfg.seed)
        )
        artist_part = relabel_by_size(res_a.partition)
        report.artist_projection["active"] = art_active.n
        report.artist_projection["communities"] = artist_part.k
        report.artist_projection["modularity"] = res_a.modularity
        report.artist_projection["levels"] = res_a.levels
        emit_series(
            "community_sizes_artist.tsv", ["community", "size"], community_sizes(artist_part)
        )

        ranks = pagerank(art_active, RankConfig(damping=cfg.damping))
        report.ranking = {
            "damping": cfg.damping,
            "iterations": ranks.iterations_used,
            "converged": ranks.converged,
        }
        order = np.argsort(-ranks.scores, kind="stable")
        emit_series(
            "pagerank_artist.tsv",
            ["artist", "score"],
            (
                (artists.label(int(art_idx[v])), float(ranks.scores[v]))
                for v in order
            ),
        )

        fractions = (
            _auto_fractions(artist_part)
            if cfg.rank_band_fractions == "auto"
            else list(cfg.rank_band_fractions)
        )
        try:
            bands = percentile_partition(ranks, fractions)
            conc = partition_concordance(artist_part, bands)
            report.concordance = {
                "agreement": conc.agreement,
                "nmi": conc.nmi,
                "bands": fractions,
                "band_sizes": [int(s) for s in bands.sizes()],
            }
        except FangraphError as exc:
            report.concordance = {"error": str(exc), "bands": fractions}

        if cfg.figures:
            emit_figure(
                "pagerank_artist.png",
                lambda p: rank_profile_figure(ranks.scores, p, "artist rank profile"),
            )
        if cfg.graphml:
            path = os.path.join(out_dir, "artist_projection.graphml")
            with open(path, "wb") as fh:
                write_graphml(
                    artist_graph,
                    artists,
                    _lift_partition(artist_part, art_idx, artist_graph.n),
                    fh,
                )
            written.append(path)
            report.artist_projection["graphml"] = "artist_projection.graphml"

    if cfg.figures:
        emit_figure(
            "degree_hist_fan.png",
            lambda p: degree_figure(hist_left, p, "memberships per fan"),
        )
        emit_figure(
            "degree_hist_artist.png",
            lambda p: degree_figure(hist_right, p, "fans per artist", fit=fit),
        )

    report_path = os.path.join(out_dir, "report.json")
    with open(report_path, "w", encoding="utf-8") as fh:
        write_report(report, fh)
    written.append(report_path)
    return report


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj
