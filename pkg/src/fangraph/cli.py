"""Command-line front door.

Subcommands: synth, project, communities, pagerank, degrees, analyze.
Exit codes: 0 success, 1 I/O or data error, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .community import LouvainConfig, louvain, relabel_by_size
from .errors import ConfigError, FangraphError, ParseError
from .graphml import write_graphml
from .ingest import (
    read_bipartite_edges,
    read_weighted_edges,
    write_bipartite_edges,
    write_genre_map,
    write_partition,
    write_scores,
    write_weighted_edges,
)
from .pipeline import AnalyzeConfig, run_analyze
from .projection import ProjectionConfig, project
from .ranking import RankConfig, pagerank
from .stats import degree_histogram, fit_power_law
from .synth import MarketGenConfig, gen_market


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("FANGRAPH_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fangraph",
        description="Fan-artist network analytics: projections, communities, "
        "popularity ranking and segmentability diagnostics.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument(
        "--threads",
        type=int,
        default=_default_threads(),
        help="worker budget (reserved; analysis engines run deterministic single-thread)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic fan-artist market")
    p.add_argument("--fans", type=int, required=True)
    p.add_argument("--artists", type=int, required=True)
    p.add_argument("--memberships", type=int, default=5, help="mean memberships per fan")
    p.add_argument("--bias", type=float, default=1.0, help="rich-get-richer exponent")
    p.add_argument("--genres", type=int, default=1)
    p.add_argument("--affinity", type=float, default=0.0, help="within-genre probability")
    p.add_argument("--genre-skew", type=float, default=0.0, help="heavy-tailed genre popularity (0 = uniform)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="bipartite edge file to write")
    p.add_argument("--genre-out", default=None, help="genre map path (default <out>.genres)")
    p.add_argument("--delimiter", default="\t")

    p = sub.add_parser("project", help="one-mode projection of a membership file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--min-weight", type=int, default=1)
    p.add_argument("--pivot-cap", type=int, default=0, help="skip pivots above this degree (0 = exact)")
    p.add_argument("--out", required=True, help="weighted edge file to write")
    p.add_argument("--delimiter", default="\t")

    p = sub.add_parser("communities", help="Louvain communities of a weighted edge file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--min-gain", type=float, default=1e-9)
    p.add_argument("--max-passes", type=int, default=100)
    p.add_argument("--shuffle", action="store_true", help="seeded sweep order instead of ascending ids")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="vertex,community file to write")
    p.add_argument("--graphml", default=None, help="also export GraphML with communities")
    p.add_argument("--delimiter", default="\t")

    p = sub.add_parser("pagerank", help="weighted PageRank of a weighted edge file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--out", required=True, help="vertex,score file to write")
    p.add_argument("--delimiter", default="\t")

    p = sub.add_parser("degrees", help="degree histogram of one side of a membership file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--side", choices=["left", "right"], default="right")
    p.add_argument("--out", required=True, help="degree,count file to write")
    p.add_argument("--logbin-out", default=None)
    p.add_argument("--fit", action="store_true", help="print a discrete power-law fit")
    p.add_argument("--delimiter", default="\t")

    p = sub.add_parser("analyze", help="full segmentability analysis of a membership file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--config", default=None, help="JSON config; flags override file values")
    p.add_argument("--genres", dest="genres_file", default=None, help="artist genre map for purity stats")
    p.add_argument("--fan-min-weight", type=int, default=None)
    p.add_argument("--artist-min-weight", type=int, default=None)
    p.add_argument("--fan-pivot-cap", type=int, default=None)
    p.add_argument("--artist-pivot-cap", type=int, default=None)
    p.add_argument("--resolution", type=float, default=None)
    p.add_argument("--damping", type=float, default=None)
    p.add_argument("--top-k", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-figures", action="store_true")
    p.add_argument("--graphml", action="store_true")
    p.add_argument("--delimiter", default="\t")
    return ap


def _cmd_synth(args) -> int:
    try:
        cfg = MarketGenConfig(
            n_fans=args.fans,
            n_artists=args.artists,
            memberships_per_fan=args.memberships,
            attachment_bias=args.bias,
            n_genres=args.genres,
            genre_affinity=args.affinity,
            genre_skew=args.genre_skew,
            seed=args.seed,
        )
    except FangraphError as exc:
        raise ConfigError(str(exc)) from None
    graph, genres = gen_market(cfg)
    with open(args.out, "w", encoding="utf-8") as fh:
        write_bipartite_edges(graph, None, None, fh, args.delimiter)
    genre_out = args.genre_out or args.out + ".genres"
    with open(genre_out, "w", encoding="utf-8") as fh:
        write_genre_map(genres, None, fh, args.delimiter)
    print(f"fans={graph.n_left} artists={graph.n_right} memberships={graph.edge_count}")
    print(f"wrote {args.out} and {genre_out}")
    return 0


def _cmd_project(args) -> int:
    try:
        cfg = ProjectionConfig(args.side, args.min_weight, args.pivot_cap)
    except FangraphError as exc:
        raise ConfigError(str(exc)) from None
    with open(args.infile, encoding="utf-8") as fh:
        bip, left, right = read_bipartite_edges(fh, args.delimiter)
    g = project(bip, cfg)
    interner = left if args.side == "left" else right
    with open(args.out, "w", encoding="utf-8") as fh:
        write_weighted_edges(g, interner, fh, args.delimiter)
    isolated = int((g.count_degrees() == 0).sum())
    print(f"vertices={g.n} edges={g.edge_count} isolated={isolated}")
    return 0


def _cmd_communities(args) -> int:
    try:
        cfg = LouvainConfig(
            resolution=args.resolution,
            min_gain=args.min_gain,
            max_passes=args.max_passes,
            seed=args.seed,
            ordered=not args.shuffle,
        )
    except FangraphError as exc:
        raise ConfigError(str(exc)) from None
    with open(args.infile, encoding="utf-8") as fh:
        g, interner = read_weighted_edges(fh, args.delimiter)
    result = louvain(g, cfg)
    part = relabel_by_size(result.partition)
    with open(args.out, "w", encoding="utf-8") as fh:
        write_partition(part, interner, fh, args.delimiter)
    if args.graphml:
        with open(args.graphml, "wb") as fh:
            write_graphml(g, interner, part, fh)
    print(f"communities={part.k} modularity={result.modularity:.6f} levels={result.levels}")
    return 0


def _cmd_pagerank(args) -> int:
    try:
        cfg = RankConfig(args.damping, args.tolerance, args.max_iter)
    except FangraphError as exc:
        raise ConfigError(str(exc)) from None
    with open(args.infile, encoding="utf-8") as fh:
        g, interner = read_weighted_edges(fh, args.delimiter)
    ranks = pagerank(g, cfg)
    with open(args.out, "w", encoding="utf-8") as fh:
        write_scores(ranks.scores, interner, fh, args.delimiter)
    print(f"iterations={ranks.iterations_used} converged={ranks.converged}")
    return 0


def _cmd_degrees(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        bip, _, _ = read_bipartite_edges(fh, args.delimiter)
    hist = degree_histogram(bip, args.side)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("# degree\tcount\n")
        for k, c in zip(hist.degrees, hist.counts):
            fh.write(f"{int(k)}\t{int(c)}\n")
    if args.logbin_out:
        with open(args.logbin_out, "w", encoding="utf-8") as fh:
            fh.write("# bin_lo\tbin_hi\tcount\n")
            for lo, hi, c in hist.log_bins:
                fh.write(f"{int(lo)}\t{int(hi)}\t{int(c)}\n")
    print(f"side={args.side} nonzero={int(hist.counts.sum())} zero={hist.zero_count}")
    if args.fit:
        values = [int(k) for k, c in zip(hist.degrees, hist.counts) for _ in range(int(c))]
        fit = fit_power_law(values, kmin="auto")
        print(
            f"powerlaw alpha={fit.alpha:.4f} kmin={fit.kmin} "
            f"ks={fit.ks_statistic:.4f} n_tail={fit.n_tail}"
        )
    return 0


def _cmd_analyze(args) -> int:
    overrides = {}
    for field, attr in [
        ("fan_min_weight", "fan_min_weight"),
        ("artist_min_weight", "artist_min_weight"),
        ("fan_pivot_cap", "fan_pivot_cap"),
        ("artist_pivot_cap", "artist_pivot_cap"),
        ("resolution", "resolution"),
        ("damping", "damping"),
        ("top_k", "top_k"),
        ("seed", "seed"),
    ]:
        value = getattr(args, attr)
        if value is not None:
            overrides[field] = value
    if args.no_figures:
        overrides["figures"] = False
    if args.graphml:
        overrides["graphml"] = True
    if args.config is not None:
        cfg = AnalyzeConfig.from_file(args.config, **overrides)
    else:
        cfg = AnalyzeConfig(**overrides)
    report = run_analyze(
        args.infile,
        args.out_dir,
        cfg,
        genres_path=args.genres_file,
        delimiter=args.delimiter,
        threads=args.threads,
    )
    g = report.graph
    print(f"fans={g['n_fans']} artists={g['n_artists']} memberships={g['memberships']}")
    fp = report.fan_projection
    print(f"fan projection: n={fp['n']} edges={fp['edges']} isolated={fp['isolated']}")
    if "communities" in fp:
        print(f"fan communities: {fp['communities']} (modularity {fp['modularity']:.4f})")
    conc = report.concordance
    if "agreement" in conc:
        print(f"concordance: agreement={conc['agreement']:.4f} nmi={conc['nmi']:.4f}")
    print(f"report: {os.path.join(args.out_dir, 'report.json')}")
    return 0


_DISPATCH = {
    "synth": _cmd_synth,
    "project": _cmd_project,
    "communities": _cmd_communities,
    "pagerank": _cmd_pagerank,
    "degrees": _cmd_degrees,
    "analyze": _cmd_analyze,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return _DISPATCH[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, FangraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
