"""Graph analytics for fan-artist membership networks: one-mode projections,
Louvain communities, weighted PageRank, power-law tails, and diagnostics for
how strongly community structure tracks raw popularity."""

__version__ = "0.1.0"

from .graphs import BipartiteGraph, Partition, WeightedGraph, build_bipartite, build_weighted
from .projection import ProjectionConfig, project
from .community import LouvainConfig, LouvainResult, louvain, modularity, relabel_by_size
from .ranking import RankConfig, RankVector, pagerank, percentile_partition
from .stats import (
    ConcordanceResult,
    DegreeHistogram,
    DominanceMetrics,
    LabeledTable,
    PowerLawFit,
    community_sizes,
    degree_histogram,
    dominance_metrics,
    fit_power_law,
    partition_concordance,
    top_items_per_community,
)
from .synth import MarketGenConfig, PlantedConfig, gen_market, gen_planted

__all__ = [
    "__version__",
    "BipartiteGraph",
    "WeightedGraph",
    "Partition",
    "build_bipartite",
    "build_weighted",
    "ProjectionConfig",
    "project",
    "LouvainConfig",
    "LouvainResult",
    "louvain",
    "modularity",
    "relabel_by_size",
    "RankConfig",
    "RankVector",
    "pagerank",
    "percentile_partition",
    "DegreeHistogram",
    "PowerLawFit",
    "LabeledTable",
    "DominanceMetrics",
    "ConcordanceResult",
    "degree_histogram",
    "fit_power_law",
    "community_sizes",
    "top_items_per_community",
    "dominance_metrics",
    "partition_concordance",
    "MarketGenConfig",
    "PlantedConfig",
    "gen_market",
    "gen_planted",
]
