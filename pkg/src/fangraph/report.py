"""Segmentation report document and its delimited companion series.

The report is a single JSON document (schema_version "1") with sorted keys
and UTF-8 labels, so identical runs serialize byte-identically. Top-level
fields: schema_version, manifest, graph, communities, powerlaw,
concordance, plus the emitted series/figure paths.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Any

from .errors import FangraphError

__all__ = ["SCHEMA_VERSION", "SegmentationReport", "write_report", "write_series"]

SCHEMA_VERSION = "1"


@dataclass
class SegmentationReport:
    manifest: dict[str, Any] = field(default_factory=dict)
    graph: dict[str, Any] = field(default_factory=dict)
    fan_projection: dict[str, Any] = field(default_factory=dict)
    artist_projection: dict[str, Any] = field(default_factory=dict)
    communities: list[dict[str, Any]] = field(default_factory=list)
    powerlaw: dict[str, Any] = field(default_factory=dict)
    concordance: dict[str, Any] = field(default_factory=dict)
    ranking: dict[str, Any] = field(default_factory=dict)
    series: dict[str, str] = field(default_factory=dict)
    figures: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "manifest": self.manifest,
            "graph": self.graph,
            "fan_projection": self.fan_projection,
            "artist_projection": self.artist_projection,
            "communities": self.communities,
            "powerlaw": self.powerlaw,
            "concordance": self.concordance,
            "ranking": self.ranking,
            "series": self.series,
            "figures": self.figures,
        }


def write_report(report: SegmentationReport, stream: IO[str]) -> None:
    """Serialize the report; communities must already be size-descending."""
    doc = report.to_dict()
    sizes = [c.get("size", 0) for c in doc["communities"]]
    if any(a < b for a, b in zip(sizes, sizes[1:])):
        raise FangraphError("community entries must be ordered by descending size")
    json.dump(doc, stream, indent=2, sort_keys=True, ensure_ascii=False)
    stream.write("\n")


def write_series(stream: IO[str], header: list[str], rows) -> None:
    """Tab-delimited series file with a `#`-prefixed header line."""
    stream.write("# " + "\t".join(header) + "\n")
    for row in rows:
        stream.write("\t".join(_fmt(x) for x in row) + "\n")


def _fmt(x) -> str:
    if isinstance(x, float):
        return str(int(x)) if x == int(x) else repr(x)
    return str(x)
