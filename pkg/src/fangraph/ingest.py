"""Flat-file ingestion: delimited edge lists, label interning, tabular output.

File conventions (UTF-8 throughout):
  * bipartite edge file: ``<fan-label><delim><artist-label>`` per line
  * weighted edge file:  ``<u><delim><v>[<delim><weight>]`` (weight defaults to 1)
  * genre map:           ``<artist-label><delim><genre-id>``
Blank lines and lines starting with ``#`` are skipped everywhere.
"""

from __future__ import annotations

from typing import IO, Iterable

import numpy as np

from .errors import ParseError
from .graphs import BipartiteGraph, Partition, WeightedGraph, build_bipartite, build_weighted

__all__ = [
    "IdInterner",
    "read_bipartite_edges",
    "read_weighted_edges",
    "read_genre_map",
    "write_bipartite_edges",
    "write_weighted_edges",
    "write_genre_map",
    "write_partition",
    "write_scores",
]


class IdInterner:
    """Bijective label <-> dense id map; ids assigned in first-appearance order."""

    def __init__(self):
        self._forward: dict[str, int] = {}
        self._reverse: list[str] = []

    def intern(self, label: str) -> int:
        i = self._forward.get(label)
        if i is None:
            i = len(self._reverse)
            self._forward[label] = i
            self._reverse.append(label)
        return i

    def label(self, i: int) -> str:
        return self._reverse[i]

    def labels(self) -> list[str]:
        return list(self._reverse)

    def __len__(self) -> int:
        return len(self._reverse)

    def __contains__(self, label: str) -> bool:
        return label in self._forward

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "IdInterner":
        it = cls()
        for lab in labels:
            it.intern(lab)
        return it


def _data_lines(stream: IO[str]):
    for ln, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line or line.startswith("#"):
            continue
        yield ln, line


def read_bipartite_edges(
    stream: IO[str], delimiter: str = "\t"
) -> tuple[BipartiteGraph, IdInterner, IdInterner]:
    """Parse a fan-artist membership file into a graph plus both interners."""
    left = IdInterner()
    right = IdInterner()
    us: list[int] = []
    vs: list[int] = []
    for ln, line in _data_lines(stream):
        fields = line.split(delimiter)
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", line=ln)
        us.append(left.intern(fields[0]))
        vs.append(right.intern(fields[1]))
    if not us:
        return build_bipartite([]), left, right
    edges = np.stack([np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)], axis=1)
    return build_bipartite(edges, n_left=len(left), n_right=len(right)), left, right


def read_weighted_edges(
    stream: IO[str], delimiter: str = "\t"
) -> tuple[WeightedGraph, IdInterner]:
    """Parse an undirected weighted edge file; duplicate edges sum weights."""
    interner = IdInterner()
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    for ln, line in _data_lines(stream):
        fields = line.split(delimiter)
        if len(fields) not in (2, 3):
            raise ParseError(f"expected 2 or 3 fields, got {len(fields)}", line=ln)
        if fields[0] == fields[1]:
            raise ParseError(f"self-loop on {fields[0]!r}", line=ln)
        if len(fields) == 3:
            try:
                w = float(fields[2])
            except ValueError:
                raise ParseError(f"bad weight {fields[2]!r}", line=ln) from None
            if not w > 0:
                raise ParseError(f"non-positive weight {w}", line=ln)
        else:
            w = 1.0
        us.append(interner.intern(fields[0]))
        vs.append(interner.intern(fields[1]))
        ws.append(w)
    if not us:
        return build_weighted([]), interner
    graph = build_weighted(
        (np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64), np.asarray(ws)),
        n=len(interner),
    )
    return graph, interner


def read_genre_map(stream: IO[str], delimiter: str = "\t") -> dict[str, int]:
    """Parse an artist-to-genre map file."""
    genres: dict[str, int] = {}
    for ln, line in _data_lines(stream):
        fields = line.split(delimiter)
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", line=ln)
        try:
            genres[fields[0]] = int(fields[1])
        except ValueError:
            raise ParseError(f"bad genre id {fields[1]!r}", line=ln) from None
    return genres


def write_bipartite_edges(
    b: BipartiteGraph,
    left: IdInterner | None,
    right: IdInterner | None,
    stream: IO[str],
    delimiter: str = "\t",
) -> None:
    lab_l = left.label if left is not None else str
    lab_r = right.label if right is not None else str
    for v in range(b.n_left):
        lv = lab_l(v)
        for a in b.neighbors[b.offsets[v] : b.offsets[v + 1]]:
            stream.write(f"{lv}{delimiter}{lab_r(int(a))}\n")


def _fmt_weight(w: float) -> str:
    return str(int(w)) if w == int(w) else repr(w)


def write_weighted_edges(
    g: WeightedGraph,
    interner: IdInterner | None,
    stream: IO[str],
    delimiter: str = "\t",
) -> None:
    """Write distinct undirected edges, one per line, integer weights unpadded."""
    lab = interner.label if interner is not None else str
    u, v, w = g.edge_list()
    for i in range(u.size):
        stream.write(
            f"{lab(int(u[i]))}{delimiter}{lab(int(v[i]))}{delimiter}{_fmt_weight(float(w[i]))}\n"
        )


def write_genre_map(
    genres, interner: IdInterner | None, stream: IO[str], delimiter: str = "\t"
) -> None:
    lab = interner.label if interner is not None else str
    for a, gid in enumerate(np.asarray(genres)):
        stream.write(f"{lab(int(a))}{delimiter}{int(gid)}\n")


def write_partition(
    p: Partition, interner: IdInterner | None, stream: IO[str], delimiter: str = "\t"
) -> None:
    lab = interner.label if interner is not None else str
    for v, c in enumerate(p.assignment):
        stream.write(f"{lab(int(v))}{delimiter}{int(c)}\n")


def write_scores(
    scores: np.ndarray, interner: IdInterner | None, stream: IO[str], delimiter: str = "\t"
) -> None:
    lab = interner.label if interner is not None else str
    for v, s in enumerate(np.asarray(scores)):
        stream.write(f"{lab(int(v))}{delimiter}{float(s)!r}\n")
