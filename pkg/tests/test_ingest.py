import io

import networkx as nx
import numpy as np
import pytest

from fangraph.errors import ParseError
from fangraph.graphml import write_graphml
from fangraph.graphs import Partition, build_weighted
from fangraph.ingest import (
    IdInterner,
    read_bipartite_edges,
    read_genre_map,
    read_weighted_edges,
    write_weighted_edges,
)

from oracles import graph_edge_dict


class TestBipartiteReader:
    def test_basic(self):
        b, left, right = read_bipartite_edges(io.StringIO("f1\ta1\nf2\ta1\n"))
        assert (b.n_left, b.n_right, b.edge_count) == (2, 1, 2)
        assert left.labels() == ["f1", "f2"]
        assert right.labels() == ["a1"]

    def test_comments_and_blanks_skipped(self):
        b, _, _ = read_bipartite_edges(io.StringIO("f1\ta1\n# comment\n\nf1\ta2\n"))
        assert b.edge_count == 2

    def test_malformed_line_number(self):
        with pytest.raises(ParseError, match="line 1"):
            read_bipartite_edges(io.StringIO("f1\n"))

    def test_empty_stream(self):
        b, left, right = read_bipartite_edges(io.StringIO(""))
        assert b.edge_count == 0 and len(left) == 0

    def test_custom_delimiter(self):
        b, _, _ = read_bipartite_edges(io.StringIO("f1,a1\n"), delimiter=",")
        assert b.edge_count == 1

    def test_utf8_labels(self):
        b, _, right = read_bipartite_edges(io.StringIO("甲\t乐队A\n乙\t乐队A\n"))
        assert right.labels() == ["乐队A"]
        assert b.edge_count == 2


class TestWeightedReader:
    def test_explicit_weight(self):
        g, _ = read_weighted_edges(io.StringIO("a\tb\t3\n"))
        assert graph_edge_dict(g) == {(0, 1): 3.0}

    def test_default_weight(self):
        g, _ = read_weighted_edges(io.StringIO("a\tb\n"))
        assert graph_edge_dict(g) == {(0, 1): 1.0}

    def test_self_loop_line_number(self):
        with pytest.raises(ParseError, match="line 1"):
            read_weighted_edges(io.StringIO("a\ta\t1\n"))

    def test_nonpositive_weight(self):
        with pytest.raises(ParseError, match="line 2"):
            read_weighted_edges(io.StringIO("a\tb\t1\nb\tc\t0\n"))

    def test_bad_weight_text(self):
        with pytest.raises(ParseError, match="weight"):
            read_weighted_edges(io.StringIO("a\tb\tlots\n"))

    def test_parse_serialize_roundtrip(self):
        src = "a\tb\t3\nb\tc\t1.5\na\tc\n"
        g1, interner = read_weighted_edges(io.StringIO(src))
        out = io.StringIO()
        write_weighted_edges(g1, interner, out)
        g2, _ = read_weighted_edges(io.StringIO(out.getvalue()))
        assert graph_edge_dict(g1) == graph_edge_dict(g2)


class TestInterner:
    def test_first_appearance_order(self):
        it = IdInterner()
        assert [it.intern(x) for x in ["b", "a", "b", "c"]] == [0, 1, 0, 2]
        assert it.labels() == ["b", "a", "c"]

    def test_determinism(self):
        data = "x\ty\nz\ty\nx\tw\n"
        _, l1, r1 = read_bipartite_edges(io.StringIO(data))
        _, l2, r2 = read_bipartite_edges(io.StringIO(data))
        assert l1.labels() == l2.labels() and r1.labels() == r2.labels()


def test_genre_map():
    genres = read_genre_map(io.StringIO("a\t0\nb\t2\n"))
    assert genres == {"a": 0, "b": 2}
    with pytest.raises(ParseError):
        read_genre_map(io.StringIO("a\tzero\n"))


class TestGraphML:
    def test_roundtrip_via_external_reader(self):
        g = build_weighted([(0, 1, 2.5), (1, 2, 1.0), (0, 2, 4.0)])
        interner = IdInterner.from_labels(["x", "y", "z"])
        buf = io.BytesIO()
        write_graphml(g, interner, Partition(np.array([0, 0, 1])), buf)
        buf.seek(0)
        h = nx.read_graphml(buf)
        assert sorted(h.nodes) == ["x", "y", "z"]
        assert h.nodes["z"]["community"] == 1
        got = {tuple(sorted(e)): d["weight"] for *e, d in h.edges(data=True)}
        assert got == {("x", "y"): 2.5, ("y", "z"): 1.0, ("x", "z"): 4.0}

    def test_partition_must_cover(self):
        g = build_weighted([(0, 1, 1.0)])
        with pytest.raises(Exception):
            write_graphml(g, None, Partition(np.array([0])), io.BytesIO())

    def test_without_partition(self):
        g = build_weighted([(0, 1, 1.0)])
        buf = io.BytesIO()
        write_graphml(g, None, None, buf)
        buf.seek(0)
        h = nx.read_graphml(buf)
        assert len(h.nodes) == 2 and len(h.edges) == 1
