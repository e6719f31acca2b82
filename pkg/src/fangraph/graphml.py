"""GraphML export of weighted graphs, with an optional community attribute.

Nodes are written in dense id order; node ids are the interned labels when
an interner is supplied. Edge weights use the ``weight`` double key,
community assignments the ``community`` int key.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import IO

from .errors import FangraphError
from .graphs import Partition, WeightedGraph
from .ingest import IdInterner

__all__ = ["write_graphml"]

_NS = "http://graphml.graphdrawing.org/xmlns"


def write_graphml(
    g: WeightedGraph,
    interner: IdInterner | None = None,
    partition: Partition | None = None,
    stream: IO[bytes] | None = None,
) -> None:
    if stream is None:
        raise FangraphError("write_graphml requires a binary output stream")
    if partition is not None and len(partition) != g.n:
        raise FangraphError("partition does not cover the graph")
    lab = interner.label if interner is not None else str

    root = ET.Element("graphml", xmlns=_NS)
    ET.SubElement(
        root,
        "key",
        attrib={"id": "d_weight", "for": "edge", "attr.name": "weight", "attr.type": "double"},
    )
    if partition is not None:
        ET.SubElement(
            root,
            "key",
            attrib={"id": "d_community", "for": "node", "attr.name": "community", "attr.type": "int"},
        )
    graph_el = ET.SubElement(root, "graph", id="G", edgedefault="undirected")
    for v in range(g.n):
        node = ET.SubElement(graph_el, "node", id=lab(int(v)))
        if partition is not None:
            data = ET.SubElement(node, "data", key="d_community")
            data.text = str(int(partition.assignment[v]))
    u, v, w = g.edge_list()
    for i in range(u.size):
        edge = ET.SubElement(
            graph_el, "edge", source=lab(int(u[i])), target=lab(int(v[i]))
        )
        data = ET.SubElement(edge, "data", key="d_weight")
        data.text = repr(float(w[i]))

    tree = ET.ElementTree(root)
    ET.indent(tree)
    tree.write(stream, encoding="utf-8", xml_declaration=True)
    stream.write(b"\n")
