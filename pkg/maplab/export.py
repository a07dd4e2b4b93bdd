"""DOT and CSV output for maps, slices and tallies."""
from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Dict, Iterable, Optional

import networkx as nx

from maplab.combinatorial_map import CombinatorialMap
from maplab.dividing_line import DividingLine
from maplab.slices import SliceView
from maplab.tally import TallyRow

logger = logging.getLogger(__name__)

TALLY_COLUMNS = ("n", "k", "count", "series_coefficient", "match")


def map_to_dot(m: CombinatorialMap, distances: Optional[Dict[int, int]] = None,
               highlight: Iterable[int] = (), name: str = "map") -> str:
    """DOT text for ``m``; vertices labelled by distance, ``highlight`` edge keys in red."""
    if distances is None and m.pointed is not None:
        distances = m.pointed_distances()
    marked = set(highlight)
    G = nx.MultiGraph(name=name)
    for v in range(m.vertex_count):
        attrs = {"label": str(distances[v]) if distances else str(v)}
        if v == m.pointed_vertex:
            attrs["shape"] = "doublecircle"
        elif v == m.root_vertex:
            attrs["shape"] = "box"
        G.add_node(v, **attrs)
    root_key = m.edge_key(m.root)
    for d in range(m.dart_count):
        if d > m.alpha[d]:
            continue
        attrs = {}
        if d in marked:
            attrs["color"] = "red"
            attrs["penwidth"] = "2"
        if d == root_key:
            attrs["style"] = "bold"
        G.add_edge(m.origin(d), m.head(d), key=d, **attrs)
    return nx.nx_pydot.to_pydot(G).to_string()


def slice_to_dot(view: SliceView, line: Optional[DividingLine] = None, name: str = "slice") -> str:
    """A slice with apex distances, the dividing line highlighted when given."""
    keys = line.edge_keys(view) if line is not None else ()
    return map_to_dot(view.map, view.distances, keys, name)


def write_dot(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.debug("wrote %s", path)
    return path


def export_tally_csv(rows: Iterable[TallyRow], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=TALLY_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({
                "n": row.n,
                "k": row.k,
                "count": row.count,
                "series_coefficient": row.series_coefficient,
                "match": row.match,
            })
    return path
