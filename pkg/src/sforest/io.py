"""Reading graphs and relations from text.

Graphs come either as JSON ``{"vertices": [...], "edges": [[a, b], ...]}`` or
as a plain edge list::

    vertices: x y z u
    x y
    y z
"""

from __future__ import annotations

import json
from pathlib import Path

from .graphs import Graph, graph
from .relations import Relation


def parse_graph(text: str) -> Graph:
    if text.lstrip().startswith("{"):
        return Graph.from_json(json.loads(text))
    vertices = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            vertices = line[len("vertices:"):].split()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two endpoints, got {line!r}")
        edges.append(parts)
    if vertices is None:
        raise ValueError("edge list lacks a 'vertices:' line")
    return graph(vertices, edges)


def parse_relation(text: str) -> Relation:
    return Relation.from_json(json.loads(text))


def load_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def load_relation(path: str | Path) -> Relation:
    return parse_relation(Path(path).read_text())


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
