"""Graph file parsing and serialization.

The canonical format is JSON:

    {"version": 1,
     "vertices": [{"id": "v1", "weight": -2}, ...],
     "edges": [["v1", "v2"], ...],
     "metadata": {"name": "...", "source": "..."}}

A compact text front-end is also accepted: lines of the form
``v <id> <weight>`` and ``e <a> <b>``, with ``#`` comments.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import ParseError
from .graph import ResolutionGraph, validate_graph


@dataclass(frozen=True)
class GraphDocument:
    version: int
    vertices: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str], ...]
    metadata: Mapping[str, str] | None = None


def _parse_json(text: str) -> GraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    version = data.get("version")
    if version != 1:
        raise ParseError(f"version: expected 1, got {version!r}")
    raw_vertices = data.get("vertices")
    if not isinstance(raw_vertices, list):
        raise ParseError("vertices: expected a list")
    vertices = []
    for i, entry in enumerate(raw_vertices):
        if not isinstance(entry, dict):
            raise ParseError(f"vertices[{i}]: expected an object")
        vid = entry.get("id")
        weight = entry.get("weight")
        if not isinstance(vid, str):
            raise ParseError(f"vertices[{i}].id: expected a string")
        if not isinstance(weight, int) or isinstance(weight, bool):
            raise ParseError(f"vertices[{i}].weight: expected an integer")
        vertices.append((vid, weight))
    raw_edges = data.get("edges")
    if not isinstance(raw_edges, list):
        raise ParseError("edges: expected a list")
    edges = []
    for i, entry in enumerate(raw_edges):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, str) for x in entry)
        ):
            raise ParseError(f"edges[{i}]: expected a pair of ids")
        edges.append((entry[0], entry[1]))
    metadata = data.get("metadata")
    if metadata is not None and not isinstance(metadata, dict):
        raise ParseError("metadata: expected an object")
    return GraphDocument(
        version=1,
        vertices=tuple(vertices),
        edges=tuple(edges),
        metadata=metadata,
    )


def _parse_text(text: str) -> GraphDocument:
    vertices: list[tuple[str, int]] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 3:
            try:
                vertices.append((parts[1], int(parts[2])))
            except ValueError:
                raise ParseError(f"line {lineno}: weight is not an integer") from None
        elif parts[0] == "e" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise ParseError(f"line {lineno}: expected 'v <id> <weight>' or 'e <a> <b>'")
    return GraphDocument(version=1, vertices=tuple(vertices), edges=tuple(edges))


def parse_document(text: str) -> GraphDocument:
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def load_document(path: str | Path) -> GraphDocument:
    return parse_document(Path(path).read_text())


def document_to_graph(doc: GraphDocument) -> ResolutionGraph:
    """Validated resolution graph; raises ValidationError when the document
    is not a weighted tree with negative weights."""
    g = ResolutionGraph.build(doc.vertices, doc.edges)
    validate_graph(g)
    return g


def graph_to_document(
    g: ResolutionGraph, metadata: Mapping[str, str] | None = None
) -> GraphDocument:
    return GraphDocument(
        version=1,
        vertices=tuple(zip(g.ids, g.weights)),
        edges=g.edges,
        metadata=metadata,
    )


def document_to_json(doc: GraphDocument) -> str:
    payload: dict = {
        "version": doc.version,
        "vertices": [{"id": v, "weight": w} for v, w in doc.vertices],
        "edges": [[a, b] for a, b in doc.edges],
    }
    if doc.metadata:
        payload["metadata"] = dict(doc.metadata)
    return json.dumps(payload, indent=2) + "\n"
