"""Resolution graphs: vertex-weighted trees of exceptional curves."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from . import linalg
from .errors import NotNegativeDefinite, UnknownEdge, UnknownVertex, ValidationError

VertexKind = str  # "leaf" | "string" | "node"


@dataclass(frozen=True)
class ResolutionGraph:
    """A tree whose vertices carry self-intersection weights.

    Vertex order is the insertion order of the input and fixes the row
    order of every derived matrix, so minors and Smith transforms are
    reproducible. Instances are immutable; all operations on them are
    pure functions.
    """

    ids: tuple[str, ...]
    weights: tuple[int, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if len(self.ids) != len(self.weights):
            raise ValidationError("ids and weights differ in length")
        if len(set(self.ids)) != len(self.ids):
            raise ValidationError("duplicate vertex id")
        known = set(self.ids)
        seen: set[frozenset[str]] = set()
        for a, b in self.edges:
            if a not in known or b not in known:
                raise ValidationError(f"edge ({a}, {b}) references unknown vertex")
            if a == b:
                raise ValidationError(f"self-loop at {a}")
            key = frozenset((a, b))
            if key in seen:
                raise ValidationError(f"duplicate edge ({a}, {b})")
            seen.add(key)

    @classmethod
    def build(
        cls,
        vertices: Iterable[tuple[str, int]],
        edges: Iterable[tuple[str, str]],
    ) -> "ResolutionGraph":
        vs = list(vertices)
        return cls(
            ids=tuple(v for v, _ in vs),
            weights=tuple(w for _, w in vs),
            edges=tuple((a, b) for a, b in edges),
        )

    @cached_property
    def index(self) -> Mapping[str, int]:
        return {v: i for i, v in enumerate(self.ids)}

    @cached_property
    def adjacency(self) -> Mapping[str, tuple[str, ...]]:
        nbrs: dict[str, list[str]] = {v: [] for v in self.ids}
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        order = self.index
        return {v: tuple(sorted(ns, key=order.__getitem__)) for v, ns in nbrs.items()}

    def weight_of(self, v: str) -> int:
        try:
            return self.weights[self.index[v]]
        except KeyError:
            raise UnknownVertex(v) from None

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def has_edge(self, a: str, b: str) -> bool:
        return b in self.adjacency.get(a, ())


def is_tree(g: ResolutionGraph) -> bool:
    n = len(g.ids)
    if n == 0 or len(g.edges) != n - 1:
        return False
    seen = {g.ids[0]}
    stack = [g.ids[0]]
    while stack:
        for w in g.adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def validate_graph(g: ResolutionGraph) -> None:
    """Raise ValidationError unless g is a tree with negative weights."""
    if not g.ids:
        raise ValidationError("graph has no vertices")
    if not is_tree(g):
        raise ValidationError("graph is not a tree")
    for v, w in zip(g.ids, g.weights):
        if w >= 0:
            raise ValidationError(f"vertex {v} has non-negative weight {w}")


def classify_vertices(g: ResolutionGraph) -> dict[str, VertexKind]:
    """leaf (valency <= 1), string (valency 2), node (valency >= 3)."""
    out: dict[str, VertexKind] = {}
    for v in g.ids:
        deg = g.degree(v)
        out[v] = "node" if deg >= 3 else ("string" if deg == 2 else "leaf")
    return out


def nodes_of(g: ResolutionGraph) -> tuple[str, ...]:
    return tuple(v for v in g.ids if g.degree(v) >= 3)


def leaves_of(g: ResolutionGraph) -> tuple[str, ...]:
    return tuple(v for v in g.ids if g.degree(v) <= 1)


def maximal_strings(g: ResolutionGraph) -> tuple[tuple[str, ...], ...]:
    """Connected components of the graph minus its nodes."""
    node_set = set(nodes_of(g))
    seen: set[str] = set()
    out: list[tuple[str, ...]] = []
    for v in g.ids:
        if v in node_set or v in seen:
            continue
        comp = [v]
        seen.add(v)
        stack = [v]
        while stack:
            for w in g.adjacency[stack.pop()]:
                if w not in node_set and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(tuple(comp))
    return tuple(out)


def is_quasi_minimal(g: ResolutionGraph) -> bool:
    """No string contains a (-1)-vertex unless it is exactly one (-1)-vertex."""
    for comp in maximal_strings(g):
        if len(comp) != 1 and any(g.weight_of(v) == -1 for v in comp):
            return False
    return True


def intersection_matrix(g: ResolutionGraph) -> linalg.IntMatrix:
    """Symmetric matrix: weights on the diagonal, 1 where an edge exists."""
    n = len(g.ids)
    m = [[0] * n for _ in range(n)]
    for i, w in enumerate(g.weights):
        m[i][i] = w
    for a, b in g.edges:
        i, j = g.index[a], g.index[b]
        m[i][j] = 1
        m[j][i] = 1
    return m


def negated_intersection_matrix(g: ResolutionGraph) -> linalg.IntMatrix:
    return [[-x for x in row] for row in intersection_matrix(g)]


def is_negative_definite(g: ResolutionGraph) -> bool:
    return linalg.is_negative_definite_matrix(intersection_matrix(g))


def graph_determinant(g: ResolutionGraph) -> int:
    """det of the negated intersection matrix (the order of the cokernel).

    Raises NotNegativeDefinite when the intersection form is not
    negative definite.
    """
    if not is_negative_definite(g):
        raise NotNegativeDefinite("intersection form is not negative definite")
    return linalg.determinant(negated_intersection_matrix(g))


def fresh_id(base: str, taken: Iterable[str]) -> str:
    used = set(taken)
    if base not in used:
        return base
    k = 2
    while f"{base}{k}" in used:
        k += 1
    return f"{base}{k}"


def blow_up_edge(g: ResolutionGraph, edge: tuple[str, str]) -> ResolutionGraph:
    """Insert a fresh (-1)-vertex on the edge, decrementing both endpoints."""
    a, b = edge
    if not g.has_edge(a, b):
        raise UnknownEdge(f"({a}, {b})")
    new = fresh_id("b*", g.ids)
    ids = g.ids + (new,)
    weights = tuple(
        w - 1 if v in (a, b) else w for v, w in zip(g.ids, g.weights)
    ) + (-1,)
    pair = frozenset((a, b))
    edges = tuple(e for e in g.edges if frozenset(e) != pair) + ((a, new), (new, b))
    return ResolutionGraph(ids=ids, weights=weights, edges=edges)


def component_of(g: ResolutionGraph, removed: str, start: str) -> tuple[str, ...]:
    """Vertices of the component of g minus `removed` containing `start`.

    Result keeps the graph's vertex order.
    """
    if start == removed:
        raise ValueError("start vertex equals the removed vertex")
    seen = {start}
    stack = [start]
    while stack:
        for w in g.adjacency[stack.pop()]:
            if w != removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return tuple(v for v in g.ids if v in seen)


def induced_subgraph(g: ResolutionGraph, keep: Iterable[str]) -> ResolutionGraph:
    keep_set = set(keep)
    return ResolutionGraph(
        ids=tuple(v for v in g.ids if v in keep_set),
        weights=tuple(w for v, w in zip(g.ids, g.weights) if v in keep_set),
        edges=tuple((a, b) for a, b in g.edges if a in keep_set and b in keep_set),
    )


def path_between(g: ResolutionGraph, v: str, w: str) -> tuple[str, ...]:
    """Vertices of the unique path from v to w, inclusive."""
    if v not in g.index or w not in g.index:
        raise UnknownVertex(f"{v!r} or {w!r}")
    parent: dict[str, str | None] = {v: None}
    stack = [v]
    while stack and w not in parent:
        u = stack.pop()
        for x in g.adjacency[u]:
            if x not in parent:
                parent[x] = u
                stack.append(x)
    if w not in parent:
        raise ValidationError(f"no path from {v} to {w}")
    path = [w]
    while path[-1] != v:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    path.reverse()
    return tuple(path)
