"""Splice diagrams: derivation from resolution graphs and their calculus.

A splice diagram is a tree without valency-2 vertices; each node carries a
positive weight on every incident edge, equal to the determinant of the
piece of the resolution graph cut off in that direction. The maximal
variant keeps all vertices of the resolution graph and weights both ends
of every edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod
from typing import Mapping

from . import linalg
from .errors import (
    LeafEdgeInReducedDiagram,
    NotEndNode,
    NotNegativeDefinite,
    SameVertex,
    UnknownEdge,
    UnknownVertex,
)
from .graph import (
    ResolutionGraph,
    blow_up_edge,
    classify_vertices,
    component_of,
    fresh_id,
    graph_determinant,
    induced_subgraph,
    is_negative_definite,
    negated_intersection_matrix,
)

DirectedEdge = tuple[str, str]


@dataclass(frozen=True)
class SpliceDiagram:
    """Weighted tree; ``weights[(v, u)]`` is the weight at v on edge {v, u}.

    In a reduced diagram only nodes carry weights; leaf ends are bare.
    ``strings`` optionally maps each directed edge back to the interior
    vertices of the resolution string it came from (ordered from the
    first endpoint).
    """

    ids: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    weights: Mapping[DirectedEdge, int]
    strings: Mapping[DirectedEdge, tuple[str, ...]] | None = field(
        default=None, compare=False
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

    def weight(self, at: str, toward: str) -> int | None:
        return self.weights.get((at, toward))

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def is_node(self, v: str) -> bool:
        return self.degree(v) >= 3

    def is_leaf(self, v: str) -> bool:
        return self.degree(v) <= 1

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(v for v in self.ids if self.is_node(v))

    @property
    def leaves(self) -> tuple[str, ...]:
        return tuple(v for v in self.ids if self.is_leaf(v))

    def weight_product(self, v: str) -> int:
        """Product of all edge weights at v (1 for a bare vertex)."""
        out = 1
        for u in self.adjacency[v]:
            w = self.weights.get((v, u))
            if w is None:
                raise UnknownVertex(f"no weight at {v} toward {u}")
            out *= w
        return out

    def path(self, v: str, w: str) -> tuple[str, ...]:
        if v not in self.index or w not in self.index:
            raise UnknownVertex(f"{v!r} or {w!r}")
        parent: dict[str, str | None] = {v: None}
        stack = [v]
        while stack and w not in parent:
            u = stack.pop()
            for x in self.adjacency[u]:
                if x not in parent:
                    parent[x] = u
                    stack.append(x)
        path = [w]
        while path[-1] != v:
            path.append(parent[path[-1]])  # type: ignore[arg-type]
        path.reverse()
        return tuple(path)


@dataclass(frozen=True)
class MaximalSpliceDiagram(SpliceDiagram):
    """Splice diagram on all resolution vertices, weighted at both ends."""


def subtree_determinants(g: ResolutionGraph) -> dict[DirectedEdge, int]:
    """det of the component of g minus `parent` containing `child`.

    Keyed by (child, parent) for every directed edge; computed by the
    classic tree recursion over rooted subtrees, memoized so the whole
    table costs O(V * deg^2) big-int products instead of one elimination
    per subgraph.
    """
    adj = g.adjacency
    b = {v: -g.weight_of(v) for v in g.ids}
    memo: dict[DirectedEdge, int] = {}

    def children(u: str, p: str | None) -> list[str]:
        return [w for w in adj[u] if w != p]

    def value(u: str, p: str | None) -> int:
        kids = children(u, p)
        down = [memo[(w, u)] for w in kids]
        total = b[u] * prod(down)
        for idx, w in enumerate(kids):
            skip = prod(down[:idx]) * prod(down[idx + 1:])
            grand = prod(memo[(x, w)] for x in adj[w] if x != u)
            total -= skip * grand
        return total

    def demand(u0: str, p0: str) -> None:
        stack: list[DirectedEdge] = [(u0, p0)]
        while stack:
            u, p = stack[-1]
            if (u, p) in memo:
                stack.pop()
                continue
            missing = [(w, u) for w in children(u, p) if (w, u) not in memo]
            if missing:
                stack.extend(missing)
                continue
            memo[(u, p)] = value(u, p)
            stack.pop()

    for a, c in g.edges:
        demand(a, c)
        demand(c, a)
    return memo


def tree_determinant(g: ResolutionGraph) -> int:
    """det of the negated intersection matrix via the subtree recursion.

    Independent of the Bareiss route; the two are cross-checked in tests.
    """
    if not g.ids:
        return 1
    memo = subtree_determinants(g)
    root = g.ids[0]
    kids = list(g.adjacency[root])
    down = [memo[(w, root)] for w in kids]
    total = -g.weight_of(root) * prod(down)
    for idx, w in enumerate(kids):
        skip = prod(down[:idx]) * prod(down[idx + 1:])
        grand = prod(memo[(x, w)] for x in g.adjacency[w] if x != root)
        total -= skip * grand
    return total


def _walk_string(
    g: ResolutionGraph, kinds: Mapping[str, str], start: str, first: str
) -> tuple[str, tuple[str, ...]]:
    """Follow valency-2 vertices from `start` through `first` until a
    leaf or node; returns (terminal, interior vertices in walk order)."""
    interior: list[str] = []
    prev, cur = start, first
    while kinds[cur] == "string":
        interior.append(cur)
        nxt = [x for x in g.adjacency[cur] if x != prev]
        prev, cur = cur, nxt[0]
    return cur, tuple(interior)


def splice_from_resolution(g: ResolutionGraph) -> SpliceDiagram:
    """Reduced splice diagram of a negative-definite resolution graph."""
    if not is_negative_definite(g):
        raise NotNegativeDefinite("graph is not negative definite")
    kinds = classify_vertices(g)
    keep = tuple(v for v in g.ids if kinds[v] != "string")
    dets = subtree_determinants(g)
    edges: list[tuple[str, str]] = []
    seen: set[frozenset[str]] = set()
    weights: dict[DirectedEdge, int] = {}
    strings: dict[DirectedEdge, tuple[str, ...]] = {}
    for v in keep:
        for u in g.adjacency[v]:
            terminal, interior = _walk_string(g, kinds, v, u)
            pair = frozenset((v, terminal))
            if pair not in seen:
                seen.add(pair)
                edges.append((v, terminal))
            strings[(v, terminal)] = interior
            if kinds[v] == "node":
                weights[(v, terminal)] = dets[(u, v)]
    order = {v: i for i, v in enumerate(keep)}
    edges.sort(key=lambda e: (order[e[0]], order[e[1]]))
    return SpliceDiagram(ids=keep, edges=tuple(edges), weights=weights, strings=strings)


def maximal_splice(g: ResolutionGraph) -> MaximalSpliceDiagram:
    """Splice diagram keeping every vertex, with weights at both edge ends."""
    if not is_negative_definite(g):
        raise NotNegativeDefinite("graph is not negative definite")
    dets = subtree_determinants(g)
    weights = {(v, u): dets[(u, v)] for (u, v) in dets}
    return MaximalSpliceDiagram(
        ids=g.ids, edges=g.edges, weights=weights, strings=None
    )


def linking_numbers(d: SpliceDiagram, v: str, w: str) -> tuple[int, int]:
    """(full, reduced) products of weights adjacent to but not on the v-w path.

    The reduced value omits the weights sitting at v and w themselves; it
    is 1 when v and w are adjacent.
    """
    if v == w:
        raise SameVertex(v)
    path = d.path(v, w)
    on_path = set(path)
    full = 1
    reduced = 1
    for i, u in enumerate(path):
        neighbors_on_path = set()
        if i > 0:
            neighbors_on_path.add(path[i - 1])
        if i + 1 < len(path):
            neighbors_on_path.add(path[i + 1])
        for x in d.adjacency[u]:
            if x in neighbors_on_path:
                continue
            wt = d.weights.get((u, x))
            if wt is None:
                continue
            full *= wt
            if u not in (v, w):
                reduced *= wt
    return full, reduced


def linking_matrix(g: ResolutionGraph) -> linalg.IntMatrix:
    """Matrix of pairwise linking numbers over all resolution vertices.

    Entries come from path products in the maximal splice diagram; the
    diagonal entry is the product of all weights at the vertex. Satisfies
    A * L = -det * I, which the test suite checks exactly.
    """
    dmax = maximal_splice(g)
    n = len(g.ids)
    out = [[0] * n for _ in range(n)]
    for i, v in enumerate(g.ids):
        out[i][i] = dmax.weight_product(v)
        for j in range(i + 1, n):
            w = g.ids[j]
            full, _ = linking_numbers(dmax, v, w)
            out[i][j] = full
            out[j][i] = full
    return out


def edge_determinant(d: SpliceDiagram, edge: tuple[str, str]) -> int:
    """Product of the two weights on the edge minus the product of the
    weights adjacent to the edge."""
    v, w = edge
    if w not in d.adjacency.get(v, ()):
        raise UnknownEdge(f"({v}, {w})")
    wv = d.weights.get((v, w))
    ww = d.weights.get((w, v))
    if wv is None or ww is None:
        raise LeafEdgeInReducedDiagram(f"({v}, {w})")
    adjacent = 1
    for end, other in ((v, w), (w, v)):
        for x in d.adjacency[end]:
            if x != other:
                wt = d.weights.get((end, x))
                if wt is not None:
                    adjacent *= wt
    return wv * ww - adjacent


@dataclass(frozen=True)
class EdgeDetEntry:
    edge: tuple[str, str]
    edge_det: int
    string_det: int
    graph_det: int

    @property
    def ok(self) -> bool:
        return self.edge_det == self.string_det * self.graph_det


@dataclass(frozen=True)
class EdgeDetReport:
    entries: tuple[EdgeDetEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> tuple[EdgeDetEntry, ...]:
        return tuple(e for e in self.entries if not e.ok)


def verify_edge_det_theorem(g: ResolutionGraph) -> EdgeDetReport:
    """Check edge det = string det * graph det on every node-node edge."""
    d = splice_from_resolution(g)
    det_g = graph_determinant(g)
    entries = []
    for v, w in d.edges:
        if not (d.is_node(v) and d.is_node(w)):
            continue
        interior = d.strings[(v, w)] if d.strings else ()
        string_det = linalg.determinant(
            negated_intersection_matrix(induced_subgraph(g, interior))
        ) if interior else 1
        entries.append(
            EdgeDetEntry(
                edge=(v, w),
                edge_det=edge_determinant(d, (v, w)),
                string_det=string_det,
                graph_det=det_g,
            )
        )
    return EdgeDetReport(entries=tuple(entries))


def ideal_generator(d: SpliceDiagram, v: str, toward: str) -> int:
    """Positive generator of the ideal spanned by the reduced linking
    numbers from v to the leaves beyond `toward`.

    Computed by the leaf-upward gcd recursion: a leaf contributes 1, and a
    node contributes the gcd over its outward edges of (generator there
    times the product of the weights on its other outward edges).
    """
    if toward not in d.adjacency.get(v, ()):
        raise UnknownEdge(f"({v}, {toward})")
    if d.is_leaf(toward):
        return 1
    others = [x for x in d.adjacency[toward] if x != v]
    acc = 0
    for x in others:
        sub = ideal_generator(d, toward, x)
        skip = prod(d.weights[(toward, y)] for y in others if y != x)
        acc = gcd(acc, sub * skip)
    return acc


@dataclass(frozen=True)
class IdealEntry:
    node: str
    toward: str
    generator: int
    weight: int

    @property
    def ok(self) -> bool:
        return self.weight % self.generator == 0


@dataclass(frozen=True)
class IdealReport:
    entries: tuple[IdealEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> tuple[IdealEntry, ...]:
        return tuple(e for e in self.entries if not e.ok)


def check_ideal_condition(d: SpliceDiagram) -> IdealReport:
    """Every node-edge weight must be divisible by its ideal generator."""
    entries = []
    for v in d.nodes:
        for u in d.adjacency[v]:
            entries.append(
                IdealEntry(
                    node=v,
                    toward=u,
                    generator=ideal_generator(d, v, u),
                    weight=d.weights[(v, u)],
                )
            )
    return IdealReport(entries=tuple(entries))


def leaf_ideal_generator(d: SpliceDiagram, leaf: str) -> int:
    """Ideal generator at a leaf (over all other leaves of the diagram)."""
    if not d.is_leaf(leaf):
        raise UnknownVertex(f"{leaf} is not a leaf")
    nbrs = d.adjacency[leaf]
    if not nbrs:
        return 1  # single-vertex diagram: no other leaves, degenerate ideal
    return ideal_generator(d, leaf, nbrs[0])


def leaf_knot_order(g: ResolutionGraph, leaf: str) -> int:
    """Homology order of the knot at a leaf: graph det / ideal generator."""
    det = graph_determinant(g)
    d = splice_from_resolution(g)
    if leaf not in d.index or not d.is_leaf(leaf):
        raise UnknownVertex(f"{leaf} is not a leaf of the splice diagram")
    gen = leaf_ideal_generator(d, leaf)
    if det % gen:
        raise ValueError(f"generator {gen} does not divide determinant {det}")
    return det // gen


# --- end-node reduction -------------------------------------------------


@dataclass(frozen=True)
class NonIntegralWeight:
    at: str
    toward: str
    raw: int
    divisor: int


@dataclass(frozen=True)
class ReductionResult:
    diagram: SpliceDiagram | None
    new_leaf: str | None
    problems: tuple[NonIntegralWeight, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def is_end_node(d: SpliceDiagram, v: str) -> bool:
    """A node all but (at most) one of whose edges leads to a leaf."""
    if not d.is_node(v):
        return False
    non_leaf = [x for x in d.adjacency[v] if not d.is_leaf(x)]
    return len(non_leaf) <= 1


def end_node_reduce(
    d: SpliceDiagram,
    v_star: str,
    mode: str = "raw",
    det: int | None = None,
) -> ReductionResult:
    """Collapse an end-node and its leaves into a fresh leaf.

    Weights pointing away from the end-node survive unchanged. For each
    remaining node, the weight on its edge toward the new leaf becomes

        r * d_v1 - N * (d_v / d_v1) * (reduced linking to the end-node)^2

    where r is the end-node's weight toward the rest and N the product of
    its leaf weights. In ``normalized`` mode the value is divided by
    ``det``; a non-divisible value is recorded as a problem instead of
    raising. Reducing a single-node diagram leaves nothing and returns
    the empty diagram.
    """
    if mode not in ("raw", "normalized"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "normalized" and det is None:
        raise ValueError("normalized mode needs the graph determinant")
    if not is_end_node(d, v_star):
        raise NotEndNode(v_star)
    non_leaf = [x for x in d.adjacency[v_star] if not d.is_leaf(x)]
    if not non_leaf:
        # Single-node diagram: nothing remains after the reduction.
        return ReductionResult(
            diagram=SpliceDiagram(ids=(), edges=(), weights={}), new_leaf=None,
            problems=(),
        )
    central = non_leaf[0]
    leaf_nbrs = [x for x in d.adjacency[v_star] if x != central]
    r = d.weights[(v_star, central)]
    n_product = prod(d.weights[(v_star, x)] for x in leaf_nbrs)

    removed = {v_star, *leaf_nbrs}
    kept = tuple(v for v in d.ids if v not in removed)
    w_star = fresh_id("w*", kept)
    new_ids = kept + (w_star,)
    new_edges = tuple(
        e for e in d.edges if e[0] not in removed and e[1] not in removed
    ) + ((central, w_star),)

    new_weights: dict[DirectedEdge, int] = {}
    problems: list[NonIntegralWeight] = []
    surviving_nodes = [v for v in d.nodes if v != v_star]
    toward_new = {}
    for v in surviving_nodes:
        path = d.path(v, v_star)
        toward_new[v] = path[1]
    for (at, to), wt in d.weights.items():
        if at in removed:
            continue
        if at in toward_new and to == toward_new[at]:
            continue  # replaced below
        new_weights[(at, to)] = wt
    for v in surviving_nodes:
        x = toward_new[v]
        d_v1 = d.weights[(v, x)]
        d_v = d.weight_product(v)
        _, lp = linking_numbers(d, v, v_star)
        raw = r * d_v1 - n_product * (d_v // d_v1) * lp * lp
        value = raw
        if mode == "normalized":
            assert det is not None
            if raw % det:
                problems.append(
                    NonIntegralWeight(at=v, toward=x, raw=raw, divisor=det)
                )
                continue
            value = raw // det
        if value <= 0:
            raise ValueError(f"reduced weight at {v} is not positive: {value}")
        key_to = w_star if x == v_star else x
        new_weights[(v, key_to)] = value

    if problems:
        return ReductionResult(diagram=None, new_leaf=w_star,
                               problems=tuple(problems))
    return ReductionResult(
        diagram=SpliceDiagram(ids=new_ids, edges=new_edges, weights=new_weights),
        new_leaf=w_star,
        problems=(),
    )


def end_node_reduce_graph(
    g: ResolutionGraph, v_star: str
) -> tuple[ResolutionGraph, SpliceDiagram]:
    """Remove an end-node and its leaf strings from the resolution graph.

    Returns the trimmed graph and its splice diagram. When the end-node
    touches the next node directly, the connecting edge is blown up first
    so that a string vertex remains to serve as the new leaf.
    """
    d = splice_from_resolution(g)
    if v_star not in d.index or not d.is_node(v_star):
        raise NotEndNode(v_star)
    if not is_end_node(d, v_star):
        raise NotEndNode(v_star)
    non_leaf = [x for x in d.adjacency[v_star] if not d.is_leaf(x)]
    if not non_leaf:
        raise NotEndNode(f"{v_star}: no remaining direction to keep")
    central = non_leaf[0]
    central_dir = None
    for u in g.adjacency[v_star]:
        if central in component_of(g, v_star, u):
            central_dir = u
            break
    assert central_dir is not None
    work = g
    if work.degree(central_dir) >= 3:
        work = blow_up_edge(work, (v_star, central_dir))
        central_dir = next(v for v in work.ids if v not in g.index)
    keep = component_of(work, v_star, central_dir)
    g_tilde = induced_subgraph(work, keep)
    return g_tilde, splice_from_resolution(g_tilde)
