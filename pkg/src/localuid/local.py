"""Synchronous LOCAL-model simulation of ball reconstruction, plus color-priority MIS.

In the simulator nodes know nothing but colors.  Round 1 teaches each node its
own color, its neighbors' colors and its incident edges (as color pairs).  In
every later round each node sends its whole accumulated knowledge to its
neighbors.  After ``d`` rounds node ``v`` holds every edge with an endpoint
within ``d - 1`` hops, which is the most ``d`` rounds can deliver.  A d-hop
unique coloring makes colors usable as identifiers inside that view.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import _io
from .coloring import Coloring, find_dhop_violation
from .errors import ValidationError
from .graph import Graph, _check_hops, _check_node, bfs_distances


@dataclass(frozen=True)
class ReconstructedView:
    center: int
    radius: int
    vertices: Mapping[int, tuple[int, int]]
    """node id -> (color, distance from center)"""
    edges: frozenset[tuple[int, int]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReconstructedView):
            return NotImplemented
        return (
            self.center == other.center
            and self.radius == other.radius
            and dict(self.vertices) == dict(other.vertices)
            and self.edges == other.edges
        )

    def to_dict(self) -> dict:
        return {
            "center": self.center,
            "d": self.radius,
            "vertices": [[v, c, dist] for v, (c, dist) in sorted(self.vertices.items())],
            "edges": [list(e) for e in sorted(self.edges)],
        }


def _colors_of(g: Graph, c: Coloring) -> tuple[int, ...]:
    if len(c) != g.num_nodes:
        raise ValidationError(f"coloring has {len(c)} entries for {g.num_nodes} nodes")
    return c.colors


def oracle_view(g: Graph, v: int, d: int, c: Coloring) -> ReconstructedView:
    """Ground-truth view from a global BFS: the ball ``B_d(v)`` and all edges touching ``B_(d-1)(v)``."""
    _check_node(g, v)
    _check_hops(d, "d")
    colors = _colors_of(g, c)
    dist = bfs_distances(g, v, d)
    vertices = {u: (colors[u], du) for u, du in dist.items()}
    edges = set()
    for u, du in dist.items():
        if du <= d - 1:
            for w in g.neighbors(u):
                edges.add((u, w) if u < w else (w, u))
    return ReconstructedView(v, d, vertices, frozenset(edges))


def _color_bfs(center: int, edges: set[tuple[int, int]], limit: int) -> dict[int, int]:
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    dist = {center: 0}
    frontier = [center]
    depth = 0
    while frontier and depth < limit:
        depth += 1
        nxt = []
        for a in frontier:
            for b in adj.get(a, ()):
                if b not in dist:
                    dist[b] = depth
                    nxt.append(b)
        frontier = nxt
    return dist


def local_view_simulate(g: Graph, c: Coloring, d: int) -> list[ReconstructedView]:
    """Run ``d`` synchronous rounds and return what every node has reconstructed."""
    _check_hops(d, "d")
    colors = _colors_of(g, c)
    bad = find_dhop_violation(g, c, d)
    if bad is not None:
        raise ValidationError("coloring is not d-hop unique: " + bad.describe(d))
    n = g.num_nodes

    def cedge(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    # round 1: own incident edges, as color pairs
    known = [{cedge(colors[v], colors[u]) for u in g.neighbors(v)} for v in range(n)]
    for _ in range(d - 1):
        # double-buffered: every node reads the previous round's state only
        prev = known
        known = [set(prev[v]).union(*(prev[u] for u in g.neighbors(v))) for v in range(n)]

    views = []
    for v in range(n):
        dist = _color_bfs(colors[v], known[v], d)
        ball = bfs_distances(g, v, d)
        by_color = {colors[u]: u for u in ball}
        if len(by_color) != len(ball):
            raise ValidationError(f"colors repeat inside the ball around node {v}")
        if set(dist) != set(by_color):
            raise ValidationError(f"node {v} learned colors that do not match its ball")
        vertices = {by_color[col]: (col, dcol) for col, dcol in dist.items()}
        edges = frozenset(cedge(by_color[a], by_color[b]) for a, b in known[v])
        views.append(ReconstructedView(v, d, vertices, edges))
    return views


@dataclass(frozen=True)
class MisResult:
    nodes: frozenset[int]
    rounds: int


def color_priority_mis(g: Graph, c: Coloring) -> MisResult:
    """Maximal independent set where, each round, an undecided node joins if it out-colors all undecided neighbors."""
    colors = _colors_of(g, c)
    bad = find_dhop_violation(g, c, 1)
    if bad is not None:
        raise ValidationError("coloring is not 1-hop unique: " + bad.describe(1))
    n = g.num_nodes
    undecided = set(range(n))
    chosen: set[int] = set()
    rounds = 0
    while undecided:
        rounds += 1
        joiners = [
            v for v in sorted(undecided)
            if all(colors[v] > colors[u] for u in g.neighbors(v) if u in undecided)
        ]
        # adjacent nodes differ in color, so every top-colored undecided node joins
        assert joiners, "no progress in MIS round"
        for v in joiners:
            chosen.add(v)
            undecided.discard(v)
            undecided.difference_update(g.neighbors(v))
    return MisResult(frozenset(chosen), rounds)


def dump_views(views: list[ReconstructedView]) -> dict:
    return {"views": [view.to_dict() for view in views], "schema": _io.SCHEMA_VERSION}
