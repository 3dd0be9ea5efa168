"""Undirected simple graphs, bounded BFS neighborhoods and power graphs.

Node ids are ``0..num_nodes-1``.  Adjacency lists are kept sorted by neighbor
id so every downstream algorithm is deterministic.  Edge weights are carried
for message passing but ignored by all topology queries.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import _io
from .errors import ParseError, ValidationError

Edge = tuple[int, int, float]


class Graph:
    """Immutable undirected simple graph with optional node labels and edge weights."""

    __slots__ = ("_n", "_edges", "_labels", "_adj", "_adj_w", "_cache")

    def __init__(
        self,
        num_nodes: int,
        edges: Iterable[Sequence[float]] = (),
        node_labels: Sequence[Sequence[float]] | None = None,
    ) -> None:
        if isinstance(num_nodes, bool) or not isinstance(num_nodes, int) or num_nodes < 0:
            raise ValidationError(f"num_nodes must be a nonnegative integer, got {num_nodes!r}")
        n = num_nodes
        canon: dict[tuple[int, int], float] = {}
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1.0
            elif len(e) == 3:
                u, v, w = e
            else:
                raise ValidationError(f"edge {list(e)!r} must have 2 or 3 entries")
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValidationError(f"self-loop at node {u}")
            key = (u, v) if u < v else (v, u)
            if key in canon:
                raise ValidationError(f"duplicate edge {key}")
            canon[key] = w

        self._n = n
        self._edges: tuple[Edge, ...] = tuple((u, v, canon[u, v]) for u, v in sorted(canon))

        if node_labels is not None and len(node_labels) > 0:
            if len(node_labels) != n:
                raise ValidationError(f"{len(node_labels)} node labels for {n} nodes")
            labels = tuple(tuple(float(x) for x in row) for row in node_labels)
            dims = {len(row) for row in labels}
            if len(dims) > 1:
                raise ValidationError(f"node labels have mixed dimensions {sorted(dims)}")
            self._labels: tuple[tuple[float, ...], ...] | None = labels
        else:
            self._labels = None

        nbrs: list[list[int]] = [[] for _ in range(n)]
        wts: list[list[float]] = [[] for _ in range(n)]
        # edges are sorted by (u, v) with u < v: node x receives its smaller
        # neighbors (as v) before its larger ones (as u), each run ascending
        for u, v, w in self._edges:
            nbrs[u].append(v)
            wts[u].append(w)
            nbrs[v].append(u)
            wts[v].append(w)
        self._adj: tuple[tuple[int, ...], ...] = tuple(map(tuple, nbrs))
        self._adj_w: tuple[tuple[float, ...], ...] = tuple(map(tuple, wts))
        self._cache: dict = {}

    @property
    def num_nodes(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Edges as ``(u, v, w)`` with ``u < v``, sorted by ``(u, v)``."""
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def node_labels(self) -> tuple[tuple[float, ...], ...] | None:
        return self._labels

    @property
    def label_dim(self) -> int:
        return len(self._labels[0]) if self._labels else 0

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_weights(self, v: int) -> tuple[float, ...]:
        """Weights parallel to ``neighbors(v)``."""
        return self._adj_w[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj[u]
        lo, hi = 0, len(nb)
        while lo < hi:
            mid = (lo + hi) // 2
            if nb[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(nb) and nb[lo] == v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges and self._labels == other._labels

    def __hash__(self) -> int:
        return hash((self._n, self._edges, self._labels))

    def __repr__(self) -> str:
        return f"Graph(num_nodes={self._n}, num_edges={len(self._edges)})"

    def to_dict(self) -> dict:
        out: dict = {"num_nodes": self._n}
        out["edges"] = [[u, v] if w == 1.0 else [u, v, w] for u, v, w in self._edges]
        if self._labels is not None:
            out["node_labels"] = [list(row) for row in self._labels]
        out["schema"] = _io.SCHEMA_VERSION
        return out


@dataclass(frozen=True)
class NeighborhoodView:
    """Nodes within ``radius`` hops of ``center`` (center excluded) and their BFS distances."""

    center: int
    radius: int
    members: Mapping[int, int]


def build_graph(spec: Mapping) -> Graph:
    """Build a graph from the parsed JSON graph format."""
    num_nodes = _io.as_int(_io.require(spec, "num_nodes", int, "graph"), "graph.num_nodes")
    raw_edges = _io.require(spec, "edges", list, "graph")
    edges = []
    for k, e in enumerate(raw_edges):
        where = f"graph.edges[{k}]"
        if not isinstance(e, list) or len(e) not in (2, 3):
            raise ParseError(f"{where}: expected [u, v] or [u, v, w]")
        u = _io.as_int(e[0], where)
        v = _io.as_int(e[1], where)
        w = _io.as_float(e[2], where) if len(e) == 3 else 1.0
        if not _io.is_finite(w):
            raise ValidationError(f"{where}: non-finite weight")
        edges.append((u, v, w))
    labels = spec.get("node_labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(r, list) for r in labels):
            raise ParseError("graph.node_labels: expected a list of lists")
        labels = [[_io.as_float(x, f"graph.node_labels[{i}]") for x in row] for i, row in enumerate(labels)]
    if num_nodes < 0:
        raise ValidationError("graph.num_nodes must be nonnegative")
    return Graph(num_nodes, edges, labels)


def parse_graph(text: str) -> Graph:
    return build_graph(_io.loads(text))


def load_graph(path: str | Path) -> Graph:
    return build_graph(_io.read_json(path))


def save_graph(g: Graph, path: str | Path) -> None:
    _io.write_json(path, g.to_dict())


def _check_hops(k: int, name: str = "k") -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValidationError(f"{name} must be an integer >= 1, got {k!r}")


def _check_node(g: Graph, v: int) -> None:
    if not (0 <= v < g.num_nodes):
        raise ValidationError(f"node {v} outside 0..{g.num_nodes - 1}")


def bfs_distances(g: Graph, v: int, k: int | None = None) -> dict[int, int]:
    """Shortest-path distances from ``v`` to every node within ``k`` hops (``v`` itself at 0)."""
    adj = g.adjacency
    dist = {v: 0}
    frontier = [v]
    depth = 0
    while frontier and (k is None or depth < k):
        depth += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = depth
                    nxt.append(w)
        frontier = nxt
    return dist


def khop_neighbors(g: Graph, v: int, k: int) -> NeighborhoodView:
    _check_node(g, v)
    _check_hops(k)
    dist = bfs_distances(g, v, k)
    del dist[v]
    return NeighborhoodView(center=v, radius=k, members=dist)


def khop_sets(g: Graph, k: int) -> tuple[tuple[int, ...], ...]:
    """``N_k(v)`` for every node, each as an ascending tuple.  Cached on the graph."""
    _check_hops(k)
    key = ("khop", k)
    cached = g._cache.get(key)
    if cached is not None:
        return cached
    if k == 1:
        result = g.adjacency
    else:
        adj = g.adjacency
        out = []
        for v in range(g.num_nodes):
            seen = {v}
            frontier = [v]
            for _ in range(k):
                nxt = []
                for u in frontier:
                    for w in adj[u]:
                        if w not in seen:
                            seen.add(w)
                            nxt.append(w)
                if not nxt:
                    break
                frontier = nxt
            seen.discard(v)
            out.append(tuple(sorted(seen)))
        result = tuple(out)
    g._cache[key] = result
    return result


def power_graph(g: Graph, k: int) -> Graph:
    """Graph on the same nodes with an edge wherever ``1 <= dist(u, v) <= k``.

    Weights are reset to 1.0 and labels are dropped.
    """
    _check_hops(k)
    key = ("power", k)
    cached = g._cache.get(key)
    if cached is None:
        sets = khop_sets(g, k)
        edges = [(u, v) for u, nb in enumerate(sets) for v in nb if u < v]
        cached = g._cache[key] = Graph(g.num_nodes, edges)
    return cached


def max_khop_degree(g: Graph, k: int) -> int:
    """``max_v |N_k(v)|``; 0 for the empty graph."""
    return max((len(s) for s in khop_sets(g, k)), default=0)


def permute_graph(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel node ``v`` as ``perm[v]``; labels move with their nodes."""
    n = g.num_nodes
    if sorted(perm) != list(range(n)):
        raise ValidationError("perm must be a permutation of 0..num_nodes-1")
    edges = [(perm[u], perm[v], w) for u, v, w in g.edges]
    labels = None
    if g.node_labels is not None:
        inv = [0] * n
        for v, p in enumerate(perm):
            inv[p] = v
        labels = [g.node_labels[inv[p]] for p in range(n)]
    return Graph(n, edges, labels)


def disjoint_union(*graphs: Graph) -> Graph:
    """Place graphs side by side, renumbering each after the previous one."""
    edges = []
    labels: list | None = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset, w) for u, v, w in g.edges)
        if labels is not None and g.node_labels is not None:
            labels.extend(g.node_labels)
        elif g.num_nodes:
            labels = None
        offset += g.num_nodes
    return Graph(offset, edges, labels or None)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValidationError("a cycle needs at least 3 nodes")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with center 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
