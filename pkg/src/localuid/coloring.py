"""Greedy d-hop unique coloring and its validity checkers.

A coloring is *d-hop unique* when every ball ``B_d(v) = N_d(v) + {v}`` is
rainbow.  That is the same as being a proper coloring of ``G^(2d)``, so the
greedy pass colors the 2d-th power graph, visiting vertices by nonincreasing
``deg_2d`` with ties broken by ascending id.

The center must be part of the rainbow check.  With ``N_d(v)`` alone the
equivalence breaks for adjacent nodes without a common neighbor: the path
0-1-2 colored ``[0, 0, 1]`` has rainbow open neighborhoods yet nodes 0 and 1
clash.  ``closed=False`` keeps that weaker open-neighborhood test available.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from . import _io
from .errors import ValidationError
from .graph import Graph, _check_hops, khop_sets, power_graph


@dataclass(frozen=True)
class Coloring:
    """Dense 0-based color per node.

    ``d`` records the hop radius the coloring was built for (0 when unknown).
    """

    colors: tuple[int, ...]
    num_colors: int
    d: int = 0

    def __post_init__(self) -> None:
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if any(c < 0 for c in colors):
            raise ValidationError("colors must be nonnegative")
        used = max(colors) + 1 if colors else 0
        if self.num_colors != used:
            raise ValidationError(f"num_colors={self.num_colors} but colors use 0..{used - 1}")
        if self.d < 0:
            raise ValidationError("d must be nonnegative")

    @classmethod
    def from_colors(cls, colors: Sequence[int], d: int = 0) -> "Coloring":
        colors = tuple(int(c) for c in colors)
        return cls(colors, max(colors) + 1 if colors else 0, d)

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def to_dict(self) -> dict:
        return {"d": self.d, "num_colors": self.num_colors, "colors": list(self.colors), "schema": _io.SCHEMA_VERSION}


@dataclass(frozen=True)
class ColoringStats:
    num_colors: int
    delta_2d: int
    bound: int
    within_bound: bool
    build_time: float

    def to_dict(self) -> dict:
        return {
            "num_colors": self.num_colors,
            "delta_2d": self.delta_2d,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "build_time": self.build_time,
        }


def build_coloring(spec: Mapping) -> Coloring:
    d = _io.as_int(_io.require(spec, "d", int, "coloring"), "coloring.d")
    num_colors = _io.as_int(_io.require(spec, "num_colors", int, "coloring"), "coloring.num_colors")
    raw = _io.require(spec, "colors", list, "coloring")
    colors = [_io.as_int(c, f"coloring.colors[{i}]") for i, c in enumerate(raw)]
    return Coloring(tuple(colors), num_colors, d)


def load_coloring(path: str | Path) -> Coloring:
    return build_coloring(_io.read_json(path))


def save_coloring(c: Coloring, path: str | Path) -> None:
    _io.write_json(path, c.to_dict())


def greedy_dhop_unique(g: Graph, d: int) -> tuple[Coloring, ColoringStats]:
    """Color ``g`` so that every ``N_d(v)`` is rainbow, using at most ``Δ_2d + 1`` colors."""
    _check_hops(d, "d")
    t0 = time.perf_counter()
    nbrs = khop_sets(g, 2 * d)
    n = g.num_nodes
    order = sorted(range(n), key=lambda v: (-len(nbrs[v]), v))
    colors = [-1] * n
    for v in order:
        forbidden = {colors[u] for u in nbrs[v]}
        c = 0
        while c in forbidden:
            c += 1
        colors[v] = c
    elapsed = time.perf_counter() - t0

    coloring = Coloring.from_colors(colors, d)
    delta = max((len(s) for s in nbrs), default=0)
    stats = ColoringStats(
        num_colors=coloring.num_colors,
        delta_2d=delta,
        bound=delta + 1,
        within_bound=coloring.num_colors <= delta + 1,
        build_time=elapsed,
    )
    return coloring, stats


def _check_cover(g: Graph, c: Coloring | Sequence[int]) -> Sequence[int]:
    colors = c.colors if isinstance(c, Coloring) else c
    if len(colors) != g.num_nodes:
        raise ValidationError(f"coloring has {len(colors)} entries for {g.num_nodes} nodes")
    return colors


def is_proper_khop(g: Graph, c: Coloring | Sequence[int], k: int) -> bool:
    """True iff nodes at distance ``1..k`` always differ in color (properness on ``G^k``)."""
    colors = _check_cover(g, c)
    _check_hops(k)
    return all(colors[u] != colors[v] for u, v, _ in power_graph(g, k).edges)


@dataclass(frozen=True)
class Violation:
    """Two nodes of the ball around ``center`` sharing ``color`` (one may be the center)."""

    center: int
    first: int
    second: int
    color: int

    def describe(self, d: int) -> str:
        return (
            f"{d}-hop neighborhood of node {self.center} is not rainbow: nodes {self.first} and "
            f"{self.second} both have color {self.color}"
        )


def find_dhop_violation(
    g: Graph, c: Coloring | Sequence[int], d: int, closed: bool = True
) -> Violation | None:
    """First center (ascending id) whose ball repeats a color, or None."""
    colors = _check_cover(g, c)
    _check_hops(d, "d")
    for v, members in enumerate(khop_sets(g, d)):
        seen: dict[int, int] = {colors[v]: v} if closed else {}
        for u in members:
            col = colors[u]
            if col in seen:
                a, b = sorted((seen[col], u))
                return Violation(v, a, b, col)
            seen[col] = u
    return None


def is_dhop_unique(g: Graph, c: Coloring | Sequence[int], d: int, closed: bool = True) -> bool:
    """True iff every ``B_d(v)`` (``N_d(v)`` when ``closed=False``) has pairwise-distinct colors.

    Scans BFS balls directly; never goes through the power graph.
    """
    return find_dhop_violation(g, c, d, closed) is None

