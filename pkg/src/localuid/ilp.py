"""ILP instances, their labeled bipartite graph encoding, and UID feature augmentation.

An instance ``min c^T x  s.t.  A x <= b`` with ``n`` variables and ``m``
constraints becomes a graph on ``n + m`` nodes: node ``i`` is variable ``x_i``
labeled ``[c_i]``, node ``n + j`` is constraint ``j`` labeled ``[b_j]``, and
each nonzero ``A[j, i]`` is an edge ``(i, n + j)`` with that weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from . import _io
from .coloring import Coloring
from .errors import ParseError, ValidationError
from .graph import Graph
from .splitmix import SplitMix64

SCHEMES = ("none", "position", "uniform", "coloruid")


@dataclass(frozen=True)
class IlpInstance:
    n: int
    m: int
    c: tuple[float, ...]
    b: tuple[float, ...]
    A: tuple[tuple[int, int, float], ...]
    integrality: tuple[bool, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValidationError("n and m must be nonnegative")
        if len(self.c) != self.n:
            raise ValidationError(f"c has length {len(self.c)}, expected n={self.n}")
        if len(self.b) != self.m:
            raise ValidationError(f"b has length {len(self.b)}, expected m={self.m}")
        if self.integrality is not None and len(self.integrality) != self.n:
            raise ValidationError(f"integrality has length {len(self.integrality)}, expected n={self.n}")
        for name, vec in (("c", self.c), ("b", self.b)):
            if not all(math.isfinite(x) for x in vec):
                raise ValidationError(f"{name} contains a non-finite value")
        seen = set()
        for j, i, v in self.A:
            if not (0 <= j < self.m and 0 <= i < self.n):
                raise ValidationError(f"A entry ({j}, {i}) out of range for m={self.m}, n={self.n}")
            if (j, i) in seen:
                raise ValidationError(f"duplicate A entry ({j}, {i})")
            if not math.isfinite(v):
                raise ValidationError(f"A entry ({j}, {i}) is not finite")
            if v == 0.0:
                raise ValidationError(f"A entry ({j}, {i}) is an explicit zero")
            seen.add((j, i))

    @property
    def nnz(self) -> int:
        return len(self.A)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "c": list(self.c),
            "b": list(self.b),
            "A": [[j, i, v] for j, i, v in self.A],
        }
        if self.integrality is not None:
            out["integrality"] = list(self.integrality)
        out["schema"] = _io.SCHEMA_VERSION
        return out

    def dense(self) -> np.ndarray:
        A = np.zeros((self.m, self.n))
        for j, i, v in self.A:
            A[j, i] = v
        return A


def build_ilp(spec: Mapping) -> IlpInstance:
    n = _io.as_int(_io.require(spec, "n", int, "ilp"), "ilp.n")
    m = _io.as_int(_io.require(spec, "m", int, "ilp"), "ilp.m")
    c = tuple(_io.as_float(x, "ilp.c") for x in _io.require(spec, "c", list, "ilp"))
    b = tuple(_io.as_float(x, "ilp.b") for x in _io.require(spec, "b", list, "ilp"))
    triplets = []
    for k, t in enumerate(_io.require(spec, "A", list, "ilp")):
        where = f"ilp.A[{k}]"
        if not isinstance(t, list) or len(t) != 3:
            raise ParseError(f"{where}: expected [row, col, value]")
        triplets.append((_io.as_int(t[0], where), _io.as_int(t[1], where), _io.as_float(t[2], where)))
    integrality = spec.get("integrality")
    if integrality is not None:
        if not isinstance(integrality, list) or not all(isinstance(x, bool) for x in integrality):
            raise ParseError("ilp.integrality: expected a list of booleans")
        integrality = tuple(integrality)
    return IlpInstance(n, m, c, b, tuple(triplets), integrality)


def parse_ilp(text: str) -> IlpInstance:
    return build_ilp(_io.loads(text))


def write_ilp(ilp: IlpInstance) -> str:
    return _io.dumps(ilp.to_dict())


def load_ilp(path: str | Path) -> IlpInstance:
    return build_ilp(_io.read_json(path))


@dataclass(frozen=True)
class LabeledBipartiteGraph:
    underlying: Graph
    n: int
    m: int

    def side(self, v: int) -> str:
        if not 0 <= v < self.n + self.m:
            raise ValidationError(f"node {v} out of range")
        return "variable" if v < self.n else "constraint"

    @property
    def num_nodes(self) -> int:
        return self.underlying.num_nodes


def encode_bipartite(ilp: IlpInstance) -> LabeledBipartiteGraph:
    n, m = ilp.n, ilp.m
    edges = [(i, n + j, v) for j, i, v in ilp.A]
    labels = [[x] for x in ilp.c] + [[x] for x in ilp.b]
    return LabeledBipartiteGraph(Graph(n + m, edges, labels), n, m)


@dataclass(frozen=True)
class FeatureMatrix:
    features: np.ndarray
    scheme: str
    seed: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def rows(self) -> int:
        return self.features.shape[0]

    @property
    def dim(self) -> int:
        return self.features.shape[1]

    def to_dict(self) -> dict:
        out: dict = {"scheme": self.scheme}
        if self.seed is not None:
            out["seed"] = self.seed
        out["dim"] = self.dim
        out["features"] = self.features.tolist()
        out.update(self.meta)
        out["schema"] = _io.SCHEMA_VERSION
        return out


def build_features(spec: Mapping) -> FeatureMatrix:
    scheme = _io.require(spec, "scheme", str, "features")
    if scheme not in SCHEMES:
        raise ValidationError(f"unknown scheme {scheme!r}")
    dim = _io.as_int(_io.require(spec, "dim", int, "features"), "features.dim")
    rows = _io.require(spec, "features", list, "features")
    data = [[_io.as_float(x, f"features[{i}]") for x in row] for i, row in enumerate(rows)]
    if any(len(row) != dim for row in data):
        raise ValidationError(f"feature rows do not all have dim={dim}")
    seed = spec.get("seed")
    if seed is not None:
        seed = _io.as_int(seed, "features.seed")
    arr = np.array(data, dtype=float).reshape(len(data), dim)
    return FeatureMatrix(arr, scheme, seed)


def load_features(path: str | Path) -> FeatureMatrix:
    return build_features(_io.read_json(path))


def augment_features(
    g: LabeledBipartiteGraph | Graph,
    scheme: str,
    coloring: Coloring | None = None,
    seed: int | None = None,
) -> FeatureMatrix:
    """Append one identifier channel in [0, 1] to the raw node labels.

    ``position`` ramps over variable nodes and leaves constraint nodes at 0.0
    (a plain ``Graph`` is treated as all variables); ``uniform`` draws one
    SplitMix64 value per node; ``coloruid`` scales ``C(v)`` by ``num_colors - 1``;
    ``none`` returns the labels unchanged.
    """
    if scheme not in SCHEMES:
        raise ValidationError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    graph = g.underlying if isinstance(g, LabeledBipartiteGraph) else g
    num = graph.num_nodes
    labels = np.array(graph.node_labels, dtype=float) if graph.node_labels else np.zeros((num, 0))

    meta: dict = {}
    if scheme == "none":
        return FeatureMatrix(labels, scheme)
    if scheme == "position":
        n_var = g.n if isinstance(g, LabeledBipartiteGraph) else num
        denom = max(n_var - 1, 1)
        channel = [i / denom if i < n_var else 0.0 for i in range(num)]
    elif scheme == "uniform":
        if seed is None:
            raise ValidationError("scheme 'uniform' requires a seed")
        rng = SplitMix64(seed)
        channel = [rng.random() for _ in range(num)]
        meta["generator"] = "splitmix64"
    else:
        if coloring is None:
            raise ValidationError("scheme 'coloruid' requires a coloring")
        if len(coloring) != num:
            raise ValidationError(f"coloring has {len(coloring)} entries for {num} nodes")
        denom = max(coloring.num_colors - 1, 1)
        channel = [col / denom for col in coloring.colors]
    feats = np.hstack([labels, np.array(channel, dtype=float).reshape(num, 1)])
    return FeatureMatrix(feats, scheme, seed if scheme == "uniform" else None, meta)


def onehot_color_features(g: Graph, coloring: Coloring) -> np.ndarray:
    """Alternative color channel: raw labels followed by a one-hot block of width ``num_colors``."""
    num = g.num_nodes
    labels = np.array(g.node_labels, dtype=float) if g.node_labels else np.zeros((num, 0))
    onehot = np.zeros((num, coloring.num_colors))
    onehot[np.arange(num), list(coloring.colors)] = 1.0
    return np.hstack([labels, onehot])

