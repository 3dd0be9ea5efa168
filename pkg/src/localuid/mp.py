"""Deterministic message passing: numeric forward passes and WL-style hashing.

Numeric mode computes

    h0_v = emb(x_v)                       (per-color table for ColorGNN)
    hk_v = Merge_k([h(k-1)_v || sum_u W(u, v) * h(k-1)_u])

where ``Merge_k`` is a two-layer ReLU perceptron.  Every reduction runs in
an order that depends only on the values being reduced, never on node ids,
so relabeling the nodes permutes the output rows bit for bit.

Symbolic mode replaces the networks with an injective hash of
``(own state, sorted multiset of (neighbor state, edge weight))``.  That is the
1-WL refinement and the idealized upper bound on what the numeric model can
separate.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from . import _io
from .coloring import Coloring, greedy_dhop_unique
from .errors import DimensionError, MissingColorTable, ParseError, ValidationError
from .graph import Graph
from .ilp import FeatureMatrix


@dataclass(frozen=True)
class GnnConfig:
    depth: int
    in_dim: int
    hidden_dim: int
    out_dim: int
    aggregator: str = "weighted-sum"

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValidationError("depth must be >= 1")
        if min(self.in_dim, self.hidden_dim, self.out_dim) < 1:
            raise ValidationError("dimensions must be >= 1")
        if self.aggregator != "weighted-sum":
            raise ValidationError(f"unsupported aggregator {self.aggregator!r}")

    def layer_out(self, k: int) -> int:
        return self.out_dim if k == self.depth else self.hidden_dim

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "in_dim": self.in_dim,
            "hidden_dim": self.hidden_dim,
            "out_dim": self.out_dim,
            "aggregator": self.aggregator,
        }


def build_config(spec: Mapping) -> GnnConfig:
    return GnnConfig(
        depth=_io.as_int(_io.require(spec, "depth", int, "config"), "config.depth"),
        in_dim=_io.as_int(_io.require(spec, "in_dim", int, "config"), "config.in_dim"),
        hidden_dim=_io.as_int(_io.require(spec, "hidden_dim", int, "config"), "config.hidden_dim"),
        out_dim=_io.as_int(_io.require(spec, "out_dim", int, "config"), "config.out_dim"),
        aggregator=spec.get("aggregator", "weighted-sum"),
    )


@dataclass(frozen=True)
class MergeLayer:
    """``relu(x @ w1 + b1) @ w2 + b2`` over ``x = [h_v || aggr]``."""

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.maximum(x @ self.w1 + self.b1, 0.0) @ self.w2 + self.b2


@dataclass(frozen=True)
class ParamSet:
    """Embedding tables keyed by color (a single table in anonymous mode) and one merge MLP per layer."""

    emb_tables: Mapping[int, np.ndarray]
    merge: tuple[MergeLayer, ...]

    @classmethod
    def random(cls, cfg: GnnConfig, num_tables: int = 1, seed: int = 0, scale: float = 1.0) -> "ParamSet":
        rng = np.random.default_rng(seed)
        h = cfg.hidden_dim

        def mat(rows: int, cols: int) -> np.ndarray:
            return rng.normal(0.0, scale / np.sqrt(rows), size=(rows, cols))

        tables = {c: mat(cfg.in_dim, h) for c in range(num_tables)}
        merge = tuple(
            MergeLayer(mat(2 * h, h), rng.normal(0.0, 0.1, h), mat(h, cfg.layer_out(k)), rng.normal(0.0, 0.1, cfg.layer_out(k)))
            for k in range(1, cfg.depth + 1)
        )
        return cls(tables, merge)

    def rekey(self, sigma: Mapping[int, int]) -> "ParamSet":
        """Move the table for color ``c`` to key ``sigma[c]``."""
        return ParamSet({sigma[c]: t for c, t in self.emb_tables.items()}, self.merge)

    def check(self, cfg: GnnConfig) -> None:
        h = cfg.hidden_dim
        for c, t in self.emb_tables.items():
            if t.shape != (cfg.in_dim, h):
                raise DimensionError(f"emb table {c} has shape {t.shape}, expected {(cfg.in_dim, h)}")
        if len(self.merge) != cfg.depth:
            raise DimensionError(f"{len(self.merge)} merge layers for depth {cfg.depth}")
        for k, layer in enumerate(self.merge, start=1):
            out = cfg.layer_out(k)
            shapes = (layer.w1.shape, layer.b1.shape, layer.w2.shape, layer.b2.shape)
            if shapes != ((2 * h, h), (h,), (h, out), (out,)):
                raise DimensionError(f"merge layer {k} has shapes {shapes}")

    def to_dict(self) -> dict:
        return {
            "emb_tables": {str(c): self.emb_tables[c].tolist() for c in sorted(self.emb_tables)},
            "merge": [
                {"w1": m.w1.tolist(), "b1": m.b1.tolist(), "w2": m.w2.tolist(), "b2": m.b2.tolist()}
                for m in self.merge
            ],
            "schema": _io.SCHEMA_VERSION,
        }


def _array(value: Any, ndim: int, where: str) -> np.ndarray:
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: not a numeric array") from exc
    if arr.ndim != ndim:
        raise ParseError(f"{where}: expected {ndim}-d array")
    return arr


def build_params(spec: Mapping) -> ParamSet:
    raw_tables = _io.require(spec, "emb_tables", dict, "params")
    tables = {}
    for key, value in raw_tables.items():
        try:
            color = int(key)
        except ValueError as exc:
            raise ParseError(f"params.emb_tables: key {key!r} is not a color id") from exc
        tables[color] = _array(value, 2, f"params.emb_tables[{key}]")
    layers = []
    for k, layer in enumerate(_io.require(spec, "merge", list, "params")):
        where = f"params.merge[{k}]"
        if not isinstance(layer, dict):
            raise ParseError(f"{where}: expected an object")
        layers.append(
            MergeLayer(
                _array(_io.require(layer, "w1", list, where), 2, where),
                _array(_io.require(layer, "b1", list, where), 1, where),
                _array(_io.require(layer, "w2", list, where), 2, where),
                _array(_io.require(layer, "b2", list, where), 1, where),
            )
        )
    return ParamSet(tables, tuple(layers))


def load_params(path: str | Path) -> ParamSet:
    return build_params(_io.read_json(path))


def _feature_array(g: Graph, feats: FeatureMatrix | np.ndarray, cfg: GnnConfig) -> np.ndarray:
    x = feats.features if isinstance(feats, FeatureMatrix) else np.asarray(feats, dtype=float)
    if x.ndim != 2 or x.shape[0] != g.num_nodes:
        raise DimensionError(f"features have shape {x.shape}, expected ({g.num_nodes}, {cfg.in_dim})")
    if x.shape[1] != cfg.in_dim:
        raise DimensionError(f"feature dim {x.shape[1]} != in_dim {cfg.in_dim}")
    return x


def _rowwise(x: np.ndarray, table: np.ndarray) -> np.ndarray:
    # one vector-matrix product per node so a row's result never depends on its position in a batch
    return np.array([row @ table for row in x]).reshape(len(x), table.shape[1])


def _aggregate(g: Graph, h: np.ndarray) -> np.ndarray:
    out = np.zeros_like(h)
    for v in range(g.num_nodes):
        nbrs = g.neighbors(v)
        if not nbrs:
            continue
        msgs = np.asarray(g.neighbor_weights(v))[:, None] * h[list(nbrs)]
        # value-ordered summation keeps the sum independent of neighbor ids
        order = np.lexsort(msgs.T[::-1])
        acc = np.zeros(h.shape[1])
        for row in msgs[order]:
            acc = acc + row
        out[v] = acc
    return out


def _propagate(g: Graph, h: np.ndarray, params: ParamSet, cfg: GnnConfig) -> np.ndarray:
    for layer in params.merge:
        aggr = _aggregate(g, h)
        h = np.array([layer(np.concatenate([h[v], aggr[v]])) for v in range(g.num_nodes)])
        h = h.reshape(g.num_nodes, -1)
    return h


def forward(g: Graph, feats: FeatureMatrix | np.ndarray, params: ParamSet, cfg: GnnConfig) -> np.ndarray:
    """Anonymous (or ColorUID, via a coloruid FeatureMatrix) forward pass; returns ``h^(d)`` per node."""
    x = _feature_array(g, feats, cfg)
    params.check(cfg)
    if len(params.emb_tables) != 1:
        raise DimensionError(f"anonymous forward needs exactly one embedding table, got {len(params.emb_tables)}")
    (table,) = params.emb_tables.values()
    return _propagate(g, _rowwise(x, table), params, cfg)


def forward_colorgnn(
    g: Graph,
    coloring: Coloring,
    feats: FeatureMatrix | np.ndarray,
    params: ParamSet,
    cfg: GnnConfig,
) -> np.ndarray:
    """Forward pass whose layer-0 embedding uses the table of each node's color."""
    x = _feature_array(g, feats, cfg)
    params.check(cfg)
    if len(coloring) != g.num_nodes:
        raise ValidationError(f"coloring has {len(coloring)} entries for {g.num_nodes} nodes")
    missing = sorted(set(coloring.colors) - set(params.emb_tables))
    if missing:
        raise MissingColorTable(f"no embedding table for colors {missing}")
    h0 = np.array([x[v] @ params.emb_tables[c] for v, c in enumerate(coloring.colors)])
    return _propagate(g, h0.reshape(g.num_nodes, cfg.hidden_dim), params, cfg)


# --- symbolic (WL) mode -----------------------------------------------------

DIGEST_BYTES = 8


def _digest(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=DIGEST_BYTES).digest()


def token_bytes(token: Any) -> bytes:
    """Canonical, type-tagged, length-prefixed serialization of an init token."""
    if token is None:
        return b"n"
    if isinstance(token, bool):
        return b"b" + (b"\x01" if token else b"\x00")
    if isinstance(token, int):
        body = token.to_bytes((token.bit_length() + 8) // 8 or 1, "little", signed=True)
        return b"i" + struct.pack("<I", len(body)) + body
    if isinstance(token, float):
        return b"f" + struct.pack("<d", token)
    if isinstance(token, str):
        body = token.encode("utf-8")
        return b"s" + struct.pack("<I", len(body)) + body
    if isinstance(token, bytes):
        return b"y" + struct.pack("<I", len(token)) + token
    if isinstance(token, (tuple, list)):
        parts = [token_bytes(t) for t in token]
        return b"t" + struct.pack("<I", len(parts)) + b"".join(struct.pack("<I", len(p)) + p for p in parts)
    raise ValidationError(f"unsupported WL token type {type(token).__name__}")


@dataclass(frozen=True)
class WlState:
    node_hashes: tuple[bytes, ...]
    round: int
    graph_hash: bytes

    def partition(self) -> list[frozenset[int]]:
        """Classes of nodes sharing a hash, ordered by smallest member."""
        groups: dict[bytes, list[int]] = {}
        for v, h in enumerate(self.node_hashes):
            groups.setdefault(h, []).append(v)
        return sorted((frozenset(vs) for vs in groups.values()), key=min)

    def to_dict(self) -> dict:
        return {
            "rounds": self.round,
            "graph_hash": self.graph_hash.hex(),
            "node_hashes": [h.hex() for h in self.node_hashes],
            "schema": _io.SCHEMA_VERSION,
        }


def _graph_digest(hashes: Sequence[bytes]) -> bytes:
    return _digest(b"graph" + struct.pack("<Q", len(hashes)) + b"".join(sorted(hashes)))


def wl_hash(g: Graph, init: Sequence[Any], rounds: int) -> WlState:
    """Run ``rounds`` synchronous refinement rounds from per-node ``init`` tokens."""
    if rounds < 0:
        raise ValidationError("rounds must be >= 0")
    if len(init) != g.num_nodes:
        raise ValidationError(f"{len(init)} init tokens for {g.num_nodes} nodes")
    hashes = [_digest(b"init" + token_bytes(t)) for t in init]
    weight_bits = [[struct.pack("<d", w) for w in g.neighbor_weights(v)] for v in range(g.num_nodes)]
    for _ in range(rounds):
        new = []
        for v in range(g.num_nodes):
            msgs = sorted(hashes[u] + wb for u, wb in zip(g.neighbors(v), weight_bits[v]))
            new.append(_digest(b"round" + hashes[v] + struct.pack("<Q", len(msgs)) + b"".join(msgs)))
        hashes = new
    return WlState(tuple(hashes), rounds, _graph_digest(hashes))


WL_MODES = ("anonymous", "labels", "colored", "coloruid")


def wl_tokens(g: Graph, mode: str, coloring: Coloring | None = None) -> list[Any]:
    """Init tokens: constant, node label, color, or (label, color)."""
    if mode not in WL_MODES:
        raise ValidationError(f"unknown WL mode {mode!r}; expected one of {WL_MODES}")
    n = g.num_nodes
    labels = g.node_labels if g.node_labels is not None else [()] * n
    if mode == "anonymous":
        return [None] * n
    if mode == "labels":
        return list(labels)
    if coloring is None:
        raise ValidationError(f"WL mode {mode!r} requires a coloring")
    if len(coloring) != n:
        raise ValidationError(f"coloring has {len(coloring)} entries for {n} nodes")
    if mode == "colored":
        return list(coloring.colors)
    return [(labels[v], coloring.colors[v]) for v in range(n)]


def distinguish(g1: Graph, g2: Graph, scheme: str, d: int, rounds: int) -> bool:
    """True certifies that ``rounds``-layer models under ``scheme`` can tell ``g1`` and ``g2`` apart.

    False is inconclusive.  ``anonymous`` feeds node labels only (a constant
    when unlabeled); ``local_uid`` adds a greedy d-hop unique coloring computed
    on each graph separately.
    """
    if rounds < 1:
        raise ValidationError("rounds must be >= 1")
    if scheme == "anonymous":
        t1, t2 = wl_tokens(g1, "labels"), wl_tokens(g2, "labels")
    elif scheme == "local_uid":
        c1, _ = greedy_dhop_unique(g1, d)
        c2, _ = greedy_dhop_unique(g2, d)
        t1, t2 = wl_tokens(g1, "coloruid", c1), wl_tokens(g2, "coloruid", c2)
    else:
        raise ValidationError(f"unknown scheme {scheme!r}; expected 'anonymous' or 'local_uid'")
    return wl_hash(g1, t1, rounds).graph_hash != wl_hash(g2, t2, rounds).graph_hash
