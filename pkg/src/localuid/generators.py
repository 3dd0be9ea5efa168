"""Seeded synthetic inputs: Erdős–Rényi graphs and bin-packing ILPs."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .graph import Graph
from .ilp import IlpInstance


def _pair_from_index(k: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    # row-major enumeration of the strict upper triangle of an n x n matrix
    u = n - 2 - np.floor(np.sqrt(-8.0 * k + 4.0 * n * (n - 1) - 7.0) / 2.0 - 0.5).astype(np.int64)
    v = k + u + 1 - n * (n - 1) // 2 + (n - u) * ((n - u) - 1) // 2
    return u, v


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): the edge count is Binomial(n(n-1)/2, p) and the edge set is a uniform sample of that size."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    pairs = n * (n - 1) // 2
    if pairs == 0:
        return Graph(n)
    m = int(rng.binomial(pairs, p))
    k = np.sort(rng.choice(pairs, size=m, replace=False)).astype(np.int64)
    u, v = _pair_from_index(k, n)
    return Graph(n, zip(u.tolist(), v.tolist()))


def erdos_renyi_avg_degree(n: int, avg_degree: float, seed: int) -> Graph:
    if n < 2:
        return Graph(max(n, 0))
    return erdos_renyi(n, min(1.0, avg_degree / (n - 1)), seed)


def bin_packing_ilp(items: int, bins: int, seed: int, capacity: int = 100) -> IlpInstance:
    """Assignment-style bin packing: ``items * bins + bins`` variables, ``items + bins`` constraints.

    Variables ``x[i, b] = i * bins + b`` put item ``i`` in bin ``b``; ``y[b]``
    (after all ``x``) opens bin ``b``.  Rows: ``-sum_b x[i, b] <= -1`` for each
    item, then ``sum_i s_i x[i, b] - capacity * y[b] <= 0`` for each bin.
    The objective counts open bins.
    """
    if items < 1 or bins < 1:
        raise ValidationError("need at least one item and one bin")
    rng = np.random.default_rng(seed)
    sizes = rng.integers(capacity // 10, capacity // 2 + 1, size=items).tolist()
    n = items * bins + bins
    m = items + bins
    c = [0.0] * (items * bins) + [1.0] * bins
    b = [-1.0] * items + [0.0] * bins
    A = []
    for i in range(items):
        for k in range(bins):
            A.append((i, i * bins + k, -1.0))
    for k in range(bins):
        for i in range(items):
            A.append((items + k, i * bins + k, float(sizes[i])))
        A.append((items + k, items * bins + k, -float(capacity)))
    return IlpInstance(n, m, tuple(c), tuple(b), tuple(A), tuple([True] * n))
