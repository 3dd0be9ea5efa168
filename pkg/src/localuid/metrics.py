"""Top-m% error and mean squared error for predicted solution vectors."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from . import _io
from .errors import ComplexityError, ParseError, ValidationError

DEFAULT_BLOCK_CAP = 8


def round_half_away(x: float) -> float:
    """Round to nearest integer, halves away from zero (``Round(2.5) == 3``, ``Round(-2.5) == -3``)."""
    ax = abs(x)
    r = math.floor(ax)
    # ax - r is exact for doubles, unlike floor(ax + 0.5)
    if ax - r >= 0.5:
        r += 1
    return math.copysign(r, x) if r else 0.0


@dataclass(frozen=True)
class SolutionPair:
    y: tuple[float, ...]
    yhat: tuple[float, ...]
    orbits: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "y", tuple(float(v) for v in self.y))
        object.__setattr__(self, "yhat", tuple(float(v) for v in self.yhat))
        if len(self.y) != len(self.yhat):
            raise ValidationError(f"y has length {len(self.y)} but yhat has {len(self.yhat)}")
        if self.orbits is not None:
            blocks = tuple(tuple(int(i) for i in block) for block in self.orbits)
            flat = sorted(i for block in blocks for i in block)
            if flat != list(range(len(self.y))):
                raise ValidationError("orbit blocks must be disjoint and cover 0..n-1")
            object.__setattr__(self, "orbits", blocks)


def build_solution(spec: Mapping) -> SolutionPair:
    y = [_io.as_float(v, "solution.y") for v in _io.require(spec, "y", list, "solution")]
    yhat = [_io.as_float(v, "solution.yhat") for v in _io.require(spec, "yhat", list, "solution")]
    orbits = spec.get("orbits")
    if orbits is not None:
        if not isinstance(orbits, list) or not all(isinstance(b, list) for b in orbits):
            raise ParseError("solution.orbits: expected a list of index lists")
        orbits = tuple(tuple(_io.as_int(i, "solution.orbits") for i in b) for b in orbits)
    return SolutionPair(tuple(y), tuple(yhat), orbits)


def load_solution(path: str | Path) -> SolutionPair:
    return build_solution(_io.read_json(path))


def align_ground_truth(p: SolutionPair, block_cap: int = DEFAULT_BLOCK_CAP) -> tuple[float, ...]:
    """``π*(y)``: permute ``y`` within each orbit block to minimize ``||yhat - π(y)||_1``.

    Blocks are independent under L1, so each is searched exhaustively on its
    own; among equal-cost arrangements the first in lexicographic
    permutation order wins.
    """
    if p.orbits is None:
        return p.y
    aligned = list(p.y)
    for block in p.orbits:
        if len(block) > block_cap:
            raise ComplexityError(f"orbit block of size {len(block)} exceeds brute-force cap {block_cap}")
        idx = sorted(block)
        best_cost = math.inf
        best: tuple[int, ...] = tuple(idx)
        for perm in itertools.permutations(idx):
            cost = sum(abs(p.yhat[i] - p.y[j]) for i, j in zip(idx, perm))
            if cost < best_cost:
                best_cost, best = cost, perm
        for i, j in zip(idx, best):
            aligned[i] = p.y[j]
    return tuple(aligned)


def selection_size(n: int, m: float) -> int:
    """``floor(n * m / 100)``, at least 1."""
    return max(1, math.floor(n * m / 100))


def top_m_error(p: SolutionPair, m: float, block_cap: int = DEFAULT_BLOCK_CAP) -> float:
    """Sum of rounding errors over the ``m``% best-predicted coordinates after orbit alignment."""
    if not (0 < m <= 100):
        raise ValidationError(f"m must lie in (0, 100], got {m}")
    n = len(p.y)
    if n == 0:
        return 0.0
    ytil = align_ground_truth(p, block_cap)
    errs = [abs(round_half_away(p.yhat[i]) - ytil[i]) for i in range(n)]
    chosen = sorted(range(n), key=lambda i: (errs[i], i))[: selection_size(n, m)]
    return float(sum(errs[i] for i in chosen))


def mse(y: Sequence[float], yhat: Sequence[float]) -> float:
    if len(y) != len(yhat):
        raise ValidationError(f"length mismatch: {len(y)} vs {len(yhat)}")
    if len(y) == 0:
        raise ValidationError("mse needs at least one entry")
    return math.fsum((a - b) ** 2 for a, b in zip(y, yhat)) / len(y)
