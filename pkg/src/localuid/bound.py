"""Finite-class generalization bound for color-conditioned GNNs.

With ``p`` bits per parameter, the hypothesis class has log-size
``p * (|C| * θ_emb + d * θ_merge)``.  The gap bound and the matching sample
count use the natural logarithm for the confidence term ``ln(2/δ)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

LOG_BASE = "natural"


@dataclass(frozen=True)
class BoundInputs:
    p: int
    num_colors: int
    theta_emb: int
    theta_merge: int
    depth: int
    delta: float
    epsilon: float | None = None
    N: int | None = None

    def __post_init__(self) -> None:
        for name in ("p", "num_colors", "theta_emb", "theta_merge", "depth"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValidationError(f"{name} must be an integer >= 1, got {value!r}")
        if not (0.0 < self.delta < 1.0):
            raise ValidationError(f"delta must lie in (0, 1), got {self.delta}")
        if self.epsilon is not None and not (self.epsilon > 0.0 and math.isfinite(self.epsilon)):
            raise ValidationError(f"epsilon must be positive, got {self.epsilon}")
        if self.N is not None and (isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1):
            raise ValidationError(f"N must be an integer >= 1, got {self.N!r}")

    @property
    def param_count(self) -> int:
        return self.num_colors * self.theta_emb + self.depth * self.theta_merge

    @property
    def log_class_size(self) -> int:
        return self.p * self.param_count

    @property
    def complexity(self) -> float:
        """Numerator shared by both bounds: log class size plus ``ln(2/δ)``."""
        return self.log_class_size + math.log(2.0 / self.delta)


def gen_gap_bound(inp: BoundInputs) -> float:
    """Upper bound on ``|L(h) - L̂(h)|`` holding with probability ``1 - δ`` for every ``h`` in the class."""
    if inp.N is None:
        raise ValidationError("gen_gap_bound needs N")
    return math.sqrt(inp.complexity / (2.0 * inp.N))


def sample_complexity(inp: BoundInputs) -> int:
    """Training-set size ``ceil(complexity / (2 ε²))`` that brings the gap bound down to ``epsilon``."""
    if inp.epsilon is None:
        raise ValidationError("sample_complexity needs epsilon")
    return math.ceil(inp.complexity / (2.0 * inp.epsilon**2))
