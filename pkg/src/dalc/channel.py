"""Seeded source / side-information generation and entropy bookkeeping.

The source is i.i.d. Bernoulli with P(0) = p0; the side information is
the source passed through a binary symmetric channel with crossover
epsilon.  Randomness comes from numpy's counter-based Philox generator;
the source and the flip pattern use separate streams derived from the
same seed, so changing epsilon never changes the source realization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitseq import BitsLike, as_bits

_SOURCE_STREAM = 0
_FLIP_STREAM = 1


@dataclass(frozen=True)
class SourceModel:
    p0: float
    epsilon: float
    seed: int

    def __post_init__(self) -> None:
        if not (0 < self.p0 < 1):
            raise ValueError(f"p0 must lie strictly in (0, 1), got {self.p0}")
        if not (0 <= self.epsilon < 0.5):
            raise ValueError(f"epsilon must lie in [0, 0.5), got {self.epsilon}")


def _stream(seed: int, stream_id: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed & ((1 << 64) - 1)) + (stream_id << 64)))


def gen_source(n: int, model: SourceModel) -> np.ndarray:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    u = _stream(model.seed, _SOURCE_STREAM).random(n)
    return (u >= model.p0).astype(np.uint8)


def gen_side_info(x: BitsLike, model: SourceModel) -> np.ndarray:
    x = as_bits(x)
    u = _stream(model.seed, _FLIP_STREAM).random(len(x))
    flips = (u < model.epsilon).astype(np.uint8)
    return x ^ flips


def binary_entropy(p: float) -> float:
    """H_b(p) in bits, with 0 log 0 = 0."""
    if not (0 <= p <= 1):
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    if p in (0, 1):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def joint_entropy(p0: float, epsilon: float) -> float:
    """H(X, Y) = H_b(p0) + H_b(epsilon) for the i.i.d./BSC pair."""
    return binary_entropy(p0) + binary_entropy(epsilon)
