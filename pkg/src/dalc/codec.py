"""Overlapped-interval arithmetic encoder.

Each source symbol shrinks the current interval [L, H): symbol 0 keeps
the lower part of width p0' * (H - L), symbol 1 the upper part of width
p1' * (H - L), where p0' = p0^alpha and p1' = p1^alpha are the enlarged
probabilities.  For alpha < 1 the two parts overlap, which is what makes
the code shorter than classic AC and the decoder ambiguous.  The last
``t`` symbols are encoded with alpha forced to 1 (tail termination).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bitseq import BitsLike, as_bits, int_to_bits
from .interval import (
    DEFAULT_Q,
    FIXED_ONE,
    FIXED_SCALE_BITS,
    RENORM_MIN,
    ArithMode,
    Interval,
    UNIT,
    ceil_neg_log2,
    overlap_prob,
    quantize_prob,
)


@dataclass(frozen=True)
class CodecParams:
    """Everything the interval recursion needs, with quantized probabilities.

    ``p1`` is defined as the exact complement of the quantized ``p0`` so
    that the non-overlapped split is gap-free (p0q + p1q == 1 exactly).
    """

    n: int
    p0: float
    alpha: float = 1.0
    t: int = 0
    q: int = DEFAULT_Q
    mode: ArithMode = ArithMode.EXACT

    p0q: Fraction = field(init=False)
    p1q: Fraction = field(init=False)
    p0e: Fraction = field(init=False)
    p1e: Fraction = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"negative block length {self.n}")
        if not (0 < self.p0 < 1):
            raise ValueError(f"p0 must lie strictly in (0, 1), got {self.p0}")
        if not (0 <= self.alpha <= 1):
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not (0 <= self.t <= max(self.n, 0)):
            raise ValueError(f"tail length {self.t} outside [0, {self.n}]")
        p0q = quantize_prob(self.p0, self.q)
        p1q = 1 - p0q
        p0e = overlap_prob(self.p0, self.alpha, self.q)
        p1e = overlap_prob(1 - Fraction(self.p0), self.alpha, self.q)
        # p^alpha >= p and quantization is monotone, so the overlapped
        # split always covers the parent interval.
        assert p0e + p1e >= 1
        object.__setattr__(self, "p0q", p0q)
        object.__setattr__(self, "p1q", p1q)
        object.__setattr__(self, "p0e", p0e)
        object.__setattr__(self, "p1e", p1e)

    def effective_probs(self, i: int) -> tuple[Fraction, Fraction]:
        """Split probabilities for symbol index i (tail symbols lose the overlap)."""
        if i < self.n - self.t:
            return self.p0e, self.p1e
        return self.p0q, self.p1q


@dataclass(frozen=True)
class EncodeResult:
    codeword: np.ndarray
    final_interval: Interval
    rate_bits: int


def child_interval(parent: Interval, symbol: int, p0eff: Fraction, p1eff: Fraction) -> Interval:
    """Subinterval selected by one symbol."""
    if p0eff + p1eff < 1:
        raise ValueError("split probabilities leave a gap")
    w = parent.width
    if symbol == 0:
        return Interval(parent.low, parent.low + p0eff * w)
    return Interval(parent.low + (1 - p1eff) * w, parent.high)


def select_codeword(interval: Interval) -> np.ndarray:
    """Shortest-precision dyadic inside the interval, as k explicit bits.

    k = ceil(-log2 width) + 1 guarantees a multiple of 2^-k exists in any
    half-open interval of that width; leading zeros are kept.
    """
    k = ceil_neg_log2(interval.width) + 1
    num = -((-interval.low.numerator << k) // interval.low.denominator)  # ceil(low * 2^k)
    assert interval.contains(Fraction(num, 1 << k))
    return int_to_bits(num, k)


def _encode_exact(x: np.ndarray, params: CodecParams) -> Interval:
    low, high = Fraction(0), Fraction(1)
    for i, sym in enumerate(x):
        p0e, p1e = params.effective_probs(i)
        w = high - low
        if sym == 0:
            high = low + p0e * w
        else:
            low = low + (1 - p1e) * w
    return Interval(low, high)


def _encode_fixed(x: np.ndarray, params: CodecParams) -> Interval:
    """Truncating fixed-precision version of the interval recursion.

    State: interval [lo, lo + w) / 2^e with w kept in [2^30, 2^62] by
    renormalization; the decoder kernel mirrors this arithmetic exactly.
    """
    one = 1 << params.q
    lo = 0
    w = FIXED_ONE
    e = FIXED_SCALE_BITS
    for i, sym in enumerate(x):
        p0e, p1e = params.effective_probs(i)
        P0 = p0e.numerator * (one // p0e.denominator)
        P1 = p1e.numerator * (one // p1e.denominator)
        if sym == 0:
            w = (w * P0) >> params.q
        else:
            d = (w * (one - P1)) >> params.q
            lo += d
            w -= d
        while w < RENORM_MIN:
            w <<= 1
            lo <<= 1
            e += 1
    return Interval(Fraction(lo, 1 << e), Fraction(lo + w, 1 << e))


def encode(x: BitsLike, params: CodecParams) -> EncodeResult:
    x = as_bits(x)
    if len(x) != params.n:
        raise ValueError(f"input length {len(x)} != n={params.n}")
    if params.n == 0:
        return EncodeResult(np.zeros(1, dtype=np.uint8), UNIT, 1)
    if params.mode is ArithMode.FIXED64:
        final = _encode_fixed(x, params)
    else:
        final = _encode_exact(x, params)
    codeword = select_codeword(final)
    return EncodeResult(codeword, final, len(codeword))


def classic_ac_encode(x: BitsLike, params: CodecParams) -> EncodeResult:
    """Encode with the overlap disabled (alpha = 1)."""
    if params.alpha != 1.0:
        params = CodecParams(
            n=params.n, p0=params.p0, alpha=1.0, t=params.t, q=params.q, mode=params.mode
        )
    return encode(x, params)
