"""Exact unit-interval arithmetic shared by the encoder and decoder.

Values in [0, 1] are plain ``fractions.Fraction`` objects (canonical,
exactly comparable).  Half-open subintervals [low, high) of [0, 1) carry
the global boundary convention: a point equal to ``low`` is inside, a
point equal to ``high`` is not.

Probabilities are quantized once to Q fractional bits (Q=30 by default)
so that encoder and decoder agree bit-for-bit on every interval split;
after quantization all interval endpoints are dyadic rationals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .bitseq import BitsLike, as_bits

UFrac = Fraction

DEFAULT_Q = 30

# Fixed-precision mode: interval width is held in a 62-bit register and
# renormalized (doubled, consuming one codeword bit) whenever it drops
# below 2^-32 of the register scale.  Rounding is truncation.
FIXED_SCALE_BITS = 62
FIXED_ONE = 1 << FIXED_SCALE_BITS
RENORM_MIN = 1 << (FIXED_SCALE_BITS - 32)


class ArithMode(enum.Enum):
    EXACT = "exact"
    FIXED64 = "fixed64"


@dataclass(frozen=True)
class Interval:
    """Half-open subinterval [low, high) of the unit interval."""

    low: Fraction
    high: Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.low < self.high <= 1):
            raise ValueError(f"invalid interval [{self.low}, {self.high})")

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    def contains(self, v: Fraction) -> bool:
        return self.low <= v < self.high


UNIT = Interval(Fraction(0), Fraction(1))


def quantize_prob(p, q: int = DEFAULT_Q) -> Fraction:
    """Round a probability to the nearest multiple of 2^-q.

    The result is clamped to [2^-q, 1 - 2^-q]; exact ties round to even
    (Python's round on Fraction).
    """
    if q < 8:
        raise ValueError(f"need at least 8 fractional bits, got {q}")
    p = Fraction(p)
    if not (0 < p < 1):
        raise ValueError(f"probability must lie strictly in (0, 1), got {p}")
    scaled = round(p * (1 << q))
    scaled = min(max(scaled, 1), (1 << q) - 1)
    return Fraction(scaled, 1 << q)


def overlap_prob(p, alpha: float, q: int = DEFAULT_Q) -> Fraction:
    """Enlarged symbol probability p^alpha, quantized to q bits.

    alpha=1 returns the quantized p unchanged (no overlap, classic AC).
    """
    if not (0 <= alpha <= 1):
        raise ValueError(f"overlap factor must lie in [0, 1], got {alpha}")
    p = quantize_prob(p, q)
    if alpha == 1:
        return p
    with mpmath.workprec(q + 90):
        x = mpmath.mpf(p.numerator) / mpmath.mpf(p.denominator)
        scaled = mpmath.nint(mpmath.power(x, alpha) * (1 << q))
    scaled = min(max(int(scaled), 1), (1 << q) - 1)
    return Fraction(scaled, 1 << q)


def dyadic_value(bits: BitsLike) -> Fraction:
    """Value of a codeword read as a binary fraction 0.b0 b1 b2 ..."""
    arr = as_bits(bits)
    num = 0
    for b in arr:
        num = (num << 1) | int(b)
    return Fraction(num, 1 << len(arr))


def contains(interval: Interval, v: Fraction) -> bool:
    return interval.contains(v)


def ceil_neg_log2(w: Fraction) -> int:
    """Smallest integer k with 2^-k <= w, for w in (0, 1]."""
    if not (0 < w <= 1):
        raise ValueError(f"width must lie in (0, 1], got {w}")
    # num/den <= 2^-k  <=>  den <= num * 2^k; start from bit lengths.
    k = w.denominator.bit_length() - w.numerator.bit_length()
    while Fraction(1, 1 << max(k, 0)) > w:
        k += 1
    while k > 0 and Fraction(1, 1 << (k - 1)) <= w:
        k -= 1
    return max(k, 0)
