"""Breadth-first M-algorithm decoder with linear-code path verification.

Decoding walks the binary source tree symbol by symbol.  At each step the
codeword value c either lies only in the 0-child interval, only in the
1-child, or in their overlap region (both hypotheses kept).  Paths are
ranked by an accumulated log-domain posterior metric against the side
information and pruned to the best M; ties rank the lexicographically
smaller bit string first.  After the last symbol the candidates are
checked against the parity sequence in descending metric order and the
first consistent path wins.  If nothing verifies, the best-metric path is
returned flagged unverified (BER measurement needs output bits either way).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ._backend import kernel
from .bitseq import BitsLike, as_bits, bits_to_int, int_to_bits
from .codec import CodecParams
from .interval import ArithMode, Interval, dyadic_value
from .linear_codes import CodeKind, CodeSpec, first_verified_index


class MetricVariant(enum.Enum):
    DAC_EQ1 = "dac"  # includes the source prior p(x)
    MDAC_EQ3 = "mdac"  # likelihood ratio only


@dataclass(frozen=True)
class CandidatePath:
    bits: tuple[int, ...]
    interval: Interval
    log_metric: float


@dataclass(frozen=True)
class DecoderParams:
    codec: CodecParams
    M: int = 2048
    metric: MetricVariant = MetricVariant.MDAC_EQ3
    epsilon: float = 0.0
    spec: CodeSpec = CodeSpec.none()

    def __post_init__(self) -> None:
        if self.M < 1:
            raise ValueError(f"M must be >= 1, got {self.M}")
        if not (0 <= self.epsilon < 0.5):
            raise ValueError(f"epsilon must lie in [0, 0.5), got {self.epsilon}")


@dataclass
class DecodeStats:
    candidates_final: int
    correct_path_present: Optional[bool] = None
    pruned_at: Optional[int] = None


@dataclass
class DecodeResult:
    bits: np.ndarray
    verified: bool
    rank: int
    stats: DecodeStats


def symbol_metric(x_bit: int, y_bit: int, p0, epsilon: float, variant: MetricVariant) -> float:
    """Per-symbol log metric ln[p(x) p(y|x) / p(y)] or ln[p(y|x) / p(y)].

    epsilon = 0 with x != y returns -inf (zero likelihood sentinel).
    """
    if not (0 <= epsilon < 0.5):
        raise ValueError(f"epsilon must lie in [0, 0.5), got {epsilon}")
    p0 = float(p0)
    p_y_given_x = (1 - epsilon) if x_bit == y_bit else epsilon
    if p_y_given_x == 0.0:
        return -math.inf
    p_y = p0 * (1 - epsilon) + (1 - p0) * epsilon if y_bit == 0 else p0 * epsilon + (1 - p0) * (1 - epsilon)
    value = p_y_given_x / p_y
    if variant is MetricVariant.DAC_EQ1:
        value *= p0 if x_bit == 0 else (1 - p0)
    return math.log(value)


def metric_table(dparams: DecoderParams) -> list[list[float]]:
    """mtab[x][y], shared by both arithmetic backends."""
    p0 = float(dparams.codec.p0q)
    return [
        [symbol_metric(x, y, p0, dparams.epsilon, dparams.metric) for y in (0, 1)]
        for x in (0, 1)
    ]


def step(
    path: CandidatePath, c: Fraction, i: int, dparams: DecoderParams, y_bit: int
) -> list[CandidatePath]:
    """Extend one path by one symbol (exact arithmetic), 1 or 2 successors."""
    codec = dparams.codec
    if not path.interval.contains(c):
        raise ValueError("codeword value lies outside the path interval")
    p0e, p1e = codec.effective_probs(i)
    low, high = path.interval.low, path.interval.high
    w = high - low
    zero_high = low + p0e * w
    one_low = low + (1 - p1e) * w
    assert one_low <= zero_high, "split probabilities leave a gap"
    mtab = metric_table(dparams)
    out = []
    if c < zero_high:
        out.append(
            CandidatePath(
                path.bits + (0,), Interval(low, zero_high), path.log_metric + mtab[0][y_bit]
            )
        )
    if c >= one_low:
        out.append(
            CandidatePath(
                path.bits + (1,), Interval(one_low, high), path.log_metric + mtab[1][y_bit]
            )
        )
    assert out, "children must cover the parent interval"
    return out


def prune(candidates: Sequence[CandidatePath], M: int) -> list[CandidatePath]:
    """Keep the M best by log metric; ties keep lexicographically smaller bits."""
    if len(candidates) <= M:
        return list(candidates)
    order = sorted(range(len(candidates)), key=lambda j: (-candidates[j].log_metric, candidates[j].bits))
    keep = sorted(order[:M])
    return [candidates[j] for j in keep]


def _quant_int(frac: Fraction, q: int) -> int:
    one = 1 << q
    return frac.numerator * (one // frac.denominator)


def _enumerate_exact(cbits, y, dparams: DecoderParams, truth):
    codec = dparams.codec
    n = codec.n
    c = dyadic_value(cbits)
    mtab = metric_table(dparams)

    bits_arr = [0]  # packed MSB-first ints; index order == lex order
    lows = [Fraction(0)]
    highs = [Fraction(1)]
    mets = [0.0]
    true_idx = 0 if truth is not None else -1
    pruned_at = -1

    for i in range(n):
        p0e, p1e = codec.effective_probs(i)
        yi = int(y[i])
        m0, m1 = mtab[0][yi], mtab[1][yi]
        tbit = int(truth[i]) if true_idx >= 0 else -1
        nb, nl, nh, nm = [], [], [], []
        new_true = -1
        for k in range(len(bits_arr)):
            low, high = lows[k], highs[k]
            w = high - low
            zero_high = low + p0e * w
            one_low = low + (1 - p1e) * w
            if c < zero_high:
                if k == true_idx and tbit == 0:
                    new_true = len(nb)
                nb.append(bits_arr[k] << 1)
                nl.append(low)
                nh.append(zero_high)
                nm.append(mets[k] + m0)
            if c >= one_low:
                if k == true_idx and tbit == 1:
                    new_true = len(nb)
                nb.append((bits_arr[k] << 1) | 1)
                nl.append(one_low)
                nh.append(high)
                nm.append(mets[k] + m1)
        if true_idx >= 0 and new_true < 0:
            pruned_at = i
        true_idx = new_true
        if len(nb) > dparams.M:
            order = sorted(range(len(nb)), key=lambda j: (-nm[j], j))
            keep = sorted(order[: dparams.M])
            pos = {idx: p for p, idx in enumerate(keep)}
            if true_idx >= 0:
                if true_idx in pos:
                    true_idx = pos[true_idx]
                else:
                    pruned_at = i
                    true_idx = -1
            nb = [nb[j] for j in keep]
            nl = [nl[j] for j in keep]
            nh = [nh[j] for j in keep]
            nm = [nm[j] for j in keep]
        bits_arr, lows, highs, mets = nb, nl, nh, nm

    K = len(bits_arr)
    order = sorted(range(K), key=lambda j: (-mets[j], j))
    bits_matrix = np.zeros((K, n), dtype=np.uint8)
    for r, idx in enumerate(order):
        bits_matrix[r] = int_to_bits(bits_arr[idx], n)
    metrics = np.array([mets[j] for j in order])
    correct_present = None if truth is None else (true_idx >= 0)
    return bits_matrix, metrics, correct_present, pruned_at


def enumerate_candidates(codeword: BitsLike, y: BitsLike, dparams: DecoderParams, truth=None):
    """Ranked pre-verification candidate set.

    Returns (bits_matrix, metrics, correct_path_present, pruned_at): rows of
    bits_matrix in descending metric order with the lexicographic tie-break.
    """
    codec = dparams.codec
    cbits = as_bits(codeword)
    y = as_bits(y)
    if len(y) != codec.n:
        raise ValueError(f"side information length {len(y)} != n={codec.n}")
    if truth is not None:
        truth = as_bits(truth)
        if len(truth) != codec.n:
            raise ValueError(f"truth length {len(truth)} != n={codec.n}")
    if codec.mode is ArithMode.EXACT:
        return _enumerate_exact(cbits, y, dparams, truth)
    q = codec.q
    return kernel.decode_fixed(
        cbits,
        codec.n,
        codec.t,
        _quant_int(codec.p0e, q),
        _quant_int(codec.p1e, q),
        _quant_int(codec.p0q, q),
        _quant_int(codec.p1q, q),
        q,
        dparams.M,
        y,
        metric_table(dparams),
        truth,
    )


def _finish(bits_matrix, metrics, correct_present, pruned_at, dparams: DecoderParams, z):
    spec = dparams.spec
    if spec.kind is CodeKind.NONE:
        chosen, verified = 0, True
    else:
        z = as_bits(z if z is not None else [])
        idx = first_verified_index(bits_matrix, spec, z)
        if idx >= 0:
            chosen, verified = idx, True
        else:
            chosen, verified = 0, False
    stats = DecodeStats(
        candidates_final=len(bits_matrix),
        correct_path_present=correct_present,
        pruned_at=None if pruned_at < 0 else pruned_at,
    )
    return DecodeResult(bits=bits_matrix[chosen].copy(), verified=verified, rank=chosen + 1, stats=stats)


def decode(codeword: BitsLike, y: BitsLike, z, dparams: DecoderParams) -> DecodeResult:
    bm, metrics, corr, pruned = enumerate_candidates(codeword, y, dparams)
    return _finish(bm, metrics, corr, pruned, dparams, z)


def decode_with_truth(
    codeword: BitsLike, y: BitsLike, z, dparams: DecoderParams, truth: BitsLike
) -> DecodeResult:
    """Same as decode, additionally tracking where the true path survives."""
    bm, metrics, corr, pruned = enumerate_candidates(codeword, y, dparams, truth=truth)
    return _finish(bm, metrics, corr, pruned, dparams, z)
