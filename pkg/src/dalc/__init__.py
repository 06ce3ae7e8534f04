"""Distributed arithmetic coding with overlapped intervals and linear-code
aided candidate verification.

Encoding maps a binary source block to a subinterval of [0, 1) using
widened (overlapped) branch probabilities, so the code rate drops below
entropy; decoding recovers the block with correlated side information via
a breadth-first M-algorithm search, optionally disambiguated by a small
linear code's parity bits.
"""

from ._backend import BACKEND
from .bitseq import BitSeqError, as_bits, bits_to_str, int_to_bits, parse_bit_file
from .channel import SourceModel, binary_entropy, gen_side_info, gen_source, joint_entropy
from .codec import CodecParams, EncodeResult, classic_ac_encode, encode, select_codeword
from .decoder import (
    CandidatePath,
    DecodeResult,
    DecoderParams,
    MetricVariant,
    decode,
    decode_with_truth,
    enumerate_candidates,
    symbol_metric,
)
from .harness import MethodAggregate, SweepConfig, SweepRow, run_sweep, run_trial, tail_proportion_report
from .interval import ArithMode, Interval, overlap_prob, quantize_prob
from .linear_codes import CodeKind, CodeSpec, parity, parity_matrix, verify

__version__ = "1.0.0"

__all__ = [
    "ArithMode",
    "BACKEND",
    "BitSeqError",
    "CandidatePath",
    "CodecParams",
    "CodeKind",
    "CodeSpec",
    "DecodeResult",
    "DecoderParams",
    "EncodeResult",
    "Interval",
    "MethodAggregate",
    "MetricVariant",
    "SourceModel",
    "SweepConfig",
    "SweepRow",
    "as_bits",
    "binary_entropy",
    "bits_to_str",
    "classic_ac_encode",
    "decode",
    "decode_with_truth",
    "encode",
    "enumerate_candidates",
    "gen_side_info",
    "gen_source",
    "int_to_bits",
    "joint_entropy",
    "overlap_prob",
    "parity",
    "parity_matrix",
    "parse_bit_file",
    "quantize_prob",
    "run_sweep",
    "run_trial",
    "select_codeword",
    "symbol_metric",
    "tail_proportion_report",
    "verify",
]
