"""Binary sequences as numpy uint8 arrays, plus text parsing helpers.

All public entry points accept either a ``"0101"`` string, an iterable of
0/1 ints, or a uint8 array; internally everything is a contiguous uint8
array.
"""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np

BitsLike = Union[str, bytes, Iterable[int], np.ndarray]


class BitSeqError(ValueError):
    """Raised for malformed bit sequences."""


def as_bits(value: BitsLike) -> np.ndarray:
    """Normalize to a uint8 array of 0/1 symbols."""
    if isinstance(value, np.ndarray):
        arr = value.astype(np.uint8, copy=False)
    elif isinstance(value, (str, bytes)):
        if isinstance(value, bytes):
            value = value.decode("ascii")
        cleaned = "".join(value.split())
        if not all(c in "01" for c in cleaned):
            raise BitSeqError(f"not a binary string: {value!r}")
        arr = np.frombuffer(cleaned.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        arr = np.asarray(list(value), dtype=np.uint8)
    if arr.ndim != 1:
        raise BitSeqError("bit sequence must be one-dimensional")
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise BitSeqError("bit sequence contains symbols other than 0/1")
    return np.ascontiguousarray(arr, dtype=np.uint8)


def bits_to_str(bits: BitsLike) -> str:
    return "".join("1" if b else "0" for b in as_bits(bits))


def bits_to_int(bits: BitsLike) -> int:
    """Pack MSB-first into a nonnegative int (empty sequence -> 0)."""
    v = 0
    for b in as_bits(bits):
        v = (v << 1) | int(b)
    return v


def int_to_bits(value: int, length: int) -> np.ndarray:
    """Unpack ``length`` MSB-first bits of ``value``."""
    if value < 0 or value >> length:
        raise BitSeqError(f"{value} does not fit in {length} bits")
    return np.array([(value >> (length - 1 - i)) & 1 for i in range(length)], dtype=np.uint8)


def parse_bit_file(text: str) -> np.ndarray:
    """Parse a '0'/'1' text file, ignoring all whitespace."""
    return as_bits(text)
