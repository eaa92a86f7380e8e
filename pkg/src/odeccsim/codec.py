"""Systematic single-error-correcting Hamming codes.

A code is held as the k+p columns of its parity-check matrix H, packed into
p-bit integers (bit j of a column is row j).  Positions [0, k) are data bits
and [k, k+p) are parity bits whose columns form the p x p identity, so the
generator matrix is implied and encoding never alters data bits.

Alongside the usual encode / syndrome-decode pair, the codec models a read
path that skips correction entirely and returns the raw stored data bits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .gf2 import BitMatrix, BitVector

SUPPORTED_K = (4, 8, 16, 32, 64, 128)

NO_CORRECTION = "no-correction"
CORRECTED = "corrected"
DETECTED_UNCORRECTABLE = "detected-uncorrectable"


def parity_bits_for(k: int) -> int:
    """Smallest p with 2**p - 1 >= k + p (enough syndromes for every position)."""
    p = 1
    while (1 << p) - 1 < k + p:
        p += 1
    return p


@dataclass(frozen=True)
class DecodeOutcome:
    dataword: BitVector
    action: str
    position: Optional[int] = None  # set iff action == CORRECTED

    def __post_init__(self):
        if (self.position is not None) != (self.action == CORRECTED):
            raise ValueError("position is set iff a correction happened")


@dataclass(frozen=True)
class HammingCode:
    """A (k, k+p) systematic SEC Hamming code."""

    k: int
    p: int
    column_values: tuple[int, ...]
    _row_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _data_row_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _position_by_column: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k, p = self.k, self.p
        n = k + p
        if (1 << p) - 1 < n:
            raise ValueError(f"p={p} provides too few syndromes for {n} positions")
        if len(self.column_values) != n:
            raise ValueError(f"expected {n} columns, got {len(self.column_values)}")
        if any(not 0 < c < (1 << p) for c in self.column_values):
            raise ValueError("columns must be nonzero p-bit values")
        if len(set(self.column_values)) != n:
            raise ValueError("columns must be pairwise distinct")
        for j in range(p):
            if self.column_values[k + j] != 1 << j:
                raise ValueError("parity columns must form the identity")
        if any(c.bit_count() < 2 for c in self.column_values[:k]):
            raise ValueError("data columns must have weight >= 2")
        data_mask = (1 << k) - 1
        row_masks = []
        for j in range(p):
            mask = 0
            for i, col in enumerate(self.column_values):
                if (col >> j) & 1:
                    mask |= 1 << i
            row_masks.append(mask)
        object.__setattr__(self, "_row_masks", tuple(row_masks))
        object.__setattr__(self, "_data_row_masks", tuple(m & data_mask for m in row_masks))
        object.__setattr__(
            self, "_position_by_column", {c: i for i, c in enumerate(self.column_values)}
        )

    @property
    def n(self) -> int:
        return self.k + self.p

    @property
    def data_mask(self) -> int:
        return (1 << self.k) - 1

    @property
    def h_columns(self) -> tuple[BitVector, ...]:
        return tuple(BitVector(self.p, c) for c in self.column_values)

    def parity_check_matrix(self) -> BitMatrix:
        return BitMatrix(self.p, self.n, self._row_masks)

    def position_for_syndrome(self, syndrome: int) -> Optional[int]:
        return self._position_by_column.get(syndrome)

    # Packed-integer fast paths used by the simulation loops.

    def encode_value(self, dataword: int) -> int:
        c = dataword
        for j, mask in enumerate(self._data_row_masks):
            if (mask & dataword).bit_count() & 1:
                c |= 1 << (self.k + j)
        return c

    def syndrome_value(self, codeword: int) -> int:
        s = 0
        for j, mask in enumerate(self._row_masks):
            if (mask & codeword).bit_count() & 1:
                s |= 1 << j
        return s

    def decode_value(self, codeword: int) -> tuple[int, str, Optional[int]]:
        s = self.syndrome_value(codeword)
        if s == 0:
            return codeword & self.data_mask, NO_CORRECTION, None
        pos = self._position_by_column.get(s)
        if pos is None:
            return codeword & self.data_mask, DETECTED_UNCORRECTABLE, None
        return (codeword ^ (1 << pos)) & self.data_mask, CORRECTED, pos

    def bypass_value(self, codeword: int) -> int:
        return codeword & self.data_mask


def construct_random(k: int, seed: int) -> HammingCode:
    """Random systematic SEC code: data columns are a seeded sample, without
    replacement, of all weight->=2 p-bit values."""
    if k not in SUPPORTED_K:
        raise ValueError(f"k must be one of {SUPPORTED_K}, got {k}")
    p = parity_bits_for(k)
    candidates = [v for v in range(1, 1 << p) if v.bit_count() >= 2]
    rng = random.Random(seed)
    data_columns = rng.sample(candidates, k)
    parity_columns = [1 << j for j in range(p)]
    return HammingCode(k, p, tuple(data_columns + parity_columns))


def encode(code: HammingCode, d: BitVector) -> BitVector:
    if d.length != code.k:
        raise ValueError(f"dataword length {d.length} != k={code.k}")
    return BitVector(code.n, code.encode_value(d.value))


def decode(code: HammingCode, c_prime: BitVector) -> DecodeOutcome:
    if c_prime.length != code.n:
        raise ValueError(f"codeword length {c_prime.length} != k+p={code.n}")
    data, action, pos = code.decode_value(c_prime.value)
    return DecodeOutcome(BitVector(code.k, data), action, pos)


def decode_bypass(code: HammingCode, c_prime: BitVector) -> BitVector:
    """Raw read of the stored data bits; parity bits are never revealed."""
    if c_prime.length != code.n:
        raise ValueError(f"codeword length {c_prime.length} != k+p={code.n}")
    return BitVector(code.k, code.bypass_value(c_prime.value))


def serialize_columns(code: HammingCode) -> list[str]:
    """One binary string per column, data columns first.  Log/debug format only."""
    return [col.to01() for col in code.h_columns]
