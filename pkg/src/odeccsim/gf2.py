"""Dense bit-vector and bit-matrix arithmetic over GF(2).

Vectors and matrix rows are packed into Python integers (bit i of the packed
value is element i), so XOR, AND and popcount cover all the arithmetic needed
for the word sizes used here (at most 136 bits).  Bit 0 is the first element
and prints leftmost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

# column_span materializes up to 2**n vectors of length n.
SPAN_LENGTH_LIMIT = 24


@dataclass(frozen=True, slots=True)
class BitVector:
    """Immutable bit vector of a fixed length."""

    length: int
    value: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be non-negative")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value 0x{self.value:x} has bits outside [0, {self.length})")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        value = 0
        length = 0
        for length, bit in enumerate(bits, start=1):
            if bit:
                value |= 1 << (length - 1)
        return cls(length, value)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise IndexError(f"bit index {index} out of range [0, {self.length})")
        return (self.value >> index) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return BitVector(self.length, self.value ^ other.value)

    def __iter__(self) -> Iterator[int]:
        return ((self.value >> i) & 1 for i in range(self.length))

    def weight(self) -> int:
        return self.value.bit_count()

    def support(self) -> tuple[int, ...]:
        """Indices of the set bits, ascending."""
        return tuple(i for i in range(self.length) if (self.value >> i) & 1)

    def to01(self) -> str:
        return "".join(str((self.value >> i) & 1) for i in range(self.length))


@dataclass(frozen=True, slots=True)
class BitMatrix:
    """Immutable bit matrix; one packed integer per row."""

    rows: int
    cols: int
    row_values: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_values) != self.rows:
            raise ValueError("row count does not match row_values")
        limit = 1 << self.cols
        if any(not 0 <= r < limit for r in self.row_values):
            raise ValueError("row value has bits outside [0, cols)")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "BitMatrix":
        packed = []
        cols = None
        for row in rows:
            vec = BitVector.from_bits(row)
            if cols is None:
                cols = vec.length
            elif vec.length != cols:
                raise ValueError("ragged rows")
            packed.append(vec.value)
        return cls(len(packed), cols or 0, tuple(packed))

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_values[i])

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of range [0, {self.cols})")
        value = 0
        for i, row in enumerate(self.row_values):
            if (row >> j) & 1:
                value |= 1 << i
        return BitVector(self.rows, value)

    def at(self, i: int, j: int) -> int:
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of range [0, {self.cols})")
        return (self.row_values[i] >> j) & 1


def mat_vec_mul(m: BitMatrix, v: BitVector) -> BitVector:
    """Matrix-vector product over GF(2): result[i] = parity(row i AND v)."""
    if v.length != m.cols:
        raise ValueError(f"dimension mismatch: matrix has {m.cols} cols, vector length {v.length}")
    out = 0
    for i, row in enumerate(m.row_values):
        if (row & v.value).bit_count() & 1:
            out |= 1 << i
    return BitVector(m.rows, out)


def column_span(columns: list[BitVector]) -> set[BitVector]:
    """Full linear span (all XOR combinations) of the given vectors.

    The result has 2**rank elements and always contains the zero vector.
    """
    length = columns[0].length if columns else 0
    if any(c.length != length for c in columns):
        raise ValueError("columns must share one length")
    if length > SPAN_LENGTH_LIMIT:
        raise ValueError(f"span enumeration limited to length {SPAN_LENGTH_LIMIT}, got {length}")
    values = {0}
    for col in columns:
        if col.value not in values:
            values |= {v ^ col.value for v in values}
    return {BitVector(length, v) for v in values}


def solve_column_combination(
    columns: list[BitVector], target: BitVector, max_subset: int
) -> Optional[set[int]]:
    """Smallest index subset whose column XOR equals target, or None.

    Searches subset sizes in increasing order and, within a size, in
    lexicographic index order, so the result is deterministic.
    """
    if not columns:
        raise ValueError("columns must be nonempty")
    if max_subset < 1:
        raise ValueError("max_subset must be at least 1")
    length = columns[0].length
    if any(c.length != length for c in columns) or target.length != length:
        raise ValueError("columns and target must share one length")
    values = [c.value for c in columns]
    for size in range(0, min(max_subset, len(columns)) + 1):
        for combo in itertools.combinations(range(len(values)), size):
            acc = 0
            for i in combo:
                acc ^= values[i]
            if acc == target.value:
                return set(combo)
    return None
