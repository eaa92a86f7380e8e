"""Deterministic seed derivation for nested simulation streams.

Every random stream in the simulator is seeded from a list of integer (or
short string) identity parts, so results depend only on the configured base
seed and never on process state, hashing randomization, or evaluation order.
"""

from __future__ import annotations

import struct

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive(*parts: int | str) -> int:
    """Fold identity parts into one well-mixed 64-bit seed."""
    acc = 0x243F6A8885A308D3
    for part in parts:
        if isinstance(part, str):
            part = int.from_bytes(part.encode("utf-8"), "big")
        if part < 0:
            part = -2 * part + 1
        acc = _splitmix64(acc ^ (part & _MASK64))
        part >>= 64
        while part:
            acc = _splitmix64(acc ^ (part & _MASK64))
            part >>= 64
    return acc


def float_bits(value: float) -> int:
    """IEEE-754 bit pattern of a float, for exact use as a seed part."""
    return struct.unpack("<Q", struct.pack("<d", value))[0]
