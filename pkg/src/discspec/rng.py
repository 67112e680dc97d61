"""Seeded random streams.

All randomness flows from one 64-bit seed through numpy's counter-based
Philox4x64 generator. A named stream uses the 128-bit Philox key
``(seed, crc32(name))`` with the counter starting at zero, so streams are
independent of each other and of the order in which they are requested.
"""

import zlib

import numpy as np

MASK64 = (1 << 64) - 1


def stream(seed: int, name: str = "") -> np.random.Generator:
    if not 0 <= int(seed) <= MASK64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    key = np.array([int(seed), zlib.crc32(name.encode())], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
