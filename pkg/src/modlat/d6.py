"""digraph6 encoding of directed graphs.

One printable line per graph: header byte ``&``, the 6-bit-coded vertex
count, then the n*n adjacency matrix in row-major order packed 6 bits per
character with an offset of 63.  This implementation covers n <= 62, which
is ample here; the encoding is bit-exact so files can be compared byte by
byte.
"""

from __future__ import annotations

from typing import Iterable

__all__ = ["encode_digraph6", "decode_digraph6", "Digraph6Error"]

_HEADER = 0x26  # '&'


class Digraph6Error(ValueError):
    """Raised for malformed digraph6 records."""


def encode_digraph6(n: int, arcs: Iterable[tuple[int, int]]) -> bytes:
    """Encode ``n`` vertices and a set of arcs as one digraph6 line
    (without a trailing newline)."""
    if not 0 <= n <= 62:
        raise Digraph6Error(f"vertex count {n} outside supported range 0..62")
    matrix = bytearray(n * n)
    for a, b in arcs:
        if not (0 <= a < n and 0 <= b < n):
            raise Digraph6Error(f"arc ({a},{b}) out of range for n={n}")
        matrix[a * n + b] = 1
    out = bytearray([_HEADER, n + 63])
    for i in range(0, n * n, 6):
        group = 0
        for j in range(6):
            group <<= 1
            if i + j < n * n and matrix[i + j]:
                group |= 1
        out.append(group + 63)
    return bytes(out)


def decode_digraph6(record: bytes) -> tuple[int, frozenset[tuple[int, int]]]:
    """Decode one digraph6 line into ``(n, arcs)``."""
    record = record.strip()
    if not record or record[0] != _HEADER:
        raise Digraph6Error("record does not start with the digraph6 header '&'")
    if len(record) < 2:
        raise Digraph6Error("record too short")
    n = record[1] - 63
    if not 0 <= n <= 62:
        raise Digraph6Error(f"vertex count byte {record[1]} outside supported range")
    body = record[2:]
    expected = (n * n + 5) // 6
    if len(body) != expected:
        raise Digraph6Error(f"expected {expected} payload bytes for n={n}, got {len(body)}")
    arcs = set()
    for k, ch in enumerate(body):
        group = ch - 63
        if not 0 <= group < 64:
            raise Digraph6Error(f"payload byte {ch} out of range")
        for j in range(6):
            if group & (1 << (5 - j)):
                pos = k * 6 + j
                if pos >= n * n:
                    raise Digraph6Error("nonzero padding bits")
                arcs.add(divmod(pos, n))
    return n, frozenset(arcs)
