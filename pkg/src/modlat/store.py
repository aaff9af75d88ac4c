"""Persisted rack store: digraph6 records plus a seekable offset index.

A store is a directory holding, for every size class k, three files named
``<family>-<k>.d6`` (one canonical digraph6 record per line, sorted),
``<family>-<k>.idx`` (one little-endian uint64 byte offset per record) and
``<family>-<k>.meta`` (tab-separated: record index, decoration-site count,
cycle index of the site action).  Record access seeks straight to the
indexed offset, so readers touch one line per lookup; any number of
readers may work concurrently since every access opens its own handle.

Writing is deterministic: the same records produce byte-identical files.
"""

from __future__ import annotations

import struct
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Mapping, NamedTuple, Sequence

from .canon import site_action
from .d6 import decode_digraph6
from .lattice import Lattice
from .polya import CycleIndex, cycle_index

__all__ = [
    "RackStore",
    "MemoryStore",
    "StoreError",
    "RecordMeta",
    "store_write",
    "store_open",
    "store_get",
    "cycle_index_to_str",
    "cycle_index_from_str",
]


class StoreError(RuntimeError):
    """Raised for missing, inconsistent, or corrupt store files."""


class RecordMeta(NamedTuple):
    index: int
    site_count: int
    cycle_index: CycleIndex


def cycle_index_to_str(z: CycleIndex) -> str:
    """Compact text form, e.g. ``1.1.1.1:1/2;2.1.1:1/2`` (``e`` for the
    empty cycle type of a degree-0 action)."""
    parts = []
    for cycle_type, coeff in z.terms:
        name = ".".join(map(str, cycle_type)) if cycle_type else "e"
        parts.append(f"{name}:{coeff.numerator}/{coeff.denominator}")
    return ";".join(parts)


def cycle_index_from_str(text: str) -> CycleIndex:
    terms = []
    degree = 0
    for part in text.split(";"):
        name, _, frac = part.partition(":")
        if not frac:
            raise StoreError(f"bad cycle index entry {part!r}")
        cycle_type = () if name == "e" else tuple(int(x) for x in name.split("."))
        num, _, den = frac.partition("/")
        terms.append((cycle_type, Fraction(int(num), int(den))))
        degree = sum(cycle_type)
    return CycleIndex(degree, tuple(terms))


def _meta_for(form: bytes) -> RecordMeta:
    n, arcs = decode_digraph6(form)
    lattice = Lattice(n, arcs)
    action = site_action(lattice)
    return RecordMeta(0, action.degree, cycle_index(action))


def _decode_record(form: bytes) -> Lattice:
    n, arcs = decode_digraph6(form)
    return Lattice(n, arcs)


class RackStore:
    """Read access to an on-disk store; see the module docstring for the
    layout."""

    def __init__(self, path: str | Path, family: str = "rack"):
        self.path = Path(path)
        self.family = family
        if not self.path.is_dir():
            raise StoreError(f"{self.path} is not a directory")
        self._counts: dict[int, int] = {}
        self._offsets: dict[int, list[int]] = {}
        self._meta: dict[int, list[RecordMeta]] = {}
        for d6file in sorted(self.path.glob(f"{family}-*.d6")):
            try:
                k = int(d6file.stem.split("-")[-1])
            except ValueError:
                continue
            idx = d6file.with_suffix(".idx")
            if not idx.exists():
                raise StoreError(f"missing offset index {idx}")
            raw = idx.read_bytes()
            if len(raw) % 8:
                raise StoreError(f"offset index {idx} is not a multiple of 8 bytes")
            offsets = list(struct.unpack(f"<{len(raw) // 8}Q", raw))
            if any(b <= a for a, b in zip(offsets, offsets[1:])):
                raise StoreError(f"offset index {idx} is not strictly increasing")
            self._offsets[k] = offsets
            self._counts[k] = len(offsets)
        if not self._counts:
            raise StoreError(f"no {family!r} size classes found in {self.path}")

    def sizes(self) -> list[int]:
        return sorted(self._counts)

    def available(self, k: int) -> bool:
        return k in self._counts

    def count(self, k: int) -> int:
        self._require(k)
        return self._counts[k]

    def _require(self, k: int) -> None:
        if k not in self._counts:
            raise StoreError(f"store has no size class {k}")

    def _d6_path(self, k: int) -> Path:
        return self.path / f"{self.family}-{k}.d6"

    def record(self, k: int, i: int) -> bytes:
        """Record ``i`` of size class ``k`` via one seek."""
        self._require(k)
        offsets = self._offsets[k]
        if not 0 <= i < len(offsets):
            raise IndexError(f"record index {i} out of range (count {len(offsets)})")
        with open(self._d6_path(k), "rb") as fh:
            fh.seek(offsets[i])
            line = fh.readline()
            end = fh.tell()
        boundary = offsets[i + 1] if i + 1 < len(offsets) else None
        if boundary is not None and end != boundary:
            raise StoreError(
                f"offset index mismatch at record {i} of size class {k}"
            )
        if not line.endswith(b"\n"):
            raise StoreError(f"record {i} of size class {k} is not newline-terminated")
        return line.rstrip(b"\n")

    def records(self, k: int) -> Iterator[bytes]:
        self._require(k)
        with open(self._d6_path(k), "rb") as fh:
            for line in fh:
                yield line.rstrip(b"\n")

    def get(self, k: int, i: int) -> Lattice:
        return _decode_record(self.record(k, i))

    def meta(self, k: int) -> list[RecordMeta]:
        self._require(k)
        if k not in self._meta:
            path = self._d6_path(k).with_suffix(".meta")
            if not path.exists():
                raise StoreError(f"missing metadata file {path}")
            rows = []
            for line in path.read_text().splitlines():
                if not line:
                    continue
                idx, sites, zstr = line.split("\t")
                rows.append(RecordMeta(int(idx), int(sites), cycle_index_from_str(zstr)))
            if len(rows) != self._counts[k]:
                raise StoreError(f"metadata row count mismatch for size class {k}")
            self._meta[k] = rows
        return self._meta[k]


class MemoryStore:
    """The same access surface as :class:`RackStore`, backed by in-memory
    record lists; used when no on-disk store has been built."""

    def __init__(self, forms_by_size: Mapping[int, Sequence[bytes]], family: str = "rack"):
        self.path = None
        self.family = family
        self._records = {k: list(v) for k, v in forms_by_size.items()}
        self._meta: dict[int, list[RecordMeta]] = {}

    def sizes(self) -> list[int]:
        return sorted(self._records)

    def available(self, k: int) -> bool:
        return k in self._records

    def count(self, k: int) -> int:
        self._require(k)
        return len(self._records[k])

    def _require(self, k: int) -> None:
        if k not in self._records:
            raise StoreError(f"store has no size class {k}")

    def record(self, k: int, i: int) -> bytes:
        self._require(k)
        rows = self._records[k]
        if not 0 <= i < len(rows):
            raise IndexError(f"record index {i} out of range (count {len(rows)})")
        return rows[i]

    def records(self, k: int) -> Iterator[bytes]:
        self._require(k)
        return iter(self._records[k])

    def get(self, k: int, i: int) -> Lattice:
        return _decode_record(self.record(k, i))

    def meta(self, k: int) -> list[RecordMeta]:
        self._require(k)
        if k not in self._meta:
            rows = []
            for i, form in enumerate(self._records[k]):
                m = _meta_for(form)
                rows.append(RecordMeta(i, m.site_count, m.cycle_index))
            self._meta[k] = rows
        return self._meta[k]


def store_write(
    forms_by_size: Mapping[int, Sequence[bytes]],
    path: str | Path,
    family: str = "rack",
) -> RackStore:
    """Write records (sorted per size class) with offset and metadata
    sidecars, then open the result."""
    base = Path(path)
    base.mkdir(parents=True, exist_ok=True)
    for k in sorted(forms_by_size):
        forms = sorted(forms_by_size[k])
        offsets = []
        pos = 0
        with open(base / f"{family}-{k}.d6", "wb") as fh:
            for form in forms:
                offsets.append(pos)
                fh.write(form)
                fh.write(b"\n")
                pos += len(form) + 1
        with open(base / f"{family}-{k}.idx", "wb") as fh:
            fh.write(struct.pack(f"<{len(offsets)}Q", *offsets))
        with open(base / f"{family}-{k}.meta", "w") as fh:
            for i, form in enumerate(forms):
                m = _meta_for(form)
                fh.write(f"{i}\t{m.site_count}\t{cycle_index_to_str(m.cycle_index)}\n")
    return RackStore(base, family)


def store_open(path: str | Path, family: str = "rack") -> RackStore:
    return RackStore(path, family)


def store_get(store: RackStore | MemoryStore, k: int, i: int) -> Lattice:
    return store.get(k, i)
