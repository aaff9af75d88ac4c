"""Census counts and virtual listings over a rack store.

The number of modular vi-lattices of size n is assembled from the store
without constructing a single lattice: racks are grouped by the cycle
index of their site action, and each group contributes its tally times
the number of (n - k)-trinket decorations for that index.  Vertically
decomposable lattices are counted by the standard recurrence over the
size of the parts.

Virtual listings expose those same counts as random-access sequences:
members are built on demand from the stored racks by decoration and
vertical composition, with a fully specified order so that ranks are
reproducible (racks by size then record index, decoration vectors in
decreasing lexicographic order, composition shapes in increasing
lexicographic order with the first part most significant).
"""

from __future__ import annotations

import random
from bisect import bisect_right
from functools import cached_property
from typing import Iterable, Iterator

from .canon import canonical_form, site_action
from .d6 import Digraph6Error
from .lattice import Lattice, vertical_compose
from .orbits import OrbitVectorFamily
from .polya import CycleIndex, cycle_index, decoration_count_for_index
from .racks import decorate, is_rack, rack_of
from .store import MemoryStore, RackStore, StoreError, cycle_index_to_str

__all__ = [
    "mv_count",
    "m_count",
    "cycle_index_census",
    "listing_mv",
    "listing_m",
    "listing_unrank",
    "listing_iterate",
    "listing_sample",
    "MvListing",
    "MListing",
    "verify_store",
]

Store = RackStore | MemoryStore


def _require_sizes(store: Store, n: int) -> None:
    missing = [k for k in range(1, n + 1) if not store.available(k)]
    if missing:
        raise StoreError(f"store is missing size classes {missing}")


def cycle_index_census(store: Store, k: int) -> dict[CycleIndex, int]:
    """Tally of stored size-k racks per cycle index of their site action."""
    out: dict[CycleIndex, int] = {}
    for meta in store.meta(k):
        out[meta.cycle_index] = out.get(meta.cycle_index, 0) + 1
    return out


def mv_count(store: Store, n: int) -> int:
    """Number of unlabeled modular vi-lattices with n elements."""
    if n < 1:
        raise ValueError("n must be at least 1")
    _require_sizes(store, n)
    total = 0
    for k in range(1, n + 1):
        for z, tally in cycle_index_census(store, k).items():
            total += tally * decoration_count_for_index(z, n - k)
    return total


def m_count(store: Store, n: int) -> int:
    """Number of unlabeled modular lattices with n elements, by composing
    vi parts vertically: M_n = sum over j of MV_j * M_(n-j+1), M_1 = 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    _require_sizes(store, n)
    mv = {j: mv_count(store, j) for j in range(2, n + 1)}
    m = [0] * (n + 1)
    m[1] = 1
    for size in range(2, n + 1):
        m[size] = sum(mv[j] * m[size - j + 1] for j in range(2, size + 1))
    return m[n]


class MvListing:
    """Virtual listing of the modular vi-lattices with n elements."""

    def __init__(self, n: int, store: Store):
        if n < 1:
            raise ValueError("n must be at least 1")
        _require_sizes(store, n)
        self.n = n
        self.store = store

    @cached_property
    def _blocks(self) -> list[tuple[int, int, int]]:
        """(rack size, record index, decoration count) per nonempty block,
        in listing order."""
        blocks = []
        for k in range(1, self.n + 1):
            for meta in self.store.meta(k):
                d = decoration_count_for_index(meta.cycle_index, self.n - k)
                if d:
                    blocks.append((k, meta.index, d))
        return blocks

    @cached_property
    def _cumulative(self) -> list[int]:
        acc = []
        total = 0
        for _, _, d in self._blocks:
            total += d
            acc.append(total)
        return acc

    @property
    def cardinality(self) -> int:
        return self._cumulative[-1] if self._cumulative else 0

    def _family_for(self, k: int, i: int) -> tuple[Lattice, OrbitVectorFamily]:
        rack = self.store.get(k, i)
        return rack, OrbitVectorFamily(site_action(rack), self.n - k)

    def unrank(self, index: int) -> Lattice:
        if not 0 <= index < self.cardinality:
            raise IndexError(f"index out of range (cardinality {self.cardinality})")
        b = bisect_right(self._cumulative, index)
        k, i, _ = self._blocks[b]
        offset = index - (self._cumulative[b - 1] if b else 0)
        rack, family = self._family_for(k, i)
        return decorate(rack, family.unrank(offset))

    def __iter__(self) -> Iterator[Lattice]:
        for k, i, _ in self._blocks:
            rack, family = self._family_for(k, i)
            for vector in family:
                yield decorate(rack, vector)

    def sample(self, seed: int) -> Lattice:
        return self.unrank(random.Random(seed).randrange(self.cardinality))


def _shapes(n: int) -> Iterator[tuple[int, ...]]:
    """Vertical composition shapes (j_1, ..., j_r), parts >= 2 with
    sum(j_i - 1) == n - 1, in increasing lexicographic order."""
    if n == 1:
        yield ()
        return

    def rec(remaining: int) -> Iterator[tuple[int, ...]]:
        for part in range(2, remaining + 2):
            if part - 1 == remaining:
                yield (part,)
            elif part - 1 < remaining:
                for rest in rec(remaining - (part - 1)):
                    yield (part,) + rest

    yield from rec(n - 1)


class MListing:
    """Virtual listing of all modular lattices with n elements."""

    def __init__(self, n: int, store: Store):
        if n < 1:
            raise ValueError("n must be at least 1")
        _require_sizes(store, n)
        self.n = n
        self.store = store
        self._mv_cache: dict[int, MvListing] = {}

    def _mv(self, j: int) -> MvListing:
        if j not in self._mv_cache:
            self._mv_cache[j] = MvListing(j, self.store)
        return self._mv_cache[j]

    @cached_property
    def _shape_list(self) -> list[tuple[tuple[int, ...], int]]:
        out = []
        for shape in _shapes(self.n):
            size = 1
            for j in shape:
                size *= self._mv(j).cardinality
            if size:
                out.append((shape, size))
        return out

    @cached_property
    def _cumulative(self) -> list[int]:
        acc = []
        total = 0
        for _, size in self._shape_list:
            total += size
            acc.append(total)
        return acc

    @property
    def cardinality(self) -> int:
        return self._cumulative[-1] if self._cumulative else 0

    def unrank(self, index: int) -> Lattice:
        if not 0 <= index < self.cardinality:
            raise IndexError(f"index out of range (cardinality {self.cardinality})")
        b = bisect_right(self._cumulative, index)
        shape, _ = self._shape_list[b]
        offset = index - (self._cumulative[b - 1] if b else 0)
        if not shape:
            return Lattice(1, frozenset())
        # Mixed-radix decode, first component most significant.
        radices = [self._mv(j).cardinality for j in shape]
        digits = [0] * len(shape)
        for pos in range(len(shape) - 1, -1, -1):
            offset, digits[pos] = divmod(offset, radices[pos])
        parts = [self._mv(j).unrank(d) for j, d in zip(shape, digits)]
        return vertical_compose(parts)

    def __iter__(self) -> Iterator[Lattice]:
        for index in range(self.cardinality):
            yield self.unrank(index)

    def sample(self, seed: int) -> Lattice:
        return self.unrank(random.Random(seed).randrange(self.cardinality))


def listing_mv(n: int, store: Store) -> MvListing:
    return MvListing(n, store)


def listing_m(n: int, store: Store) -> MListing:
    return MListing(n, store)


def listing_unrank(listing: MvListing | MListing, index: int) -> Lattice:
    return listing.unrank(index)


def listing_iterate(listing: MvListing | MListing) -> Iterator[Lattice]:
    return iter(listing)


def listing_sample(listing: MvListing | MListing, seed: int) -> Lattice:
    return listing.sample(seed)


_ALL_CHECKS = ("roundtrip", "duality", "rack-closure")


def verify_store(
    store: Store,
    checks: Iterable[str] = _ALL_CHECKS,
    max_n: int | None = None,
) -> list[str]:
    """Run consistency checks; returns a list of problems (empty if clean).

    roundtrip: every record decodes, is its own canonical form, matches
    its metadata row, and seeked access agrees with streaming.
    duality: each size class is closed under dualization and its rank
    sequence tallies are symmetric under reversal.
    rack-closure: every record is a rack, and the rack of every modular
    vi-lattice up to ``max_n`` appears in the store.
    """
    problems: list[str] = []
    checks = list(checks)
    for check in checks:
        if check not in _ALL_CHECKS:
            raise ValueError(f"unknown check {check!r}; pick from {_ALL_CHECKS}")
    sizes = store.sizes()

    if "roundtrip" in checks:
        for k in sizes:
            streamed = list(store.records(k))
            if streamed != sorted(set(streamed)):
                problems.append(f"size {k}: records not sorted and unique")
            try:
                metas = store.meta(k)
            except (StoreError, ValueError) as exc:
                problems.append(f"size {k}: unreadable metadata ({exc})")
                metas = None
            for i, form in enumerate(streamed):
                try:
                    seeked = store.record(k, i)
                except (StoreError, IndexError) as exc:
                    problems.append(f"size {k} record {i}: seek failed ({exc})")
                    continue
                if seeked != form:
                    problems.append(f"size {k} record {i}: seek and stream disagree")
                try:
                    lattice = store.get(k, i)
                except (Digraph6Error, ValueError) as exc:
                    problems.append(f"size {k} record {i}: undecodable ({exc})")
                    continue
                if lattice.n != k:
                    problems.append(f"size {k} record {i}: has {lattice.n} elements")
                    continue
                if canonical_form(lattice) != form:
                    problems.append(f"size {k} record {i}: not in canonical form")
                if metas is not None:
                    action = site_action(lattice)
                    expect = (action.degree, cycle_index_to_str(cycle_index(action)))
                    got = (metas[i].site_count, cycle_index_to_str(metas[i].cycle_index))
                    if expect != got:
                        problems.append(f"size {k} record {i}: metadata mismatch")

    if "duality" in checks:
        for k in sizes:
            forms = list(store.records(k))
            duals = []
            tally: dict[tuple[int, ...], int] = {}
            for form in forms:
                try:
                    lattice = _safe_decode(form)
                except ValueError:
                    continue  # reported by roundtrip
                duals.append(canonical_form(lattice.dual()))
                seq = lattice.rank_sequence()
                tally[seq] = tally.get(seq, 0) + 1
            if sorted(duals) != sorted(forms):
                problems.append(f"size {k}: not closed under duality")
            for seq, count in tally.items():
                if tally.get(tuple(reversed(seq)), 0) != count:
                    problems.append(f"size {k}: rank sequence tally asymmetric at {seq}")

    if "rack-closure" in checks:
        from .generate import generate_modular_vi

        for k in sizes:
            for i, form in enumerate(store.records(k)):
                try:
                    lattice = _safe_decode(form)
                except ValueError:
                    continue
                if not is_rack(lattice):
                    problems.append(f"size {k} record {i}: contains trinkets")
        limit = min(max_n if max_n is not None else 12, max(sizes))
        for n in range(1, limit + 1):
            stored = set(store.records(n)) if store.available(n) else set()
            for form in generate_modular_vi(n):
                lattice = _safe_decode(form)
                rack = rack_of(lattice)
                if rack.n == n:
                    target = stored
                elif store.available(rack.n):
                    target = set(store.records(rack.n))
                else:
                    problems.append(f"missing size class {rack.n} for a rack of mv({n})")
                    continue
                if canonical_form(rack) not in target:
                    problems.append(f"rack of an mv({n}) lattice missing from the store")
                    break
    return problems


def _safe_decode(form: bytes) -> Lattice:
    from .d6 import decode_digraph6

    n, arcs = decode_digraph6(form)
    return Lattice(n, arcs)
