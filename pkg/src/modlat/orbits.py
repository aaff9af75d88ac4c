"""Integer vectors of fixed sum modulo a permutation group.

The constructive counterpart of Polya counting: canonical orbit
representatives (lexicographically greatest in their orbit), listed in
decreasing lexicographic order, with rank/unrank and uniform sampling.
Enumeration is a depth-first prefix search pruned by certain-loss
comparisons against the group images; families small enough to matter at
desk scale are materialized once and cached.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .canon import SiteAction
from .lattice import LatticeError
from .polya import cycle_index, decoration_count_for_index

__all__ = [
    "OrbitVectorFamily",
    "canonical_vector",
    "list_decoration_vectors",
    "rank",
    "unrank",
    "sample_uniform",
]

_MATERIALIZE_LIMIT = 200_000


def apply_permutation(g: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """Push a vector through a site permutation: entry ``v[i]`` moves to
    position ``g[i]``."""
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[g[i]] = x
    return tuple(out)


def canonical_vector(action: SiteAction, v: Sequence[int]) -> tuple[int, ...]:
    """The lexicographically greatest vector in the orbit of ``v``."""
    if len(v) != action.degree:
        raise LatticeError(f"vector length {len(v)} does not match degree {action.degree}")
    vt = tuple(v)
    return max(apply_permutation(g, vt) for g in action.elements)


@dataclass(frozen=True)
class OrbitVectorFamily:
    """All canonical sum-``total`` vectors under ``action``, in decreasing
    lexicographic order."""

    action: SiteAction
    total: int

    @cached_property
    def size(self) -> int:
        return decoration_count_for_index(cycle_index(self.action), self.total)

    @cached_property
    def _inverses(self) -> tuple[tuple[int, ...], ...]:
        k = self.action.degree
        out = []
        for g in self.action.elements:
            inv = [0] * k
            for i, gi in enumerate(g):
                inv[gi] = i
            out.append(tuple(inv))
        return tuple(out)

    def _prefix_alive(self, prefix: list[int]) -> bool:
        """False if some group image already beats every completion."""
        i = len(prefix)
        for g_inv in self._inverses:
            for j in range(i):
                src = g_inv[j]
                if src >= i:
                    break  # image undetermined here; inconclusive
                if prefix[src] > prefix[j]:
                    return False  # image wins at first decided difference
                if prefix[src] < prefix[j]:
                    break  # this image already lost
        return True

    def _iter_from(self, prefix: list[int], remaining: int) -> Iterator[tuple[int, ...]]:
        k = self.action.degree
        i = len(prefix)
        if i == k - 1:
            prefix.append(remaining)
            if self._prefix_alive(prefix) and canonical_vector(self.action, prefix) == tuple(prefix):
                yield tuple(prefix)
            prefix.pop()
            return
        if i == k:
            if remaining == 0 and canonical_vector(self.action, prefix) == tuple(prefix):
                yield tuple(prefix)
            return
        for value in range(remaining, -1, -1):
            prefix.append(value)
            if self._prefix_alive(prefix):
                yield from self._iter_from(prefix, remaining - value)
            prefix.pop()

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        if self.action.degree == 0:
            if self.total == 0:
                yield ()
            return
        if self._materialized is not None:
            yield from self._materialized
            return
        yield from self._iter_from([], self.total)

    @cached_property
    def _materialized(self) -> tuple[tuple[int, ...], ...] | None:
        if self.action.degree == 0:
            return ((),) if self.total == 0 else ()
        if self.size > _MATERIALIZE_LIMIT:
            return None
        return tuple(self._iter_from([], self.total))

    def _count_from(self, prefix: list[int], remaining: int) -> int:
        return sum(1 for _ in self._iter_from(prefix, remaining))

    def unrank(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise IndexError(f"index out of range (cardinality {self.size})")
        if self._materialized is not None:
            return self._materialized[index]
        prefix: list[int] = []
        remaining = self.total
        k = self.action.degree
        while len(prefix) < k - 1:
            for value in range(remaining, -1, -1):
                prefix.append(value)
                if not self._prefix_alive(prefix):
                    prefix.pop()
                    continue
                block = self._count_from(prefix, remaining - value)
                if index < block:
                    remaining -= value
                    break
                index -= block
                prefix.pop()
            else:
                raise AssertionError("unrank walked off the family")
        prefix.append(remaining)
        return tuple(prefix)

    def rank(self, v: Sequence[int]) -> int:
        vt = tuple(v)
        if canonical_vector(self.action, vt) != vt:
            raise LatticeError(f"{vt} is not a canonical representative")
        if sum(vt) != self.total:
            raise LatticeError(f"{vt} does not sum to {self.total}")
        if self._materialized is not None:
            return self._lookup[vt]
        count = 0
        prefix: list[int] = []
        remaining = self.total
        for i, digit in enumerate(vt[:-1]):
            for value in range(remaining, digit, -1):
                prefix.append(value)
                if self._prefix_alive(prefix):
                    count += self._count_from(prefix, remaining - value)
                prefix.pop()
            prefix.append(digit)
            remaining -= digit
        return count

    @cached_property
    def _lookup(self) -> dict[tuple[int, ...], int]:
        assert self._materialized is not None
        return {v: i for i, v in enumerate(self._materialized)}

    def sample(self, seed: int) -> tuple[int, ...]:
        if self.size == 0:
            raise LatticeError("cannot sample from an empty family")
        return self.unrank(random.Random(seed).randrange(self.size))


def list_decoration_vectors(action: SiteAction, m: int) -> list[tuple[int, ...]]:
    """All canonical representatives of sum-``m`` vectors, decreasing lex."""
    return list(OrbitVectorFamily(action, m))


def rank(family: OrbitVectorFamily, v: Sequence[int]) -> int:
    return family.rank(v)


def unrank(family: OrbitVectorFamily, index: int) -> tuple[int, ...]:
    return family.unrank(index)


def sample_uniform(family: OrbitVectorFamily, seed: int) -> tuple[int, ...]:
    """Uniform over representatives; deterministic for a fixed seed."""
    return family.sample(seed)
