"""Decoration sites, trinkets, rack reduction, and decoration.

A decoration site is a pair ``(a, b)`` whose open interval is exactly the
set of upper covers of ``a`` (equal to the lower covers of ``b``) and has
width at least 2.  The removable doubly irreducible elements of a site are
its trinkets; a lattice with no trinkets is a rack.  Removing all trinkets
and adding them back are mutually inverse up to isomorphism, which is what
everything downstream builds on.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .lattice import Lattice, LatticeError, _bits

__all__ = [
    "DecorationSite",
    "decoration_sites",
    "trinkets",
    "rack_of",
    "is_rack",
    "decorate",
    "decoration_vector_of",
]


class DecorationSite(NamedTuple):
    """A decoration site ``(lower, upper)`` with its width and current
    trinket load."""

    lower: int
    upper: int
    width: int
    trinket_count: int


def _site_middles(lattice: Lattice, lower: int) -> tuple[int, int] | None:
    """If ``lower`` is the lower corner of a site, return (upper, middles
    mask); otherwise None."""
    mask = lattice._ucov[lower]
    if mask.bit_count() < 2:
        return None
    for b in range(lattice.n):
        if lattice._lcov[b] == mask:
            return b, mask
    return None


def _site_trinket_mask(lattice: Lattice, middles: int, width: int) -> int:
    """Mask of the trinkets of a site: the highest-labeled doubly
    irreducible middles, at most ``width - 2`` of them."""
    di = [x for x in _bits(middles) if lattice.is_doubly_irreducible(x)]
    take = min(len(di), width - 2)
    mask = 0
    for x in sorted(di, reverse=True)[:take]:
        mask |= 1 << x
    return mask


def decoration_sites(lattice: Lattice) -> list[DecorationSite]:
    """All decoration sites, sorted by (lower, upper) labels.

    This order defines the coordinates of decoration vectors.
    """
    sites = []
    for a in range(lattice.n):
        found = _site_middles(lattice, a)
        if found is None:
            continue
        b, middles = found
        width = middles.bit_count()
        tmask = _site_trinket_mask(lattice, middles, width)
        sites.append(DecorationSite(a, b, width, tmask.bit_count()))
    sites.sort(key=lambda s: (s.lower, s.upper))
    return sites


def trinkets(lattice: Lattice) -> set[int]:
    """Union of the trinkets of all decoration sites."""
    out: set[int] = set()
    for a in range(lattice.n):
        found = _site_middles(lattice, a)
        if found is None:
            continue
        _, middles = found
        out.update(_bits(_site_trinket_mask(lattice, middles, middles.bit_count())))
    return out


def is_rack(lattice: Lattice) -> bool:
    """True iff the lattice contains no trinkets."""
    return not trinkets(lattice)


def rack_of(lattice: Lattice) -> Lattice:
    """The rack: the sublattice left after removing all trinkets,
    relabeled densely preserving relative label order."""
    t = trinkets(lattice)
    if not t:
        return lattice
    return lattice.sublattice(x for x in range(lattice.n) if x not in t)


def decorate(rack: Lattice, vector: Sequence[int]) -> Lattice:
    """Insert ``vector[i]`` new doubly irreducible elements into site ``i``.

    New elements are labeled ``n, n+1, ...`` in site order; each one covers
    the site's lower corner and is covered by its upper corner.
    """
    sites = decoration_sites(rack)
    if len(vector) != len(sites):
        raise LatticeError(
            f"decoration vector has {len(vector)} entries for {len(sites)} sites"
        )
    pairs = set(rack.covers)
    label = rack.n
    for site, count in zip(sites, vector):
        if count < 0:
            raise LatticeError("decoration counts must be nonnegative")
        for _ in range(count):
            pairs.add((site.lower, label))
            pairs.add((label, site.upper))
            label += 1
    return Lattice(label, frozenset(pairs))


def decoration_vector_of(lattice: Lattice) -> tuple[Lattice, tuple[int, ...]]:
    """Split a lattice into its rack and per-site trinket counts.

    The counts are indexed by the canonical site order, which is the same
    for the lattice and its rack (corners survive reduction and the dense
    relabeling preserves their relative order), so
    ``decorate(rack, vector)`` rebuilds the lattice up to isomorphism.
    """
    counts = tuple(s.trinket_count for s in decoration_sites(lattice))
    return rack_of(lattice), counts
