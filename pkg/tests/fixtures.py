"""Hand-built lattices used across the test suite."""

from __future__ import annotations

from modlat import Lattice, from_covers


def chain(n: int) -> Lattice:
    return from_covers(n, [(i, i + 1) for i in range(n - 1)])


def m_k(k: int) -> Lattice:
    """Length-2 modular lattice with k atoms: bottom 0, atoms 1..k, top k+1."""
    pairs = [(0, i) for i in range(1, k + 1)] + [(i, k + 1) for i in range(1, k + 1)]
    return from_covers(k + 2, pairs)


def boolean(k: int) -> Lattice:
    """Subsets of a k-set ordered by inclusion; element x is the bitmask x."""
    n = 1 << k
    pairs = []
    for x in range(n):
        for b in range(k):
            if not (x >> b) & 1:
                pairs.append((x, x | (1 << b)))
    return from_covers(n, pairs)


def grid(p: int, q: int) -> Lattice:
    """Product of a p-chain and a q-chain, labeled along diagonals."""
    elems = sorted(((i, j) for i in range(p) for j in range(q)), key=lambda t: (t[0] + t[1], t[0]))
    idx = {e: n for n, e in enumerate(elems)}
    pairs = []
    for (i, j), n in idx.items():
        if i + 1 < p:
            pairs.append((n, idx[(i + 1, j)]))
        if j + 1 < q:
            pairs.append((n, idx[(i, j + 1)]))
    return from_covers(p * q, pairs)


def pentagon() -> Lattice:
    """N_5: 0 < 1 < 3 and 0 < 2, both under 4; not modular."""
    return from_covers(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])


def hexagon() -> Lattice:
    """Two 3-chains glued at bottom and top; graded but not semimodular."""
    return from_covers(6, [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)])


def b3_with_pendant() -> Lattice:
    """B_3 plus a doubly irreducible element between the bottom and the
    coatom 3; the insertion point is not a decoration site and the result
    contains a pentagon (e.g. 0 < 8 < 3 < 7 against 0 < 4 < 7)."""
    pairs = set(boolean(3).covers)
    pairs.add((0, 8))
    pairs.add((8, 3))
    return from_covers(9, pairs)


def figure_rack() -> Lattice:
    """The 9-element rack with four decoration sites (0,4), (1,6), (2,7),
    (4,8) and a single mirror symmetry swapping the middle two sites."""
    return grid(3, 3)
