"""Canonical forms, isomorphism tests, automorphisms, and site actions.

Canonical labeling works on the cover digraph: an equitable ordered
partition is computed by iterated refinement over heights, depths and
neighbor-cell multisets, then a backtracking search over cell-respecting
labelings picks the lexicographically least adjacency matrix.  Elements
with identical cover sets ("twins") are interchangeable, so only one
representative per twin class is branched on; this keeps lattices with
large bouquets of doubly irreducible elements cheap to canonicalize.

The canonical form of a lattice is the digraph6 line of its canonically
relabeled cover digraph.  Equal bytes mean isomorphic lattices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .d6 import encode_digraph6
from .lattice import Lattice, LatticeError, _bits
from .racks import decoration_sites

__all__ = [
    "canonical_form",
    "canonical_labeling",
    "is_isomorphic",
    "automorphism_group",
    "site_action",
    "SiteAction",
]


def _neighbor_lists(n: int, masks: tuple[int, ...]) -> list[list[int]]:
    return [list(_bits(masks[x])) for x in range(n)]


def _initial_cells(n, up_nbrs, dn_nbrs):
    # Longest-path height from below and depth from above are preserved by
    # any isomorphism, as are cover degrees.
    h = [0] * n
    order = []
    indeg = [len(dn_nbrs[x]) for x in range(n)]
    queue = [x for x in range(n) if indeg[x] == 0]
    while queue:
        x = queue.pop()
        order.append(x)
        for y in up_nbrs[x]:
            h[y] = max(h[y], h[x] + 1)
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    d = [0] * n
    for x in reversed(order):
        for y in up_nbrs[x]:
            d[x] = max(d[x], d[y] + 1)
    keys = [(h[x], d[x], len(up_nbrs[x]), len(dn_nbrs[x])) for x in range(n)]
    cell_ids = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [cell_ids[keys[x]] for x in range(n)]


def _refine(n, up_nbrs, dn_nbrs, cell_of):
    """Refine to a stable ordered partition; returns the cell index array."""
    ncells = max(cell_of) + 1
    while True:
        keys = [
            (
                cell_of[x],
                tuple(sorted(cell_of[y] for y in up_nbrs[x])),
                tuple(sorted(cell_of[y] for y in dn_nbrs[x])),
            )
            for x in range(n)
        ]
        cell_ids = {k: i for i, k in enumerate(sorted(set(keys)))}
        if len(cell_ids) == ncells:
            return cell_of
        ncells = len(cell_ids)
        cell_of = [cell_ids[keys[x]] for x in range(n)]


def _cells_as_lists(n, cell_of):
    ncells = max(cell_of) + 1
    cells: list[list[int]] = [[] for _ in range(ncells)]
    for x in range(n):
        cells[cell_of[x]].append(x)
    return cells


def _canonical_labeling_raw(n: int, ucov: tuple[int, ...], lcov: tuple[int, ...]) -> tuple[int, ...]:
    """Labeling (old -> new) minimizing the relabeled adjacency matrix."""
    if n == 1:
        return (0,)
    up_nbrs = _neighbor_lists(n, ucov)
    dn_nbrs = _neighbor_lists(n, lcov)
    cell_of = _refine(n, up_nbrs, dn_nbrs, _initial_cells(n, up_nbrs, dn_nbrs))

    twin_sig = {}
    twin_of = [0] * n
    for x in range(n):
        twin_of[x] = twin_sig.setdefault((ucov[x], lcov[x]), len(twin_sig))

    best_rows: tuple[int, ...] | None = None
    best_order: list[int] | None = None

    def leaf(order: list[int]) -> None:
        nonlocal best_rows, best_order
        pos = [0] * n
        for i, e in enumerate(order):
            pos[e] = i
        rows = []
        shift = n - 1
        for e in order:
            row = 0
            for y in up_nbrs[e]:
                row |= 1 << (shift - pos[y])
            rows.append(row)
        rows_t = tuple(rows)
        if best_rows is None or rows_t < best_rows:
            best_rows = rows_t
            best_order = order

    def rec(cell_of: list[int]) -> None:
        cells = _cells_as_lists(n, cell_of)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            leaf(order)
            return
        cell = cells[target]
        seen_twins = set()
        for x in cell:
            t = twin_of[x]
            if t in seen_twins:
                continue
            seen_twins.add(t)
            split = list(cell_of)
            # Individualize x: its own new cell ordered just before the rest
            # of its old cell.  Shift cell ids to keep the order total.
            for y in range(n):
                if split[y] > target or (split[y] == target and y != x):
                    split[y] += 1
            rec(_refine(n, up_nbrs, dn_nbrs, split))

    rec(cell_of)
    assert best_order is not None
    labeling = [0] * n
    for new, old in enumerate(best_order):
        labeling[old] = new
    return tuple(labeling)


def _canonical_form_raw(n: int, ucov: tuple[int, ...], lcov: tuple[int, ...]) -> bytes:
    lab = _canonical_labeling_raw(n, ucov, lcov)
    arcs = []
    for a in range(n):
        la = lab[a]
        for b in _bits(ucov[a]):
            arcs.append((la, lab[b]))
    return encode_digraph6(n, arcs)


def canonical_labeling(lattice: Lattice) -> tuple[int, ...]:
    """The canonical relabeling permutation; ``perm[old] == new``."""
    return _canonical_labeling_raw(lattice.n, lattice._ucov, lattice._lcov)


def canonical_form(lattice: Lattice) -> bytes:
    """Isomorphism-invariant digraph6 bytes of the cover digraph.

    Deterministic across runs and platforms; equal bytes iff isomorphic.
    """
    return _canonical_form_raw(lattice.n, lattice._ucov, lattice._lcov)


def is_isomorphic(a: Lattice, b: Lattice) -> bool:
    if a.n != b.n or len(a.covers) != len(b.covers):
        return False
    return canonical_form(a) == canonical_form(b)


def automorphism_group(lattice: Lattice) -> list[tuple[int, ...]]:
    """All order-automorphisms as permutation tuples (``perm[x]`` is the
    image of ``x``), sorted.

    The full element list is returned, so this is meant for desk-scale
    lattices; bouquets of k interchangeable doubly irreducible elements
    contribute a factor of k! to the group size.
    """
    n = lattice.n
    ucov = lattice._ucov
    lcov = lattice._lcov
    up_nbrs = _neighbor_lists(n, ucov)
    dn_nbrs = _neighbor_lists(n, lcov)
    cell_of = _refine(n, up_nbrs, dn_nbrs, _initial_cells(n, up_nbrs, dn_nbrs))
    cells = _cells_as_lists(n, cell_of)
    order = [x for cell in cells for x in cell]

    result: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def rec(i: int) -> None:
        if i == n:
            result.append(tuple(image))
            return
        x = order[i]
        for y in cells[cell_of[x]]:
            if used[y]:
                continue
            ok = True
            for z in order[:i]:
                zi = image[z]
                if ((ucov[x] >> z) & 1) != ((ucov[y] >> zi) & 1):
                    ok = False
                    break
                if ((lcov[x] >> z) & 1) != ((lcov[y] >> zi) & 1):
                    ok = False
                    break
            if ok:
                image[x] = y
                used[y] = True
                rec(i + 1)
                used[y] = False
                image[x] = -1

    rec(0)
    return sorted(result)


@dataclass(frozen=True)
class SiteAction:
    """The permutation group induced on decoration sites by lattice
    automorphisms.

    ``elements`` is the complete, sorted list of permutations of
    ``range(degree)``; the identity is always present and the list is
    closed under composition and inverses.
    """

    degree: int
    elements: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        k = self.degree
        perms = tuple(tuple(p) for p in self.elements)
        object.__setattr__(self, "elements", perms)
        ident = tuple(range(k))
        if ident not in perms:
            raise LatticeError("site action must contain the identity")
        seen = set(perms)
        if len(seen) != len(perms):
            raise LatticeError("site action has duplicate permutations")
        for p in perms:
            if sorted(p) != list(range(k)):
                raise LatticeError(f"{p} is not a permutation of 0..{k - 1}")
            inv = tuple(sorted(range(k), key=lambda i: p[i]))
            if inv not in seen:
                raise LatticeError("site action not closed under inverses")
        for p in perms:
            for q in perms:
                if tuple(q[p[i]] for i in range(k)) not in seen:
                    raise LatticeError("site action not closed under composition")

    @property
    def order(self) -> int:
        return len(self.elements)


def site_action(lattice: Lattice) -> SiteAction:
    """Image of the automorphism group acting on decoration sites.

    Sites are indexed in their canonical order (sorted corner pairs); each
    automorphism maps a site to a site, and duplicate images are merged.
    """
    sites = decoration_sites(lattice)
    index = {(s.lower, s.upper): i for i, s in enumerate(sites)}
    k = len(sites)
    perms = set()
    for g in automorphism_group(lattice):
        p = [0] * k
        for (a, b), i in index.items():
            target = (g[a], g[b])
            if target not in index:
                raise LatticeError("automorphism does not permute decoration sites")
            p[i] = index[target]
        perms.add(tuple(p))
    return SiteAction(k, tuple(sorted(perms)))
