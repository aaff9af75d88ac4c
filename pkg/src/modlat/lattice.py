"""Finite lattices represented by their cover digraphs.

Elements are the integers 0..n-1.  The integer order on labels doubles as
the intrinsic tie-breaking order: whenever a deterministic choice among
structurally interchangeable elements is needed (for example which doubly
irreducible elements to remove), the highest labels win.

All objects are immutable after construction and every operation is pure,
so values can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Lattice",
    "LatticeError",
    "from_covers",
    "vertical_compose",
    "parse_covers_text",
    "covers_text",
]


class LatticeError(ValueError):
    """Raised when an input is not a valid finite lattice."""


def _bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Lattice:
    """A finite lattice given by its cover relation.

    ``covers`` holds ordered pairs ``(a, b)`` meaning ``a`` is covered by
    ``b``.  Construction validates the whole contract: the digraph must be
    acyclic, transitively reduced, have a unique bottom and top, and every
    pair of elements must have a meet and a join.  Violations raise
    :class:`LatticeError` with a diagnostic naming the offending covers or
    elements.
    """

    n: int
    covers: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise LatticeError(f"element count must be a positive integer, got {self.n!r}")
        n = self.n
        covers = frozenset((int(a), int(b)) for a, b in self.covers)
        object.__setattr__(self, "covers", covers)

        ucov = [0] * n
        lcov = [0] * n
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n):
                raise LatticeError(f"cover ({a},{b}) out of range for n={n}")
            if a == b:
                raise LatticeError(f"cover ({a},{a}) is a self-loop")
            ucov[a] |= 1 << b
            lcov[b] |= 1 << a

        # Topological order from the minimal elements (Kahn).
        indeg = [lcov[x].bit_count() for x in range(n)]
        queue = [x for x in range(n) if indeg[x] == 0]
        order: list[int] = []
        while queue:
            x = queue.pop()
            order.append(x)
            for y in _bits(ucov[x]):
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        if len(order) < n:
            raise LatticeError("cover digraph contains a cycle")

        down = [0] * n
        for x in order:
            d = 1 << x
            for a in _bits(lcov[x]):
                d |= down[a]
            down[x] = d
        up = [0] * n
        for x in reversed(order):
            u = 1 << x
            for b in _bits(ucov[x]):
                u |= up[b]
            up[x] = u

        for a, b in covers:
            for c in _bits(ucov[a]):
                if c != b and (up[c] >> b) & 1:
                    raise LatticeError(
                        f"cover ({a},{b}) is implied by a longer path; not transitively reduced"
                    )

        sinks = [x for x in range(n) if ucov[x] == 0]
        sources = [x for x in range(n) if lcov[x] == 0]
        if len(sinks) > 1:
            raise LatticeError(
                f"elements {sinks[0]} and {sinks[1]} have no join (no unique top)"
            )
        if len(sources) > 1:
            raise LatticeError(
                f"elements {sources[0]} and {sources[1]} have no meet (no unique bottom)"
            )

        joins = [[0] * n for _ in range(n)]
        meets = [[0] * n for _ in range(n)]
        for x in range(n):
            joins[x][x] = x
            meets[x][x] = x
            for y in range(x):
                ub = up[x] & up[y]
                j = -1
                for z in _bits(ub):
                    if up[z] == ub:
                        j = z
                        break
                if j < 0:
                    raise LatticeError(f"elements {y} and {x} have no join")
                joins[x][y] = joins[y][x] = j
                lb = down[x] & down[y]
                m = -1
                for z in _bits(lb):
                    if down[z] == lb:
                        m = z
                        break
                if m < 0:
                    raise LatticeError(f"elements {y} and {x} have no meet")
                meets[x][y] = meets[y][x] = m

        object.__setattr__(self, "_ucov", tuple(ucov))
        object.__setattr__(self, "_lcov", tuple(lcov))
        object.__setattr__(self, "_up", tuple(up))
        object.__setattr__(self, "_down", tuple(down))
        object.__setattr__(self, "_joins", tuple(map(tuple, joins)))
        object.__setattr__(self, "_meets", tuple(map(tuple, meets)))
        object.__setattr__(self, "_bottom", sources[0])
        object.__setattr__(self, "_top", sinks[0])

    # -- basic structure -------------------------------------------------

    @property
    def bottom(self) -> int:
        return self._bottom

    @property
    def top(self) -> int:
        return self._top

    @property
    def elements(self) -> range:
        return range(self.n)

    def _check(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise LatticeError(f"element {x} out of range for n={self.n}")

    def leq(self, x: int, y: int) -> bool:
        """True iff ``x <= y`` in the order generated by the covers."""
        self._check(x)
        self._check(y)
        return bool((self._up[x] >> y) & 1)

    def meet(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        return self._meets[x][y]

    def join(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        return self._joins[x][y]

    def upper_covers(self, x: int) -> set[int]:
        self._check(x)
        return set(_bits(self._ucov[x]))

    def lower_covers(self, x: int) -> set[int]:
        self._check(x)
        return set(_bits(self._lcov[x]))

    def is_doubly_irreducible(self, x: int) -> bool:
        """True iff ``x`` has exactly one upper and one lower cover."""
        self._check(x)
        return self._ucov[x].bit_count() == 1 and self._lcov[x].bit_count() == 1

    def dual(self) -> "Lattice":
        """The order dual: covers reversed, element labels unchanged."""
        return Lattice(self.n, frozenset((b, a) for a, b in self.covers))

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.n
        for x in self._topo_order:
            lc = self._lcov[x]
            h[x] = 1 + max((h[a] for a in _bits(lc)), default=-1)
        return tuple(h)

    @cached_property
    def _topo_order(self) -> tuple[int, ...]:
        indeg = [self._lcov[x].bit_count() for x in range(self.n)]
        queue = [x for x in range(self.n) if indeg[x] == 0]
        order = []
        while queue:
            x = queue.pop()
            order.append(x)
            for y in _bits(self._ucov[x]):
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        return tuple(order)

    def height(self) -> int:
        return self.heights[self.top]

    # -- vertical structure ----------------------------------------------

    def knots(self) -> set[int]:
        """Elements other than top and bottom comparable with everything."""
        full = (1 << self.n) - 1
        return {
            x
            for x in range(self.n)
            if x != self._bottom and x != self._top and (self._up[x] | self._down[x]) == full
        }

    def is_vertically_indecomposable(self) -> bool:
        """True iff the lattice has no knot.

        The 1-element lattice is treated as vertically indecomposable (it
        is its own unique vertical component).
        """
        return not self.knots()

    def vertical_decompose(self) -> list["Lattice"]:
        """Maximal vertically indecomposable blocks, bottom to top.

        Adjacent blocks share one element of ``self`` (a knot), so block
        sizes ``j_1..j_r`` satisfy ``sum(j_i - 1) + 1 == n``.  Each block is
        returned relabeled densely, preserving relative label order.
        """
        if self.n == 1:
            return [self]
        cuts = [self._bottom]
        cuts.extend(sorted(self.knots(), key=lambda x: self.heights[x]))
        cuts.append(self._top)
        blocks = []
        for lo, hi in zip(cuts, cuts[1:]):
            keep = self._up[lo] & self._down[hi]
            blocks.append(self.sublattice(_bits(keep)))
        return blocks

    # -- structural predicates --------------------------------------------

    @cached_property
    def _is_semimodular(self) -> bool:
        for a in range(self.n):
            ups = list(_bits(self._ucov[a]))
            for i, x in enumerate(ups):
                for y in ups[i + 1 :]:
                    j = self._joins[x][y]
                    if not ((self._ucov[x] >> j) & 1 and (self._ucov[y] >> j) & 1):
                        return False
        return True

    def is_semimodular(self) -> bool:
        """Birkhoff's condition: distinct covers of a common element have a
        join covering both."""
        return self._is_semimodular

    @cached_property
    def _is_modular(self) -> bool:
        joins = self._joins
        meets = self._meets
        for b in range(self.n):
            below = list(_bits(self._down[b]))
            for a in range(self.n):
                ab = meets[a][b]
                ja = joins[a]
                for x in below:
                    if joins[x][ab] != meets[ja[x]][b]:
                        return False
        return True

    def is_modular(self) -> bool:
        """The modular law ``x <= b  =>  x v (a ^ b) == (x v a) ^ b``,
        checked directly over all triples."""
        return self._is_modular

    def is_distributive(self) -> bool:
        joins = self._joins
        meets = self._meets
        for x in range(self.n):
            mx = meets[x]
            for y in range(self.n):
                xy = mx[y]
                for z in range(self.n):
                    if mx[joins[y][z]] != joins[xy][mx[z]]:
                        return False
        return True

    def rank_sequence(self) -> tuple[int, ...]:
        """Element counts by height; rejects non-graded input."""
        h = self.heights
        for a, b in self.covers:
            if h[b] != h[a] + 1:
                raise LatticeError("lattice is not graded; rank sequence undefined")
        counts = [0] * (h[self._top] + 1)
        for x in range(self.n):
            counts[h[x]] += 1
        return tuple(counts)

    # -- derived lattices ---------------------------------------------------

    def sublattice(self, elements: Iterable[int]) -> "Lattice":
        """Induced order on ``elements``, relabeled densely preserving the
        relative label order.  The restriction must itself be a lattice."""
        keep = sorted(set(elements))
        if not keep:
            raise LatticeError("sublattice of no elements")
        index = {e: i for i, e in enumerate(keep)}
        pairs = set()
        for i, x in enumerate(keep):
            for y in keep[i + 1 :]:
                lo, hi = (x, y) if self.leq(x, y) else (y, x)
                if not self.leq(lo, hi):
                    continue
                if any(z != lo and z != hi and self.leq(lo, z) and self.leq(z, hi) for z in keep):
                    continue
                pairs.add((index[lo], index[hi]))
        return Lattice(len(keep), frozenset(pairs))

    def relabel(self, perm: Sequence[int]) -> "Lattice":
        """Apply a permutation of labels; ``perm[old] == new``."""
        if sorted(perm) != list(range(self.n)):
            raise LatticeError("relabeling is not a permutation")
        return Lattice(self.n, frozenset((perm[a], perm[b]) for a, b in self.covers))

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, covers={sorted(self.covers)})"


def from_covers(n: int, pairs: Iterable[tuple[int, int]]) -> Lattice:
    """Build and validate a lattice from its cover pairs."""
    return Lattice(n, frozenset(pairs))


def vertical_compose(parts: Sequence[Lattice]) -> Lattice:
    """Stack lattices vertically, identifying the top of each part with the
    bottom of the next.

    Every part must have at least 2 elements, except that a single
    1-element part is allowed.  The result has ``sum(n_i - 1) + 1``
    elements.
    """
    if not parts:
        raise LatticeError("cannot compose an empty list of lattices")
    if len(parts) == 1:
        return parts[0]
    for part in parts:
        if part.n < 2:
            raise LatticeError("parts of a multi-part composition need at least 2 elements")
    total = sum(part.n - 1 for part in parts) + 1
    pairs: set[tuple[int, int]] = set()
    first = parts[0]
    mapping = list(range(first.n))
    pairs.update(first.covers)
    next_label = first.n
    prev_top = first.top
    for part in parts[1:]:
        m = [0] * part.n
        m[part.bottom] = prev_top
        for e in range(part.n):
            if e == part.bottom:
                continue
            m[e] = next_label
            next_label += 1
        for a, b in part.covers:
            pairs.add((m[a], m[b]))
        prev_top = m[part.top]
    return Lattice(total, frozenset(pairs))


def parse_covers_text(text: str) -> Lattice:
    """Parse the cover-list text format: ``n=<count>`` then one ``a<b``
    cover per line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise LatticeError("cover list must start with a line 'n=<count>'")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise LatticeError(f"bad element count {lines[0][2:]!r}") from exc
    pairs = []
    for ln in lines[1:]:
        a, sep, b = ln.partition("<")
        if not sep:
            raise LatticeError(f"bad cover line {ln!r}; expected 'a<b'")
        try:
            pairs.append((int(a), int(b)))
        except ValueError as exc:
            raise LatticeError(f"bad cover line {ln!r}") from exc
    return from_covers(n, pairs)


def covers_text(lattice: Lattice) -> str:
    """Serialize to the cover-list text format (deterministic order)."""
    lines = [f"n={lattice.n}"]
    lines.extend(f"{a}<{b}" for a, b in sorted(lattice.covers))
    return "\n".join(lines) + "\n"
