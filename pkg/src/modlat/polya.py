"""Polya counting of decorations.

The cycle index of a site action, the figure series (one figure of every
nonnegative weight per site), and the function-counting series whose x^m
coefficient is the number of orbit-inequivalent ways to spread m trinkets
over the sites.  All arithmetic is exact: rationals internally, big
integers out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .canon import SiteAction, site_action
from .lattice import Lattice, LatticeError

__all__ = [
    "CycleIndex",
    "cycle_index",
    "figure_series",
    "function_series",
    "count_decorations",
    "decoration_count_for_index",
]


@dataclass(frozen=True)
class CycleIndex:
    """A permutation group's cycle index as an exact polynomial.

    ``terms`` maps each cycle type (a partition of ``degree``, as a
    descending tuple of cycle lengths) to its rational coefficient.  The
    coefficients are positive and sum to 1.
    """

    degree: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self) -> None:
        terms = tuple(sorted((tuple(t), Fraction(c)) for t, c in dict(self.terms).items()))
        object.__setattr__(self, "terms", terms)
        total = Fraction(0)
        for t, c in terms:
            if sum(t) != self.degree:
                raise LatticeError(f"cycle type {t} is not a partition of {self.degree}")
            if tuple(sorted(t, reverse=True)) != t:
                raise LatticeError(f"cycle type {t} must be sorted descending")
            if c <= 0:
                raise LatticeError("cycle index coefficients must be positive")
            total += c
        if total != 1:
            raise LatticeError(f"cycle index coefficients sum to {total}, not 1")

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)


def _cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def cycle_index(action: SiteAction) -> CycleIndex:
    """Average of the cycle-type monomials over the group."""
    counts: dict[tuple[int, ...], int] = {}
    for g in action.elements:
        t = _cycle_type(g)
        counts[t] = counts.get(t, 0) + 1
    order = action.order
    return CycleIndex(
        action.degree,
        tuple((t, Fraction(c, order)) for t, c in sorted(counts.items())),
    )


def figure_series(order: int) -> tuple[int, ...]:
    """1/(1-x) truncated: every site accepts any number of trinkets."""
    if order < 0:
        raise LatticeError("truncation order must be nonnegative")
    return (1,) * (order + 1)


@lru_cache(maxsize=None)
def _type_series(cycle_type: tuple[int, ...], order: int) -> tuple[int, ...]:
    # Product over cycle lengths L of 1/(1-x^L), truncated.
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for length in cycle_type:
        new = [0] * (order + 1)
        for i in range(0, order + 1, length):
            for j in range(order + 1 - i):
                new[i + j] += coeffs[j]
        coeffs = new
    return tuple(coeffs)


def function_series(z: CycleIndex, order: int) -> tuple[int, ...]:
    """Substitute the figure series into the cycle index.

    The x^m coefficient counts the nonisomorphic m-trinket allocations.
    Coefficients must come out integral; anything else means the cycle
    index did not come from a genuine permutation group.
    """
    if order < 0:
        raise LatticeError("truncation order must be nonnegative")
    total = [Fraction(0)] * (order + 1)
    for cycle_type, coeff in z.terms:
        series = _type_series(cycle_type, order)
        for i in range(order + 1):
            total[i] += coeff * series[i]
    out = []
    for i, value in enumerate(total):
        if value.denominator != 1:
            raise LatticeError(f"non-integral series coefficient {value} at x^{i}")
        out.append(int(value))
    return tuple(out)


@lru_cache(maxsize=None)
def decoration_count_for_index(z: CycleIndex, m: int) -> int:
    """D(Z, m): decorations of an m-trinket budget under cycle index Z."""
    if m < 0:
        raise LatticeError("trinket count must be nonnegative")
    return function_series(z, m)[m]


def count_decorations(rack: Lattice, m: int) -> int:
    """Number of pairwise nonisomorphic lattices obtained by adding ``m``
    trinkets to the rack's decoration sites."""
    return decoration_count_for_index(cycle_index(site_action(rack)), m)
