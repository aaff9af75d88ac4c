"""DOT emission for cover digraphs.

Structure only: nodes are grouped per height so layouts come out as rank
rows, edges point from covered to covering element, and trinkets are
flagged with a filled style so they stand out.
"""

from __future__ import annotations

from .lattice import Lattice
from .racks import trinkets

__all__ = ["render_dot"]


def render_dot(lattice: Lattice) -> str:
    """A deterministic DOT digraph of the cover relation."""
    heights = lattice.heights
    by_height: dict[int, list[int]] = {}
    for x in range(lattice.n):
        by_height.setdefault(heights[x], []).append(x)
    marked = trinkets(lattice)
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=circle];"]
    for h in sorted(by_height):
        members = "; ".join(str(x) for x in sorted(by_height[h]))
        lines.append(f"  {{ rank=same; {members}; }}")
    for x in sorted(marked):
        lines.append(f"  {x} [style=filled];")
    for a, b in sorted(lattice.covers):
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
