"""Isomorph-free exhaustive generation of modular vi-lattices and racks.

Modular lattices are graded, so every one of them is built uniquely by
stacking complete height levels on top of a bottom element.  The search
grows such level prefixes and closes them with a top.  A new level is a
family of cover sets over the current maximal level, constrained by
conditions every prefix of a modular lattice must satisfy:

* any two elements sharing a lower cover must gain exactly one common
  upper cover in the next level, and no pair may gain two (so the cover
  sets of size >= 2 form an exact edge-clique partition of the
  "shares a lower cover" graph);
* two elements covered by a common element must share a lower cover;
* every pair of elements must keep a well-defined meet (prefixes of
  lattices are meet-closed);
* every element of the old level must be covered, and for vertically
  indecomposable targets no intermediate level may be a singleton.

These conditions are necessary, not sufficient, so every closed candidate
is accepted only after a direct check of the modular law (and, for the
rack family, absence of trinkets; completed decoration sites are also
pruned as soon as their trinket count is decided mid-search).

Isomorph rejection: a child determines its parent (drop the newest
level), so deduplicating the children of each parent by canonical form is
enough; no global seen-set is needed.  Subtrees rooted at distinct states
are disjoint, which is what makes the optional process pool sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, NamedTuple

from .canon import _canonical_form_raw
from .d6 import decode_digraph6
from .lattice import Lattice, _bits
from .racks import is_rack

__all__ = [
    "GenerationJob",
    "GenerationBudgetError",
    "generate_modular_vi",
    "generate_modular_vi_racks",
    "generate_family_up_to",
    "filter_racks",
    "run_job",
]

_FAMILIES = ("modular-vi", "modular-vi-rack")


class GenerationBudgetError(RuntimeError):
    """The configurable search-state budget was exceeded."""


@dataclass(frozen=True)
class GenerationJob:
    """A request to list one family exhaustively at one size."""

    n: int
    family: str = "modular-vi"
    parallelism: int = 1
    max_states: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.family not in _FAMILIES:
            raise ValueError(f"family must be one of {_FAMILIES}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


class _State(NamedTuple):
    levels: tuple[tuple[int, ...], ...]
    lcov: tuple[int, ...]
    ucov: tuple[int, ...]
    down: tuple[int, ...]
    up: tuple[int, ...]


def _initial_state() -> _State:
    return _State(((0,),), (0,), (0,), (1,), (1,))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _bounded_partitions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing tuples of length ``slots`` summing to ``total``."""

    def rec(remaining: int, slots_left: int, cap: int) -> Iterator[tuple[int, ...]]:
        if slots_left == 0:
            if remaining == 0:
                yield ()
            return
        top = min(cap, remaining)
        floor = -(-remaining // slots_left)  # ceil: keep non-increasing feasible
        for value in range(top, floor - 1, -1):
            for rest in rec(remaining - value, slots_left - 1, value):
                yield (value,) + rest

    yield from rec(total, slots, total)


def _p_graph(state: _State) -> tuple[list[int], list[tuple[int, int]]]:
    """Graph on the top level: edges join vertices sharing a lower cover."""
    level = state.levels[-1]
    w = len(level)
    adj = [0] * w
    edges = []
    for i in range(w):
        for j in range(i + 1, w):
            if state.lcov[level[i]] & state.lcov[level[j]]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                edges.append((i, j))
    return adj, edges


def _ecps(
    w: int, adj: list[int], edges: list[tuple[int, int]], max_cliques: int
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Partitions of the edge set into cliques (pairwise sharing at most a
    vertex), at most ``max_cliques`` of them."""
    if not edges:
        yield ()
        return
    if max_cliques < 1:
        return
    complete = len(edges) == w * (w - 1) // 2
    if complete:
        yield (tuple(range(w)),)
        if w == 2 or max_cliques < w:
            # De Bruijn-Erdos: a nontrivial partition of a complete graph
            # needs at least w cliques.
            return
    eidx = {e: i for i, e in enumerate(edges)}
    all_mask = (1 << len(edges)) - 1
    full_vertices = tuple(range(w))

    def clique_edge_mask(members: tuple[int, ...]) -> int:
        m = 0
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                m |= 1 << eidx[(members[a], members[b])]
        return m

    def cliques_over(x: int, y: int, covered: int) -> Iterator[tuple[int, ...]]:
        def uncovered(u: int, v: int) -> bool:
            key = (u, v) if u < v else (v, u)
            idx = eidx.get(key)
            return idx is not None and not (covered >> idx) & 1

        pool = [
            z
            for z in range(w)
            if z != x and z != y and uncovered(x, z) and uncovered(y, z)
        ]

        def extend(members: list[int], start: int) -> Iterator[tuple[int, ...]]:
            yield tuple(sorted(members))
            for p in range(start, len(pool)):
                z = pool[p]
                if all(uncovered(u, z) for u in members):
                    members.append(z)
                    yield from extend(members, p + 1)
                    members.pop()

        yield from extend([x, y], 0)

    def rec(covered: int, cliques: list[tuple[int, ...]]) -> Iterator[tuple]:
        if covered == all_mask:
            yield tuple(cliques)
            return
        if len(cliques) >= max_cliques:
            return
        rest = ~covered & all_mask
        x, y = edges[(rest & -rest).bit_length() - 1]
        for clique in cliques_over(x, y, covered):
            if complete and not cliques and clique == full_vertices:
                continue  # already yielded as the trivial partition
            yield from rec(covered | clique_edge_mask(clique), cliques + [clique])

    yield from rec(0, [])


def _extend(state: _State, cover_sets: list[int]) -> _State | None:
    """Add one level with the given cover-set masks; None if some pair of
    elements would lose its meet."""
    lcov = list(state.lcov)
    ucov = list(state.ucov)
    down = list(state.down)
    up = list(state.up)
    new_level = []
    for mask in cover_sets:
        e = len(lcov)
        new_level.append(e)
        bit = 1 << e
        lcov.append(mask)
        ucov.append(0)
        d = bit
        for a in _bits(mask):
            ucov[a] |= bit
            d |= down[a]
        down.append(d)
        up.append(bit)
        for z in _bits(d ^ bit):
            up[z] |= bit
    # Labels are a linear extension, so the highest label of a common
    # down-set is one of its maximal elements; the meet exists iff it
    # dominates the whole intersection.
    for x in new_level:
        dx = down[x]
        for y in range(x):
            common = dx & down[y]
            top_elem = common.bit_length() - 1
            if common & ~down[top_elem]:
                return None
    return _State(
        state.levels + (tuple(new_level),),
        tuple(lcov),
        tuple(ucov),
        tuple(down),
        tuple(up),
    )


def _has_new_trinket(lcov: list[int] | tuple[int, ...], ucov, new_level: Iterable[int]) -> bool:
    """True if a decoration site completed by the newest level carries a
    trinket.  Sound mid-search: a site's corners, middles, and the middles'
    cover counts are all final once the level above it exists."""
    for b in new_level:
        under = lcov[b]
        width = under.bit_count()
        if width < 2:
            continue
        cand = -1
        for x in _bits(under):
            if cand == -1:
                cand = lcov[x]
            else:
                cand &= lcov[x]
        for a in _bits(cand):
            if ucov[a] == under:
                di = sum(
                    1
                    for x in _bits(under)
                    if lcov[x].bit_count() == 1 and ucov[x].bit_count() == 1
                )
                if min(di, width - 2) > 0:
                    return True
                break
    return False


def _close_arrays(state: _State):
    """Arrays for the lattice obtained by adding a top over the last level."""
    level = state.levels[-1]
    n = len(state.lcov)
    bit = 1 << n
    vmask = 0
    for v in level:
        vmask |= 1 << v
    lcov = list(state.lcov) + [vmask]
    ucov = list(state.ucov) + [0]
    for v in level:
        ucov[v] |= bit
    up = [u | bit for u in state.up] + [bit]
    down = list(state.down) + [(1 << (n + 1)) - 1]
    return n + 1, lcov, ucov, down, up


def _is_modular_masks(n: int, up: list[int], down: list[int]) -> bool:
    joins = [[0] * n for _ in range(n)]
    meets = [[0] * n for _ in range(n)]
    for x in range(n):
        ux = up[x]
        dx = down[x]
        jx = joins[x]
        mx = meets[x]
        for y in range(x + 1):
            ub = ux & up[y]
            z = (ub & -ub).bit_length() - 1
            if ub & ~up[z]:
                return False
            jx[y] = joins[y][x] = z
            lb = dx & down[y]
            m = lb.bit_length() - 1
            if lb & ~down[m]:
                return False
            mx[y] = meets[y][x] = m
    for b in range(n):
        below = list(_bits(down[b]))
        mb = meets[b]
        for a in range(n):
            ab = mb[a]
            ja = joins[a]
            for x in below:
                if joins[x][ab] != mb[ja[x]]:
                    return False
    return True


def _closing_ok(state: _State, rack_mode: bool) -> bool:
    n, lcov, ucov, down, up = _close_arrays(state)
    if rack_mode and _has_new_trinket(lcov, ucov, [n - 1]):
        return False
    return _is_modular_masks(n, up, down)


def _closing_form(state: _State) -> bytes:
    n, lcov, ucov, _, _ = _close_arrays(state)
    return _canonical_form_raw(n, tuple(ucov), tuple(lcov))


def _children(state: _State, t_floor: int, t_max: int, rack_mode: bool) -> Iterator[_State]:
    level = state.levels[-1]
    w = len(level)
    adj, edges = _p_graph(state)
    for cliques in _ecps(w, adj, edges, t_max):
        covered = 0
        for clique in cliques:
            for v in clique:
                covered |= 1 << v
        membership: list[tuple[int, ...]] = [() for _ in range(w)]
        for ci, clique in enumerate(cliques):
            for v in clique:
                membership[v] += (ci,)
        must = [0 if (covered >> v) & 1 else 1 for v in range(w)]
        base = len(cliques) + sum(must)
        if base > t_max:
            continue
        # Vertices with the same lower covers and the same clique
        # memberships are interchangeable; force their singleton loads to be
        # non-increasing so each symmetric family is produced once.
        groups: dict[tuple, list[int]] = {}
        for v in range(w):
            groups.setdefault((state.lcov[level[v]], membership[v]), []).append(v)
        group_list = sorted(groups.items())
        for spend in range(0, t_max - base + 1):
            t = base + spend
            if t < t_floor:
                continue
            for alloc in _compositions(spend, len(group_list)):
                per_group = [
                    list(_bounded_partitions(alloc[g], len(group_list[g][1])))
                    for g in range(len(group_list))
                ]
                for choice in product(*per_group):
                    singles = [0] * w
                    for g, (_, verts) in enumerate(group_list):
                        for slot, v in enumerate(verts):
                            singles[v] = must[v] + choice[g][slot]
                    cover_sets = []
                    for clique in cliques:
                        mask = 0
                        for v in clique:
                            mask |= 1 << level[v]
                        cover_sets.append(mask)
                    for v in range(w):
                        cover_sets.extend([1 << level[v]] * singles[v])
                    child = _extend(state, cover_sets)
                    if child is None:
                        continue
                    if rack_mode and _has_new_trinket(
                        child.lcov, child.ucov, child.levels[-1]
                    ):
                        continue
                    yield child


def _explore(state: _State, max_n: int, rack_mode: bool, results: dict[int, list[bytes]],
             counter: list[int], max_states: int | None) -> None:
    counter[0] += 1
    if max_states is not None and counter[0] > max_states:
        raise GenerationBudgetError(f"generation state budget {max_states} exceeded")
    size = len(state.lcov)
    seen: set[bytes] = set()
    adj, edges = _p_graph(state)
    w = len(state.levels[-1])
    if size + 1 <= max_n and len(edges) == w * (w - 1) // 2:
        form = _closing_form(state)
        if form not in seen:
            seen.add(form)
            if _closing_ok(state, rack_mode):
                results[size + 1].append(form)
    t_max = max_n - size - 1
    if t_max >= 2:
        for child in _children(state, 2, t_max, rack_mode):
            form = _canonical_form_raw(len(child.lcov), child.ucov, child.lcov)
            if form in seen:
                continue
            seen.add(form)
            _explore(child, max_n, rack_mode, results, counter, max_states)


def _singleton_form() -> bytes:
    return _canonical_form_raw(1, (0,), (0,))


def _search(family: str, max_n: int, max_states: int | None = None) -> dict[int, list[bytes]]:
    rack_mode = family == "modular-vi-rack"
    results: dict[int, list[bytes]] = {s: [] for s in range(1, max_n + 1)}
    results[1].append(_singleton_form())
    if max_n >= 2:
        counter = [0]
        _explore(_initial_state(), max_n, rack_mode, results, counter, max_states)
    return {s: sorted(set(forms)) for s, forms in results.items()}


def _worker(args) -> dict[int, list[bytes]]:
    state, family, max_n, max_states = args
    rack_mode = family == "modular-vi-rack"
    results: dict[int, list[bytes]] = {s: [] for s in range(1, max_n + 1)}
    _explore(_State(*state), max_n, rack_mode, results, [0], max_states)
    return results


def _search_parallel(family: str, max_n: int, jobs: int,
                     max_states: int | None) -> dict[int, list[bytes]]:
    import multiprocessing

    rack_mode = family == "modular-vi-rack"
    results: dict[int, list[bytes]] = {s: [] for s in range(1, max_n + 1)}
    results[1].append(_singleton_form())
    if max_n < 2:
        return {s: sorted(set(f)) for s, f in results.items()}

    # Widen a frontier breadth-first, harvesting closings along the way,
    # then farm the disjoint subtrees out to the pool.
    frontier = [_initial_state()]
    while 0 < len(frontier) < jobs * 4:
        nxt: list[_State] = []
        for state in frontier:
            size = len(state.lcov)
            seen: set[bytes] = set()
            adj, edges = _p_graph(state)
            w = len(state.levels[-1])
            if size + 1 <= max_n and len(edges) == w * (w - 1) // 2:
                form = _closing_form(state)
                seen.add(form)
                if _closing_ok(state, rack_mode):
                    results[size + 1].append(form)
            t_max = max_n - size - 1
            if t_max >= 2:
                for child in _children(state, 2, t_max, rack_mode):
                    form = _canonical_form_raw(len(child.lcov), child.ucov, child.lcov)
                    if form in seen:
                        continue
                    seen.add(form)
                    nxt.append(child)
        frontier = nxt
    if frontier:
        args = [(tuple(st), family, max_n, max_states) for st in frontier]
        with multiprocessing.Pool(jobs) as pool:
            for part in pool.imap_unordered(_worker, args):
                for s, forms in part.items():
                    results[s].extend(forms)
    return {s: sorted(set(forms)) for s, forms in results.items()}


_CACHE: dict[str, tuple[int, dict[int, list[bytes]]]] = {}


def generate_family_up_to(
    family: str,
    n: int,
    *,
    jobs: int = 1,
    max_states: int | None = None,
    use_cache: bool = True,
) -> dict[int, list[bytes]]:
    """Canonical digraph6 forms of every family member of each size <= n."""
    if family not in _FAMILIES:
        raise ValueError(f"family must be one of {_FAMILIES}")
    if n < 1:
        raise ValueError("n must be at least 1")
    if use_cache and family in _CACHE:
        cached_n, cached = _CACHE[family]
        if cached_n >= n:
            return {s: list(cached[s]) for s in range(1, n + 1)}
    if jobs > 1:
        results = _search_parallel(family, n, jobs, max_states)
    else:
        results = _search(family, n, max_states)
    if use_cache:
        _CACHE[family] = (n, {s: list(f) for s, f in results.items()})
    return results


def generate_modular_vi(n: int, *, jobs: int = 1, max_states: int | None = None) -> list[bytes]:
    """One canonical form per isomorphism class of n-element modular
    vi-lattices, sorted."""
    return generate_family_up_to("modular-vi", n, jobs=jobs, max_states=max_states)[n]


def generate_modular_vi_racks(n: int, *, jobs: int = 1, max_states: int | None = None) -> list[bytes]:
    """One canonical form per isomorphism class of n-element modular
    vi-racks, sorted."""
    return generate_family_up_to("modular-vi-rack", n, jobs=jobs, max_states=max_states)[n]


def filter_racks(forms: Iterable[bytes]) -> list[bytes]:
    """Subset of canonical forms whose lattices contain no trinkets."""
    kept = []
    for form in forms:
        n, arcs = decode_digraph6(form)
        if is_rack(Lattice(n, arcs)):
            kept.append(form)
    return kept


def run_job(job: GenerationJob) -> list[bytes]:
    if job.family == "modular-vi":
        return generate_modular_vi(job.n, jobs=job.parallelism, max_states=job.max_states)
    return generate_modular_vi_racks(job.n, jobs=job.parallelism, max_states=job.max_states)
