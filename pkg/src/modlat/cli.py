"""Command-line surface: generate, count, decorate, unrank, sample, verify,
render.

Exit codes: 0 on success, 1 on a domain error (bad lattice, bad index,
corrupt store), 2 on a usage error.  All output is deterministic for fixed
arguments and seeds; random sampling always takes an explicit seed.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .canon import canonical_form, site_action
from .census import (
    cycle_index_census,
    listing_m,
    listing_mv,
    m_count,
    mv_count,
    verify_store,
)
from .d6 import Digraph6Error, decode_digraph6
from .generate import GenerationBudgetError, generate_family_up_to
from .lattice import Lattice, LatticeError, covers_text, parse_covers_text
from .orbits import OrbitVectorFamily
from .polya import cycle_index, decoration_count_for_index
from .render import render_dot
from .store import MemoryStore, RackStore, StoreError, store_open, store_write

_TABLE_HEADER = "n\tCycle indices\tMod. vi-racks\tMod. vi-lattices\tMod. lattices"

_FAMILY_NAMES = {"mv": "modular-vi", "rack": "modular-vi-rack"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modlat",
        description="Modular lattices via racks: generation, counting, and virtual listings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a family exhaustively and write a store")
    gen.add_argument("--family", choices=("mv", "rack"), required=True)
    gen.add_argument("--n", type=int, required=True, help="largest size class")
    gen.add_argument("--out", required=True, help="store directory to write")
    gen.add_argument("--jobs", type=int, default=1)
    gen.set_defaults(func=_cmd_gen)

    count = sub.add_parser("count", help="census counts for one size or a full table")
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--table", action="store_true", help="print rows 1..n with a header")
    count.add_argument("--store", help="rack store directory (generated in memory if absent)")
    count.set_defaults(func=_cmd_count)

    deco = sub.add_parser("decorations", help="count, list, unrank, or sample decorations of a rack")
    deco_sub = deco.add_subparsers(dest="action", required=True)
    for name in ("count", "list", "unrank", "sample"):
        p = deco_sub.add_parser(name)
        p.add_argument("--rack", required=True, help="lattice file (covers or digraph6) or store id k.i")
        p.add_argument("--trinkets", type=int, required=True)
        p.add_argument("--store", help="rack store directory for k.i references")
        if name == "unrank":
            p.add_argument("--index", type=int, required=True)
        if name == "sample":
            p.add_argument("--seed", type=int, required=True)
            p.add_argument("--count", type=int, default=1)
        p.set_defaults(func=_cmd_decorations, action=name)

    unrank = sub.add_parser("unrank", help="member of a virtual listing by ordinal index")
    unrank.add_argument("--family", choices=("mv", "m"), required=True)
    unrank.add_argument("--n", type=int, required=True)
    unrank.add_argument("--index", type=int, required=True)
    unrank.add_argument("--format", choices=("covers", "d6", "dot"), default="covers")
    unrank.add_argument("--store")
    unrank.set_defaults(func=_cmd_unrank)

    sample = sub.add_parser("sample", help="seeded uniform samples from a virtual listing")
    sample.add_argument("--family", choices=("mv", "m"), required=True)
    sample.add_argument("--n", type=int, required=True)
    sample.add_argument("--seed", type=int, required=True)
    sample.add_argument("--count", type=int, default=1)
    sample.add_argument("--format", choices=("covers", "d6", "dot"), default="covers")
    sample.add_argument("--store")
    sample.set_defaults(func=_cmd_sample)

    verify = sub.add_parser("verify", help="consistency checks over a store")
    verify.add_argument("--store", required=True)
    verify.add_argument(
        "--checks",
        default="roundtrip,duality,rack-closure",
        help="comma-separated subset of roundtrip,duality,rack-closure",
    )
    verify.add_argument("--max-n", type=int, default=None, help="cap for rack-closure regeneration")
    verify.set_defaults(func=_cmd_verify)

    render = sub.add_parser("render", help="emit a DOT diagram of a lattice")
    render.add_argument("--lattice", required=True, help="lattice file (covers or digraph6) or store id k.i")
    render.add_argument("--store")
    render.set_defaults(func=_cmd_render)

    return parser


def _rack_store_for(args, needed_n: int) -> RackStore | MemoryStore:
    if getattr(args, "store", None):
        return store_open(args.store, "rack")
    forms = generate_family_up_to("modular-vi-rack", needed_n)
    return MemoryStore(forms, "rack")


def _resolve_lattice(spec: str, store_path: str | None) -> Lattice:
    parts = spec.split(".")
    if len(parts) == 2 and all(p.isdigit() for p in parts) and not Path(spec).exists():
        if not store_path:
            raise LatticeError(f"store id {spec!r} needs --store")
        store = store_open(store_path, "rack")
        return store.get(int(parts[0]), int(parts[1]))
    path = Path(spec)
    if not path.exists():
        raise LatticeError(f"no such lattice file or store id: {spec!r}")
    text = path.read_text().strip()
    if text.startswith("n="):
        return parse_covers_text(text)
    n, arcs = decode_digraph6(text.splitlines()[0].encode())
    return Lattice(n, arcs)


def _emit_lattice(lattice: Lattice, fmt: str) -> str:
    if fmt == "covers":
        return covers_text(lattice)
    if fmt == "d6":
        return canonical_form(lattice).decode() + "\n"
    return render_dot(lattice)


def _cmd_gen(args) -> int:
    family = _FAMILY_NAMES[args.family]
    forms = generate_family_up_to(family, args.n, jobs=args.jobs)
    store_write(forms, args.out, family=args.family)
    for k in sorted(forms):
        print(f"{k}\t{len(forms[k])}")
    return 0


def _cmd_count(args) -> int:
    store = _rack_store_for(args, args.n)
    rows = range(1, args.n + 1) if args.table else [args.n]
    if args.table:
        print(_TABLE_HEADER)
    for n in rows:
        zs = len(cycle_index_census(store, n))
        racks = store.count(n)
        print(f"{n}\t{zs}\t{racks}\t{mv_count(store, n)}\t{m_count(store, n)}")
    return 0


def _cmd_decorations(args) -> int:
    rack = _resolve_lattice(args.rack, getattr(args, "store", None))
    m = args.trinkets
    if m < 0:
        raise LatticeError("trinket count must be nonnegative")
    action = site_action(rack)
    if args.action == "count":
        print(decoration_count_for_index(cycle_index(action), m))
        return 0
    family = OrbitVectorFamily(action, m)
    if args.action == "list":
        for vector in family:
            print(",".join(map(str, vector)))
        return 0
    if args.action == "unrank":
        print(",".join(map(str, family.unrank(args.index))))
        return 0
    rng = random.Random(args.seed)
    for _ in range(args.count):
        vector = family.unrank(rng.randrange(family.size))
        print(",".join(map(str, vector)))
    return 0


def _listing_for(args):
    store = _rack_store_for(args, args.n)
    if args.family == "mv":
        return listing_mv(args.n, store)
    return listing_m(args.n, store)


def _cmd_unrank(args) -> int:
    listing = _listing_for(args)
    sys.stdout.write(_emit_lattice(listing.unrank(args.index), args.format))
    return 0


def _cmd_sample(args) -> int:
    listing = _listing_for(args)
    rng = random.Random(args.seed)
    for _ in range(args.count):
        member = listing.unrank(rng.randrange(listing.cardinality))
        sys.stdout.write(_emit_lattice(member, args.format))
    return 0


def _cmd_verify(args) -> int:
    store = store_open(args.store, "rack")
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    problems = verify_store(store, checks, args.max_n)
    for problem in problems:
        print(problem, file=sys.stderr)
    if problems:
        return 1
    print("ok")
    return 0


def _cmd_render(args) -> int:
    lattice = _resolve_lattice(args.lattice, getattr(args, "store", None))
    sys.stdout.write(render_dot(lattice))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (
        LatticeError,
        StoreError,
        Digraph6Error,
        GenerationBudgetError,
        IndexError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
