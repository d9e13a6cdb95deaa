"""Command-line shell over the coloring drivers, oracles and generators.

Subcommands: color, verify, oracle, gen, explore, bench.  Exit code 0
means the requested check or action passed; 1 means a verification,
pair or counterexample failure; 2 means unusable input or arguments.
All output is deterministic for a fixed seed.
"""

import argparse
import sys
from typing import Optional, Sequence

from .color2deg import (
    color_2deg_dense,
    color_2deg_high,
    color_bipartite_2deg,
    color_partial2tree,
)
from .color3deg import color_3deg
from .generate import (
    bench_linear_scaling,
    explore_conjecture,
    format_bench,
    gen_bipartite_2deg,
    gen_maximal_2deg_maxdeg4,
    gen_partial2tree_maxdeg4,
    gen_random_tdeg,
    gen_subdivision,
)
from .graph import ContractError, GraphFormatError, MutableGraph, parse_graph, write_graph
from .state import parse_coloring, write_coloring
from .verify import (
    EdgeCapExceeded,
    brute_force_chi_l,
    count_mono_and_pairs,
    validate_pairs,
    verify_linear_coloring,
)

COLOR_CLASSES = ("3deg", "2deg", "2deg-dense", "bipartite", "p2tree")
GEN_CLASSES = COLOR_CLASSES + ("subdivision",)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_graph(path: str) -> MutableGraph:
    return parse_graph(_read(path))


def _load_pairs(path: str, g: MutableGraph) -> list[tuple[int, int]]:
    """Pairs file: two 1-indexed vertex ids per line, `c` comments allowed."""
    pairs = []
    for lineno, raw in enumerate(_read(path).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"pairs line {lineno}: expected two vertex ids")
        a, b = int(parts[0]), int(parts[1])
        if not (1 <= a <= g.n and 1 <= b <= g.n):
            raise GraphFormatError(f"pairs line {lineno}: vertex out of range")
        pairs.append((a - 1, b - 1))
    try:
        validate_pairs(g, pairs)
    except ContractError as exc:
        # precondition breach in user input, not internal drift
        raise GraphFormatError(f"pairs file: {exc}") from exc
    return pairs


def _cmd_color(args: argparse.Namespace) -> int:
    if args.pairs and args.cls != "p2tree":
        raise ValueError("--pairs only applies to --class p2tree")
    if args.k is not None and args.cls not in ("3deg", "2deg"):
        raise ValueError(f"--class {args.cls} colors with k=2; -k is not accepted")
    g = _load_graph(args.input)
    pairs = _load_pairs(args.pairs, g) if args.pairs else []
    mono: Sequence[int] = ()
    if args.cls == "3deg":
        coloring = color_3deg(g, args.k)
    elif args.cls == "2deg":
        coloring = color_2deg_high(g, args.k)
    elif args.cls == "2deg-dense":
        coloring, mono = color_2deg_dense(g)
    elif args.cls == "bipartite":
        coloring, mono = color_bipartite_2deg(g)
    else:
        coloring, mono = color_partial2tree(g, pairs=pairs)
    _emit(write_coloring(g, coloring, mono), args.output)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    k, entries, _ = parse_coloring(_read(args.coloring))
    colors = [0] * len(g.edge_a)
    seen = set()
    for u, v, c in entries:
        if not (1 <= u <= g.n and 1 <= v <= g.n):
            raise GraphFormatError(f"coloring names vertex outside 1..{g.n}")
        eid = g.find_edge(u - 1, v - 1)
        if eid is None:
            raise GraphFormatError(f"coloring names absent edge {u} {v}")
        if eid in seen:
            raise GraphFormatError(f"edge {u} {v} colored twice")
        seen.add(eid)
        colors[eid] = c
    pairs = _load_pairs(args.pairs, g) if args.pairs else []
    report = verify_linear_coloring(g, colors, k)
    if not report.valid:
        print(f"invalid: {report.reason}")
        return 1
    mono, pairs_ok = count_mono_and_pairs(g, colors, pairs)
    if not pairs_ok:
        print(f"invalid: a pair has both vertices monochromatic (mono: {len(mono)})")
        return 1
    if args.max_mono is not None and len(mono) > args.max_mono:
        print(f"invalid: {len(mono)} monochromatic vertices exceed --max-mono {args.max_mono}")
        return 1
    print(f"valid k={k} mono={len(mono)}")
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    cap = args.max_colors
    if cap is None:
        # Delta + 1 always suffices: proper edge colors are matchings
        cap = max(g.deg, default=0) + 1
    best = brute_force_chi_l(g, cap)
    if best is None:
        print(f"none within {cap} colors")
        return 1
    print(best)
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.cls == "subdivision":
        if args.input is None:
            raise ValueError("--class subdivision needs -i with the base graph")
        g = gen_subdivision(_load_graph(args.input))
    else:
        if args.n is None:
            raise ValueError(f"--class {args.cls} needs -n")
        if args.cls == "3deg":
            g = gen_random_tdeg(args.n, 3, args.dmax if args.dmax else 6, args.seed)
        elif args.cls == "2deg":
            g = gen_random_tdeg(args.n, 2, args.dmax if args.dmax else 4, args.seed)
        elif args.cls == "2deg-dense":
            g = gen_maximal_2deg_maxdeg4(args.n, args.seed)
        elif args.cls == "bipartite":
            g = gen_bipartite_2deg(args.n, args.dmax if args.dmax else 4, args.seed)
        else:
            g = gen_partial2tree_maxdeg4(args.n, args.seed)
    _emit(write_graph(g) + "\n", args.output)
    return 0


def _cmd_explore(args: argparse.Namespace) -> int:
    report = explore_conjecture(args.max_n)
    print(report.render())
    return 0 if not report.counterexamples else 1


def _cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = bench_linear_scaling(sizes, args.cls, args.seed)
    out = format_bench(rows)
    if out:
        print(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linarb",
        description="color low-degeneracy graphs into linear forests and check the results",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    color = sub.add_parser("color", help="color a graph and write the coloring file")
    color.add_argument("-i", "--input", required=True, help="graph file")
    color.add_argument("-o", "--output", help="coloring file (default stdout)")
    color.add_argument("--class", dest="cls", required=True, choices=COLOR_CLASSES)
    color.add_argument("-k", type=int, help="color budget (3deg and 2deg only)")
    color.add_argument("--pairs", help="protected vertex pairs, two ids per line")
    color.set_defaults(func=_cmd_color)

    verify = sub.add_parser("verify", help="check a coloring file against its graph")
    verify.add_argument("-i", "--input", required=True, help="graph file")
    verify.add_argument("-c", "--coloring", required=True, help="coloring file")
    verify.add_argument("--pairs", help="protected vertex pairs, two ids per line")
    verify.add_argument("--max-mono", type=int, help="cap on monochromatic vertices")
    verify.set_defaults(func=_cmd_verify)

    oracle = sub.add_parser("oracle", help="exact minimum color count by backtracking")
    oracle.add_argument("-i", "--input", required=True, help="graph file")
    oracle.add_argument("--max-colors", type=int, help="search ceiling (default maxdeg + 1)")
    oracle.set_defaults(func=_cmd_oracle)

    gen = sub.add_parser("gen", help="generate a seeded instance of a graph class")
    gen.add_argument("--class", dest="cls", required=True, choices=GEN_CLASSES)
    gen.add_argument("-n", type=int, help="vertex count")
    gen.add_argument("--dmax", type=int, help="degree cap where the class allows one")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-i", "--input", help="base graph (subdivision only)")
    gen.add_argument("-o", "--output", help="graph file (default stdout)")
    gen.set_defaults(func=_cmd_gen)

    explore = sub.add_parser("explore", help="exhaustive counterexample search")
    explore.add_argument("--max-n", type=int, required=True, help="largest vertex count, at most 10")
    explore.set_defaults(func=_cmd_explore)

    bench = sub.add_parser("bench", help="generate, color and verify at growing sizes")
    bench.add_argument("--sizes", required=True, help="comma-separated vertex counts, ascending")
    bench.add_argument("--class", dest="cls", default="3deg", choices=("3deg", "2deg-dense"))
    bench.add_argument("--seed", type=int, default=0)
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, EdgeCapExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
