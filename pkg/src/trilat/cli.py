"""Command-line surface for the lattice workbench.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 solver gave no definite verdict, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions, counting, solver, triples
from .coloring import (
    CertificateError,
    Coloring,
    color_count,
    is_proper,
    read_certificate,
    write_certificate,
)
from .lattice import PeriodicStripe, TriangleRegion
from .triangles import classify_pairs, enumerate_triangles

EX_USAGE = 64
EX_IMPROPER = 1
EX_MALFORMED = 2
EX_UNKNOWN = 3

PALETTE = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
    "#9a6324", "#fffac8", "#800000", "#aaffc3", "#808000", "#ffd8b1",
    "#000075", "#808080",
]


def _palette(i: int) -> str:
    if i < len(PALETTE):
        return PALETTE[i]
    # deterministic fallback colors beyond the named palette
    h = (i * 2654435761) & 0xFFFFFF
    return f"#{h:06x}"


def _budget(args) -> solver.Budget:
    return solver.Budget(max_nodes=getattr(args, "nodes", None),
                         max_seconds=getattr(args, "timeout", None))


def cmd_count(args) -> int:
    rows = []
    for n in range(args.n_min, args.n + 1):
        rep = counting.report_brute(n) if args.brute else counting.report_closed(n)
        rows.append(rep)
    if args.format == "json":
        print(json.dumps([vars(r) for r in rows], indent=2))
    else:
        print("n\talpha\tbeta\tgamma\ta0\ta1\ta2\tsource")
        for r in rows:
            print(f"{r.n}\t{r.alpha}\t{r.beta}\t{r.gamma}\t{r.a0}\t{r.a1}\t{r.a2}\t{r.source}")
    return 0


def cmd_enumerate(args) -> int:
    tris = enumerate_triangles(TriangleRegion(args.n))
    if args.format == "json":
        print(json.dumps([[list(p) for p in t.vertices()] for t in tris]))
    else:
        for t in tris:
            print("\t".join(f"{p.a} {p.b}" for p in t.vertices()))
    return 0


def cmd_classify(args) -> int:
    cls = classify_pairs(TriangleRegion(args.n))
    if args.format == "json":
        print(json.dumps({"n": args.n, "a0": cls.a0, "a1": cls.a1, "a2": cls.a2}))
    else:
        print(f"a0\t{cls.a0}\na1\t{cls.a1}\na2\t{cls.a2}")
    return 0


def cmd_solve(args) -> int:
    region = TriangleRegion(args.n)
    if args.sat_cmd:
        out = solver.decide_k_colorable_external(region, args.colors, args.sat_cmd,
                                                 timeout=args.timeout)
    else:
        out = solver.decide_k_colorable(region, args.colors, _budget(args))
    print(f"c nodes {out.stats.nodes} elapsed {out.stats.elapsed:.3f}s")
    if out.status == solver.SAT:
        print("s SATISFIABLE")
        text = write_certificate(out.coloring)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        return 0
    if out.status == solver.UNSAT:
        print("s UNSATISFIABLE")
        return 0
    print("s UNKNOWN")
    return EX_UNKNOWN


def cmd_f(args) -> int:
    chevron = constructions.chevron_coloring(args.n)
    res = solver.compute_f(args.n, _budget(args),
                           upper_bound=color_count(chevron),
                           upper_coloring=chevron,
                           sat_cmd=args.sat_cmd or None)
    if res.exact is not None:
        print(f"f({args.n}) = {res.exact}")
        if args.output and res.coloring is not None:
            Path(args.output).write_text(write_certificate(res.coloring))
        return 0
    print(f"f({args.n}) in [{res.lo}, {res.hi}]")
    return EX_UNKNOWN


def cmd_construct(args) -> int:
    if args.scheme == "chevron":
        col = constructions.chevron_coloring(args.n)
    else:
        if args.block:
            block = read_certificate(Path(args.block).read_text())
        else:
            out = solver.solve_periodic_stripe(args.width, 4, 4, _budget(args))
            if out.status != solver.SAT:
                print(f"no base block found for the {args.width}-row stripe", file=sys.stderr)
                return EX_UNKNOWN
            block = out.coloring
        if args.d is not None:
            col = constructions.banded_coloring(args.n, block, args.width, args.d)
        else:
            d = constructions.minimal_spacer(args.n, block, args.width)
            col = constructions.banded_coloring(args.n, block, args.width, d)
            print(f"c minimal spacer d = {d}", file=sys.stderr)
    text = write_certificate(col)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"c colors used: {color_count(col)}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    try:
        col = read_certificate(Path(args.file).read_text())
    except (OSError, CertificateError) as e:
        print(f"malformed certificate: {e}", file=sys.stderr)
        return EX_MALFORMED
    ok, witness = is_proper(col)
    if ok:
        print(f"proper: {color_count(col)} colors")
        return 0
    print(f"improper: monochromatic triangle {[tuple(p) for p in witness.vertices()]}")
    return EX_IMPROPER


def cmd_export_dimacs(args) -> int:
    region = (PeriodicStripe(args.stripe, args.period)
              if args.stripe else TriangleRegion(args.n))
    cnf = solver.export_dimacs(region, args.colors)
    text = cnf.to_dimacs()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_import_solution(args) -> int:
    region = (PeriodicStripe(args.stripe, args.period)
              if args.stripe else TriangleRegion(args.n))
    cnf = solver.export_dimacs(region, args.colors)
    try:
        col = solver.import_assignment(cnf, Path(args.file).read_text())
    except ValueError as e:
        print(f"bad assignment: {e}", file=sys.stderr)
        return EX_MALFORMED
    text = write_certificate(col)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_stripe(args) -> int:
    periods = [args.period] if args.period else range(1, args.max_period + 1)
    for p in periods:
        out = solver.solve_periodic_stripe(args.k, p, args.colors, _budget(args))
        print(f"c k={args.k} period={p}: {out.status}")
        if out.status == solver.SAT:
            text = write_certificate(out.coloring)
            if args.output:
                Path(args.output).write_text(text)
            else:
                sys.stdout.write(text)
            return 0
        if out.status == solver.UNKNOWN:
            return EX_UNKNOWN
    return EX_IMPROPER


def cmd_triples(args) -> int:
    if args.action == "check":
        try:
            ts = triples.read_triples(Path(args.file).read_text())
        except (OSError, ValueError) as e:
            print(f"malformed triple system: {e}", file=sys.stderr)
            return EX_MALFORMED
        r = triples.is_modified_sts(ts)
        if r is None:
            print("not a modified triple system")
            return EX_IMPROPER
        print(f"modified triple system with r = {r}")
        return 0
    res = triples.search_modified_sts(args.v, args.r, max_nodes=args.nodes or 5_000_000)
    if res == "UNSAT":
        print("s UNSATISFIABLE")
        return 0
    if res == "UNKNOWN":
        print("s UNKNOWN")
        return EX_UNKNOWN
    print("s SATISFIABLE")
    sys.stdout.write(triples.write_triples(res))
    return 0


def render_svg(col: Coloring, witness=None, scale: float = 24.0) -> str:
    """Deterministic SVG: one disc per point, fill keyed by color index."""
    pts = sorted(col.assignment, key=lambda p: (p.b, p.a))
    coords = {p: p.to_cartesian() for p in pts}
    xs = [c[0] for c in coords.values()]
    ys = [c[1] for c in coords.values()]
    pad = 1.0
    x0, y0 = min(xs) - pad, min(ys) - pad
    width = (max(xs) - min(xs) + 2 * pad) * scale
    height = (max(ys) - min(ys) + 2 * pad) * scale

    def sx(x):
        return (x - x0) * scale

    def sy(y):
        # flip so row b = 0 is at the bottom
        return height - (y - y0) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for p in pts:
        x, y = coords[p]
        fill = _palette(col.assignment[p])
        lines.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{scale * 0.35:.2f}" '
                     f'fill="{fill}" stroke="black" stroke-width="1"/>')
    if witness is not None:
        path = " ".join(
            f"{sx(v.to_cartesian()[0]):.2f},{sy(v.to_cartesian()[1]):.2f}"
            for v in witness.vertices())
        lines.append(f'<polygon points="{path}" fill="none" stroke="black" stroke-width="3"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_render(args) -> int:
    try:
        col = read_certificate(Path(args.file).read_text())
    except (OSError, CertificateError) as e:
        print(f"malformed certificate: {e}", file=sys.stderr)
        return EX_MALFORMED
    witness = None
    if args.witness:
        ok, witness = is_proper(col)
        if ok:
            witness = None
    svg = render_svg(col, witness)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trilat",
                                 description="Triangular-lattice coloring and counting workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    def common_budget(p):
        p.add_argument("--nodes", type=int, default=None, help="node budget (deterministic)")
        p.add_argument("--timeout", type=float, default=None,
                       help="wall-clock budget in seconds (non-deterministic)")

    p = sub.add_parser("count", help="counting table for T_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--brute", action="store_true", help="use brute-force oracles")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list equilateral triangles of T_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="pair classification tallies for T_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="decide K-colorability of T_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--colors", "-k", type=int, required=True)
    p.add_argument("--sat-cmd", default=None, help="external SAT solver command")
    p.add_argument("--output", "-o", default=None)
    common_budget(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("f", help="compute f(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sat-cmd", default=None)
    p.add_argument("--output", "-o", default=None)
    common_budget(p)
    p.set_defaults(func=cmd_f)

    p = sub.add_parser("construct", help="generate an explicit coloring")
    p.add_argument("--scheme", choices=("chevron", "banded"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None, help="spacer width (banded)")
    p.add_argument("--width", "-w", type=int, default=6, help="band width (banded)")
    p.add_argument("--block", default=None, help="base block certificate (banded)")
    p.add_argument("--output", "-o", default=None)
    common_budget(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a coloring certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dimacs", help="emit DIMACS CNF for a coloring instance")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--stripe", type=int, default=None, help="stripe rows k")
    p.add_argument("--period", type=int, default=None)
    p.add_argument("--colors", "-k", type=int, required=True)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_export_dimacs)

    p = sub.add_parser("import-solution", help="project a DIMACS model to a certificate")
    p.add_argument("file")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--stripe", type=int, default=None)
    p.add_argument("--period", type=int, default=None)
    p.add_argument("--colors", "-k", type=int, required=True)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_import_solution)

    p = sub.add_parser("stripe", help="search periodic stripe colorings")
    p.add_argument("--k", type=int, required=True, help="stripe rows")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--period", type=int, default=None)
    p.add_argument("--max-period", type=int, default=12)
    p.add_argument("--output", "-o", default=None)
    common_budget(p)
    p.set_defaults(func=cmd_stripe)

    p = sub.add_parser("triples", help="check or search modified triple systems")
    p.add_argument("action", choices=("check", "search"))
    p.add_argument("file", nargs="?")
    p.add_argument("--v", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--nodes", type=int, default=None)
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("render", help="render a certificate as SVG")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true",
                   help="overlay a monochromatic triangle if improper")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_render)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EX_USAGE if e.code not in (0, None) else 0
    # argument-range validation before dispatch
    try:
        if getattr(args, "n", None) is not None and args.n < 1:
            raise ValueError("n must be positive")
        if getattr(args, "colors", None) is not None and args.colors < 1:
            raise ValueError("colors must be positive")
        if getattr(args, "n_min", None) is None and hasattr(args, "n_min"):
            args.n_min = args.n
        if args.command in ("export-dimacs", "import-solution"):
            if (args.n is None) == (args.stripe is None):
                raise ValueError("give exactly one of --n or --stripe")
            if args.stripe is not None and not args.period:
                raise ValueError("--stripe requires --period")
        if args.command == "triples":
            if args.action == "check" and not args.file:
                raise ValueError("check requires a file")
            if args.action == "search" and (args.v is None or args.r is None):
                raise ValueError("search requires --v and --r")
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EX_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
