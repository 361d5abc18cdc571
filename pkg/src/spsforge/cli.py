"""Command line interface: ``spsforge <subcommand> ...``.

Exit codes: 0 success, 1 a checked property failed, 2 usage error,
3 invalid input (parse or validation failure).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .canonical import canonical_key
from .congruence import check_cc1, check_cc2, ji_congruence_order, square_palette
from .errors import LatticeError
from .fork import classify_cell, insert_fork
from .io import dumps, export_dot, load, load_order, save, to_document
from .order import P_D8, TargetOrder, is_distributive, is_semimodular, is_slim
from .planar import PlanarDiagram, classify_shape, grid
from .search import (SearchBounds, default_threads, enumerate_lattices,
                     search_representation)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3
ALL_PROPS = ("semimodular", "slim", "planar", "distributive",
             "rectangular", "patch", "cc1", "cc2")
DEFAULT_PROPS = ("semimodular", "slim", "planar", "rectangular", "patch", "cc1", "cc2")


class UsageError(Exception):
    pass


def _write(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _diagram(X, what):
    if not isinstance(X, PlanarDiagram):
        raise UsageError(f"{what} needs a planar diagram (upper_order/lower_order missing)")
    return X


def cmd_grid(args):
    p, q = args.edges
    if p < 1 or q < 1:
        raise UsageError("--edges needs two positive integers")
    _write(dumps(to_document(grid(p, q))), args.out)
    return EXIT_OK


def cmd_fork(args):
    D = _diagram(load(args.input), "fork")
    cell = [x.strip() for x in args.cell.split(",")]
    if len(cell) != 4:
        raise UsageError("--cell takes four ids: o,c_l,c_r,t")
    kind = classify_cell(D, cell)
    child, trace = insert_fork(D, cell)
    _write(dumps(to_document(child)), args.out)
    print(f"{kind.value} cell; {len(D)} -> {len(child)} elements "
          f"({trace.leg_steps} leg steps)", file=sys.stderr)
    return EXIT_OK


def cmd_congruences(args):
    X = load(args.input)
    ji, coloring = ji_congruence_order(X)
    show_order = args.ji_order or not args.colors
    if show_order:
        print(f"join-irreducible congruences: {len(ji)}   |Con L| = {ji.congruence_count}")
        for name, theta in zip(ji.names, ji.members):
            a, b = ji.generators[name]
            print(f"  {name} = con({a},{b}): {' | '.join(','.join(c) for c in theta.classes)}")
        rel = ", ".join(f"{a} < {b}" for a, b in ji.order.covers) or "(antichain)"
        print(f"  covers: {rel}")
    if args.colors:
        print("edge colours:")
        for (a, b), c in coloring.items():
            print(f"  {a} -> {b}: {c}")
        if isinstance(X, PlanarDiagram):
            print("4-cell palettes:")
            for cell in X.cells:
                pal = ",".join(sorted(square_palette(X, cell, coloring)))
                kind = classify_cell(X, cell).value
                print(f"  {','.join(cell)} [{kind}]: {{{pal}}}")
    return EXIT_OK


def cmd_check(args):
    X = load(args.input)
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    unknown = set(props) - set(ALL_PROPS)
    if unknown:
        raise UsageError(f"unknown properties: {', '.join(sorted(unknown))}")
    L = X.lattice if isinstance(X, PlanarDiagram) else X
    ji = None
    shape = classify_shape(X) if isinstance(X, PlanarDiagram) else None
    failed = False
    for prop in props:
        detail = ""
        if prop == "semimodular":
            ok = is_semimodular(L)
        elif prop == "slim":
            ok = is_slim(L)
        elif prop == "distributive":
            ok = is_distributive(L)
        elif prop == "planar":
            ok = isinstance(X, PlanarDiagram)
            detail = "" if ok else " (no rotation orders given)"
        elif prop in ("rectangular", "patch"):
            ok = shape is not None and (shape.is_rectangular if prop == "rectangular"
                                        else shape.is_patch)
            if shape is not None and shape.is_rectangular:
                detail = f" (corners {shape.left_corner}, {shape.right_corner})"
        else:
            if ji is None:
                ji, _ = ji_congruence_order(X)
            res = check_cc1(ji.order) if prop == "cc1" else check_cc2(ji.order)
            ok = res.ok
            if not ok:
                detail = f" (offender {res.offender})"
        failed |= not ok
        print(f"{prop}: {'pass' if ok else 'FAIL'}{detail}")
    return EXIT_FAILED if failed else EXIT_OK


def _parse_base(text):
    if not text.startswith("grid:"):
        raise UsageError(f"--base must look like grid:PxQ, got {text!r}")
    try:
        p, q = (int(v) for v in text[5:].lower().split("x"))
    except ValueError:
        raise UsageError(f"--base must look like grid:PxQ, got {text!r}") from None
    return grid(p, q)


def cmd_enumerate(args):
    bases = [_parse_base(b) for b in args.base or ["grid:1x1"]]
    bounds = SearchBounds(max_forks=args.max_forks, max_elements=args.max_elements,
                          prune_on_ji_count=False)
    emit = Path(args.emit) if args.emit else None
    if emit:
        emit.mkdir(parents=True, exist_ok=True)
    enum = enumerate_lattices(bases, bounds, threads=args.threads)
    for k, node in enumerate(enum):
        script = ";".join(",".join(c) for c in node.script) or "-"
        print(f"{k:5d}  {node.base}  forks={node.forks}  size={node.size}  "
              f"ji={node.ji_count}  key={canonical_key(node.diagram.lattice).hex()[:16]}  "
              f"script={script}")
        if emit:
            save(node.diagram, emit / f"lattice_{k:05d}.json")
    s = enum.stats
    print(f"emitted {s.emitted}, insertions {s.insertions}, duplicates {s.duplicates}, "
          f"truncated {s.truncated}, count-law violations {len(s.violations)}")
    return EXIT_OK


def cmd_search(args):
    if args.target == "d8":
        target = P_D8
    else:
        target = TargetOrder.from_order(load_order(args.target), Path(args.target).stem)
    bounds = SearchBounds(max_forks=args.max_forks, max_elements=args.max_elements,
                          grid_edge_caps=tuple(args.grid_max),
                          prune_on_ji_count=not args.no_prune,
                          max_forks_large=args.max_forks_large)
    report = search_representation(target, bounds, threads=args.threads,
                                   checkpoint=args.checkpoint,
                                   checkpoint_every=args.checkpoint_every,
                                   resume=args.resume)
    doc = report.to_document(timing=not args.no_timing)
    text = json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
    _write(text, args.report)
    print(f"{target.name}: {doc['verdict']} (explored {report.explored}, "
          f"pruned {report.pruned}, truncated {report.truncated})", file=sys.stderr)
    return EXIT_OK


def cmd_export_dot(args):
    X = load(args.input)
    coloring = ji_congruence_order(X)[1] if args.colors else None
    _write(export_dot(X, coloring, name=Path(args.input).stem), args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="spsforge", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("grid", help="write the chain-product grid C(P+1) x C(Q+1)")
    p.add_argument("--edges", nargs=2, type=int, metavar=("P", "Q"), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("fork", help="insert a fork at a 4-cell")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--cell", required=True, help="o,c_l,c_r,t")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fork)

    p = sub.add_parser("congruences", help="print Ji(Con L) and the edge colouring")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--ji-order", action="store_true")
    p.add_argument("--colors", action="store_true")
    p.set_defaults(func=cmd_congruences)

    p = sub.add_parser("check", help="test lattice properties")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--props", default=",".join(DEFAULT_PROPS),
                   help=f"comma-separated subset of {','.join(ALL_PROPS)}")
    p.set_defaults(func=cmd_check)

    threads = dict(type=int, default=None,
                   help="worker processes (default: $SPSFORGE_THREADS or 1)")

    p = sub.add_parser("enumerate", help="isomorph-free stream of fork extensions")
    p.add_argument("--base", action="append", help="grid:PxQ (repeatable)")
    p.add_argument("--max-forks", type=int, required=True)
    p.add_argument("--max-elements", type=int, default=64)
    p.add_argument("--emit", metavar="DIR")
    p.add_argument("--threads", **threads)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("search", help="bounded search for a representing SPS lattice")
    p.add_argument("--target", required=True, help="d8 or a JSON order document")
    p.add_argument("--max-forks", type=int, default=5)
    p.add_argument("--max-forks-large", type=int, default=None,
                   help="fork cap for grids other than grid(1,1)")
    p.add_argument("--grid-max", nargs=2, type=int, metavar=("P", "Q"), default=[3, 3])
    p.add_argument("--max-elements", type=int, default=40)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--report")
    p.add_argument("--no-timing", action="store_true", help="omit wall_time_s from the report")
    p.add_argument("--checkpoint")
    p.add_argument("--checkpoint-every", type=int, default=500)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--threads", **threads)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("export-dot", help="Hasse diagram as Graphviz DOT")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--colors", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        args.threads = default_threads()
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LatticeError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
