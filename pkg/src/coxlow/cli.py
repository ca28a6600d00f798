"""Command-line interface.

Exit codes: 0 pass, 1 property violation, 2 resource cap, 3 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .automaton import build_automaton, export_dot, transitions_csv
from .coxeter import CoxeterSystem, load_system, parse_word
from .lowshi import boundary_roots, low_elements, polyhedron_chambers, reduced_boundary
from .presets import AFFINE_PRESETS, PRESETS, TABLE_PRESETS, get_preset
from .roots import DEFAULT_LAYER_CAP, ResourceCapExceeded, enumerate_roots, roots_csv, small_roots
from .shortinv import build_graph, graph_dot
from .suites import SUITES, Config, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_CAP, EXIT_INPUT = 0, 1, 2, 3


class BadInput(Exception):
    pass


def _ms(text: str) -> list[int]:
    try:
        ms = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad level list {text!r}") from None
    if not ms or any(m < 0 for m in ms):
        raise argparse.ArgumentTypeError("levels must be non-negative integers")
    return ms


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--system", metavar="FILE", help="system definition (JSON)")
    src.add_argument("--preset", metavar="NAME", help="bundled system: " + ", ".join(PRESETS))
    common.add_argument("-m", dest="ms", type=_ms, default=None, metavar="INT[,INT...]")
    common.add_argument("--radius", type=int, default=8)
    common.add_argument("--max-depth", type=int, default=None)
    common.add_argument("--layer-cap", type=int, default=DEFAULT_LAYER_CAP)
    common.add_argument("--budget", type=float, default=60.0, help="soft time budget per suite (s)")
    common.add_argument("--format", choices=["json", "csv", "dot"], default=None)
    common.add_argument("--out", metavar="PATH", default=None)

    p = argparse.ArgumentParser(prog="coxlow", description="Small roots, low elements and Shi regions of Coxeter groups.")
    p.add_argument("--version", action="version", version=f"coxlow {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="|Sigma_m| and |L_m| for presets")
    t.add_argument("presets", nargs="*", help="preset names (default: the five table systems)")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=list(SUITES))

    g = sub.add_parser("graph", parents=[common], help="short-inversion graph and Hasse diagram")
    g.add_argument("word", help="word such as 312121321 (use 'e' for the identity)")

    sub.add_parser("roots", parents=[common], help="root table up to --max-depth")
    sub.add_parser("low", parents=[common], help="low elements, boundary roots and polyhedron chambers")
    sub.add_parser("automaton", parents=[common], help="reduced-word automaton (dot or csv)")
    sub.add_parser("presets", help="list bundled presets")
    return p


def _system(args) -> tuple[CoxeterSystem, str | None]:
    if args.system:
        try:
            return load_system(args.system), None
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            raise BadInput(f"cannot load system: {exc}") from None
    name = args.preset or "universal3"
    try:
        return get_preset(name).system(), name
    except KeyError as exc:
        raise BadInput(str(exc.args[0])) from None


def _config(args, preset: str | None) -> dict:
    return {"version": __version__, "command": args.command, "preset": preset,
            "system": args.system, "m": args.ms, "radius": args.radius,
            "max_depth": args.max_depth, "layer_cap": args.layer_cap, "budget_s": args.budget}


def _emit(text: str, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_table(args) -> int:
    names = args.presets or TABLE_PRESETS
    ms = args.ms or [0, 1, 2]
    rows, status = [], EXIT_OK
    for name in names:
        try:
            pre = get_preset(name)
        except KeyError as exc:
            raise BadInput(str(exc.args[0])) from None
        W = pre.system()
        for m in ms:
            sig = small_roots(W, m, args.layer_cap)
            L = low_elements(W, sig)
            es, el = pre.expected_small_count(m), pre.expected_low_count(m)
            ok = (es is None or es == len(sig)) and (el is None or el == len(L))
            if not ok:
                status = EXIT_VIOLATION
            rows.append({"preset": name, "m": m, "small_roots": len(sig), "low_elements": len(L),
                         "expected_small_roots": es, "expected_low_elements": el,
                         "match": "" if es is None and el is None else ("yes" if ok else "NO")})
    if args.format == "json":
        _emit(_json({"config": _config(args, None), "rows": rows,
                     "status": "pass" if status == EXIT_OK else "fail"}), args)
    else:
        buf = io.StringIO()
        wr = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        wr.writeheader()
        for r in rows:
            wr.writerow({k: ("" if v is None else v) for k, v in r.items()})
        _emit(buf.getvalue(), args)
    return status


def cmd_verify(args) -> int:
    W, preset = _system(args)
    args.ms = args.ms or [0, 1]
    cfg = Config(ms=args.ms, radius=args.radius, max_depth=args.max_depth,
                 layer_cap=args.layer_cap, budget=args.budget,
                 affine=preset in AFFINE_PRESETS, preset=preset)
    rep = run_suite(args.suite, W, cfg)
    out = {"config": _config(args, preset), **rep}
    _emit(_json(out), args)
    return EXIT_OK if rep["status"] == "pass" else EXIT_VIOLATION


def cmd_graph(args) -> int:
    W, preset = _system(args)
    try:
        w = W.element(parse_word(args.word, W.rank))
    except ValueError as exc:
        raise BadInput(str(exc)) from None
    g = build_graph(w)
    if args.format == "json":
        out = {"config": _config(args, preset), "element": str(w), "length": w.length,
               "vertices": [v.label() for v in g.vertices],
               "edges": [[a.label(), b.label()] for a, b in sorted(g.edges, key=lambda e: (e[0].id, e[1].id))],
               "hasse": [[a.label(), b.label()] for a, b in sorted(g.hasse, key=lambda e: (e[0].id, e[1].id))]}
        _emit(_json(out), args)
    else:
        _emit(graph_dot(g) + graph_dot(g, hasse=True), args)
    return EXIT_OK


def cmd_roots(args) -> int:
    W, preset = _system(args)
    depth = args.max_depth
    if depth is None:
        depth = small_roots(W, max(args.ms or [2]), args.layer_cap).depth
    reg = enumerate_roots(W, depth)
    if args.format == "json":
        out = {"config": _config(args, preset),
               "roots": [{"id": r.id, "label": r.label(), "coords": [c.to_str() for c in r.coords],
                          "dp": r.dp, "dp_inf": r.dp_inf} for r in reg.roots]}
        _emit(_json(out), args)
    else:
        _emit(roots_csv(reg.roots), args)
    return EXIT_OK


def cmd_low(args) -> int:
    W, preset = _system(args)
    levels = []
    for m in args.ms or [0]:
        sig = small_roots(W, m, args.layer_cap)
        L = low_elements(W, sig)
        P = boundary_roots(L)
        chambers = polyhedron_chambers(W, P, radius=max(args.radius, L.max_length()))
        levels.append({
            "m": m, "small_roots": len(sig),
            "low_elements": [str(w) for w in L],
            "boundary_roots": sorted(r.label() for r in P.boundary_roots),
            "boundary_roots_dominance_reduced (heuristic)": sorted(r.label() for r in reduced_boundary(P)),
            "polyhedron_chambers": [str(v) for v in chambers],
        })
    _emit(_json({"config": _config(args, preset), "levels": levels}), args)
    return EXIT_OK


def cmd_automaton(args) -> int:
    W, preset = _system(args)
    m = (args.ms or [0])[0]
    L = low_elements(W, small_roots(W, m, args.layer_cap))
    A = build_automaton(W, L, radius=args.radius)
    if args.format == "csv":
        _emit(transitions_csv(A), args)
    else:
        _emit(export_dot(A), args)
    return EXIT_OK


def cmd_presets(args) -> int:
    for name, p in PRESETS.items():
        sys.stdout.write(f"{name}\t{p.notes}\n")
    return EXIT_OK


COMMANDS = {"table": cmd_table, "verify": cmd_verify, "graph": cmd_graph, "roots": cmd_roots,
            "low": cmd_low, "automaton": cmd_automaton, "presets": cmd_presets}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
