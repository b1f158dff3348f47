"""Command-line interface: ``chartfold <verb> ...``.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 for unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import chart as chart_mod
from . import coloring, lemmas, movie, moves, orient
from .chart import ChartError
from .compile import compile_chart, resolve_all
from .cover import cover_invariants, sheet_trace_oracle
from .macros import Recorder, simplify
from .render import render_chart, write_report


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    return p.read_text()


def _chart(path: str) -> chart_mod.Chart:
    return chart_mod.parse(_read(path))


def _diagram(arg: str) -> coloring.KnotDiagram:
    text = _read(arg) if Path(arg).exists() else arg
    return coloring.parse_diagram(text)


def _emit(args, data, text_lines) -> None:
    if args.json:
        print(json.dumps(data, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _write_or_print(out: str | None, text: str) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- verbs --------------------------------------------------------------------------


def cmd_validate(args) -> int:
    c = _chart(args.chart)
    bad = chart_mod.validate(c)
    _emit(args, {"ok": not bad, "violations": [str(v) for v in bad]},
          ["ok"] if not bad else [str(v) for v in bad])
    return 0 if not bad else 1


def cmd_invariants(args) -> int:
    c = _chart(args.chart)
    inv = cover_invariants(c)
    data = inv.to_json()
    lines = [f"components={inv.components}, euler={inv.euler_total}"]
    ok = True
    if args.oracle:
        other = sheet_trace_oracle(c)
        ok = other.summary() == inv.summary()
        data["oracle_agrees"] = ok
        lines.append("oracle: agrees" if ok else "oracle: DISAGREES")
    _emit(args, data, lines)
    return 0 if ok else 1


def cmd_reduce(args) -> int:
    c = _chart(args.chart)
    rec = Recorder(c)
    simplify(rec)
    if args.moves_out:
        Path(args.moves_out).write_text(moves.dumps_moves(rec.moves) + "\n")
    _write_or_print(args.output, chart_mod.serialize(rec.chart) + "\n")
    print(f"{c.p} -> {rec.chart.p} events with {len(rec.moves)} moves", file=sys.stderr)
    return 0


def cmd_compile(args) -> int:
    out = compile_chart(_chart(args.chart))
    if args.resolve:
        out = resolve_all(out)
    _write_or_print(args.output, chart_mod.serialize(out) + "\n")
    return 0


def cmd_orient(args) -> int:
    c = _chart(args.chart)
    if c.alphabet != "perm":
        c = compile_chart(c)
    oc = orient.attempt_orientation(c, args.budget)
    bad = orient.check_lift(oc)
    data = oc.to_json()
    data["violations"] = bad
    _emit(args, data, [f"nodes={oc.node_count}, optimal={'yes' if oc.optimal else 'unknown'}"]
          + [f"violation: {b}" for b in bad])
    return 0 if not bad else 1


def cmd_color(args) -> int:
    if args.action == "list":
        d = _diagram(args.target)
        cols = coloring.fox_colorings(d, args.n)
        if args.json:
            print(coloring.dumps_colorings(cols))
        else:
            print(f"{len(cols)} colorings ({sum(c.trivial for c in cols)} trivial)")
            for c in cols:
                print(" ".join(str(v) for v in c.arc_colors))
        return 0
    try:
        data = json.loads(_read(args.target))
        items = data if isinstance(data, list) else [data]
        for d in items:
            coloring.DihedralColoring.from_json(d)
    except coloring.DiagramError as exc:
        _emit(args, {"ok": False, "reason": str(exc)}, [f"invalid: {exc}"])
        return 1
    _emit(args, {"ok": True, "count": len(items)}, [f"ok ({len(items)} colorings)"])
    return 0


def cmd_moves(args) -> int:
    c = _chart(args.chart)
    if args.action == "search":
        res = moves.search_equivalence(c, _chart(args.other), budget=args.budget)
        data = {"found": res.found, "states": res.states, "moves": moves.moves_to_json(res.moves)}
        _emit(args, data, [f"found {len(res.moves)} moves ({res.states} states)" if res.found
                           else f"not found within {res.states} states (inconclusive)"])
        return 0 if res.found else 1
    seq = moves.moves_from_json(json.loads(_read(args.other)))
    res = moves.verify_sequence(c, seq)
    if args.action == "apply" and res.ok:
        _write_or_print(args.output, chart_mod.serialize(res.chart) + "\n")
        return 0
    data = {"ok": res.ok, "index": res.index, "reason": res.reason,
            "handles": [res.one_handles, res.two_handles]}
    _emit(args, data, [f"ok: {len(seq)} moves, handles one={res.one_handles} two={res.two_handles}"]
          if res.ok else [f"move {res.index} fails: {res.reason}"])
    return 0 if res.ok else 1


def _pick_coloring(d, n: int, colors: str | None):
    if colors:
        col = coloring.DihedralColoring(n, tuple(int(v) for v in colors.replace(",", " ").split()), d)
        coloring.check_coloring(col)
        return col
    nontrivial = [c for c in coloring.fox_colorings(d, n) if not c.trivial]
    if not nontrivial:
        if len(d.arcs) == 1:
            return coloring.fox_colorings(d, n)[1]
        raise UsageError(f"the diagram has no nontrivial coloring mod {n}")
    return nontrivial[0]


def _report_movie(args, m: movie.ChartMovie) -> int:
    rep = movie.verify_movie(m, orient=getattr(args, "orient", False))
    if getattr(args, "report", None):
        write_report(m.frames, args.report, rep.frames, stem="movie")
    _emit(args, rep.to_json(), rep.lines())
    return 0 if rep.ok else 1


def cmd_movie(args) -> int:
    if args.action == "verify":
        return _report_movie(args, movie.ChartMovie.loads(_read(args.target)))
    if args.action == "replay-t25":
        return _report_movie(args, movie.replay_t25_fixture(args.target))
    d = _diagram(args.target)
    if args.action == "cyclic":
        m = movie.build_cyclic_movie(d, args.n)
    else:
        m = movie.build_dihedral_movie(_pick_coloring(d, args.n, args.colors))
    if args.output:
        Path(args.output).write_text(m.dumps())
    return _report_movie(args, m)


def cmd_render(args) -> int:
    text = _read(args.target)
    data = json.loads(text)
    if isinstance(data, dict) and "frames" in data:
        m = movie.ChartMovie.from_json(data)
        outdir = args.output or "."
        for p in write_report(m.frames, outdir, movie.verify_movie(m).frames, stem="movie"):
            print(p)
        return 0
    _write_or_print(args.output, render_chart(chart_mod.chart_from_json(data), Path(args.target).stem))
    return 0


def cmd_lemmas(args) -> int:
    rows = lemmas.run_suite()
    _emit(args, [{"name": n, "ok": ok, "reason": why} for n, ok, why in rows],
          [f"{'PASS' if ok else 'FAIL'} {n}" + (f": {why}" if why else "") for n, ok, why in rows])
    return 0 if all(ok for _, ok, _ in rows) else 1


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = argparse.ArgumentParser(prog="chartfold", description="Charts for folded branched covers.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a chart file")
    s.add_argument("chart")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", parents=[common], help="components and euler characteristic")
    s.add_argument("chart")
    s.add_argument("--oracle", action="store_true", help="also run the sheet-tracing oracle")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("reduce", parents=[common], help="cancel pairs and straighten snakes")
    s.add_argument("chart")
    s.add_argument("-o", "--output")
    s.add_argument("--moves-out", help="write the moves used to this file")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("compile", parents=[common], help="dihedral chart to permutation chart")
    s.add_argument("chart")
    s.add_argument("--resolve", action="store_true", help="resolve branch vertices into simple ones")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("orient", parents=[common], help="lift to a braid chart with nodes")
    s.add_argument("chart")
    s.add_argument("--budget", type=int, default=200_000)
    s.set_defaults(func=cmd_orient)

    s = sub.add_parser("color", parents=[common], help="Fox colorings")
    s.add_argument("action", choices=["list", "check"])
    s.add_argument("target", help="diagram file or text (list), coloring JSON (check)")
    s.add_argument("--n", type=int, default=5)
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("moves", parents=[common], help="apply, verify or search for move sequences")
    s.add_argument("action", choices=["apply", "verify", "search"])
    s.add_argument("chart")
    s.add_argument("other", help="moves JSON (apply, verify) or target chart (search)")
    s.add_argument("--budget", type=int, default=100_000)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_moves)

    s = sub.add_parser("movie", parents=[common], help="build, verify and replay movies")
    s.add_argument("action", choices=["cyclic", "dihedral", "verify", "replay-t25"])
    s.add_argument("target", nargs="?", help="diagram (cyclic, dihedral) or movie file")
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--colors", help="arc colors for a dihedral movie, e.g. '0,1,4,3,2'")
    s.add_argument("-o", "--output", help="write the movie JSON here")
    s.add_argument("--orient", action="store_true", help="report orientation nodes per frame")
    s.add_argument("--report", help="directory for the TSV table and figures")
    s.set_defaults(func=cmd_movie)

    s = sub.add_parser("render", parents=[common], help="SVG of a chart, or a report for a movie")
    s.add_argument("target")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("lemmas", parents=[common], help="run the certificate suite")
    s.set_defaults(func=cmd_lemmas)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "movie" and args.action != "replay-t25" and not args.target:
        parser.error(f"movie {args.action} needs a target")
    try:
        return args.func(args)
    except (UsageError, ChartError, coloring.DiagramError, moves.MoveError, json.JSONDecodeError,
            KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
