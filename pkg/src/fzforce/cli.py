"""``fzforce`` command line.

Records are printed as ``key: value`` lines (lists and mappings as JSON), or
as one JSON object with ``--json``.  Exit codes: 0 success, 1 usage error,
2 verification failure, 3 undefined metric.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import digraph as dg
from .classify import classify_f_less_than_z, classify_oriented, critical_threshold
from .closed_forms import UndefinedMetric, construct_weak_cycle, f_auto
from .forcing import closure
from .solvers import (
    DEFAULT_BOUND,
    SearchBoundExceeded,
    enumerate_maximal_fzfs,
    enumerate_minimal_zfs,
    failed_zero_forcing_number,
    min_critical_set,
    zero_forcing_number,
)

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_UNDEFINED = 0, 1, 2, 3
UNDEFINED_REASON = "Z=0 under loop rule"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- generators ---------------------------------------------------------------


def _ints(params, count, names):
    if len(params) != count:
        raise UsageError(f"expected {count} parameter(s): {' '.join(names)}")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError(f"parameters must be integers: {' '.join(names)}") from None


def _operand(token: str) -> dg.Digraph:
    """A file path, or ``family:arg,arg`` for an inline generator."""
    if ":" in token:
        fam, _, rest = token.partition(":")
        if fam in GENERATORS:
            return build(fam, [p for p in rest.split(",") if p])
    return dg.read_digraph(token)


def _gen_star(params):
    if len(params) not in (1, 2):
        raise UsageError("star takes t and an optional orientation spec")
    (t,) = _ints(params[:1], 1, ["t"])
    return dg.star(t, params[1] if len(params) == 2 else None)


def _gen_union(params):
    if not params:
        raise UsageError("union needs at least one operand")
    return dg.disjoint_union([_operand(p) for p in params])


def _one(params, name):
    if len(params) != 1:
        raise UsageError(f"expected one parameter: {name}")
    return params[0]


def _two_operands(params):
    if len(params) != 2:
        raise UsageError("expected two operands")
    return _operand(params[0]), _operand(params[1])


GENERATORS = {
    "cycle": lambda p: dg.directed_cycle(*_ints(p, 1, ["n"])),
    "path": lambda p: dg.bidirected_path(*_ints(p, 1, ["n"])),
    "weakpath": lambda p: dg.weak_path(_one(p, "spec")),
    "weakcycle": lambda p: dg.weak_cycle(_one(p, "spec")),
    "star": _gen_star,
    "complete": lambda p: dg.complete(*_ints(p, 1, ["n"])),
    "empty": lambda p: dg.empty(*_ints(p, 1, ["n"])),
    "debruijn": lambda p: dg.de_bruijn(*_ints(p, 2, ["d", "M"]))[0],
    "kautz": lambda p: dg.kautz(*_ints(p, 2, ["d", "M"]))[0],
    "outjoin": lambda p: dg.outjoin(*_two_operands(p)),
    "linegraph": lambda p: dg.line_digraph(_operand(_one(p, "operand")))[0],
    "union": _gen_union,
    "thm412": lambda p: construct_weak_cycle(*_ints(p, 2, ["n", "k"])),
}


def build(family: str, params) -> dg.Digraph:
    if family not in GENERATORS:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(GENERATORS)}")
    return GENERATORS[family](list(params))


# -- output -----------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, (list, dict, tuple)):
        return json.dumps(value)
    return str(value)


def emit(record: dict, as_json: bool, stream=None) -> None:
    stream = sys.stdout if stream is None else stream
    if as_json:
        stream.write(json.dumps(record) + "\n")
        return
    for key, value in record.items():
        stream.write(f"{key}: {_fmt(value)}\n")


def _parse_set(text: str | None, n: int) -> list[int]:
    if not text:
        return []
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        tok = tok[1:] if tok[:1] in "vV" else tok
        try:
            out.append(int(tok))
        except ValueError:
            raise UsageError(f"bad vertex {tok!r} in --set") from None
    if any(not 0 <= v < n for v in out):
        raise UsageError(f"--set has a vertex outside 0..{n - 1}")
    return sorted(set(out))


def _load(path: str) -> dg.Digraph:
    """Text-format or DOT digraph from a file, or stdin for ``-``."""
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    if text.lstrip().startswith("digraph"):
        return dg.parse_dot(text)
    return dg.parse_digraph(text)


# -- commands -----------------------------------------------------------------------


def cmd_gen(args) -> int:
    d = build(args.family, args.params)
    text = dg.format_digraph(d)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def compute_record(d: dg.Digraph, metric: str, exact: bool = False, vertex_set=(),
                   bound: int | None = None, strong: bool = False) -> dict:
    t0 = time.perf_counter()
    rec = {"n": d.n, "metric": metric, "value": None, "witness": None, "method": "exact"}
    if metric == "Z":
        sol = zero_forcing_number(d, bound)
        rec.update(value=sol.value, witness=sorted(sol.witness), checked=sol.checked)
    elif metric == "F":
        if exact:
            sol = failed_zero_forcing_number(d, bound)
            if sol is None:
                rec["reason"] = UNDEFINED_REASON
            else:
                rec.update(value=sol.value, witness=sorted(sol.witness), checked=sol.checked)
        else:
            value, method, family = f_auto(d)
            rec.update(value=value, method=method, family=family)
            if value is None:
                rec["reason"] = UNDEFINED_REASON
    elif metric == "mincrit":
        strong = strong or d.has_loops
        w = min_critical_set(d, strong=strong, bound=bound)
        rec["strong"] = strong
        if w is None:
            rec["reason"] = "no critical set"
        else:
            rec.update(value=len(w), witness=sorted(w))
    elif metric == "closure":
        tr = closure(d, vertex_set)
        del rec["method"]
        rec.update(value=len(tr.final_set), witness=sorted(tr.final_set), initial=list(vertex_set),
                   complete=tr.complete, loop_rule=tr.loop_rule, rounds=tr.num_rounds, trace=tr.as_records())
    else:
        raise UsageError(f"unknown metric {metric!r}")
    rec["elapsed"] = round(time.perf_counter() - t0, 6)
    return rec


def cmd_compute(args) -> int:
    d = _load(args.file)
    rec = compute_record(d, args.metric, exact=args.exact, vertex_set=_parse_set(args.set, d.n),
                         bound=args.bound, strong=args.strong)
    emit(rec, args.json)
    if rec["value"] is None and rec.get("reason") == UNDEFINED_REASON:
        return EXIT_UNDEFINED
    return EXIT_OK


def cmd_classify(args) -> int:
    d = _load(args.file)
    c = classify_oriented(d) if args.oriented else classify_f_less_than_z(d)
    rec = {"n": d.n, "class": c.kind.value, "witness": c.witness}
    if not args.oriented:
        rec["critical_threshold"] = critical_threshold(d)
    emit(rec, args.json)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    d = _load(args.file)
    fn = enumerate_minimal_zfs if args.what == "minimal-zfs" else enumerate_maximal_fzfs
    sets = [sorted(s) for s in fn(d, args.bound)]
    emit({"n": d.n, "what": args.what, "count": len(sets), "sets": sets}, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    rep = run_suite(args.suite)
    rec = {
        "suite": rep.name,
        "summary": rep.summary(),
        "checked": rep.checked,
        "mismatches": rep.mismatches,
        "elapsed": round(rep.elapsed, 3),
        "counts": rep.counts,
    }
    if rep.counterexample is not None:
        rec["counterexample"] = dg.format_digraph(rep.counterexample).strip().replace("\n", "; ")
        rec["detail"] = rep.detail
    if args.figures:
        from .plotting import save_report_figures

        rec["figures"] = [str(p) for p in save_report_figures(rep, args.figures)]
    emit(rec, args.json)
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_dot(args) -> int:
    d = _load(args.file)
    text = dg.to_dot(d, highlight=_parse_set(args.highlight, d.n))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_draw(args) -> int:
    from .plotting import draw_digraph

    d = _load(args.file)
    path = draw_digraph(d, args.out, highlight=_parse_set(args.highlight, d.n), title=args.title)
    emit({"n": d.n, "figure": str(path)}, args.json)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    from .verify import SUITES

    p = _Parser(prog="fzforce", description="Zero forcing and failed zero forcing on digraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a digraph family")
    g.add_argument("family", choices=sorted(GENERATORS))
    g.add_argument("params", nargs="*", help="family parameters; operands are files or family:args")
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("compute", help="compute Z, F, a minimum critical set or a closure")
    c.add_argument("metric", choices=["Z", "F", "mincrit", "closure"])
    c.add_argument("file", help="digraph file, or - for stdin")
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="always use the exhaustive solver")
    mode.add_argument("--auto", action="store_true", help="closed form when a family matches (default)")
    c.add_argument("--set", help="initial set for closure, e.g. 0,3 or v0,v3")
    c.add_argument("--strong", action="store_true", help="strongly critical sets for mincrit")
    c.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("classify", help="F < Z family recognition")
    k.add_argument("file")
    k.add_argument("--oriented", action="store_true", help="use the oriented-graph recognition")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_classify)

    e = sub.add_parser("enumerate", help="list minimal ZFS or maximal FZFS")
    e.add_argument("what", choices=["minimal-zfs", "maximal-fzfs"])
    e.add_argument("file")
    e.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run an invariant sweep")
    v.add_argument("suite", choices=list(SUITES))
    v.add_argument("--figures", metavar="DIR", help="write report figures here")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("dot", help="export Graphviz DOT")
    x.add_argument("file")
    x.add_argument("--highlight")
    x.add_argument("--out", "-o")
    x.set_defaults(func=cmd_dot)

    w = sub.add_parser("draw", help="render a digraph to an image file")
    w.add_argument("file")
    w.add_argument("--out", "-o", required=True)
    w.add_argument("--highlight")
    w.add_argument("--title")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_draw)
    return p


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UndefinedMetric as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except (UsageError, SearchBoundExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
