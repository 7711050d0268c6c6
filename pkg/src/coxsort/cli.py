"""Command-line interface: ``coxsort <command> --group B2 --coxeter 0,1``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Sequence

from .alignment import orient, orientation_cycle
from .clusters import cl_map, enumerate_clusters, format_almost
from .elements import Element, format_word
from .enumeration import CHECK_NAMES, count_report, degrees, catalan_formula, positive_catalan_formula, verify_all
from .errors import CoxeterError
from .noncrossing import canonical_T_word, nc_interval, nc_inverse, nc_map
from .root_system import CoxeterSystem
from .sorting import CoxeterElement, all_coxeter_elements, is_sortable, sortable_elements, sorting_word

EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_S_WORD = re.compile(r"^(s\d+)*$")


def parse_word(text: str, rank: int) -> tuple[int, ...]:
    """``"1,0"``, ``"s1s0"``, or ``"1"``/``""``/``"e"`` for the identity.

    A bare ``"1"`` is the identity, matching how elements are printed; a
    single generator is written ``"s1"`` or ``"1,"``.
    """
    text = text.strip()
    if text in ("", "1", "e", "id"):
        return ()
    if _S_WORD.match(text):
        letters = tuple(int(x) for x in re.findall(r"\d+", text))
    else:
        try:
            letters = tuple(int(x) for x in text.split(",") if x.strip())
        except ValueError:
            raise UsageError(f"cannot parse word {text!r}") from None
    if any(not 0 <= s < rank for s in letters):
        raise UsageError(f"word {text!r} uses letters outside 0..{rank - 1}")
    return letters


def _fmt(w: Element) -> str:
    return format_word(w.reduced_word())


def _emit(rows: list[dict], fmt: str, out, payload=None) -> None:
    if fmt == "json":
        json.dump(rows if payload is None else payload, out, indent=2, sort_keys=True)
        out.write("\n")
        return
    if not rows:
        return
    buf = io.StringIO()
    fields = list(rows[0])
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    out.write(buf.getvalue())


def _setup(args) -> tuple[CoxeterSystem, CoxeterElement]:
    system = CoxeterSystem.from_spec(args.group)
    if args.coxeter is None:
        word = tuple(range(system.rank))
    else:
        word = parse_word(args.coxeter, system.rank)
        if sorted(word) != list(range(system.rank)):
            raise UsageError(f"--coxeter must list every simple index 0..{system.rank - 1} once")
    return system, CoxeterElement(system, word)


def _element(args, system, text) -> Element:
    return system.element(parse_word(text, system.rank))


# -- commands ---------------------------------------------------------------


def cmd_count(args, out) -> int:
    system, c = _setup(args)
    rep = count_report(c).to_dict()
    rep = {"group": system.label, "coxeter_word": list(c.word), **rep}
    _emit([rep], args.format, out, rep)
    return 0


def cmd_degrees(args, out) -> int:
    system, _ = _setup(args)
    d = degrees(system)
    rep = {
        "group": system.label,
        "h": d.h,
        "exponents": list(d.exponents),
        "components": [{"h": h, "exponents": list(e)} for h, e in d.components],
        "order": d.group_order,
        "catalan": catalan_formula(d),
        "positive_catalan": positive_catalan_formula(d),
    }
    _emit([rep], args.format, out, rep)
    return 0


def cmd_sortable(args, out) -> int:
    system, c = _setup(args)
    if args.action == "check":
        if args.word is None:
            raise UsageError("sortable check needs a word")
        w = _element(args, system, args.word)
        rep = {"element": _fmt(w), "sortable": is_sortable(w, c)}
        if w.in_standard_parabolic(c.support):
            rep["sorting_word"] = str(sorting_word(w, c))
        _emit([rep], args.format, out, rep)
        return 0
    rows = [
        {"element": _fmt(w), "sorting_word": str(sorting_word(w, c)), "descents": len(w.descents())}
        for w in sortable_elements(c)
    ]
    _emit(rows, args.format, out)
    return 0


def cmd_nc(args, out) -> int:
    system, c = _setup(args)
    if args.action == "interval":
        rows = [
            {
                "element": _fmt(p.element),
                "rank": p.rank,
                "canonical_generators": [format_almost(system, t) for t in p.canonical_generators],
            }
            for p in nc_interval(c)
        ]
    elif args.action == "map":
        sources = [_element(args, system, args.word)] if args.word is not None else sortable_elements(c)
        rows = [{"element": _fmt(w), "nc": _fmt(nc_map(w, c))} for w in sources]
    else:
        if args.word is None:
            raise UsageError("nc inverse needs a word")
        x = _element(args, system, args.word)
        w = nc_inverse(x, c)
        word = canonical_T_word(x, c)
        rows = [{
            "nc": _fmt(x),
            "element": _fmt(w),
            "t_word": [format_almost(system, t) for t in word.letters],
        }]
    _emit(rows, args.format, out)
    return 0


def cmd_cluster(args, out) -> int:
    system, c = _setup(args)
    if args.action == "list":
        rows = [{"cluster": k.format(system), "positive": k.positive} for k in enumerate_clusters(c)]
    else:
        sources = [_element(args, system, args.word)] if args.word is not None else sortable_elements(c)
        rows = []
        for w in sources:
            k = cl_map(w, c)
            rows.append({"element": _fmt(w), "cluster": k.format(system), "positive": k.positive})
    _emit(rows, args.format, out)
    return 0


def _reflection(system: CoxeterSystem, text: str) -> int:
    t = system.reflection_id(system.element(parse_word(text, system.rank)))
    if t is None:
        raise UsageError(f"{text!r} is not a reflection")
    return t


def cmd_orient(args, out) -> int:
    system, c = _setup(args)
    t1, t2 = _reflection(system, args.t1), _reflection(system, args.t2)
    if t1 == t2:
        raise UsageError("orient needs two distinct reflections")
    par = system.rank_two_parabolic(t1, t2)
    first, second = orient(c, par)
    rep = {
        "generators": [format_almost(system, t) for t in par.generators],
        "edge": [format_almost(system, first), format_almost(system, second)],
        "cycle": [[format_almost(system, a), format_almost(system, b)] for a, b in orientation_cycle(c, par)],
    }
    _emit([rep], args.format, out, rep)
    return 0


def cmd_verify(args, out) -> int:
    system, c = _setup(args)
    targets = all_coxeter_elements(system) if args.all_coxeter else [c]
    reports = [
        verify_all(cc, mode=args.mode, seed=args.seed, samples=args.samples, only=args.check)
        for cc in targets
    ]
    if args.format == "json":
        payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        _emit([], "json", out, payload)
    else:
        rows = [
            {
                "coxeter_word": format_word(r.coxeter_word),
                "name": ch.name,
                "status": ch.status,
                "trials": ch.trials,
                "witness": ch.witness or "",
            }
            for r in reports
            for ch in r.checks
        ]
        _emit(rows, "csv", out)
    return 0 if all(r.ok for r in reports) else EXIT_VERIFY


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--group", default="A2", help="name (B4, I2(5)), inline JSON, or JSON file")
    common.add_argument("--coxeter", help="Coxeter word as comma-separated simple indices (default 0,1,..)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="coxsort", description="Sortable elements, noncrossing partitions and clusters.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="Catalan, Narayana and positive counts")
    p.set_defaults(func=cmd_count)
    p = sub.add_parser("degrees", parents=[common], help="Coxeter number and exponents")
    p.set_defaults(func=cmd_degrees)
    p = sub.add_parser("sortable", parents=[common], help="list c-sortable elements or test one")
    p.add_argument("action", choices=("list", "check"))
    p.add_argument("word", nargs="?")
    p.set_defaults(func=cmd_sortable)
    p = sub.add_parser("nc", parents=[common], help="noncrossing partitions and the nc map")
    p.add_argument("action", choices=("map", "inverse", "interval"))
    p.add_argument("word", nargs="?")
    p.set_defaults(func=cmd_nc)
    p = sub.add_parser("cluster", parents=[common], help="c-clusters and the cl map")
    p.add_argument("action", choices=("list", "map"))
    p.add_argument("word", nargs="?")
    p.set_defaults(func=cmd_cluster)
    p = sub.add_parser("orient", parents=[common], help="c-orientation of the rank-two parabolic through t1, t2")
    p.add_argument("t1")
    p.add_argument("t2")
    p.set_defaults(func=cmd_orient)
    p = sub.add_parser("verify", parents=[common], help="run the verification battery")
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--all-coxeter", action="store_true", help="every Coxeter element of the group")
    p.add_argument("--check", action="append", choices=CHECK_NAMES, help="restrict to named checks")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except CoxeterError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run())
