"""``lexforge`` command line.

Every subcommand reads structure JSON from files (``-`` or nothing for
stdin) and writes JSON or DOT to stdout.  Exit status: 0 success, 1 domain
error (with ``{"error": ..., "detail": ...}`` on stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import analysis, amalgam, core, generic
from .formats import (
    FormatError,
    amalgam_to_json,
    births_from_json,
    dumps,
    saturation_to_json,
    structure_from_json,
    structure_to_dot,
    structure_to_json,
    tree_from_json,
    tree_order_to_json,
    tree_to_dot,
    unwrap,
)
from .rational import RationalFormatError, parse_loose, parse_value_list, to_wire


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _read(path: Optional[str], stdin) -> object:
    text = stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from None


def _structure(path, stdin) -> core.LexStructure:
    return structure_from_json(unwrap(_read(path, stdin)))


def _values(text: str):
    return parse_value_list(text)


def _gen_one(args):
    n, values, seed = args
    return structure_to_json(core.random_structure(n, values, seed))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lexforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_)

    c = add("validate", "check membership in the class")
    c.add_argument("file", nargs="?")

    c = add("gen", "random valid structure(s)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--values", type=_values, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--count", type=int, default=1)
    c.add_argument("--jobs", type=int, default=1)

    c = add("lex", "lexicographic model on words")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--values", type=_values, default=())

    c = add("amalgamate", "amalgamate B and C over A")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("c")
    c.add_argument("--split", type=int, default=0)
    c.add_argument("--seed", type=int)

    c = add("jep", "joint embedding of B and C")
    c.add_argument("b")
    c.add_argument("c")

    c = add("saturate", "saturate the extension demands")
    c.add_argument("file", nargs="?")
    c.add_argument("--values", type=_values, required=True)
    c.add_argument("--rounds", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)

    c = add("axioms", "check the extension demands")
    c.add_argument("file", nargs="?")
    c.add_argument("--values", type=_values, required=True)
    c.add_argument("--born-before", type=int)

    c = add("ef", "back-and-forth game")
    c.add_argument("s1")
    c.add_argument("s2")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--values", type=_values, default=())
    c.add_argument("--born-before", type=int)

    c = add("cuts", "list the cuts")
    c.add_argument("file", nargs="?")

    c = add("insert", "insert a point into a cut")
    c.add_argument("file", nargs="?")
    c.add_argument("--cut", type=int, required=True)
    c.add_argument("--color", type=int, choices=(0, 1), default=0)
    c.add_argument("--left", type=parse_loose)
    c.add_argument("--right", type=parse_loose)

    c = add("complete", "fill every internal cut with a 1-colored point")
    c.add_argument("file", nargs="?")

    c = add("embed", "constant-f structure on n points")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=parse_loose, default=parse_loose("0"))

    c = add("tree", "leaf order of a tree and its branch-to-cut map")
    c.add_argument("file", nargs="?")

    c = add("export-dot", "DOT for a structure (or a tree with --tree)")
    c.add_argument("file", nargs="?")
    c.add_argument("--tree", action="store_true")
    return p


def _births_filter(doc, r):
    if r is None:
        return None
    births = births_from_json(doc)
    return {p for p, b in births.items() if b < r}


def _dispatch(args, stdin) -> tuple[int, str]:
    cmd = args.cmd
    if cmd == "validate":
        rep = core.validate(_structure(args.file, stdin))
        if rep.ok:
            return 0, dumps({"ok": True})
        return 1, dumps({"ok": False, "violations": [
            {"kind": v.kind, "ids": list(v.ids),
             "expected": None if v.expected is None else to_wire(v.expected),
             "found": None if v.found is None else to_wire(v.found)}
            for v in rep.violations]})
    if cmd == "gen":
        if args.count == 1:
            return 0, dumps(_gen_one((args.n, args.values, args.seed)))
        jobs = [(args.n, args.values, args.seed + i) for i in range(args.count)]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                out = list(ex.map(_gen_one, jobs))
        else:
            out = [_gen_one(j) for j in jobs]
        return 0, dumps({"structures": out})
    if cmd == "lex":
        return 0, dumps(structure_to_json(core.lex_model(args.k, args.n, args.values)))
    if cmd == "amalgamate":
        a, b, c = (_structure(x, stdin) for x in (args.a, args.b, args.c))
        am = amalgam.amalgamate(a, b, c, amalgam.AmalgamStrategy(c0_split=args.split))
        return 0, dumps(amalgam_to_json(am))
    if cmd == "jep":
        am = amalgam.joint_embed(_structure(args.b, stdin), _structure(args.c, stdin))
        return 0, dumps(amalgam_to_json(am))
    if cmd == "saturate":
        s, log = generic.saturate(_structure(args.file, stdin), args.values, args.rounds, args.seed)
        return 0, dumps(saturation_to_json(s, log))
    if cmd == "axioms":
        doc = _read(args.file, stdin)
        s = structure_from_json(unwrap(doc))
        core.require_valid(s)
        rep = generic.check_extension_axioms(s, args.values, _births_filter(doc, args.born_before))
        return (0 if rep.holds else 1), dumps({"holds": rep.holds, "checked": rep.checked,
                                               "failures": len(rep.failures)})
    if cmd == "ef":
        d1, d2 = _read(args.s1, stdin), _read(args.s2, stdin)
        s1, s2 = structure_from_json(unwrap(d1)), structure_from_json(unwrap(d2))
        core.require_valid(s1)
        core.require_valid(s2)
        eq = generic.ef_game(s1, s2, args.k, args.values,
                             spoiler_pool1=_births_filter(d1, args.born_before),
                             spoiler_pool2=_births_filter(d2, args.born_before))
        return 0, dumps({"equivalent": eq, "k": args.k})
    if cmd == "cuts":
        s = _structure(args.file, stdin)
        return 0, dumps({"cuts": [[sorted(c.lower, key=s.position), sorted(c.upper, key=s.position)]
                                  for c in analysis.enumerate_cuts(s)]})
    if cmd == "insert":
        s = _structure(args.file, stdin)
        core.require_valid(s)
        cut = analysis.enumerate_cuts(s)[args.cut] if 0 <= args.cut <= len(s) else None
        if cut is None:
            raise core.InconsistentSpecError(f"cut index {args.cut} outside 0..{len(s)}")
        out = analysis.insert_into_cut(s, cut, args.color, args.left, args.right)
        return 0, dumps(structure_to_json(out))
    if cmd == "complete":
        return 0, dumps(structure_to_json(analysis.complete_structure(_structure(args.file, stdin))))
    if cmd == "embed":
        return 0, dumps(structure_to_json(analysis.embed_linear_order(args.n, args.m)))
    if cmd == "tree":
        t = tree_from_json(_read(args.file, stdin))
        return 0, dumps(tree_order_to_json(t, analysis.tree_to_order(t)))
    if cmd == "export-dot":
        doc = _read(args.file, stdin)
        if args.tree:
            return 0, tree_to_dot(tree_from_json(doc)).rstrip("\n")
        return 0, structure_to_dot(structure_from_json(unwrap(doc))).rstrip("\n")
    raise AssertionError(cmd)


_KINDS = [
    (FormatError, "format"),
    (RationalFormatError, "format"),
    (core.InvalidStructureError, "invalid_structure"),
    (core.InconsistentSpecError, "inconsistent_spec"),
    (core.EmbeddingError, "embedding"),
    (analysis.InconsistentProfileError, "inconsistent_profile"),
    (core.LexError, "domain"),
    (OSError, "io"),
    (KeyError, "unknown_id"),
    (ValueError, "domain"),
]


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = _dispatch(args, stdin)
    except Exception as exc:
        for cls, kind in _KINDS:
            if isinstance(exc, cls):
                detail = exc.args[0] if exc.args else str(exc)
                stdout.write(dumps({"error": kind, "detail": str(detail)}) + "\n")
                return 1
        raise
    stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
