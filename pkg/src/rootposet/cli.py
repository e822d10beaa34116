"""Command-line interface.

Exit codes: 0 all requested checks pass, 1 a verification failed,
2 usage error (bad flag, unknown diagram).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .antichains import enumerate_antichains, maximal_antichains_of_size, width
from .dynkin import DEFAULT_MAX_RANK, DynkinDiagram, parse_diagram
from .errors import UnsupportedDiagram
from .export import EXPORTERS, export
from .poset import build_poset, level_decomposition, level_profile
from .report import CHECKS, VerificationReport, verify

log = logging.getLogger("rootposet")

GRAMMAR = "A1..A8, B2..B8, C2..C8, D4..D8, E6, E7, E8, F4, G2"
VERIFY_CHOICES = ["theorem", "remark2", "profile", "models", "lemma", "symmetry", "all"]
# "remark2" is the established name of the height-profile check
CHECK_ALIASES = {"remark2": "profile"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 2 with the offending flag named
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _diagram(text: str) -> DynkinDiagram:
    try:
        d = parse_diagram(text)
    except UnsupportedDiagram as exc:
        raise UsageError(f"{exc}; valid diagrams: {GRAMMAR} (higher ranks accepted with a warning)")
    if d.rank > DEFAULT_MAX_RANK:
        log.warning("rank %d is above %d; expect long running times", d.rank, DEFAULT_MAX_RANK)
    return d


def _fmt(p, a) -> str:
    return "{" + ", ".join(str(p.elements[i]) for i in a) + "}"


def cmd_generate(args, out) -> int:
    p = build_poset(args.diagram)
    if args.json:
        rows = [{"coeffs": list(r.coeffs), "height": r.height} for r in p.elements]
        out.write(json.dumps({"diagram": p.diagram.name, "roots": rows}, indent=2) + "\n")
    else:
        for r in p.elements:
            out.write(f"{r.height:3d}  {r}\n")
        out.write(f"{p.size} positive roots\n")
    return 0


def cmd_levels(args, out) -> int:
    p = build_poset(args.diagram)
    prof = level_profile(p)
    out.write(f"{p.diagram}: g = {prof.g}, h = {prof.h}\n")
    out.write("i     " + " ".join(f"{i:3d}" for i in range(1, prof.g + 1)) + "\n")
    out.write("r(i)  " + " ".join(f"{c:3d}" for c in prof.r) + "\n")
    if p.diagram.family not in "DEF":
        return 0
    dec = level_decomposition(p)
    out.write("\nLevel | Conditions | Minimal elements | Maximal element | number\n")
    for lv in dec.levels:
        conds = ", ".join(map(str, lv.conditions))
        mins = ", ".join(map(str, lv.minimal))
        out.write(f"{lv.number} | {conds} | {mins} | {lv.maximal} | {lv.count}\n")
    for x in dec.discrepancies:
        note = f" ({x.note})" if x.note else ""
        out.write(f"warning: level {x.level} {x.field}: printed {x.printed}, derived {x.derived}{note}\n")
    return 0


def cmd_antichains(args, out) -> int:
    p = build_poset(args.diagram)
    count = 0
    for a in enumerate_antichains(p, args.size):
        count += 1
        if not args.count_only:
            out.write(_fmt(p, a) + "\n")
    out.write(f"{count} antichains\n")
    return 0


def cmd_width(args, out) -> int:
    p = build_poset(args.diagram)
    w, witness = width(p)
    out.write(f"width {w}, witness {_fmt(p, witness)}\n")
    return 0


def cmd_maximal(args, out) -> int:
    p = build_poset(args.diagram)
    found = maximal_antichains_of_size(p, args.size)
    for a in found:
        heights = sorted({p.heights[i] for i in a})
        out.write(f"{_fmt(p, a)}  heights {heights}\n")
    out.write(f"{len(found)} maximal {args.size}-antichains\n")
    return 0


def cmd_verify(args, out) -> int:
    if args.what == "all":
        names = list(CHECKS)
    else:
        names = [CHECK_ALIASES.get(args.what, args.what)]
    rep = VerificationReport([verify(args.diagram, names)])
    out.write(rep.to_json() if args.json else rep.render())
    return 0 if rep.passed else 1


def cmd_export(args, out) -> int:
    text = export(build_poset(args.diagram), args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rootposet", description="Antichains in root posets: generation and checks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("diagram", help=f"diagram name ({GRAMMAR})")
        sp.set_defaults(func=func)
        return sp

    sp = add("generate", cmd_generate, "list the positive roots")
    sp.add_argument("--json", action="store_true")
    add("levels", cmd_levels, "height profile and level table")
    sp = add("antichains", cmd_antichains, "enumerate antichains")
    sp.add_argument("--size", type=int)
    sp.add_argument("--count-only", action="store_true")
    add("width", cmd_width, "width with a witness antichain")
    sp = add("maximal", cmd_maximal, "maximal antichains of a given size")
    sp.add_argument("--size", type=int, required=True)
    sp = add("verify", cmd_verify, "run verification checks")
    sp.add_argument("what", nargs="?", default="all", choices=VERIFY_CHOICES)
    sp.add_argument("--json", action="store_true")
    sp = add("export", cmd_export, "render the Hasse diagram")
    sp.add_argument("--format", required=True, choices=sorted(EXPORTERS))
    sp.add_argument("--out")
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.diagram = _diagram(args.diagram)
        return args.func(args, out)
    except UsageError as exc:
        print(f"rootposet: error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
