"""Command-line front end.

Generators are 1-indexed on every surface; the empty set is written ``""`` or
``-``.  Exit status is 0 on success, 1 when ``verify`` finds a failing check and
2 on bad input.
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .cosets import coset_of, cosets_tsv, enumerate_cosets, format_genset
from .coxeter import PRESET_NAMES, CoxeterGroup, build_group, format_word, parse_group_file, parse_word, preset_matrix
from .errors import CoxeterError
from .expressions import (
    expr_length,
    expressed_coset,
    find_reduced_expression,
    format_multistep,
    format_singlestep,
    is_reduced,
    parse_multistep,
    parse_singlestep,
    to_multistep,
    to_singlestep,
)
from .hasse import hasse_dot
from .paths import enumerate_paths, render_paths
from .verify import CHECKS, default_width_cap, manifest, report_tsv, run_suite, summary


class UsageError(Exception):
    pass


def parse_subset(text: str, rank: int) -> frozenset[int]:
    """``"1 3"`` -> ``{0, 2}``; ``""`` and ``"-"`` are the empty set."""
    body = text.strip()
    if body in ("", "-"):
        return frozenset()
    out = set()
    for tok in re.split(r"[\s,]+", body):
        if not tok.isdigit() or not 1 <= int(tok) <= rank:
            raise UsageError(f"bad generator {tok!r} in subset {text!r} (expected 1..{rank})")
        out.add(int(tok) - 1)
    return frozenset(out)


def load_group(args) -> CoxeterGroup:
    if args.preset:
        try:
            return build_group(preset_matrix(args.preset), name=args.preset)
        except KeyError:
            raise UsageError(f"unknown preset {args.preset!r}; known: {', '.join(PRESET_NAMES)}, I2(k)") from None
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read group file {args.file!r}: {exc.strerror}") from None
    return build_group(parse_group_file(text), name=Path(args.file).stem)


def parse_expression(text: str, rank: int):
    s = text.strip()
    if s.startswith("[["):
        return to_singlestep(parse_multistep(s, rank))
    return parse_singlestep(s, rank)


# ---------------------------------------------------------------------------


def cmd_group(g: CoxeterGroup, args, out) -> int:
    m = g.matrix
    out.write(f"name\t{g.name}\nrank\t{g.rank}\nsize\t{g.size}\n")
    out.write(f"longest\t{format_word(g.word(g.longest_element(range(g.rank))))}\n")
    for i in range(g.rank):
        out.write("m\t" + " ".join(str(m[i, j]) for j in range(g.rank)) + "\n")
    if args.elements:
        out.write("element\tlength\tright_descents\n")
        for x in range(g.size):
            out.write(f"{g.format(x)}\t{g.length_of(x)}\t{format_genset(g.right_descents(x))}\n")
    return 0


def cmd_cosets(g: CoxeterGroup, args, out) -> int:
    I, J = parse_subset(args.I, g.rank), parse_subset(args.J, g.rank)
    out.write(cosets_tsv(enumerate_cosets(g, I, J)))
    return 0


def cmd_rex(g: CoxeterGroup, args, out) -> int:
    I, J = parse_subset(args.I, g.rank), parse_subset(args.J, g.rank)
    w = g.index_of(parse_word(args.min, g.rank))
    p = coset_of(g, w, I, J)
    e = find_reduced_expression(p)
    out.write(format_singlestep(e) + "\n")
    if args.verbose:
        out.write(f"multistep\t{format_multistep(to_multistep(e))}\n")
        out.write(f"coset\t{p.describe()}\nlength\t{p.length}\n")
    return 0


def cmd_paths(g: CoxeterGroup, args, out) -> int:
    e = parse_expression(args.expr, g.rank)
    out.write(render_paths(enumerate_paths(g, e)))
    return 0


def cmd_term(g: CoxeterGroup, args, out) -> int:
    e = parse_expression(args.expr, g.rank)
    p = expressed_coset(g, e)
    out.write(f"# expresses {p.describe()}; length {expr_length(g, e)}; reduced {is_reduced(g, e)}\n")
    termini = sorted({path.terminus for path in enumerate_paths(g, e)}, key=lambda c: c.sort_key())
    out.write(cosets_tsv(termini))
    return 0


def cmd_hasse(g: CoxeterGroup, args, out) -> int:
    I, J = parse_subset(args.I, g.rank), parse_subset(args.J, g.rank)
    dot = hasse_dot(g, I, J)
    if args.dot:
        try:
            Path(args.dot).write_text(dot)
        except OSError as exc:
            raise UsageError(f"cannot write {args.dot!r}: {exc.strerror}") from None
    else:
        out.write(dot)
    return 0


def cmd_verify(g: CoxeterGroup, args, out) -> int:
    if args.manifest:
        for name, statement in manifest():
            out.write(f"{name}\t{statement}\n")
        return 0
    checks = None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = [c for c in checks if c not in CHECKS]
        if unknown:
            raise UsageError(f"unknown check {unknown[0]!r}; see 'verify --manifest'")
    cap = default_width_cap(g) if args.width_cap is None else args.width_cap
    if cap < 0:
        raise UsageError(f"width cap must be >= 0, got {cap}")
    results = run_suite(g, cap, checks)
    out.write(summary(results, args.timings))
    if args.tsv:
        try:
            Path(args.tsv).write_text(report_tsv(results, args.timings))
        except OSError as exc:
            raise UsageError(f"cannot write {args.tsv!r}: {exc.strerror}") from None
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "group": cmd_group,
    "cosets": cmd_cosets,
    "rex": cmd_rex,
    "paths": cmd_paths,
    "term": cmd_term,
    "hasse": cmd_hasse,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singular-bruhat",
                                     description="Bruhat order on parabolic double cosets of finite Coxeter groups.")
    source = argparse.ArgumentParser(add_help=False)
    src = source.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="named group: " + ", ".join(PRESET_NAMES) + ", I2(k)")
    src.add_argument("--file", help="group file with 'rank N' and 'm i j v' lines")
    subsets = argparse.ArgumentParser(add_help=False)
    subsets.add_argument("-I", default="", help='left subset, e.g. "1 2"; "" or - for empty')
    subsets.add_argument("-J", default="", help="right subset")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("group", parents=[source], help="summary of the group")
    p.add_argument("--elements", action="store_true", help="also list every element")
    sub.add_parser("cosets", parents=[source, subsets], help="TSV table of (I,J)-cosets")
    p = sub.add_parser("rex", parents=[source, subsets], help="a reduced expression of a coset")
    p.add_argument("--min", required=True, help="an element of the coset, hyphen-joined word; e for identity")
    p.add_argument("-v", "--verbose", action="store_true")
    p = sub.add_parser("paths", parents=[source], help="all paths subordinate to an expression")
    p.add_argument("--expr", required=True, help='"[1],[1 2],[1]" or "[[1 < 1 2 > 1]]"')
    p = sub.add_parser("term", parents=[source], help="termini of subordinate paths")
    p.add_argument("--expr", required=True)
    p = sub.add_parser("hasse", parents=[source, subsets], help="Hasse diagram as DOT")
    p.add_argument("--dot", help="output path (default stdout)")
    p = sub.add_parser("verify", parents=[source], help="run the verification suite")
    p.add_argument("--width-cap", type=int, default=None, help="maximum expression width")
    p.add_argument("--checks", help="comma separated check names (default all)")
    p.add_argument("--tsv", help="also write the TSV report here")
    p.add_argument("--manifest", action="store_true", help="list checks and their statements")
    p.add_argument("--timings", action="store_true", help="include per-check run times")
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        g = load_group(args)
        return COMMANDS[args.command](g, args, out)
    except (UsageError, CoxeterError) as exc:
        print(f"singular-bruhat {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
