"""Command-line entry point.

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .enumeration import EnumerationOptions, enumerate_candidates
from .pipeline import bench_scaling, decompose, format_scaling, gen_adjacent_minors
from .poly import ParseError, System, format_polynomial, is_binomial_system, parse_system
from .tropical import enumerate_tuples, initial_form, parse_weight, solve_general


def _read_system(path: str) -> System:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


def _options(args) -> EnumerationOptions:
    return EnumerationOptions(max_codim=args.max_codim, pure_dimension=args.pure, greedy=args.greedy)


def _selection_text(sel, names) -> str:
    zs = "{" + ", ".join(names[k] for k in sel.variables) + "}"
    if sel.skipped:
        return f"{zs} skip {sorted(sel.skipped)}"
    return zs


def _general_report(s: System, opts: EnumerationOptions, as_json: bool) -> str:
    names = s.variables
    tuples = enumerate_tuples(s, opts)
    cases = solve_general(s, opts)
    if as_json:
        out = {
            "system": {"variables": list(names),
                       "equations": [format_polynomial(p, names) for p in s.polynomials]},
            "tuples": [{"zero": [names[k] for k in t.selection.variables],
                        "status": list(t.s),
                        "weight": [str(w) for w in t.weight],
                        "initial_forms": [format_polynomial(p, names) for p in t.initial_forms(s)]}
                       for t in tuples],
            "cases": [{"zero": [names[k] for k in c.selection.variables],
                       "maps": [m.describe(names) for m in c.maps],
                       "curves": [{"zero": [names[k] for k in sorted(cv.zero)],
                                   "equations": [format_polynomial(p, names) for p in cv.equations],
                                   "leading": [{"tropism": list(v),
                                                "initial_forms": [format_polynomial(p, names) for p in forms]}
                                               for v, forms in cv.leading]}
                                  for cv in c.curves]}
                      for c in cases],
        }
        return json.dumps(out, indent=2)
    lines = [f"{len(tuples)} candidate tuples"]
    for t in tuples:
        forms = "; ".join(format_polynomial(p, names) for p in t.initial_forms(s))
        lines.append(f"  zero {_selection_text(t.selection, names)} weight ({', '.join(map(str, t.weight))})"
                     + (f": {forms}" if forms else ""))
    for c in cases:
        lines.append(f"case zero {_selection_text(c.selection, names)}")
        for m in c.maps:
            lines.append(f"  {m.describe(names)}")
        for cv in c.curves:
            eqs = "; ".join(format_polynomial(p, names) for p in cv.equations)
            lines.append(f"  curve with zeros {{{', '.join(names[k] for k in sorted(cv.zero))}}}: {eqs}")
            for v, forms in cv.leading:
                lines.append(f"    tropism {list(v)}: " + "; ".join(format_polynomial(p, names) for p in forms))
    return "\n".join(lines)


def cmd_solve(args) -> int:
    s = _read_system(args.file)
    opts = _options(args)
    if not is_binomial_system(s):
        print(_general_report(s, opts, args.json))
        return 0
    rep = decompose(s, opts, args.threads)
    print(rep.to_json(timing=not args.no_timing) if args.json else rep.to_text())
    return 0


def cmd_enum_zeros(args) -> int:
    s = _read_system(args.file)
    for sel in enumerate_candidates(s, _options(args)):
        print(_selection_text(sel, s.variables))
    return 0


def cmd_initial_form(args) -> int:
    s = _read_system(args.file)
    w = parse_weight(args.weight)
    if len(w) != s.nvars:
        raise ValueError(f"weight has {len(w)} entries, system has {s.nvars} variables")
    for p in s.polynomials:
        print(format_polynomial(initial_form(p, w), s.variables) + ";")
    return 0


def cmd_bench(args) -> int:
    if args.scaling is not None:
        if args.rows != 2:
            raise ValueError("scaling runs use 2 rows")
        print(format_scaling(bench_scaling(args.scaling, threads=args.threads)))
        return 0
    rep = decompose(gen_adjacent_minors(args.rows, args.cols), _options(args), args.threads)
    print(rep.to_json(timing=not args.no_timing) if args.json else rep.to_text())
    return 0


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pure", action="store_true", help="keep only pure-dimensional selections")
    p.add_argument("--max-codim", type=int, default=None, metavar="K", help="at most K zero variables")
    p.add_argument("--greedy", action="store_true", help="branch on the most frequent variable first")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affinesets",
                                     description="Affine solution sets of sparse polynomial systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decompose a system")
    p.add_argument("file")
    _add_search_flags(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1, metavar="T")
    p.add_argument("--no-timing", action="store_true", help="omit timings from JSON output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enum-zeros", help="list candidate zero selections")
    p.add_argument("file")
    _add_search_flags(p)
    p.set_defaults(func=cmd_enum_zeros)

    p = sub.add_parser("initial-form", help="initial forms for a weight vector")
    p.add_argument("file")
    p.add_argument("--weight", required=True, help="comma-separated weights, 'inf' allowed")
    p.set_defaults(func=cmd_initial_form)

    p = sub.add_parser("bench", help="benchmark families")
    p.add_argument("family", choices=["adjacent-minors"])
    p.add_argument("--rows", type=int, default=2, metavar="M")
    p.add_argument("--cols", type=int, default=4, metavar="N")
    p.add_argument("--scaling", type=int, default=None, metavar="NMAX")
    _add_search_flags(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1, metavar="T")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (AssertionError, ArithmeticError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
