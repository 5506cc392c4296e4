"""Command-line surface for bounds, sharpening sweeps, and group verdicts.

Exit codes: 0 success, 2 the level cannot certify the computation,
3 step budget exhausted, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb
from typing import Optional

from . import obliterate, rdbound, sharpen, sporadic
from .obliterate import (
    BoundCertificate,
    EvalOptions,
    Evaluator,
    LevelTooLow,
    StepBudgetExceeded,
    cert_to_json,
)
from .rdbound import HamiltonTable, RdBoundFn
from .sharpen import SharpenReport
from .typeseq import TypeSeq

EXIT_OK = 0
EXIT_LEVEL_TOO_LOW = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; keep that for usage
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve_table(args) -> HamiltonTable:
    source = os.environ.get("RDB_TABLE") or getattr(args, "table", None) or "builtin-prior"
    if source == "builtin-prior":
        return rdbound.builtin_table("prior")
    if source == "builtin-new":
        return rdbound.builtin_table("new")
    return rdbound.load_table(source)


def _options(args) -> EvalOptions:
    return EvalOptions(
        strategy=getattr(args, "strategy", "paper"),
        quadric_fastpath=not getattr(args, "no_fastpath", False),
        max_steps=getattr(args, "max_steps", None) or 50_000_000,
    )


def _parse_type(text: str) -> TypeSeq:
    return TypeSeq.parse(text)


# -- cache --------------------------------------------------------------------


def _cache_lookup(path: str, key: tuple[str, str, str, str]) -> Optional[int]:
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError:
        return None
    with fh:
        for line in fh:
            parts = line.rstrip("\n").split("\t")
            if len(parts) == 5 and tuple(parts[:4]) == key:
                return int(parts[4])
    return None


def _cache_append(path: str, key: tuple[str, str, str, str], value: int) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write("\t".join((*key, str(value))) + "\n")


# -- rendering ----------------------------------------------------------------


def _render_chain(cert: BoundCertificate) -> list[str]:
    """The inequality chain, one node per line."""
    lines = [f"f_{cert.j}^{cert.level}({cert.typeseq.text() or '0'})"]
    cur = cert.typeseq
    offset = 0
    for step in cert.steps:
        if isinstance(step, obliterate.Extract):
            cur = cur.sub(step.extracted)
            tail = f" + {offset}" if offset else ""
            lines.append(
                f"  <= f_{step.j_after}({cur.text() or '0'}){tail}"
                f"   [extract product {step.product}]"
            )
        elif isinstance(step, obliterate.PlanesFromPts):
            cur = step.output
            offset += step.offset
            lines.append(f"  <= f_0({cur.text() or '0'}) + {offset}")
        elif isinstance(step, obliterate.QuadricFastPath):
            tail = f" + {offset}" if offset else ""
            lines.append(
                f"  <= {step.value}{tail} = {cert.value}"
                f"   [quadric batches of {step.b}]"
            )
        elif isinstance(step, obliterate.BaseCase):
            tail = f" + {offset}" if offset else ""
            lines.append(f"  <= {step.j}{tail} = {cert.value}")
    return lines


def _print_stats(stats) -> None:
    print(f"total steps:      {stats.total_steps}")
    print(f"largest product:  {stats.largest_product}")
    if stats.steps_to_quadric is not None:
        print(f"steps to quadric: {stats.steps_to_quadric}")
    for d in sorted(set(stats.extract_by_degree) | set(stats.planes_by_degree)):
        ex = stats.extract_by_degree.get(d, 0)
        pl = stats.planes_by_degree.get(d, 0)
        print(f"degree {d}: extractions {ex}, planes {pl}")


# -- subcommands ----------------------------------------------------------------


def cmd_bound_f(args) -> int:
    table = _resolve_table(args)
    rdfn = RdBoundFn(table)
    m = _parse_type(args.type)
    opts = _options(args)
    key = (table.fingerprint(), str(args.level), str(args.j), m.text())
    if args.cache and args.trace == "none" and args.output == "text":
        hit = _cache_lookup(args.cache, key)
        if hit is not None:
            print(hit)
            return EXIT_OK
    try:
        cert = obliterate.bound_f(args.level, rdfn, args.j, m, opts)
    except LevelTooLow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LEVEL_TOO_LOW
    except StepBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.cache:
        _cache_append(args.cache, key, cert.value)
    if args.output == "json":
        print(json.dumps(cert_to_json(cert), indent=2))
        return EXIT_OK
    print(cert.value)
    if args.trace in ("stats", "full"):
        _print_stats(cert.stats)
    if args.trace == "full":
        for line in _render_chain(cert):
            print(line)
        if cert.steps_elided:
            print("  ... (trace elided beyond record limit)")
    return EXIT_OK


def _print_report(report: SharpenReport, output: str) -> None:
    if output == "json":
        doc = {
            "r": report.r,
            "status": report.status,
            "best_bound": None if report.best_bound is None else str(report.best_bound),
            "probes": [
                {
                    "level": str(p.level),
                    "f_bound": str(p.f_bound),
                    "largest_product": str(p.largest_product),
                    "plateau_floor": str(p.plateau_floor),
                    "candidate": str(p.candidate),
                    "total_steps": str(p.stats.total_steps),
                    "steps_to_quadric": None
                    if p.stats.steps_to_quadric is None
                    else str(p.stats.steps_to_quadric),
                }
                for p in report.probes
            ],
        }
        print(json.dumps(doc, indent=2))
        return
    print(f"r = {report.r}  status = {report.status}")
    print("level | bound | largest product | steps total | steps to quadric")
    for p in report.probes:
        stq = "-" if p.stats.steps_to_quadric is None else p.stats.steps_to_quadric
        print(
            f"{p.level} | {p.f_bound} | {p.largest_product} | "
            f"{p.stats.total_steps} | {stq}"
        )
    if report.best_bound is not None:
        print(f"best bound: H({report.r}) <= {report.best_bound}")


def cmd_sharpen(args) -> int:
    table = _resolve_table(args)
    report = sharpen.sharpen_h(args.r, table, _options(args))
    _print_report(report, args.output)
    if report.status == "level_too_low":
        return EXIT_LEVEL_TOO_LOW
    if report.status == "budget_exhausted":
        return EXIT_BUDGET
    return EXIT_OK


def cmd_sharpen_all(args) -> int:
    table = _resolve_table(args)
    final, reports = sharpen.sharpen_all(args.r_min, args.r_max, table, _options(args))
    for report in reports:
        _print_report(report, args.output)
        if args.output == "text":
            print()
    if args.output == "text":
        print("final entries:")
        for r in range(args.r_min, args.r_max + 1):
            print(f"H({r}) = {final.entry(r)}")
    if args.save_table:
        rdbound.save_table(final, args.save_table)
    if any(rep.status == "budget_exhausted" for rep in reports):
        return EXIT_BUDGET
    if any(rep.status == "level_too_low" for rep in reports):
        return EXIT_LEVEL_TOO_LOW
    return EXIT_OK


def cmd_sporadic(args) -> int:
    table = _resolve_table(args)
    specs = sporadic.load_groups(args.groups) if args.groups else sporadic.builtin_groups()
    if args.group:
        specs = [s for s in specs if s.name == args.group]
        if not specs:
            print(f"error: unknown group {args.group!r}", file=sys.stderr)
            return EXIT_USAGE
    verdicts = sporadic.verify_all(specs, table, _options(args))
    rows = [
        (
            s.name,
            "-" if s.mu_rd_bound is None else str(s.mu_rd_bound),
            str(s.proj_dim),
            ",".join(map(str, s.degrees)) or "-",
            str(v.claimed_level),
            "-" if v.f_bound is None else str(v.f_bound),
            "ok" if v.ok else f"FAILED ({v.error or 'inequality'})",
        )
        for s, v in zip(specs, verdicts)
    ]
    header = ("group", "perm bound", "proj dim", "degrees", "level", "f bound", "verdict")
    if args.output == "json":
        print(json.dumps([dict(zip(header, row)) for row in rows], indent=2))
    elif args.output == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(row))
    else:
        widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
        print(" | ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            print(" | ".join(c.ljust(w) for c, w in zip(row, widths)))
    if any(v.f_bound is None for v in verdicts):
        return EXIT_LEVEL_TOO_LOW
    return EXIT_OK if all(v.ok for v in verdicts) else 1


def cmd_compare_coarse(args) -> int:
    table = _resolve_table(args)
    rdfn = RdBoundFn(table)
    rows = []
    if args.type_quadrics:
        for m2 in args.type_quadrics:
            if m2 == 0:
                best = 0
            elif args.b:
                b = min(m2, args.b)
                q, r_rem = divmod(m2, b)
                best = comb(q, 2) * b * b + q * b * (r_rem + 1) + r_rem
            else:
                best = obliterate.quadric_bound(args.level, rdfn, m2)
            rows.append((str(m2), str(best), str(comb(m2 + 1, 2))))
    else:
        m = _parse_type(args.type)
        try:
            best = obliterate.bound_f(args.level, rdfn, args.j, m, _options(args)).value
            coarse = obliterate.coarse_bound_f(args.level, rdfn, args.j, m)
        except LevelTooLow as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_LEVEL_TOO_LOW
        except StepBudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        rows.append((m.text(), str(best), str(coarse)))
    if args.output == "csv":
        print("type,best,coarse")
        for row in rows:
            print(",".join(row))
    elif args.output == "json":
        print(json.dumps([{"type": t, "best": b, "coarse": c} for t, b, c in rows], indent=2))
    else:
        for row in rows:
            print(" | ".join(row))
    return EXIT_OK


def cmd_rd(args) -> int:
    table = _resolve_table(args)
    print(RdBoundFn(table).rd(args.n))
    return EXIT_OK


def cmd_hamilton(args) -> int:
    table = _resolve_table(args)
    problems = rdbound.validate(table)
    if args.output == "json":
        doc = {
            "fingerprint": table.fingerprint(),
            "valid": not problems,
            "problems": problems,
            "rows": [
                {"r": r, "h": str(h), "provenance": p}
                for (r, h), p in zip(table.rows, table.provenance)
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"fingerprint: {table.fingerprint()}")
        for (r, h), p in zip(table.rows, table.provenance):
            print(f"{r}\t{h}\t{p}")
        for problem in problems:
            print(f"INVALID: {problem}", file=sys.stderr)
    return EXIT_OK if not problems else 1


# -- parser ---------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--table", default=None, help="builtin-prior, builtin-new, or a file path")
    p.add_argument("--strategy", choices=("paper", "greedy-continue"), default="paper")
    p.add_argument("--no-fastpath", action="store_true", help="disable the quadric closed form")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--output", choices=("text", "json", "csv"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oblit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound-f", help="certified upper bound for one type")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--type", required=True, help="comma-separated entries, lowest degree first")
    p.add_argument("--trace", choices=("none", "stats", "full"), default="none")
    p.add_argument("--cache", default=None, help="append-only value cache file")
    _add_common(p)
    p.set_defaults(func=cmd_bound_f)

    p = sub.add_parser("sharpen", help="plateau walk for one table entry")
    p.add_argument("--r", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_sharpen)

    p = sub.add_parser("sharpen-all", help="self-improving sweep over a range of r")
    p.add_argument("--r-min", type=int, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--save-table", default=None, help="write the improved table here")
    _add_common(p)
    p.set_defaults(func=cmd_sharpen_all)

    p = sub.add_parser("sporadic", help="verify group bounds")
    p.add_argument("--group", default=None, help="verify a single group by name")
    p.add_argument("--groups", default=None, help="JSON dataset overriding the builtin one")
    _add_common(p)
    p.set_defaults(func=cmd_sporadic)

    p = sub.add_parser("compare-coarse", help="best bound vs lines-only bound")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--type", default=None)
    p.add_argument(
        "--type-quadrics",
        type=lambda s: [int(x) for x in s.split(",")],
        default=None,
        help="comma-separated quadric counts",
    )
    p.add_argument("--b", type=int, default=None, help="quadric batch size to assume")
    _add_common(p)
    p.set_defaults(func=cmd_compare_coarse)

    p = sub.add_parser("rd", help="evaluate the induced bound on resolvent degree")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_rd)

    p = sub.add_parser("hamilton", help="print and validate the active table")
    _add_common(p)
    p.set_defaults(func=cmd_hamilton)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.func is cmd_compare_coarse:
        if args.type_quadrics:
            if args.b is None and args.level is None:
                parser.error("compare-coarse --type-quadrics needs --b or --level")
        elif not args.type or args.level is None:
            parser.error("compare-coarse needs --type-quadrics or both --type and --level")
    if args.func is cmd_bound_f or (args.func is cmd_compare_coarse and not args.type_quadrics):
        if args.level is not None and args.level < 1:
            parser.error("--level must be >= 1")
    try:
        return args.func(args)
    except (ValueError, rdbound.TableFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
