"""Command-line harness: list, verify, and evaluate identities and constants.

All machine formats transport values as decimal strings (never binary
floats); output ordering follows the catalog inventory so runs diff cleanly.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 computation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import catalog, genfun, hpreal, special
from .accel import engine
from .errors import CbhError, DomainError, UnknownIdentityError
from .hpreal import PrecisionContext

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_COMPUTE = 3

_LIST_FIELDS = ("id", "paper_ref", "class", "has_closed_form")


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer, "
                         f"got {raw!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbhseries",
        description="Verify series identities involving central binomial "
                    "coefficients and harmonic numbers at high precision.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_digits=True):
        if with_digits:
            p.add_argument("--digits", type=int, default=12,
                           help="significant digits to verify (default 12)")
        p.add_argument("--precision", type=int, default=None,
                       help="working decimal digits (default 64, or "
                            "BH_PRECISION)")
        p.add_argument("--budget-terms", type=int, default=None,
                       help="maximum summation terms (default 10^6, or "
                            "BH_TERM_BUDGET)")
        p.add_argument("--format", choices=("table", "json", "csv"),
                       default="table")
        p.add_argument("--output", default=None,
                       help="write output to this path instead of stdout")

    p_list = sub.add_parser("list", help="list catalog identities")
    common(p_list, with_digits=False)

    p_verify = sub.add_parser("verify", help="verify identities numerically")
    p_verify.add_argument("--id", action="append", dest="ids", default=None,
                          help="identity id (repeatable)")
    p_verify.add_argument("--all", action="store_true", dest="all_ids",
                          help="verify every catalog identity")
    common(p_verify)

    p_eval = sub.add_parser("eval", help="evaluate one series or "
                                         "generating function")
    p_eval.add_argument("--series", default=None, help="catalog identity id")
    p_eval.add_argument("--genfun", default=None,
                        help="generating function id")
    p_eval.add_argument("--x", default=None,
                        help="expansion point (decimal, genfun only)")
    p_eval.add_argument("--terms", type=int, default=1000,
                        help="number of terms in the partial sum")
    common(p_eval, with_digits=False)

    p_const = sub.add_parser("constants", help="print the constants used by "
                                               "the closed forms")
    p_const.add_argument("--digits", type=int, default=12)
    common(p_const, with_digits=False)
    return parser


def _context(args) -> PrecisionContext:
    precision = args.precision
    if precision is None:
        precision = _env_int("BH_PRECISION", 64)
    digits = getattr(args, "digits", None)
    if digits is not None:
        if digits < 1:
            raise UsageError("--digits must be positive")
        if digits + 10 > precision:
            raise UsageError(
                f"digits + 10 must not exceed precision "
                f"(got digits={digits}, precision={precision})")
    try:
        return PrecisionContext(working_digits=precision)
    except ValueError as exc:
        raise UsageError(str(exc))


def _budget(args) -> int:
    budget = getattr(args, "budget_terms", None)
    if budget is None:
        budget = _env_int("BH_TERM_BUDGET", engine.DEFAULT_TERM_BUDGET)
    if budget < 1:
        raise UsageError("--budget-terms must be positive")
    return budget


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_rows(rows: list[dict], fields: tuple[str, ...], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return buf.getvalue()
    widths = {f: max(len(f), *(len(str(r[f])) for r in rows)) if rows
              else len(f) for f in fields}
    lines = ["  ".join(f.ljust(widths[f]) for f in fields)]
    for row in rows:
        lines.append("  ".join(str(row[f]).ljust(widths[f]) for f in fields))
    return "\n".join(lines) + "\n"


def cmd_list(args) -> int:
    rows = [{
        "id": ident.id,
        "paper_ref": ident.paper_ref,
        "class": ident.convergence_class.label(),
        "has_closed_form": ident.has_closed_form,
    } for ident in catalog.inventory()]
    _emit(_render_rows(rows, _LIST_FIELDS, args.format), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all_ids == bool(args.ids):
        raise UsageError("choose exactly one of --all or --id")
    ids = catalog.identity_ids() if args.all_ids else args.ids
    known = set(catalog.identity_ids())
    for ident_id in ids:
        if ident_id not in known:
            raise UsageError(f"unknown identity id {ident_id!r}; "
                             f"run `cbhseries list` for the inventory")
    ctx = _context(args)
    budget = _budget(args)
    order = {k: i for i, k in enumerate(catalog.identity_ids())}
    reports = [catalog.verify(i, args.digits, ctx, term_budget=budget)
               for i in sorted(set(ids), key=order.__getitem__)]
    rows = [r.to_dict() for r in reports]
    _emit(_render_rows(rows, catalog.VerificationReport.SCHEMA, args.format),
          args)
    statuses = {r.status for r in reports}
    if "FAIL" in statuses:
        return EXIT_VERIFY_FAIL
    if "ERROR" in statuses:
        return EXIT_COMPUTE
    return EXIT_OK


def _eval_series(args, ctx, budget) -> list[dict]:
    ident = catalog.get(args.series)
    wd = ctx.working_digits
    partial, _ = ident.series.structured.partial_sum(args.terms, ctx)
    rows = [{"quantity": f"partial sum ({args.terms} terms)",
             "value": hpreal.format_significant(partial, wd)}]
    if ident.has_closed_form:
        with ctx.guard():
            rhs = ident.closed_form(ctx)
            diff = rhs - partial
        rows.append({"quantity": "closed form",
                     "value": hpreal.format_significant(rhs, wd)})
        rows.append({"quantity": "closed form - partial",
                     "value": hpreal.format_significant(diff, wd)})
    return rows


def _eval_genfun(args, ctx) -> list[dict]:
    try:
        gid = genfun.GenFunId[args.genfun]
    except KeyError:
        raise UsageError(
            f"unknown generating function {args.genfun!r}; choose from "
            + ", ".join(g.name for g in genfun.GenFunId))
    if args.x is None:
        raise UsageError("--genfun requires --x")
    try:
        x = Fraction(args.x)
    except ValueError:
        raise UsageError(f"--x must be a decimal number, got {args.x!r}")
    wd = ctx.working_digits
    partial = genfun.series_partial(gid, x, args.terms, ctx)
    closed = genfun.closed_form(gid, x, ctx)
    with ctx.guard():
        diff = closed - partial
    return [
        {"quantity": f"partial sum ({args.terms} terms)",
         "value": hpreal.format_significant(partial, wd)},
        {"quantity": "closed form",
         "value": hpreal.format_significant(closed, wd)},
        {"quantity": "closed form - partial",
         "value": hpreal.format_significant(diff, wd)},
    ]


def cmd_eval(args) -> int:
    if (args.series is None) == (args.genfun is None):
        raise UsageError("choose exactly one of --series or --genfun")
    if args.terms < 1:
        raise UsageError("--terms must be positive")
    ctx = _context(args)
    try:
        if args.series is not None:
            if args.series not in set(catalog.identity_ids()):
                raise UsageError(f"unknown identity id {args.series!r}")
            rows = _eval_series(args, ctx, _budget(args))
        else:
            rows = _eval_genfun(args, ctx)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_COMPUTE
    _emit(_render_rows(rows, ("quantity", "value"), args.format), args)
    return EXIT_OK


def cmd_constants(args) -> int:
    ctx = _context(args)
    digits = args.digits
    if digits < 1:
        raise UsageError("--digits must be positive")
    if digits > ctx.working_digits - 10:
        raise UsageError("--digits must leave 10 digits of margin below "
                         "the precision")
    with ctx.guard():
        values = [
            ("pi", hpreal.const_pi(ctx)),
            ("log2", hpreal.const_log2(ctx)),
            ("log3", hpreal.const_log3(ctx)),
            ("gamma", hpreal.const_gamma(ctx)),
            ("zeta2", hpreal.const_zeta2(ctx)),
            ("G", hpreal.const_catalan(ctx)),
            ("Li2(1/2)", special.dilog(Fraction(1, 2), ctx)),
            ("Li2(1/3)", special.dilog(Fraction(1, 3), ctx)),
            ("Li2(1/4)", special.dilog(Fraction(1, 4), ctx)),
            ("Li2(1/9)", special.dilog(Fraction(1, 9), ctx)),
        ]
    rows = [{"name": n, "value": hpreal.format_significant(v, digits)}
            for n, v in values]
    _emit(_render_rows(rows, ("name", "value"), args.format), args)
    return EXIT_OK


_COMMANDS = {
    "list": cmd_list,
    "verify": cmd_verify,
    "eval": cmd_eval,
    "constants": cmd_constants,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except UnknownIdentityError as exc:
        sys.stderr.write(f"error: unknown identity {exc}\n")
        return EXIT_USAGE
    except (CbhError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
