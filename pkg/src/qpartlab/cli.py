"""Command-line harness: ``qpl verify-identity | lemma | table``.

Exit codes: 0 when every check passed, 1 when a check failed, 2 on usage or
runtime errors.  Every flag default can be overridden through an environment
variable with the ``QPL_`` prefix (``QPL_ORDER``, ``QPL_SEED``, ...).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Sequence

from . import gf, oracle
from .errors import QplError
from .verify import DEFAULT_ORACLE_N, IDENTITIES, LEMMAS, verify_identity, verify_lemma

FAMILY_KINDS = {
    "p": "bounded-diff",
    "pd": "distinct-bounded-diff",
    "po": "odd-bounded-diff",
    "g": "overpartition-bounded-diff",
}


class UsageError(Exception):
    pass


def _env(name: str, default, kind=str):
    raw = os.environ.get(f"QPL_{name}")
    if raw is None:
        return default
    if kind is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return kind(raw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpl", description="Verify and tabulate bounded-difference partition identities.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    vi = sub.add_parser("verify-identity", help="formal check of one generating-function identity")
    vi.add_argument("--identity", required=True, choices=IDENTITIES)
    vi.add_argument("--t", type=int, required=True)
    vi.add_argument("--order", type=int, default=_env("ORDER", 200, int))
    vi.add_argument("--max-order", type=int, default=_env("MAX_ORDER", 500, int))
    vi.add_argument("--oracle-n", type=int, default=_env("ORACLE_N", DEFAULT_ORACLE_N, int),
                    help="cross-check oracle counts through this n")
    vi.add_argument("--format", choices=("json", "text"), default=_env("FORMAT", "json"))
    vi.add_argument("--timing", action="store_true", default=_env("TIMING", False, bool),
                    help="record wall time (makes output nondeterministic)")

    lm = sub.add_parser("lemma", help="seeded numeric check of a lemma or the derivation chain")
    lm.add_argument("--lemma", required=True, choices=LEMMAS)
    lm.add_argument("--trials", type=int, default=_env("TRIALS", 100, int))
    lm.add_argument("--seed", type=int, default=_env("SEED", 0, int))
    lm.add_argument("--tol", type=float, default=_env("TOL", None, float))
    lm.add_argument("--format", choices=("json", "text"), default=_env("FORMAT", "json"))
    lm.add_argument("--timing", action="store_true", default=_env("TIMING", False, bool))

    tb = sub.add_parser("table", help="tabulate partition counts")
    tb.add_argument("--family", required=True, choices=tuple(FAMILY_KINDS))
    tb.add_argument("--t", type=int, required=True)
    tb.add_argument("--n-max", type=int, required=True)
    tb.add_argument("--source", choices=("oracle", "series", "both"),
                    default=_env("SOURCE", "oracle"))
    tb.add_argument("--budget", type=int, default=_env("ORACLE_BUDGET", oracle.DEFAULT_BUDGET, int))
    tb.add_argument("--max-order", type=int, default=_env("MAX_ORDER", 500, int))
    tb.add_argument("--format", choices=("csv", "json"), default=_env("FORMAT", "csv"))
    return parser


def _emit_report(report, fmt: str) -> int:
    sys.stdout.write(report.to_json() if fmt == "json" else report.to_text())
    return report.exit_code


def cmd_verify_identity(args) -> int:
    if args.order > args.max_order:
        raise UsageError(f"--order {args.order} exceeds the maximum {args.max_order}")
    min_t = 0 if args.identity == "pdt" else 1
    if args.t < min_t:
        raise UsageError(f"--identity {args.identity} needs --t >= {min_t}")
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    report = verify_identity(args.identity, args.t, args.order, args.oracle_n,
                             timing=args.timing)
    return _emit_report(report, args.format)


def cmd_lemma(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.tol is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")
    report = verify_lemma(args.lemma, args.trials, args.seed, args.tol, timing=args.timing)
    return _emit_report(report, args.format)


def _series_counts(family: str, t: int, n_max: int) -> dict[int, object]:
    if family == "p":
        s = gf.gf_bounded_diff(t, n_max)
    elif family == "pd":
        s = gf.gf_distinct(t, n_max)
    elif family == "po":
        if t < 2:
            raise UsageError("series source for po needs --t >= 2 (window 2s or 2s+1)")
        s = gf.gf_odd(t // 2, n_max)
    else:
        s = gf.gf_overpartition(t, n_max)
    out = {}
    for n in range(1, n_max + 1):
        c = s.coefficient(n).coeffs
        if family == "g":
            out[n] = {m: v for m, v in enumerate(c) if v}
        else:
            out[n] = c[0] if c else 0
    return out


def _table_rows(args) -> tuple[list[str], list[list], bool]:
    fam = oracle.PartitionFamily(FAMILY_KINDS[args.family], args.t)
    want_oracle = args.source in ("oracle", "both")
    want_series = args.source in ("series", "both")
    if want_series and args.n_max > args.max_order:
        raise UsageError(f"--n-max {args.n_max} exceeds the series maximum {args.max_order}")
    orc = oracle.tabulate(fam, args.n_max, args.budget).rows if want_oracle else None
    ser = _series_counts(args.family, args.t, args.n_max) if want_series else None
    by_m = args.family == "g"
    single = orc if orc is not None else ser
    ok = True
    rows: list[list] = []
    if args.source != "both":
        header = ["n", "m", "count"] if by_m else ["n", "count"]
        for n, v in single.items():
            if by_m:
                rows.extend([n, m, c] for m, c in v.items())
            else:
                rows.append([n, v])
        return header, rows, ok
    header = ["n", "m", "oracle", "series", "match"] if by_m else ["n", "oracle", "series", "match"]
    for n in range(1, args.n_max + 1):
        if by_m:
            for m in sorted(set(orc[n]) | set(ser[n])):
                a, b = orc[n].get(m, 0), ser[n].get(m, 0)
                ok &= a == b
                rows.append([n, m, a, b, "true" if a == b else "false"])
        else:
            a, b = orc[n], ser[n]
            ok &= a == b
            rows.append([n, a, b, "true" if a == b else "false"])
    return header, rows, ok


def cmd_table(args) -> int:
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    header, rows, ok = _table_rows(args)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        doc = {"family": args.family, "t": args.t, "n_max": args.n_max,
               "source": args.source, "columns": header, "rows": rows}
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    return 0 if ok else 1


COMMANDS = {"verify-identity": cmd_verify_identity, "lemma": cmd_lemma, "table": cmd_table}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qpl: error: {exc}", file=sys.stderr)
        return 2
    except (QplError, ValueError) as exc:
        print(f"qpl: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
