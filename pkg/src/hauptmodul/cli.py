"""Command line entry point.

Exit status: 0 when everything requested passed, 1 when a verification
failed, 2 for usage or file errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Sequence

from . import verify as V
from .qseries import named_series
from .traces import TraceIntegralityError, make_trace_source, trace_record, trace_t, trace_table

CHECKS = ("signs", "zagier", "ckl-sign", "ckl-bounds", "robin", "claim", "ohta", "kaneko", "all")
DEFAULT_PREC = {"ckl-bounds": 128, "robin": 64, "claim": 256}
_SERIES_MIN = {"hauptmodul": -1, "j": -1, "j_inverse": 1}


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hauptmodul",
        description="Coefficients of eta^24(tau)/eta^24(2 tau), traces of singular moduli, and checks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="print q-expansion coefficients")
    p.add_argument("--series", choices=sorted(_SERIES_MIN), default="hauptmodul")
    p.add_argument("--min", type=int, dest="n_min")
    p.add_argument("--max", type=int, dest="n_max", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("trace", help="traces of singular moduli t(d)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--d", type=int)
    g.add_argument("--max-d", type=int)
    p.add_argument("--cache")
    p.add_argument("--prec-bits", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", help="run a verification check")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--max", type=int, dest="n_max", help="upper end of the range for a single check")
    p.add_argument("--max-n", type=int, help="coefficient range for ohta/kaneko/zagier")
    p.add_argument("--max-d", type=int, help="discriminant range for ckl-sign/ckl-bounds")
    p.add_argument("--k-min", type=int, default=3)
    p.add_argument("--k-max", type=int)
    p.add_argument("--series", choices=("hauptmodul", "j_inverse"), default="hauptmodul")
    p.add_argument("--prec-bits", type=int)
    p.add_argument("--cache")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for diffable output")
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("asymptotic", help="c(n) * 2 n^(3/4) / exp(2 pi sqrt n)")
    p.add_argument("--max", type=int, dest="n_max", required=True)
    p.add_argument("--prec-bits", type=int, default=128)
    p.add_argument("--digits", type=int, default=20)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _cmd_coeffs(args, out) -> int:
    lo = _SERIES_MIN[args.series] if args.n_min is None else args.n_min
    if args.n_max < lo:
        raise _UsageError(f"--max must be at least {lo}")
    s = named_series(args.series, args.n_max + 1)
    rows = [(n, s[n]) for n in range(lo, args.n_max + 1)]
    if args.format == "csv":
        out.write(_csv(rows, ("n", "c")))
    else:
        out.write(_json({"series": args.series, "coefficients": [{"n": n, "c": c} for n, c in rows]}))
    return 0


def _cmd_trace(args, out) -> int:
    if args.d is not None:
        d = args.d
        if d >= 3 and d % 4 in (0, 3):
            records = [trace_record(d, args.prec_bits)]
        else:
            # Conventional values; no forms and no precision involved.
            records = None
            value = trace_t(d)
    else:
        records = trace_table(args.max_d, args.cache, jobs=args.jobs, prec_bits=args.prec_bits)
    header = ("d", "t", "class_size", "precision_bits")
    if records is None:
        rows = [(d, value, 0, 0)]
    else:
        rows = [(r.d, r.t, r.class_size, r.precision_bits) for r in records]
    if args.format == "csv":
        out.write(_csv(rows, header))
    else:
        out.write(_json([dict(zip(header, row)) for row in rows]))
    return 0


def _trace_source(d_max: int, args):
    if d_max < 3:
        return trace_t
    return make_trace_source(trace_table(d_max, args.cache, jobs=args.jobs, prec_bits=None))


def _single(check: str, args) -> list[V.VerificationReport]:
    prec = args.prec_bits or DEFAULT_PREC.get(check)
    rng = args.n_max
    if check == "signs":
        return [V.check_signs(args.series, rng or 1000)]
    if check == "robin":
        return [V.check_robin(rng or 100000, prec)]
    if check == "claim":
        return [V.check_case1_claim(args.k_min, args.k_max or rng or 50, prec)]
    if check in ("ckl-sign", "ckl-bounds"):
        d_max = args.max_d or rng or 400
        source = _trace_source(d_max, args)
        if check == "ckl-sign":
            return [V.check_ckl_sign(d_max, source)]
        return [V.check_ckl_bounds(d_max, prec, source)]
    n = args.max_n or rng
    if check == "zagier":
        n = n or 100
        return [V.check_zagier(n, _trace_source(4 * n, args))]
    if check == "ohta":
        n = n or 40
        return [V.check_ohta(n, _trace_source(4 * n, args))]
    if check == "kaneko":
        n = n or 20
        return [V.check_kaneko(n, _trace_source(16 * n + 1, args))]
    raise _UsageError(f"unknown check {check}")


def _all(args) -> list[V.VerificationReport]:
    max_n = args.max_n or 40
    max_d = args.max_d or 400
    need = max(4 * max_n, 16 * min(max_n, 20) + 1, 400, max_d)
    source = _trace_source(need, args)

    def prec(name):
        return args.prec_bits or DEFAULT_PREC[name]

    return [
        V.cross_check_coeffs(max_n, source),
        V.check_signs("hauptmodul", 1000),
        V.check_signs("j_inverse", 200),
        V.check_zagier(100, source),
        V.check_ckl_sign(max_d, source),
        V.check_ckl_bounds(max_d, prec("ckl-bounds"), source),
        V.check_robin(100000, prec("robin")),
        V.check_case1_claim(3, 50, prec("claim")),
    ]


def _cmd_verify(args, out) -> int:
    try:
        reports = _all(args) if args.check == "all" else _single(args.check, args)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    dicts = [r.to_dict() for r in reports]
    if args.no_timing:
        for d in dicts:
            d["elapsed_ms"] = 0
    if args.format == "json":
        out.write(_json(dicts if args.check == "all" else dicts[0]))
    else:
        header = ("check", "lo", "hi", "passed", "counterexamples", "elapsed_ms")
        rows = [(d["check"], d["lo"], d["hi"], str(d["passed"]).lower(), len(d["counterexamples"]),
                 d["elapsed_ms"]) for d in dicts]
        out.write(_csv(rows, header))
    return 0 if all(r.passed for r in reports) else 1


def _cmd_asymptotic(args, out) -> int:
    if args.n_max < 1:
        raise _UsageError("--max must be at least 1")
    ratios = V.asymptotic_ratio(args.n_max, args.prec_bits)
    rows = [(n, r.to_decimal(args.digits)) for n, r in ratios]
    if args.format == "csv":
        out.write(_csv(rows, ("n", "ratio")))
    else:
        out.write(_json([{"n": n, "ratio": r} for n, r in rows]))
    return 0


class _UsageError(Exception):
    pass


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"coeffs": _cmd_coeffs, "trace": _cmd_trace,
               "verify": _cmd_verify, "asymptotic": _cmd_asymptotic}[args.command]
    try:
        return handler(args, out)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hauptmodul: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hauptmodul: {exc}", file=sys.stderr)
        return 2
    except TraceIntegralityError as exc:
        print(f"hauptmodul: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
