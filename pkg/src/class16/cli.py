"""class16 command line.

Exit codes: 0 all verified, 1 a mathematical check failed, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from class16 import BACKEND, __version__
from class16.cache import DEFAULT_PATH, CacheRecord, PellCache
from class16.classgroup import IdealRep, SearchBoundExceeded
from class16.contfrac import DEFAULT_MAX_STEPS, m_of_p, n_from_period, neg_cf
from class16.dedekind import dedekind_sum
from class16.kernels import StepLimitExceeded
from class16.numeric import ConsistencyError, DomainError, QuadIrr, is_prime
from class16.pell import fundamental_pell
from class16.report import CSV_COLUMNS, csv_row, group_multiset, to_json, to_text
from class16.verifier import validate_prime, verify_main

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("class16")


def _fail_usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


# -- verify ---------------------------------------------------------------------


def _verify_record(p: int, cached: Optional[CacheRecord], max_steps: int, search_bound: int, structure: bool):
    pell = cached.pell() if cached else None
    period = cached.period if cached else None
    report = verify_main(
        p, pell=pell, period=period, max_steps=max_steps, structure=structure, search_bound=search_bound
    )
    fresh = None
    if cached is None:
        fresh = CacheRecord(p, report.pell.d, report.pell.c, tuple(report.pell_period))
    return report, fresh


def cmd_verify(args) -> int:
    p = args.p
    try:
        validate_prime(p)
    except DomainError as exc:
        return _fail_usage(str(exc))
    cache = PellCache(args.cache) if args.cache else None
    cached = cache.get(p) if cache else None
    report, fresh = _verify_record(p, cached, args.max_cf_steps, args.search_bound, structure=True)
    if cache is not None and fresh is not None:
        cache.append([fresh])
    print(to_json(report, args.timing) if args.json else to_text(report, args.timing))
    if not report.ok:
        print(f"p={p}: failed checks: {', '.join(report.failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- sweep ------------------------------------------------------------------------


def primes_3mod4(lo: int, hi: int) -> list[int]:
    start = max(lo, 4)
    start += (3 - start) % 4
    return [p for p in range(start, hi + 1, 4) if is_prime(p)]


def _sweep_worker(job):
    p, cached, max_steps, search_bound = job
    try:
        report, fresh = _verify_record(p, cached, max_steps, search_bound, structure=False)
    except (ConsistencyError, StepLimitExceeded, SearchBoundExceeded) as exc:
        return p, None, None, f"{type(exc).__name__}: {exc}"
    return p, report, fresh, None


def cmd_sweep(args) -> int:
    lo, hi = args.lo, args.hi
    if lo <= 3 or hi < lo:
        return _fail_usage(f"need 3 < lo <= hi, got lo={lo}, hi={hi}")
    cache = PellCache(args.cache) if args.cache else None
    jobs = [(p, cache.get(p) if cache else None, args.max_cf_steps, args.search_bound) for p in primes_3mod4(lo, hi)]
    n_jobs = args.jobs or os.cpu_count() or 1

    csv_fh = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else None
    writer = csv.writer(csv_fh, lineterminator="\n") if csv_fh else None
    if writer:
        writer.writerow(CSV_COLUMNS)

    failures, fresh_records, count = [], [], 0
    try:
        if n_jobs > 1 and len(jobs) > 1:
            pool = ProcessPoolExecutor(max_workers=n_jobs)
            results = pool.map(_sweep_worker, jobs, chunksize=max(1, len(jobs) // (8 * n_jobs)))
        else:
            pool = None
            results = map(_sweep_worker, jobs)
        # map() preserves input order, so output is deterministic for any job count
        for p, report, fresh, error in results:
            count += 1
            if error is not None:
                failures.append((p, error))
                print(f"p={p} ERROR {error}", flush=True)
                continue
            if fresh is not None:
                fresh_records.append(fresh)
            if not report.ok:
                failures.append((p, ",".join(report.failed)))
            if args.json:
                print(to_json(report, args.timing), flush=True)
            else:
                status = "ok" if report.ok else "FAIL " + ",".join(report.failed)
                print(
                    f"p={p} h={report.h_plus} h-={report.h_minus_oracle} m={report.m} "
                    f"t={{{group_multiset(report.t_values)}}} {status}",
                    flush=True,
                )
            if writer:
                writer.writerow(csv_row(report, args.timing))
        if pool is not None:
            pool.shutdown()
    finally:
        if csv_fh:
            csv_fh.close()
    if cache is not None:
        cache.append(fresh_records)

    summary = f"checked {count} primes in [{lo}, {hi}]: {count - len(failures)} passed, {len(failures)} failed"
    if args.json:
        print(f'{{"failures":{len(failures)},"primes":{count},"range":[{lo},{hi}]}}')
    else:
        print(summary)
    for p, what in failures:
        print(f"FAILED p={p}: {what}", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


# -- examples -----------------------------------------------------------------------

GOLDEN = {
    79: {"m": 7, "h": 3, "h_minus": 5, "t": [21, -3, -3], "structure": [3], "sqrt_cf": "[9; (9,18)]"},
    439: {"m": 19, "h": 5, "h_minus": 15, "t": [57, -15, -15, 9, 9], "structure": [5], "sqrt_cf": "[21; (21,42)]"},
    43063: {
        "m": 193,
        "h": 9,
        "h_minus": 73,
        "t": [579, -21, -21, 51, 51, -141, -141, -69, -69],
        "structure": [3, 3],
        "sqrt_cf": None,
    },
}

GOLDEN_IDEALS = [
    # (a, b, p, period or None, period length, n, chi)
    (1, 3, 79, (2, 2, 4, 3, 7), 5, 3, -1),
    (7, 13, 439, None, 20, -15, 1),
    (13, 18, 439, (9, 5, 5, 2, 3), 5, 9, 1),
]


def _examples_text(max_steps: int, search_bound: int) -> tuple[list[str], list[str]]:
    from class16.classgroup import chi_of_ideal

    lines, mismatches = [], []

    def expect(label, got, want):
        if got != want:
            mismatches.append(f"{label}: got {got}, expected {want}")

    for k, (p, gold) in enumerate(GOLDEN.items(), start=1):
        report = verify_main(p, max_steps=max_steps, structure=True, search_bound=search_bound)
        root = neg_cf(QuadIrr.sqrt(p), max_steps)
        lines.append(f"Example {k}: p = {p}")
        lines.append(f"  sqrt({p}) = {root}")
        lines.append(f"  m({p})={report.m}")
        lines.append(f"  pell: d={report.pell.d} c={report.pell.c}")
        lines.append(f"  h({p})={report.h_plus}, class group invariants {report.structure}")
        for a, b, q, period, length, n, chi in GOLDEN_IDEALS:
            if q != p:
                continue
            rep = IdealRep(a, b, p)
            cf = neg_cf(QuadIrr(a, b, p), max_steps)
            got_n = n_from_period(cf.period)
            got_chi = chi_of_ideal(rep)
            lines.append(
                f"  ({a}+sqrt({p}))/{b} = {cf}  length {len(cf.period)}, n={got_n}, chi={got_chi:+d}, t={got_chi * got_n}"
            )
            if period is not None:
                expect(f"period of ({a}+sqrt({p}))/{b}", cf.period, period)
            expect(f"period length of ({a}+sqrt({p}))/{b}", len(cf.period), length)
            expect(f"n of ({a}+sqrt({p}))/{b}", got_n, n)
            expect(f"chi of {rep}", got_chi, chi)
        t_vals = report.t_values
        lines.append(f"  t multiset {{{', '.join(map(str, t_vals))}}}")
        lines.append(f"  grouped    {{{group_multiset(t_vals)}}}")
        lines.append(
            f"  h(-{p}) = ({' + '.join(map(str, t_vals)).replace('+ -', '- ')})/3 = {report.h_minus_zagier}"
            f", form count {report.h_minus_oracle}"
        )
        hm = report.h_plus * report.m
        lines.append(
            f"  main check: h(p)m(p) = {hm} = {hm % 16} (mod 16), h(-p) = {report.h_minus_oracle}"
            f" = {report.h_minus_oracle % 16} (mod 16)"
        )
        lines.append(f"  all checks {'pass' if report.ok else 'FAIL: ' + ', '.join(report.failed)}")
        expect(f"m({p})", report.m, gold["m"])
        expect(f"h({p})", report.h_plus, gold["h"])
        expect(f"h(-{p}) form count", report.h_minus_oracle, gold["h_minus"])
        expect(f"h(-{p}) class sum", report.h_minus_zagier, gold["h_minus"])
        expect(f"t multiset for {p}", sorted(t_vals), sorted(gold["t"]))
        expect(f"structure for {p}", report.structure, gold["structure"])
        if gold["sqrt_cf"] is not None:
            expect(f"CF of sqrt({p})", str(root), gold["sqrt_cf"])
        if not report.ok:
            mismatches.append(f"p={p}: failed checks {report.failed}")
    return lines, mismatches


def cmd_examples(args) -> int:
    lines, mismatches = _examples_text(args.max_cf_steps, args.search_bound)
    print("\n".join(lines))
    if mismatches:
        for m in mismatches:
            print(f"MISMATCH {m}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- low level ------------------------------------------------------------------------


def cmd_cf(args) -> int:
    nums = args.numbers
    if len(nums) == 1:
        p = nums[0]
        a, b = 0, 1
    elif len(nums) == 3:
        a, b, p = nums
    else:
        return _fail_usage("cf takes either P or A B P")
    try:
        x = QuadIrr(a, b, p)
    except DomainError as exc:
        return _fail_usage(str(exc))
    cf = neg_cf(x, args.max_cf_steps)
    line = str(cf)
    if len(nums) == 1 and p % 4 == 3 and is_prime(p):
        line += f" m={m_of_p(p, args.max_cf_steps)}"
    print(f"{line} n={n_from_period(cf.period)}")
    return EXIT_OK


def cmd_pell(args) -> int:
    try:
        sol = fundamental_pell(args.p, max_steps=args.max_cf_steps)
    except DomainError as exc:
        return _fail_usage(str(exc))
    print(f"d={sol.d} c={sol.c}")
    return EXIT_OK


def cmd_dedekind(args) -> int:
    try:
        s = dedekind_sum(args.h, args.k)
    except DomainError as exc:
        return _fail_usage(str(exc))
    print(s)
    return EXIT_OK


# -- entry point ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--cache", metavar="PATH", default=None, help=f"Pell/period cache (e.g. {DEFAULT_PATH})")
    common.add_argument("--max-cf-steps", type=int, default=DEFAULT_MAX_STEPS, metavar="N")
    common.add_argument("--search-bound", type=int, default=50, metavar="N")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings (non-deterministic)")

    parser = argparse.ArgumentParser(prog="class16", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"class16 {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify every check for one prime")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="verify all primes = 3 mod 4 in [lo, hi]")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.add_argument("--jobs", type=int, default=0, metavar="N", help="worker processes (default: CPU count)")
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("examples", parents=[common], help="reproduce the worked examples p = 79, 439, 43063")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("cf", parents=[common], help="negative CF of sqrt(P) or (A + sqrt(P))/B")
    p.add_argument("numbers", type=int, nargs="+", metavar="N")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("pell", parents=[common], help="minimal solution of d^2 - p c^2 = 1")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("dedekind", parents=[common], help="Dedekind sum s(h, k)")
    p.add_argument("h", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_dedekind)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        return _fail_usage(str(exc))
    except (ConsistencyError, StepLimitExceeded, SearchBoundExceeded) as exc:
        print(f"verification error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
