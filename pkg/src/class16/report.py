"""Canonical JSON / CSV / text renderings of a PrimeReport."""
from __future__ import annotations

import json
from collections import Counter
from typing import Any

from class16 import __version__
from class16.verifier import PrimeReport

SAFE_INT = 2**53
CSV_COLUMNS = ("p", "h_plus", "h_minus", "m", "mod16_ok", "all_ok", "ms")


def _int(x: int) -> Any:
    x = int(x)
    return x if -SAFE_INT < x < SAFE_INT else str(x)


def _frac(x) -> Any:
    if x.denominator == 1:
        return _int(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_dict(report: PrimeReport, timing: bool = False) -> dict:
    out = {
        "p": _int(report.p),
        "m": _frac(report.m),
        "h_plus": _int(report.h_plus),
        "h_minus_oracle": _int(report.h_minus_oracle),
        "h_minus_zagier": _frac(report.h_minus_zagier),
        "pell": {
            "d": str(report.pell.d),
            "c": str(report.pell.c),
            "digits": len(str(report.pell.d)),
        },
        "classes": [
            {
                "rep": {"a": _int(ct.rep.a), "b": _int(ct.rep.b)},
                "chi": ct.chi,
                "n": _int(ct.n_cf),
                "n_dedekind": _int(ct.n_dedekind),
                "t": _int(ct.t),
                **({"odd_rep": {"a": _int(ct.odd_rep.a), "b": _int(ct.odd_rep.b)}} if ct.odd_rep else {}),
            }
            for ct in report.classes
        ],
        "checks": dict(report.checks),
        "ok": report.ok,
        "version": __version__,
    }
    if report.structure is not None:
        out["structure"] = [_int(x) for x in report.structure]
    if timing and report.timing_ms is not None:
        out["timing_ms"] = round(report.timing_ms, 3)
    return out


def dumps(obj: dict) -> str:
    """Canonical encoding: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def to_json(report: PrimeReport, timing: bool = False) -> str:
    return dumps(to_dict(report, timing))


def csv_row(report: PrimeReport, timing: bool = False) -> list[str]:
    ms = f"{report.timing_ms:.3f}" if timing and report.timing_ms is not None else ""
    return [
        str(report.p),
        str(report.h_plus),
        str(report.h_minus_oracle),
        str(report.m),
        str(report.checks["mod16"]).lower(),
        str(report.ok).lower(),
        ms,
    ]


def group_multiset(values) -> str:
    """'579, -21 x2, ...' in first-seen order."""
    counts = Counter(values)
    seen = []
    for v in values:
        if v not in seen:
            seen.append(v)
    return ", ".join(str(v) if counts[v] == 1 else f"{v} x{counts[v]}" for v in seen)


def to_text(report: PrimeReport, timing: bool = False) -> str:
    p = report.p
    lines = [
        f"p = {p}",
        f"m(p) = {report.m}",
        f"pell: d = {report.pell.d}, c = {report.pell.c} ({len(str(report.pell.d))} digits)",
        f"h(p) = {report.h_plus}",
        f"h(-p) = {report.h_minus_oracle} (form count), {report.h_minus_zagier} (class sum)",
    ]
    if report.structure is not None:
        lines.append(f"class group invariants: {report.structure}")
    lines.append("classes:")
    for ct in report.classes:
        odd = f"  odd rep {ct.odd_rep}" if ct.odd_rep else ""
        lines.append(
            f"  I = {ct.rep}: chi = {ct.chi:+d}, n = {ct.n_cf} (dedekind {ct.n_dedekind}), t = {ct.t}{odd}"
        )
    lines.append(f"t multiset: {{{group_multiset(report.t_values)}}}")
    hm16 = report.h_plus * report.m
    lines.append(f"h(p) m(p) = {hm16} = {hm16 % 16} (mod 16), h(-p) = {report.h_minus_oracle % 16} (mod 16)")
    lines.append("checks:")
    for name, ok in report.checks.items():
        lines.append(f"  {name:12s} {'pass' if ok else 'FAIL'}")
    if timing and report.timing_ms is not None:
        lines.append(f"time: {report.timing_ms:.1f} ms")
    return "\n".join(lines)
