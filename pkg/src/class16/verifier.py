"""Per-class invariants t_C and the class-number congruence checks for one prime."""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from class16 import kernels
from class16.classgroup import (
    ClassGroupDescription,
    IdealRep,
    chi_of_ideal,
    enumerate_wide_classes,
    find_representative,
    h_minus_oracle,
)
from class16.contfrac import DEFAULT_MAX_STEPS, n_from_period, neg_cf, sqrt_period
from class16.dedekind import SL2Matrix, n_A
from class16.numeric import ConsistencyError, DomainError, QuadIrr, is_prime, kronecker
from class16.pell import PellSolution, fundamental_pell, half_unit_square_root


class VerificationFailure(AssertionError):
    def __init__(self, p: int, check: str, detail: str = ""):
        self.p = p
        self.check = check
        super().__init__(f"p={p}: check '{check}' failed {detail}".rstrip())


@dataclass(frozen=True)
class ClassTerm:
    rep: IdealRep
    chi: int
    n_cf: int
    n_dedekind: int
    period: tuple[int, ...] = field(default=(), compare=False)
    odd_rep: Optional[IdealRep] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.n_cf

    @property
    def t(self) -> int:
        return self.chi * self.n_cf


CHECK_NAMES = (
    "mod16",
    "guy",
    "thmz2",
    "thmz",
    "identity",
    "inverses",
    "mod8",
    "williams4",
    "williams8",
    "mordell",
    "parity",
    "pell",
    "observation",
)


@dataclass
class PrimeReport:
    p: int
    m: Fraction
    pell: PellSolution
    h_plus: int
    h_minus_oracle: int
    h_minus_zagier: Fraction
    classes: list[ClassTerm]
    checks: dict[str, bool]
    structure: Optional[list[int]] = None
    pell_period: tuple[int, ...] = ()
    timing_ms: Optional[float] = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    @property
    def t_values(self) -> list[int]:
        return [ct.t for ct in self.classes]


def validate_prime(p: int) -> None:
    if p <= 3:
        raise DomainError(f"p={p} is outside the verified domain (p > 3)")
    if p % 4 != 3:
        raise DomainError(f"p={p}: p = {p % 4} (mod 4) unsupported, need p = 3 (mod 4)")
    if not is_prime(p):
        raise DomainError(f"p={p} is not prime")


def matrix_for_ideal(rep: IdealRep, sol: PellSolution) -> SL2Matrix:
    """Action of d + c sqrt(p) on the basis (a + sqrt p, b)."""
    if rep.p != sol.p:
        raise DomainError(f"ideal in Q(sqrt {rep.p}) paired with unit of Q(sqrt {sol.p})")
    a, b = rep.a, rep.b
    d, c, p = sol.d, sol.c, sol.p
    top, rem = divmod(c * (p - a * a), b)
    if rem:
        raise ConsistencyError(f"non-integral matrix entry for {rep}")
    try:
        m = SL2Matrix(d + a * c, top, c * b, d - a * c)
    except DomainError as exc:
        raise ConsistencyError(str(exc)) from exc
    if m.trace != 2 * d:
        raise ConsistencyError(f"trace of matrix for {rep} is not 2d")
    return m


def n_of_ideal_cf(rep: IdealRep, max_steps: int = DEFAULT_MAX_STEPS) -> tuple[int, tuple[int, ...]]:
    period = neg_cf(QuadIrr(rep.a, rep.b, rep.p), max_steps).period
    return n_from_period(period), period


def n_of_ideal(rep: IdealRep, sol: PellSolution, max_steps: int = DEFAULT_MAX_STEPS) -> int:
    """n(I) from the CF period of (a + sqrt p)/b, cross-checked against the Dedekind-sum formula."""
    n_cf, _ = n_of_ideal_cf(rep, max_steps)
    n_ded = n_A(matrix_for_ideal(rep, sol))
    if n_cf != n_ded:
        raise ConsistencyError(f"n via CF ({n_cf}) != n via Dedekind sums ({n_ded}) for {rep}")
    return n_cf


def t_of_class(rep: IdealRep, sol: PellSolution, max_steps: int = DEFAULT_MAX_STEPS) -> ClassTerm:
    n_cf, period = n_of_ideal_cf(rep, max_steps)
    n_ded = n_A(matrix_for_ideal(rep, sol))
    return ClassTerm(rep, chi_of_ideal(rep), n_cf, n_ded, period)


def zagier_h_minus(p: int, max_steps: int = DEFAULT_MAX_STEPS) -> int:
    """(1/3) * sum of t_C over the wide classes, checked against the form count."""
    validate_prime(p)
    sol = fundamental_pell(p, max_steps=max_steps)
    group = enumerate_wide_classes(p)
    total = sum(t_of_class(rep, sol, max_steps).t for rep in group.reps)
    if total % 3:
        raise VerificationFailure(p, "thmz2", f"sum of t_C = {total} not divisible by 3")
    h = total // 3
    oracle = h_minus_oracle(p)
    if h != oracle:
        raise VerificationFailure(p, "thmz2", f"zagier sum {h} != form count {oracle}")
    return h


def guy_check(p: int, report: PrimeReport) -> bool:
    h, hm, m = report.h_plus, report.h_minus_oracle, report.m
    residue = (h * hm - m) % 16
    expected = 0 if h % 8 in (1, 7) else 8
    return residue == expected


def mordell_check(p: int, h_minus: int) -> bool:
    w = kernels.half_factorial_mod(p)
    if w not in (1, p - 1):
        raise ConsistencyError(f"((p-1)/2)! = {w} (mod {p}) is not +-1")
    return h_minus % 4 == (1 if w == p - 1 else 3)


def williams_check(p: int, m, sol: PellSolution) -> bool:
    ok4, ok8 = _williams(p, m, sol, None)
    return ok4 and ok8


def _williams(p: int, m, sol: PellSolution, h_pair) -> tuple[bool, bool]:
    T, U = sol.T, sol.U
    u4 = U + 2
    u8 = 2 + p * U - 2 * kronecker(T, U)
    ok4 = (m - u4) % 4 == 0
    ok8 = (m - u8) % 8 == 0
    if h_pair is not None:
        h, hm = h_pair
        ok4 = ok4 and (hm - h * u4) % 4 == 0
        ok8 = ok8 and (hm - h * u8) % 8 == 0
    return ok4, ok8


def sort_key(ct: ClassTerm):
    return (-abs(ct.t), -ct.t, ct.rep.b, ct.rep.a)


def verify_main(
    p: int,
    pell: Optional[PellSolution] = None,
    period: Optional[tuple[int, ...]] = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    structure: bool = False,
    group: Optional[ClassGroupDescription] = None,
    search_bound: int = 50,
) -> PrimeReport:
    """Every check for one prime; failures are recorded, not raised."""
    validate_prime(p)
    started = time.perf_counter()
    if period is None:
        period = sqrt_period(p, max_steps)
    m = Fraction(n_from_period(period), 3)
    if m.denominator != 1:
        raise ConsistencyError(f"m({p}) = {m} is not an integer")
    m = int(m)
    sol = pell if pell is not None else fundamental_pell(p, period=period)
    if group is None:
        group = enumerate_wide_classes(p)
    terms = [t_of_class(rep, sol, max_steps) for rep in group.reps]
    h = group.h
    hm = h_minus_oracle(p)
    total = sum(ct.t for ct in terms)
    hz = Fraction(total, 3)

    checks = {}
    checks["thmz2"] = hz == hm and all(ct.n_cf == ct.n_dedekind for ct in terms)
    checks["mod16"] = (hm - h * m) % 16 == 0
    unit = group.unit_class
    checks["identity"] = terms[unit].chi == 1 and terms[unit].t == 3 * m
    checks["thmz"] = h != 1 or hm == m
    inv_ok = True
    for k in range(h):
        if terms[group.inverse_class(k)].t != terms[k].t:
            inv_ok = False
    checks["inverses"] = inv_ok
    checks["mod8"] = len({ct.t % 8 for ct in terms}) == 1
    w4, w8 = _williams(p, m, sol, (h, hm))
    checks["williams4"], checks["williams8"] = w4, w8
    checks["mordell"] = mordell_check(p, hm)
    checks["parity"] = h % 2 == 1 and hm % 2 == 1
    checks["pell"] = (
        sol.d % 2 == 0 and sol.c % 2 == 1 and half_unit_square_root(sol) is not None
    )

    report = PrimeReport(
        p=p,
        m=Fraction(m),
        pell=sol,
        h_plus=h,
        h_minus_oracle=hm,
        h_minus_zagier=hz,
        classes=sorted(terms, key=sort_key),
        checks={},
        pell_period=tuple(period),
    )
    obs_ok = True
    for k in range(h):
        odd = find_representative(group.reps[k], p, bound=search_bound, group=group)
        odd_term = t_of_class(odd, sol, max_steps)
        obs_ok = obs_ok and (
            odd.b % 4 == 1 and odd_term.chi == 1 and odd_term.t == terms[k].t
            and odd_term.n_cf == odd_term.n_dedekind
        )
        terms[k] = replace(terms[k], odd_rep=odd)
    checks["observation"] = obs_ok
    report.classes = sorted(terms, key=sort_key)
    checks["guy"] = guy_check(p, report)
    report.checks = {k: checks[k] for k in CHECK_NAMES}
    if structure:
        report.structure = group.structure
    report.timing_ms = (time.perf_counter() - started) * 1000.0
    return report


def t_multiset(report: PrimeReport) -> Counter:
    return Counter(report.t_values)
