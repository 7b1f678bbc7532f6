"""Minimal solution of d^2 - p c^2 = 1 and the unit invariants built on it."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import NamedTuple, Optional, Sequence

from class16.contfrac import DEFAULT_MAX_STEPS, _check_prime_3mod4, sqrt_period
from class16.numeric import ConsistencyError, is_square, kronecker


@dataclass(frozen=True)
class PellSolution:
    """The fundamental unit d + c*sqrt(p); also Williams' T + U*sqrt(p)."""

    p: int
    d: int
    c: int

    def __post_init__(self):
        if self.d * self.d - self.p * self.c * self.c != 1:
            raise ConsistencyError(f"d^2 - p c^2 != 1 for p={self.p}")

    @property
    def T(self) -> int:
        return self.d

    @property
    def U(self) -> int:
        return self.c


def period_matrix(period: Sequence[int]) -> tuple[int, int, int, int]:
    """Product of [[b, -1], [1, 0]] over the period, as (a, b, c, d)."""
    a, b, c, d = 1, 0, 0, 1
    for q in period:
        a, b, c, d = a * q + b, -a, c * q + d, -c
    return a, b, c, d


def fundamental_pell(
    p: int,
    period: Optional[Sequence[int]] = None,
    brute: bool = False,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> PellSolution:
    """Smallest positive (d, c) with d^2 - p c^2 = 1.

    Read off as half the trace of the period-matrix product of sqrt(p).  With
    ``brute=True`` search c = 1, 2, ... instead (small p only).
    """
    _check_prime_3mod4(p)
    if brute:
        return pell_brute_force(p)
    if period is None:
        period = sqrt_period(p, max_steps)
    a, _, _, d4 = period_matrix(period)
    trace = a + d4
    if trace % 2:
        raise ConsistencyError(f"odd trace {trace} for p={p}")
    d = trace // 2
    c2, rem = divmod(d * d - 1, p)
    c = isqrt(c2)
    if rem or c * c != c2:
        raise ConsistencyError(f"period product does not yield a Pell solution for p={p}")
    return PellSolution(p, d, c)


def pell_brute_force(p: int, limit: int = 10**7) -> PellSolution:
    for c in range(1, limit):
        n = p * c * c + 1
        if is_square(n):
            return PellSolution(p, isqrt(n), c)
    raise ConsistencyError(f"no Pell solution with c < {limit} for p={p}")


def pell_regular_cf(p: int) -> PellSolution:
    """Independent route: first convergent h/k of the ordinary continued
    fraction of sqrt(p) with h^2 - p k^2 = 1.

    Any solution has |d/c - sqrt p| < 1/(2c^2), so it is a convergent
    (Legendre); scanning convergents in order therefore finds the minimum.
    """
    a0 = isqrt(p)
    m, q, a = 0, 1, a0
    h0, h1 = 1, a0
    k0, k1 = 0, 1
    while h1 * h1 - p * k1 * k1 != 1:
        m = q * a - m
        q = (p - m * m) // q
        a = (a0 + m) // q
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
    return PellSolution(p, h1, k1)


def half_unit_square_root(sol: PellSolution) -> Optional[tuple[int, int]]:
    """Positive (R, S) with 2(d - c sqrt p) = (R - S sqrt p)^2, if any.

    Expanding gives R^2 + p S^2 = 2d and RS = c; taking norms forces
    R^2 - p S^2 = +-2, so R^2 = d +- 1 and p S^2 = d -+ 1.
    """
    p, d, c = sol.p, sol.d, sol.c
    for sign in (1, -1):
        r2, ps2 = d + sign, d - sign
        if ps2 % p or not is_square(r2) or not is_square(ps2 // p):
            continue
        R, S = isqrt(r2), isqrt(ps2 // p)
        if R * S == c and R * R + p * S * S == 2 * d:
            return R, S
    return None


class WilliamsData(NamedTuple):
    mod4: int
    mod8: int


def williams_unit_congruence_data(sol: PellSolution) -> WilliamsData:
    """(U + 2) mod 4 and (2 + pU - 2 (T/U)) mod 8."""
    T, U = sol.T, sol.U
    return WilliamsData((U + 2) % 4, (2 + sol.p * U - 2 * kronecker(T, U)) % 8)
