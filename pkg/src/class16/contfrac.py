"""Negative (Hirzebruch-Jung) continued fractions of quadratic irrationals.

``x = b0 - 1/(b1 - 1/(b2 - ...))`` with every ``b_i >= 2`` for ``i > 0``.
Each partial quotient is the exact ceiling of the current tail, and the tail
``(P + sqrt D)/Q`` moves to ``(P' + sqrt D)/Q'`` with ``P' = bQ - P`` and
``Q' = (P'^2 - D)/Q``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from class16 import kernels
from class16.numeric import DomainError, QuadIrr, is_prime

DEFAULT_MAX_STEPS = 10**7


@dataclass(frozen=True)
class NegCF:
    head: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __str__(self):
        inner = ",".join(map(str, self.period))
        pre = "".join(f"{b}, " for b in self.preperiod)
        return f"[{self.head}; {pre}({inner})]"

    def terms(self, n_periods: int = 1) -> list[int]:
        return [self.head, *self.preperiod, *(self.period * n_periods)]


def neg_cf(x: QuadIrr, max_steps: int = DEFAULT_MAX_STEPS) -> NegCF:
    """Expand ``x`` and return head, preperiod and minimal period."""
    head, quotients, start = kernels.negcf_expand(x.P, x.Q, x.D, max_steps)
    return NegCF(head, tuple(quotients[:start]), tuple(quotients[start:]))


def evaluate(terms: Sequence[int]) -> Fraction:
    """Value of the finite negative continued fraction ``[t0; t1, ..., tn]``."""
    acc = Fraction(terms[-1])
    for b in reversed(terms[:-1]):
        acc = b - 1 / acc
    return acc


def n_from_period(period: Sequence[int]) -> int:
    if not period:
        raise DomainError("empty period")
    return sum(period) - 3 * len(period)


def sqrt_period(p: int, max_steps: int = DEFAULT_MAX_STEPS) -> tuple[int, ...]:
    return neg_cf(QuadIrr.sqrt(p), max_steps).period


def m_of_p(p: int, max_steps: int = DEFAULT_MAX_STEPS) -> Fraction:
    """One third of the sum of (b_i - 3) over the period of sqrt(p).

    Exact; p = 3 gives 1/3.
    """
    _check_prime_3mod4(p)
    return Fraction(n_from_period(sqrt_period(p, max_steps)), 3)


def m_is_integral(m: Fraction) -> bool:
    return m.denominator == 1


def _check_prime_3mod4(p: int) -> None:
    if p % 4 != 3 or not is_prime(p):
        raise DomainError(f"{p} is not a prime congruent to 3 mod 4")
