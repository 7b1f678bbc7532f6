"""Dedekind sums and the hyperbolic-matrix invariant n_A."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

from class16.numeric import ConsistencyError, DomainError

_QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"determinant of {self} is not 1")

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]


def sawtooth(x) -> Fraction:
    """((x)): x - floor(x) - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - floor(x) - Fraction(1, 2)


def _check(h: int, k: int) -> None:
    if k < 1:
        raise DomainError(f"k={k} must be positive")
    if gcd(h, k) != 1:
        raise DomainError(f"gcd({h}, {k}) != 1")


def dedekind_sum_naive(h: int, k: int) -> Fraction:
    """Direct O(k) evaluation of the defining sum; a test oracle."""
    _check(h, k)
    # for 0 < n < k, ((n/k)) = (2n - k) / 2k; hn is never divisible by k
    acc = 0
    for n in range(1, k):
        acc += (2 * (h * n % k) - k) * (2 * n - k)
    return Fraction(acc, 4 * k * k)


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h, k) in O(log k) steps.

    Reduces h mod k, then alternates the reciprocity law
    s(h, k) + s(k, h) = -1/4 + (h/k + k/h + 1/(hk)) / 12
    with reduction of k mod h, as in the Euclidean algorithm.
    """
    _check(h, k)
    h %= k
    total = Fraction(0)
    sign = 1
    while h > 1:
        total += sign * (Fraction(h * h + k * k + 1, 12 * h * k) - _QUARTER)
        sign = -sign
        h, k = k % h, h
    if h == 1:
        # s(1, k) = (k - 1)(k - 2) / (12k)
        total += sign * Fraction((k - 1) * (k - 2), 12 * k)
    return total


def reciprocity_residual(h: int, k: int) -> Fraction:
    """s(h,k) + s(k,h) minus its closed form; identically zero."""
    return dedekind_sum(h, k) + dedekind_sum(k, h) + _QUARTER - Fraction(h * h + k * k + 1, 12 * h * k)


def jacobi_via_dedekind(d: int, c: int) -> int:
    """(d/c) for odd c > 0 computed as (-1)^((1/2)((c-1)/2 - 6c s(d,c)))."""
    if c < 1 or c % 2 == 0:
        raise DomainError(f"c={c} must be odd and positive")
    e2 = Fraction(c - 1, 2) - 6 * c * dedekind_sum(d, c)
    if e2.denominator != 1 or e2.numerator % 2:
        raise ConsistencyError(f"non-integral exponent for d={d}, c={c}")
    return -1 if (e2.numerator // 2) % 2 else 1


def n_A(m: SL2Matrix) -> int:
    """(a + d)/c - 3 - 12 s(d, c) for hyperbolic m with c > 0."""
    if m.c <= 0:
        raise DomainError("n_A needs c > 0")
    if abs(m.trace) <= 2:
        raise DomainError("n_A needs a hyperbolic matrix")
    value = Fraction(m.trace, m.c) - 3 - 12 * dedekind_sum(m.d, m.c)
    if value.denominator != 1:
        raise ConsistencyError(f"n_A of {m} is not an integer: {value}")
    return value.numerator
