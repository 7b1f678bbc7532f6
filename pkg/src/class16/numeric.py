"""Exact integer helpers and real quadratic irrationals.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Quadratic irrationals are kept as ``(P + sqrt(D)) / Q`` with
``Q | P**2 - D`` so continued-fraction steps never leave the integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "DomainError",
    "ConsistencyError",
    "isqrt",
    "is_square",
    "kronecker",
    "is_prime",
    "QuadIrr",
    "ceil_of",
]


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ConsistencyError(ArithmeticError):
    """An identity that must hold exactly did not (signals a bug)."""


def isqrt(n: int) -> int:
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers a and n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        if v & 1 and a % 8 in (3, 5):
            result = -result
        n >>= v
    # Jacobi symbol for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, trial division below 1000."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    if n < 1681:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class QuadIrr:
    """The real number (P + sqrt(D)) / Q."""

    P: int
    Q: int
    D: int

    def __post_init__(self):
        if self.D <= 0 or is_square(self.D):
            raise DomainError(f"D={self.D} must be a positive non-square")
        if self.Q == 0:
            raise DomainError("Q must be nonzero")
        if (self.P * self.P - self.D) % self.Q:
            raise DomainError(f"Q={self.Q} does not divide P^2 - D for P={self.P}, D={self.D}")

    @classmethod
    def sqrt(cls, D: int) -> "QuadIrr":
        return cls(0, 1, D)

    @classmethod
    def from_any(cls, P: int, Q: int, D: int) -> "QuadIrr":
        """Normalize an arbitrary (P + sqrt(D))/Q by scaling until Q | P^2 - D."""
        if Q == 0:
            raise DomainError("Q must be nonzero")
        if (P * P - D) % Q:
            aq = abs(Q)
            P, Q, D = P * aq, Q * aq, D * Q * Q
        return cls(P, Q, D)

    def __str__(self):
        head = f"{self.P} + " if self.P else ""
        return f"({head}sqrt({self.D}))/{self.Q}"


def ceil_of(x: QuadIrr) -> int:
    """Smallest integer >= x, exact."""
    s = math.isqrt(x.D)
    if x.Q > 0:
        return (x.P + s) // x.Q + 1
    # (P + sqrt D)/Q = (-P - sqrt D)/|Q| and floor(-sqrt D) = -s - 1
    return (-x.P - s - 1) // -x.Q + 1
