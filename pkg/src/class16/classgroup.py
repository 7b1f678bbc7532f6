"""Binary quadratic forms of discriminant -p and 4p, and the ideal classes of Q(sqrt p).

Narrow classes of discriminant 4p are cycles of reduced indefinite forms.
Because the fundamental unit has norm +1 there are 2h(p) cycles; the
involution (a, b, c) -> (-a, b, -c) pairs them, and each pair is one wide
ideal class.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, isqrt
from typing import NamedTuple, Optional

from class16 import kernels
from class16._pykernels import rho as _rho
from class16.numeric import ConsistencyError, DomainError, is_square, kronecker


class SearchBoundExceeded(RuntimeError):
    pass


class QForm(NamedTuple):
    """a x^2 + b x y + c y^2"""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def inverse(self) -> "QForm":
        return QForm(self.a, -self.b, self.c)

    def negated(self) -> "QForm":
        """(-a, b, -c): the partner narrow class in the same wide class."""
        return QForm(-self.a, self.b, -self.c)

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def transform(self, x: int, r: int, y: int, s: int) -> "QForm":
        """Substitute (X, Y) -> (xX + rY, yX + sY)."""
        a, b, c = self
        return QForm(
            self(x, y),
            2 * a * x * r + b * (x * s + r * y) + 2 * c * y * s,
            self(r, s),
        )


@dataclass(frozen=True)
class IdealRep:
    """The ideal I = (a + sqrt p, b) of Z[sqrt p] with basis (a + sqrt p, b)."""

    a: int
    b: int
    p: int

    def __post_init__(self):
        if self.b <= 0:
            raise DomainError(f"ideal norm b={self.b} must be positive")
        if (self.a * self.a - self.p) % self.b:
            raise DomainError(f"{self.b} does not divide {self.a}^2 - {self.p}")

    @property
    def norm(self) -> int:
        return self.b

    def normalized(self) -> "IdealRep":
        return IdealRep(self.a % self.b, self.b, self.p)

    def conjugate(self) -> "IdealRep":
        return IdealRep(-self.a, self.b, self.p)

    def to_form(self) -> QForm:
        return QForm(self.b, -2 * self.a, (self.a * self.a - self.p) // self.b)

    def __str__(self):
        return f"({self.a} + sqrt({self.p}), {self.b})"


# -- definite discriminant -p ------------------------------------------------


def h_minus_oracle(p: int) -> int:
    """h(-p) by counting reduced forms of discriminant -p."""
    if p <= 3 or p % 4 != 3:
        raise DomainError(f"p={p} must be > 3 and congruent to 3 mod 4")
    return kernels.count_reduced_definite(-p)


# -- indefinite discriminant 4p ------------------------------------------------


def _check_indefinite(D: int) -> None:
    if D <= 0 or is_square(D):
        raise DomainError(f"discriminant {D} must be positive and non-square")


def is_reduced(f: QForm) -> bool:
    D = f.disc
    s = isqrt(D)
    # |sqrt D - 2|a|| < b < sqrt D
    return 0 < f.b <= s and s - f.b + 1 <= 2 * abs(f.a) <= s + f.b


def rho(f: QForm) -> QForm:
    D = f.disc
    return QForm(*_rho(f.a, f.b, f.c, D, isqrt(D)))


def reduce_indefinite(f: QForm) -> QForm:
    """A reduced form properly equivalent to f."""
    D = f.disc
    _check_indefinite(D)
    s = isqrt(D)
    a, b, c = f
    while not is_reduced(QForm(a, b, c)):
        a, b, c = _rho(a, b, c, D, s)
    return QForm(a, b, c)


def cycle(f: QForm) -> list[QForm]:
    """The rho-cycle of reduced forms through the reduction of f."""
    g = reduce_indefinite(f)
    D = g.disc
    s = isqrt(D)
    out = [g]
    h = QForm(*_rho(*g, D, s))
    while h != g:
        out.append(h)
        h = QForm(*_rho(*h, D, s))
    return out


def is_equivalent(f: QForm, g: QForm) -> bool:
    """Proper (SL2) equivalence of indefinite forms."""
    if f.disc != g.disc:
        raise DomainError(f"discriminants differ: {f.disc} vs {g.disc}")
    return reduce_indefinite(g) in cycle(f)


def gauss_compose(f: QForm, g: QForm) -> QForm:
    """Dirichlet composition of primitive forms of equal discriminant (unreduced)."""
    D = f.disc
    if g.disc != D:
        raise DomainError(f"discriminants differ: {D} vs {g.disc}")
    a1, b1, _ = f
    a2, b2, _ = g
    h = (b1 + b2) // 2
    # mu*a1 + nu*a2 + omega*h = e = gcd(a1, a2, h)
    e1, x1, y1 = _xgcd(a1, a2)
    e, x2, omega = _xgcd(e1, h)
    mu, nu = x2 * x1, x2 * y1
    B = (mu * a1 * b2 + nu * a2 * b1 + omega * (b1 * b2 + D) // 2) // e
    A = a1 * a2 // (e * e)
    B %= 2 * abs(A)
    C, rem = divmod(B * B - D, 4 * A)
    if rem:
        raise ConsistencyError(f"composition of {f} and {g} failed")
    return QForm(A, B, C)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


# -- ideals --------------------------------------------------------------------


def form_to_ideal(f: QForm, p: int) -> IdealRep:
    if f.disc != 4 * p:
        raise DomainError(f"{f} does not have discriminant 4*{p}")
    if f.a <= 0:
        raise DomainError(f"{f} needs a positive leading coefficient")
    return IdealRep(-f.b // 2, f.a, p)


def chi_of_ideal(rep: IdealRep) -> int:
    """Genus character from 4p = (-4)(-p): (-p/2)^v * (-4/N_odd) for N = 2^v N_odd."""
    n = rep.b
    v = (n & -n).bit_length() - 1
    n_odd = n >> v
    chi = kronecker(-4, n_odd)
    if v % 2 and kronecker(-rep.p, 2) == -1:
        chi = -chi
    return chi


def chi_by_factorization(rep: IdealRep) -> int:
    """Genus character as a product over the prime factors of the norm.

    Each prime q contributes whichever of (-4/q), (-p/q) is nonzero; for
    unramified q both are nonzero and are checked to agree.
    """
    chi = 1
    for q, e in _factor(rep.b).items():
        left, right = kronecker(-4, q), kronecker(-rep.p, q)
        if left and right and left != right:
            raise ConsistencyError(f"(-4/{q}) != (-{rep.p}/{q})")
        chi *= (left or right) ** e
    return chi


# -- wide class group ------------------------------------------------------------


def _rep_key(rep: IdealRep) -> tuple[int, int]:
    return rep.b, rep.a


@dataclass
class ClassGroupDescription:
    """Wide ideal classes of Q(sqrt p) realized as pairs of form cycles."""

    p: int
    cycles: list[list[QForm]]
    partner: list[int]
    classes: list[tuple[int, int]]
    reps: list[IdealRep]
    cycle_of: dict = field(repr=False)

    @property
    def h(self) -> int:
        return len(self.classes)

    @cached_property
    def class_of_cycle(self) -> list[int]:
        out = [0] * len(self.cycles)
        for k, (i, j) in enumerate(self.classes):
            out[i] = out[j] = k
        return out

    def class_index(self, f: QForm) -> int:
        """Wide class containing the form f (any primitive form of disc 4p)."""
        g = reduce_indefinite(f)
        return self.class_of_cycle[self.cycle_of[g]]

    def class_of_ideal(self, rep: IdealRep) -> int:
        return self.class_index(rep.to_form())

    def inverse_class(self, k: int) -> int:
        return self.class_index(self.reps[k].to_form().inverse())

    def form_of_class(self, k: int) -> QForm:
        return self.reps[k].to_form()

    def multiply(self, i: int, j: int) -> int:
        return self.class_index(gauss_compose(self.form_of_class(i), self.form_of_class(j)))

    @cached_property
    def unit_class(self) -> int:
        p = self.p
        return self.class_index(QForm(1, 0, -p))

    def order(self, k: int) -> int:
        n, x = 1, k
        while x != self.unit_class:
            x = self.multiply(x, k)
            n += 1
        return n

    @cached_property
    def structure(self) -> list[int]:
        """Invariant factors d1 | d2 | ... of the wide class group."""
        orders = [self.order(k) for k in range(self.h)]
        exps_by_prime = {}
        for q in _prime_factors(self.h):
            ranks = []
            k = 1
            while True:
                qk = q**k
                count = sum(1 for o in orders if qk % o == 0)
                logc = _log_exact(count, q)
                prev = sum(ranks)
                if logc == prev:
                    break
                ranks.append(logc - prev)
                k += 1
            # ranks[k-1] = number of cyclic q-factors of order >= q^k
            exps = []
            for k, r in enumerate(ranks, start=1):
                nxt = ranks[k] if k < len(ranks) else 0
                exps += [k] * (r - nxt)
            exps_by_prime[q] = sorted(exps, reverse=True)
        width = max((len(v) for v in exps_by_prime.values()), default=0)
        factors = [1] * width
        for q, exps in exps_by_prime.items():
            for i, e in enumerate(exps):
                factors[i] *= q**e
        out = sorted(factors)
        if _prod(out) != self.h:
            raise ConsistencyError(f"structure {out} does not multiply to h={self.h}")
        return out


def _factor(n: int) -> dict[int, int]:
    out, q = {}, 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _log_exact(n: int, q: int) -> int:
    k = 0
    while n > 1:
        if n % q:
            raise ConsistencyError(f"{n} is not a power of {q}")
        n //= q
        k += 1
    return k


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def enumerate_wide_classes(p: int) -> ClassGroupDescription:
    if p <= 3 or p % 4 != 3:
        raise DomainError(f"p={p} must be > 3 and congruent to 3 mod 4")
    D = 4 * p
    cycles = [[QForm(*f) for f in cyc] for cyc in kernels.indefinite_cycles(D)]
    cycle_of = {f: i for i, cyc in enumerate(cycles) for f in cyc}
    partner = [cycle_of[cyc[0].negated()] for cyc in cycles]
    classes = []
    for i, j in enumerate(partner):
        if i == j:
            raise ConsistencyError(f"cycle {i} is its own partner for p={p}")
        if i < j:
            classes.append((i, j))
    reps = []
    for i, j in classes:
        cands = [form_to_ideal(f, p).normalized() for f in cycles[i] + cycles[j] if f.a > 0]
        reps.append(min(cands, key=_rep_key))
    order = sorted(range(len(classes)), key=lambda k: _rep_key(reps[k]))
    classes = [classes[k] for k in order]
    reps = [reps[k] for k in order]
    group = ClassGroupDescription(p, cycles, partner, classes, reps, cycle_of)
    if len(cycles) != 2 * group.h or group.h % 2 == 0:
        raise ConsistencyError(f"{len(cycles)} cycles give h={group.h} for p={p}")
    return group


def class_number_real(p: int) -> int:
    return enumerate_wide_classes(p).h


def class_group_structure(p: int) -> list[int]:
    return enumerate_wide_classes(p).structure


def find_representative(
    rep: IdealRep,
    p: int,
    bound: int = 50,
    grow: bool = True,
    max_bound: int = 1 << 14,
    group: Optional[ClassGroupDescription] = None,
) -> IdealRep:
    """A representative of the class of ``rep`` with odd norm = 1 mod 4 (so chi = 1).

    With ``group`` the reduced forms of the class are tried first.  Otherwise
    (or if none qualifies) values f(x, y) over coprime |x|, |y| <= bound are
    scanned, doubling the bound on failure when ``grow`` is set.
    """
    if rep.b % 4 == 1:
        return rep
    f = rep.to_form()
    target = None
    if group is not None:
        target = group.class_of_ideal(rep)
        i, j = group.classes[target]
        hits = [g for g in group.cycles[i] + group.cycles[j] if g.a > 0 and g.a % 4 == 1]
        if hits:
            return min((form_to_ideal(g, p).normalized() for g in hits), key=_rep_key)
    while True:
        found = _scan(f, bound)
        if found is not None:
            out = form_to_ideal(found, p).normalized()
            same = (
                group.class_of_ideal(out) == target
                if group is not None
                else is_equivalent(found, f) or is_equivalent(found, f.negated())
            )
            if not same:
                raise ConsistencyError(f"representative {out} left the class of {rep}")
            return out
        if not grow or bound >= max_bound:
            raise SearchBoundExceeded(f"no suitable norm for {rep} with bound {bound}")
        bound *= 2


def _scan(f: QForm, bound: int) -> Optional[QForm]:
    best = None
    for g in (f, f.negated()):
        for x in range(-bound, bound + 1):
            for y in range(0, bound + 1):
                if gcd(x, y) != 1:
                    continue
                m = g(x, y)
                if m > 0 and m % 4 == 1 and (best is None or m < best[0]):
                    best = (m, g, x, y)
    if best is None:
        return None
    _, g, x, y = best
    _, s, r = _xgcd(x, y)  # s*x + r*y = 1
    return g.transform(x, -r, y, s)
