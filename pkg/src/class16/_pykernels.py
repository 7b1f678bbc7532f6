"""Pure-Python hot loops.  ``_ckernels.pyx`` implements the same functions."""
from math import gcd, isqrt


class StepLimitExceeded(RuntimeError):
    pass


def _ceil(P, Q, s):
    if Q > 0:
        return (P + s) // Q + 1
    return (-P - s - 1) // -Q + 1


def negcf_expand(P, Q, D, max_steps):
    """Negative CF of (P + sqrt D)/Q.

    Returns ``(head, quotients, start)`` where ``quotients`` lists b_1, b_2, ...
    through the end of the first full period and the period is
    ``quotients[start:]``.
    """
    s = isqrt(D)
    head = _ceil(P, Q, s)
    P = head * Q - P
    Q = (P * P - D) // Q
    seen = {}
    quotients = []
    for _ in range(max_steps):
        state = (P, Q)
        start = seen.get(state)
        if start is not None:
            return head, quotients, start
        seen[state] = len(quotients)
        b = _ceil(P, Q, s)
        quotients.append(b)
        P = b * Q - P
        Q = (P * P - D) // Q
    raise StepLimitExceeded(f"no period found within {max_steps} steps")


def count_reduced_definite(D):
    """Number of reduced primitive positive definite forms of discriminant D < 0."""
    count = 0
    a = 1
    while 3 * a * a <= -D:
        four_a = 4 * a
        b = -a + 1
        if (b - D) % 2:
            b += 1
        while b <= a:
            n = b * b - D
            if n % four_a == 0:
                c = n // four_a
                if c > a or (c == a and b >= 0):
                    if gcd(gcd(a, b), c) == 1:
                        count += 1
            b += 2
        a += 1
    return count


def rho(a, b, c, D, s):
    """One step of the indefinite reduction operator."""
    ac = abs(c)
    two_c = 2 * ac
    if ac <= s:
        r = s - (s + b) % two_c
    else:
        r = -b % two_c
        if r > ac:
            r -= two_c
    return c, r, (r * r - D) // (4 * c)


def reduced_indefinite_forms(D):
    """All reduced primitive forms of discriminant D > 0 (D not a square)."""
    s = isqrt(D)
    forms = []
    b = 2 - D % 2
    while b <= s:
        n = (D - b * b) // 4
        lo = (s - b + 2) // 2
        hi = (s + b) // 2
        for a in range(lo, hi + 1):
            if n % a == 0:
                c = n // a
                if gcd(gcd(a, b), c) == 1:
                    forms.append((a, b, -c))
                    forms.append((-a, b, c))
        b += 2
    return forms


def indefinite_cycles(D):
    """Partition the reduced forms of discriminant D into rho-cycles."""
    s = isqrt(D)
    forms = reduced_indefinite_forms(D)
    done = set()
    cycles = []
    for f in forms:
        if f in done:
            continue
        cyc = [f]
        done.add(f)
        g = rho(*f, D, s)
        while g != f:
            cyc.append(g)
            done.add(g)
            g = rho(*g, D, s)
        cycles.append(cyc)
    return cycles


def half_factorial_mod(p):
    """((p - 1) / 2)! mod p."""
    acc = 1
    for k in range(2, (p - 1) // 2 + 1):
        acc = acc * k % p
    return acc
