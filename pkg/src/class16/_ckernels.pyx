# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops over machine integers.

Same contracts as ``_pykernels``.  Inputs whose intermediate values would not
fit in 64 bits raise ``OverflowError`` so the caller can fall back.
"""
from libc.stdint cimport int64_t
from math import isqrt

from class16._pykernels import StepLimitExceeded

cdef int64_t LIMIT = 3037000499  # floor(sqrt(2**63 - 1))


cdef inline int64_t floordiv(int64_t a, int64_t b) nogil:
    cdef int64_t q = a // b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline int64_t floormod(int64_t a, int64_t b) nogil:
    cdef int64_t r = a % b
    if r != 0 and ((r < 0) != (b < 0)):
        r += b
    return r


cdef inline int64_t ceil_q(int64_t P, int64_t Q, int64_t s) nogil:
    if Q > 0:
        return floordiv(P + s, Q) + 1
    return floordiv(-P - s - 1, -Q) + 1


cdef inline bint reduced(int64_t P, int64_t Q, int64_t s) nogil:
    # x = (P + sqrt D)/Q > 1 and 0 < x' < 1; "n < sqrt D" is "n <= s"
    if Q > 0:
        return Q - P <= s and P > s and P - Q <= s
    return Q - P > s and P <= s and P - Q > s


cdef inline int64_t gcd64(int64_t a, int64_t b) nogil:
    cdef int64_t t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


def negcf_expand(P, Q, D, max_steps):
    if D >= LIMIT * LIMIT or abs(P) >= LIMIT // 4 or abs(Q) >= LIMIT // 4:
        raise OverflowError("input too large for machine integers")
    cdef int64_t d = D
    cdef int64_t s = isqrt(D)
    cdef int64_t p = P, q = Q, b, pn
    cdef int64_t head = ceil_q(p, q, s)
    cdef int64_t p0 = 0, q0 = 0
    cdef long start = -1, step
    cdef long limit = max_steps
    quotients = []
    pn = head * q - p
    q = (pn * pn - d) // q
    p = pn
    for step in range(limit):
        if start < 0:
            if reduced(p, q, s):
                start = step
                p0 = p
                q0 = q
        elif p == p0 and q == q0:
            return head, quotients, start
        b = ceil_q(p, q, s)
        quotients.append(b)
        pn = b * q - p
        if pn >= LIMIT or pn <= -LIMIT:
            raise OverflowError("intermediate exceeds machine integers")
        q = (pn * pn - d) // q
        p = pn
    raise StepLimitExceeded(f"no period found within {max_steps} steps")


def count_reduced_definite(D):
    if -D >= LIMIT:
        raise OverflowError("discriminant too large")
    cdef int64_t dd = D
    cdef int64_t a = 1, b, n, c, four_a
    cdef long count = 0
    with nogil:
        while 3 * a * a <= -dd:
            four_a = 4 * a
            b = -a + 1
            if floormod(b - dd, 2):
                b += 1
            while b <= a:
                n = b * b - dd
                if n % four_a == 0:
                    c = n // four_a
                    if c > a or (c == a and b >= 0):
                        if gcd64(gcd64(a, b), c) == 1:
                            count += 1
                b += 2
            a += 1
    return count


cdef inline void rho_c(int64_t a, int64_t b, int64_t c, int64_t D, int64_t s,
                       int64_t* out) nogil:
    cdef int64_t ac = c if c > 0 else -c
    cdef int64_t two_c = 2 * ac
    cdef int64_t r
    if ac <= s:
        r = s - floormod(s + b, two_c)
    else:
        r = floormod(-b, two_c)
        if r > ac:
            r -= two_c
    out[0] = c
    out[1] = r
    out[2] = (r * r - D) // (4 * c)


def rho(a, b, c, D, s):
    cdef int64_t out[3]
    rho_c(a, b, c, D, s, out)
    return out[0], out[1], out[2]


def reduced_indefinite_forms(D):
    if D >= LIMIT:
        raise OverflowError("discriminant too large")
    cdef int64_t dd = D
    cdef int64_t s = isqrt(D)
    cdef int64_t b = 2 - floormod(dd, 2), n, a, lo, hi, c
    forms = []
    while b <= s:
        n = (dd - b * b) // 4
        lo = (s - b + 2) // 2
        hi = (s + b) // 2
        a = lo
        while a <= hi:
            if n % a == 0:
                c = n // a
                if gcd64(gcd64(a, b), c) == 1:
                    forms.append((a, b, -c))
                    forms.append((-a, b, c))
            a += 1
        b += 2
    return forms


def indefinite_cycles(D):
    cdef int64_t dd = D
    cdef int64_t s = isqrt(D)
    cdef int64_t g[3]
    cdef int64_t a0, b0, c0
    forms = reduced_indefinite_forms(D)
    done = set()
    cycles = []
    for f in forms:
        if f in done:
            continue
        a0, b0, c0 = f
        cyc = [f]
        done.add(f)
        rho_c(a0, b0, c0, dd, s, g)
        while not (g[0] == a0 and g[1] == b0 and g[2] == c0):
            t = (g[0], g[1], g[2])
            cyc.append(t)
            done.add(t)
            rho_c(g[0], g[1], g[2], dd, s, g)
        cycles.append(cyc)
    return cycles


def half_factorial_mod(p):
    if p >= LIMIT:
        raise OverflowError("modulus too large")
    cdef int64_t m = p, acc = 1, k
    cdef int64_t top = (m - 1) // 2
    with nogil:
        for k in range(2, top + 1):
            acc = acc * k % m
    return acc
