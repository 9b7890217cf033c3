"""Small integer helpers shared across modules."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None if q is not a prime power."""
    if q < 2:
        return None
    ps = prime_factors(q)
    if len(ps) != 1:
        return None
    p = ps[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


def gcd_all(*xs: int) -> int:
    return reduce(math.gcd, (abs(x) for x in xs), 0)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``a*s + b*t == g == gcd(a, b)``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def p_part(m: int, p: int) -> int:
    """Prime-to-p part of ``|m|`` (all factors of p removed); 0 stays 0."""
    m = abs(m)
    if m == 0:
        return 0
    while m % p == 0:
        m //= p
    return m


def mult_order(q: int, m: int) -> int:
    """Multiplicative order of q modulo m (m >= 1, gcd(q, m) == 1)."""
    if m == 1:
        return 1
    if math.gcd(q, m) != 1:
        raise ValueError(f"gcd({q}, {m}) != 1")
    # order divides phi(m); compute phi by factoring
    phi = m
    for r in prime_factors(m):
        phi = phi // r * (r - 1)
    order = phi
    for r in prime_factors(phi):
        while order % r == 0 and pow(q, order // r, m) == 1:
            order //= r
    return order


def frac_mod1(x) -> Fraction:
    """Reduce a rational into [0, 1)."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def denominators_lcm(*xs: Fraction) -> int:
    return reduce(math.lcm, (Fraction(x).denominator for x in xs), 1)
