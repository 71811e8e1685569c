"""Small integer helpers: factorization, divisors, multiplicative order, CRT."""

from __future__ import annotations

from functools import lru_cache
from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` by trial division, as ``((prime, exponent), ...)``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, s)`` with ``q == p**s``; raise ValueError if q is not a prime power."""
    f = factorize(q) if q > 1 else ()
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    return f[0]


def unitary_divisors(n: int) -> list[int]:
    """Divisors d of n with gcd(d, n // d) == 1, sorted."""
    divs = [1]
    for p, e in factorize(n):
        pe = p**e
        divs += [d * pe for d in divs]
    return sorted(divs)


def multiplicative_order(q: int, r: int) -> int:
    """Order of q modulo r (r >= 1, gcd(q, r) == 1). Ord_1(q) is 1."""
    if r == 1:
        return 1
    if gcd(q, r) != 1:
        raise ValueError(f"{q} is not a unit modulo {r}")
    k, x = 1, q % r
    while x != 1:
        x = x * q % r
        k += 1
    return k


def crt_pair(x1: int, r1: int, x2: int, r2: int) -> int:
    """The unique e in [0, r1*r2) with e = x1 (mod r1) and e = x2 (mod r2)."""
    inv = pow(r1, -1, r2)
    return (x1 + r1 * ((x2 - x1) * inv % r2)) % (r1 * r2)
