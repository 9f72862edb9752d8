"""Small integer helpers shared across modules."""

from functools import lru_cache
from math import isqrt


def divisors(n: int) -> list[int]:
    """Ascending positive divisors of n >= 1."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=8)
def divisor_lists(limit: int) -> list[list[int]]:
    """Sieve of divisor lists for 0..limit; index 0 holds an empty list."""
    out: list[list[int]] = [[] for _ in range(limit + 1)]
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            out[m].append(d)
    return out
