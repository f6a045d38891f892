"""Primality testing and prime enumeration.

All primality answers here are deterministic: Miller-Rabin with the known
minimal witness set is exact for every input below 2**64, and inputs at or
above that bound are rejected rather than answered probabilistically.
"""

from __future__ import annotations

# The first twelve primes witness compositeness for every composite below
# 3.3e24, comfortably past 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = _MR_WITNESSES


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**64."""
    if n < 0 or n >= 1 << 64:
        raise ValueError(f"primality test limited to [0, 2**64): got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound, by sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : bound + 1 : p] = bytearray(len(range(start, bound + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_range(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi."""
    return [p for p in primes_up_to(hi) if p >= lo]


def int_valuation(n: int, p: int) -> int:
    """Exponent of the largest power of p dividing n != 0."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_p_part(n: int, p: int) -> tuple[int, int]:
    """Write n != 0 as p**v * u with p not dividing u; return (v, u)."""
    if n == 0:
        raise ValueError("cannot split 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division (intended for small n)."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for q in (f, f + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre_factorial_valuation(n: int, p: int) -> int:
    """nu_p(n!) by Legendre's formula."""
    if n < 0:
        raise ValueError("n! undefined for n < 0")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total
