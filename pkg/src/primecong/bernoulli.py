"""Bernoulli numbers: exact rationals, prime-power reductions, persistence.

Convention: B_1 = -1/2, i.e. the numbers satisfying
sum_{k=0..n} C(n+1, k) B_k = 0 for n >= 1 with B_0 = 1. The inverse-power-
sum congruences verified elsewhere in this package only close under this
convention, and the von Staudt-Clausen denominator check gives a second,
independent route to every even-index value.
"""

from __future__ import annotations

import random
import threading
from fractions import Fraction
from math import comb

from .modring import PrimePowerModulus, Residue, from_rational
from .primes import is_prime

DEFAULT_CACHE_BOUND = 1200


class CacheBoundExceeded(ValueError):
    """Requested index above the configured cache bound."""


class IrregularReduction(ValueError):
    """B_n cannot be reduced: p divides its denominator."""


class IrregularCache(RuntimeError):
    """A persisted Bernoulli cache file failed validation."""


class BernoulliCache:
    """Lazily extended cache of exact Bernoulli numbers B_0..B_N.

    Even indices are computed through the defining recurrence (odd indices
    above 1 are zero and skipped). Extension is serialized behind a lock;
    reads of already-computed entries are plain list reads.
    """

    def __init__(self, bound: int = DEFAULT_CACHE_BOUND):
        self.bound = bound
        self._lock = threading.Lock()
        # _even[j] = B_{2j}
        self._even: list[Fraction] = [Fraction(1)]

    def _extend_to(self, n: int) -> None:
        half = n // 2
        with self._lock:
            while len(self._even) <= half:
                m = len(self._even)  # computing B_{2m}
                two_m = 2 * m
                s = Fraction(comb(two_m + 1, 1), -2)  # the B_1 term
                for j in range(m):
                    s += comb(two_m + 1, 2 * j) * self._even[j]
                self._even.append(-s / (two_m + 1))

    def exact(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("Bernoulli index must be >= 0")
        if n > self.bound:
            raise CacheBoundExceeded(f"B_{n} above cache bound {self.bound}")
        if n == 1:
            return Fraction(-1, 2)
        if n % 2 == 1:
            return Fraction(0)
        if n // 2 >= len(self._even):
            self._extend_to(n)
        return self._even[n // 2]


_cache = BernoulliCache()


def bernoulli_exact(n: int) -> Fraction:
    """Exact B_n from the shared cache (recurrence definition)."""
    return _cache.exact(n)


def bernoulli_mod(n: int, p: int, j: int) -> Residue:
    """B_n reduced mod p^j; fails when p divides the denominator of B_n."""
    b = bernoulli_exact(n)
    m = PrimePowerModulus(p, j)
    if b.denominator % p == 0:
        raise IrregularReduction(f"{p} divides denominator of B_{n} = {b}")
    return from_rational(b, m)


def vsc_denominator(n: int) -> int:
    """Product of primes q with (q-1) | n — the denominator of B_n (n even).

    An independent check on the recurrence: by von Staudt-Clausen these two
    computations of the denominator must agree for every even n >= 2.
    """
    if n < 2 or n % 2 == 1:
        raise ValueError("von Staudt-Clausen applies to even n >= 2")
    out = 1
    for q in range(2, n + 2):
        if n % (q - 1) == 0 and is_prime(q):
            out *= q
    return out


def save_cache(path: str, upto: int, cache: BernoulliCache | None = None) -> None:
    """Write B_0..B_upto as decimal ``index numerator denominator`` lines."""
    c = cache or _cache
    with open(path, "w") as fh:
        for n in range(upto + 1):
            b = c.exact(n)
            fh.write(f"{n} {b.numerator} {b.denominator}\n")


def load_cache(path: str, sample: int = 8, rng_seed: int = 20210123) -> BernoulliCache:
    """Load a persisted cache, validating the recurrence on a random sample.

    Raises IrregularCache on malformed records or on any sampled index where
    sum_{k=0..n} C(n+1, k) B_k != 0 (n >= 1) or B_0 != 1.
    """
    values: dict[int, Fraction] = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 3:
                    raise IrregularCache(f"malformed record: {line!r}")
                n, num, den = (int(x) for x in parts)
                if den <= 0:
                    raise IrregularCache(f"nonpositive denominator at index {n}")
                values[n] = Fraction(num, den)
    except (ValueError, OSError) as exc:
        if isinstance(exc, IrregularCache):
            raise
        raise IrregularCache(f"unreadable cache file {path}: {exc}") from exc

    top = max(values) if values else -1
    if top < 0 or set(values) != set(range(top + 1)):
        raise IrregularCache("cache must cover a contiguous range 0..N")
    if values[0] != 1:
        raise IrregularCache("B_0 != 1")
    rng = random.Random(rng_seed)
    indices = rng.sample(range(1, top + 1), min(sample, top)) if top >= 1 else []
    for n in indices:
        total = sum(comb(n + 1, k) * values[k] for k in range(n + 1))
        if total != 0:
            raise IrregularCache(f"recurrence fails at index {n}")
        if n >= 2 and n % 2 == 0 and values[n].denominator != vsc_denominator(n):
            raise IrregularCache(f"denominator of B_{n} fails von Staudt-Clausen")

    cache = BernoulliCache()
    cache._even = [values[2 * j] for j in range(top // 2 + 1)]
    # Trust but verify: odd entries must match the convention.
    if top >= 1 and values[1] != Fraction(-1, 2):
        raise IrregularCache("B_1 != -1/2")
    for n in range(3, top + 1, 2):
        if values[n] != 0:
            raise IrregularCache(f"odd-index B_{n} nonzero")
    return cache


def install_cache(cache: BernoulliCache) -> None:
    """Replace the shared cache (used by the CLI --bernoulli-cache flag)."""
    global _cache
    _cache = cache
