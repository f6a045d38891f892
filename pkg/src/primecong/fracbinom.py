"""Binomial coefficients C(x, k) for p-adic integer upper arguments.

Two computation routes:

* ``binom_stream`` works on a truncated residue x. Each step multiplies by
  (x - k + 1)/k; division by p^{nu_p(k)} is exact but consumes precision,
  so the caller must supply x padded by nu_p(kmax!) digits beyond the
  target. For kmax < p no padding is needed.

* ``rational_binom_units`` works on an exact rational x (p-coprime
  denominator). Factor valuations are then computable on exact integers,
  so each C(x, k) is carried as p^e * unit with the unit held at a fixed
  precision: no padding, constant cost per step. This is the route the
  conjecture scanners use for partial sums far beyond p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .modring import (
    PrimePowerModulus,
    PrecisionExhausted,
    Residue,
    from_rational,
)
from .primes import legendre_factorial_valuation, split_p_part


class InvalidFamily(ValueError):
    """Family parameter m divisible by p: p/m - 1 is not a p-adic integer."""


@dataclass(frozen=True)
class BinomStream:
    """Values C(x, k) for k = 0..kmax, each with its guaranteed precision.

    entries[k] is a Residue mod p^{e_k} with e_k = c0 - nu_p(k!) where c0
    is the precision of the supplied x; every e_k >= the requested target.
    """

    x: Residue
    target: int
    entries: tuple[Residue, ...]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k: int) -> Residue:
        return self.entries[k]

    def precision(self, k: int) -> int:
        return self.entries[k].modulus.c


def binom_stream(x: Residue, kmax: int, target: int) -> BinomStream:
    """All C(x, k), k <= kmax, correct mod p^target at least."""
    p = x.modulus.p
    c0 = x.modulus.c
    pad_needed = legendre_factorial_valuation(kmax, p)
    if c0 - pad_needed < target:
        raise PrecisionExhausted(
            f"need {target + pad_needed} digits for k <= {kmax}, x carries {c0}"
        )
    entries = [Residue(1 % x.modulus.modulus, x.modulus)]
    e = c0
    mod = x.modulus.modulus
    b = 1 % mod
    xv = x.value
    for k in range(1, kmax + 1):
        v, u = split_p_part(k, p)
        num = b * ((xv - k + 1) % mod) % mod
        if v:
            e -= v
            mod //= p**v
            xv %= mod
            num = (num % (mod * p**v)) // p**v
        b = num * pow(u, -1, mod) % mod
        entries.append(Residue(b, PrimePowerModulus(p, e)))
    return BinomStream(x, target, tuple(entries))


def binom_exact(x: Fraction, k: int) -> Fraction:
    """C(x, k) over exact rationals (oracle route)."""
    out = Fraction(1)
    for j in range(1, k + 1):
        out *= (x - j + 1) / j
    return out


def rational_binom_units(
    x: Fraction, p: int, precision: int, kmax: int
) -> Iterator[tuple[int, int | None, int]]:
    """Yield (k, e, u) with C(x, k) = p^e * w, w = u (mod p^precision).

    Requires gcd(denominator(x), p) = 1. If some C(x, k) is exactly zero
    (integral x), e is None and u is 0 from that k on. e can fluctuate but
    never drops below 0: every C(x, k) is a p-adic integer.
    """
    if x.denominator % p == 0:
        raise InvalidFamily(f"denominator of {x} divisible by {p}")
    mod = p**precision
    den = x.denominator
    inv_den = pow(den, -1, mod)
    e: int | None = 0
    u = 1 % mod
    yield 0, e, u
    num0 = x.numerator
    for k in range(1, kmax + 1):
        if e is not None:
            a = num0 - den * (k - 1)  # numerator of x - k + 1 over den
            if a == 0:
                e, u = None, 0
            else:
                va, ua = split_p_part(a, p)
                vk, uk = split_p_part(k, p)
                e += va - vk
                u = u * (ua % mod) % mod * inv_den % mod
                u = u * pow(uk % mod, -1, mod) % mod
        yield k, e, u


@dataclass(frozen=True)
class FamilyTerm:
    """One summand (-1)^{km} C(p/m - 1, k)^m of the alternating families."""

    p: int
    m: int
    k: int
    target: int
    value: Residue


def _family_upper(p: int, m: int) -> Fraction:
    if m % p == 0:
        raise InvalidFamily(f"m = {m} divisible by p = {p}")
    return Fraction(p, m) - 1


def family_term(p: int, m: int, k: int, c: int) -> FamilyTerm:
    """(-1)^{km} C(p/m - 1, k)^m mod p^c.

    For m = p + 1 the upper argument is -1/(p+1); for m = p - 1 it is
    1/(p-1). Handles k >= p by padding the stream internally.
    """
    x = _family_upper(p, m)
    pad = legendre_factorial_valuation(k, p)
    modulus = PrimePowerModulus(p, c + pad)
    stream = binom_stream(from_rational(x, modulus), k, c)
    b = stream[k].truncate(c)
    value = b**m
    if (k * m) % 2 == 1:
        value = -value
    return FamilyTerm(p, m, k, c, value)


def family_term_exact(p: int, m: int, k: int) -> Fraction:
    x = _family_upper(p, m)
    sign = -1 if (k * m) % 2 == 1 else 1
    return sign * binom_exact(x, k) ** m


SIGN_BY_KM = "km"  # (-1)^{km}
SIGN_BY_K = "k"  # (-1)^k


def conjecture_term(
    p: int, m: int, r: int, k: int, t: int, sign_mode: str, c: int
) -> Residue:
    """sign * C(r/m, k)^t mod p^c with sign (-1)^{km} or (-1)^k."""
    if m % p == 0:
        raise InvalidFamily(f"m = {m} divisible by p = {p}")
    if sign_mode not in (SIGN_BY_KM, SIGN_BY_K):
        raise ValueError(f"unknown sign mode {sign_mode!r}")
    x = Fraction(r, m)
    modulus = PrimePowerModulus(p, c)
    last = (0, 0, 1 % modulus.modulus)
    for item in rational_binom_units(x, p, c, k):
        last = item
    _, e, u = last
    if e is None or e * t >= c:
        value = 0
    else:
        value = pow(u, t, modulus.modulus) * p ** (e * t) % modulus.modulus
    if sign_mode == SIGN_BY_KM:
        negative = (k * m) % 2 == 1
    else:
        negative = k % 2 == 1
    if negative:
        value = -value % modulus.modulus
    return Residue(value, modulus)


def conjecture_term_exact(p: int, m: int, r: int, k: int, t: int, sign_mode: str) -> Fraction:
    sign = -1 if ((k * m) if sign_mode == SIGN_BY_KM else k) % 2 == 1 else 1
    return sign * binom_exact(Fraction(r, m), k) ** t
