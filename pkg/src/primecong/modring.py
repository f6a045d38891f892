"""Arithmetic in Z/p^c, exact rationals, and p-adic valuations.

Residues always carry a canonical representative in [0, p^c). Exact
rational arithmetic uses ``fractions.Fraction``, which already guarantees
the reduced-form invariant (positive denominator, gcd 1); ``BigRational``
is an alias for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .primes import int_valuation, is_prime

BigRational = Fraction


class ModulusMismatch(ValueError):
    """Arithmetic attempted between residues of different moduli."""


class NotInvertible(ValueError):
    """Inverse requested for a residue divisible by p."""


class DenominatorNotCoprime(ValueError):
    """Rational with p in the denominator cannot be reduced mod p^c."""


class NotDivisible(ValueError):
    """Exact division by p^v requested for a value p^v does not divide."""


class PrecisionExhausted(ValueError):
    """An operation would leave fewer than one p-adic digit of precision."""


@dataclass(frozen=True)
class PrimePowerModulus:
    """The ring modulus p^c for a prime p and exponent c >= 1."""

    p: int
    c: int
    modulus: int

    def __init__(self, p: int, c: int):
        if c < 1:
            raise ValueError(f"exponent must be >= 1, got {c}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "modulus", p**c)

    def residue(self, value: int) -> "Residue":
        return Residue(value % self.modulus, self)

    def shrink(self, v: int) -> "PrimePowerModulus":
        """The modulus p^(c-v), dropping v digits of precision."""
        if v >= self.c:
            raise PrecisionExhausted(f"cannot drop {v} digits from p^{self.c}")
        return PrimePowerModulus(self.p, self.c - v)

    def __repr__(self):
        return f"PrimePowerModulus({self.p}^{self.c})"


@dataclass(frozen=True)
class Residue:
    """An integer class mod p^c, stored canonically in [0, p^c)."""

    value: int
    modulus: PrimePowerModulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.modulus:
            object.__setattr__(self, "value", self.value % self.modulus.modulus)

    def _check(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"{self.modulus} vs {other.modulus}")

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue((self.value + other.value) % self.modulus.modulus, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue((self.value - other.value) % self.modulus.modulus, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value % self.modulus.modulus, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value % self.modulus.modulus, self.modulus)

    def __pow__(self, e: int) -> "Residue":
        if e < 0:
            raise ValueError("negative exponent: invert explicitly first")
        return Residue(pow(self.value, e, self.modulus.modulus), self.modulus)

    def inverse(self) -> "Residue":
        if self.value % self.modulus.p == 0:
            raise NotInvertible(f"{self.value} shares the factor {self.modulus.p}")
        return Residue(pow(self.value, -1, self.modulus.modulus), self.modulus)

    def truncate(self, c: int) -> "Residue":
        """Reduce into the smaller ring mod p^c (c <= current exponent)."""
        if c > self.modulus.c:
            raise ValueError("cannot extend precision by truncation")
        if c == self.modulus.c:
            return self
        m = PrimePowerModulus(self.modulus.p, c)
        return Residue(self.value % m.modulus, m)

    def __repr__(self):
        return f"{self.value} (mod {self.modulus.p}^{self.modulus.c})"


def from_rational(q: Fraction | int, m: PrimePowerModulus) -> Residue:
    """Reduce a rational with p-coprime denominator into Z/p^c."""
    q = Fraction(q)
    if q.denominator % m.p == 0:
        raise DenominatorNotCoprime(f"denominator {q.denominator} divisible by {m.p}")
    value = q.numerator * pow(q.denominator, -1, m.modulus) % m.modulus
    return Residue(value, m)


def exact_div_by_p(a: Residue, v: int) -> Residue:
    """Divide by p^v a residue whose representative is divisible by p^v.

    The result lives in the smaller ring mod p^(c-v): dividing consumes v
    digits of precision, so v < c is required.
    """
    if v < 1:
        raise ValueError("v must be >= 1")
    if v >= a.modulus.c:
        raise PrecisionExhausted(f"dividing by p^{v} in a p^{a.modulus.c} ring")
    pv = a.modulus.p**v
    if a.value % pv != 0:
        raise NotDivisible(f"{a.value} not divisible by {a.modulus.p}^{v}")
    m = a.modulus.shrink(v)
    return Residue((a.value // pv) % m.modulus, m)


@dataclass(frozen=True, order=False)
class Valuation:
    """A p-adic valuation, either known exactly or bounded from below.

    ``AtLeast(c)`` arises only from a residual that is 0 in its working
    ring mod p^c: truncated arithmetic cannot tell 0 from p^c * unit.
    """

    kind: str  # "exact" | "at_least"
    amount: int

    EXACT = "exact"
    AT_LEAST = "at_least"

    @classmethod
    def exact(cls, v: int) -> "Valuation":
        return cls(cls.EXACT, v)

    @classmethod
    def at_least(cls, v: int) -> "Valuation":
        return cls(cls.AT_LEAST, v)

    def meets(self, claimed: int) -> bool:
        """Whether this valuation certifies >= claimed."""
        return self.amount >= claimed

    def __str__(self):
        return f"{self.amount}" if self.kind == self.EXACT else f">={self.amount}"


def valuation_of(a: Residue) -> Valuation:
    """Valuation of a residue: exact if nonzero, else AtLeast(c)."""
    if a.value == 0:
        return Valuation.at_least(a.modulus.c)
    return Valuation.exact(int_valuation(a.value, a.modulus.p))


RATIONAL_ZERO_VALUATION = float("inf")


def rational_valuation(q: Fraction | int, p: int) -> int | float:
    """nu_p of a nonzero rational; +inf sentinel for q = 0."""
    q = Fraction(q)
    if q == 0:
        return RATIONAL_ZERO_VALUATION
    num_v = int_valuation(q.numerator, p)
    den_v = int_valuation(q.denominator, p)
    return num_v - den_v


def inverse_table(n: int, m: PrimePowerModulus) -> list[int]:
    """Inverses of 1..n mod p^c via batched inversion (one exgcd total).

    Requires n < p so every entry is a unit. Index k holds 1/k; index 0 is
    unused and set to 0.
    """
    if n >= m.p:
        raise DenominatorNotCoprime(f"{m.p} <= {n} is not invertible mod {m.p}^{m.c}")
    mod = m.modulus
    prefix = [1] * (n + 1)
    for k in range(1, n + 1):
        prefix[k] = prefix[k - 1] * k % mod
    inv_running = pow(prefix[n], -1, mod)
    out = [0] * (n + 1)
    for k in range(n, 0, -1):
        out[k] = inv_running * prefix[k - 1] % mod
        inv_running = inv_running * k % mod
    return out
