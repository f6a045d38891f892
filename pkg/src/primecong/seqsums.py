"""Harmonic numbers, inverse power sums, and symmetric reciprocal sums.

Every table exists in two variants: incremental mod p^c (fast path, needs
all indices < p) and exact over Fractions (the oracle path, capped at
moderate lengths because numerators grow like lcm(1..n)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .modring import (
    DenominatorNotCoprime,
    PrimePowerModulus,
    Residue,
    inverse_table,
)

EXACT_LENGTH_CAP = 2000


@dataclass(frozen=True)
class HarmonicTable:
    """Prefix values H_0^(m) .. H_n^(m) of sum(1/k^m) in Z/p^c."""

    order: int
    modulus: PrimePowerModulus
    raw: tuple[int, ...]  # canonical representatives, index k = 0..n

    def __len__(self):
        return len(self.raw)

    def __getitem__(self, k: int) -> Residue:
        return Residue(self.raw[k], self.modulus)

    def last(self) -> Residue:
        return Residue(self.raw[-1], self.modulus)


@dataclass(frozen=True)
class SymTable:
    """Prefix elementary symmetric values e_s(1, 1/2, ..., 1/k) in Z/p^c.

    Holds every degree 0..degree; rows[s][k] is e_s over the first k
    reciprocals (zero whenever s > k, one for s = 0).
    """

    degree: int
    modulus: PrimePowerModulus
    rows: tuple[tuple[int, ...], ...]

    def value(self, s: int, k: int) -> Residue:
        return Residue(self.rows[s][k], self.modulus)

    def row(self, s: int) -> tuple[int, ...]:
        return self.rows[s]


def _require_invertible_range(n: int, m: PrimePowerModulus) -> None:
    if n >= m.p:
        raise DenominatorNotCoprime(
            f"1..{n} contains the multiple {m.p} of p; use the exact variant"
        )


def harmonic(n: int, m: int, modulus: PrimePowerModulus) -> HarmonicTable:
    """Table of H_k^(m) mod p^c for k <= n; requires n < p."""
    if m < 1:
        raise ValueError("order must be >= 1")
    _require_invertible_range(n, modulus)
    mod = modulus.modulus
    inv = inverse_table(n, modulus)
    raw = [0] * (n + 1)
    acc = 0
    for k in range(1, n + 1):
        acc = (acc + pow(inv[k], m, mod)) % mod
        raw[k] = acc
    return HarmonicTable(m, modulus, tuple(raw))


def harmonic_exact(n: int, m: int = 1) -> list[Fraction]:
    """Exact H_0^(m) .. H_n^(m)."""
    if n > EXACT_LENGTH_CAP:
        raise ValueError(f"exact harmonic table capped at {EXACT_LENGTH_CAP}")
    out = [Fraction(0)]
    acc = Fraction(0)
    for k in range(1, n + 1):
        acc += Fraction(1, k**m)
        out.append(acc)
    return out


def inv_power_sum(s: int, modulus: PrimePowerModulus) -> Residue:
    """sum_{k=1..p-1} 1/k^s in Z/p^c, for 1 <= s <= p-2."""
    p = modulus.p
    if not 1 <= s <= p - 2:
        raise ValueError(f"s must be in 1..{p - 2}")
    mod = modulus.modulus
    inv = inverse_table(p - 1, modulus)
    total = 0
    for k in range(1, p):
        total += pow(inv[k], s, mod)
    return Residue(total % mod, modulus)


def elem_sym(s: int, n: int, modulus: PrimePowerModulus) -> SymTable:
    """All e_t(1, 1/2, ..., 1/k) for t <= s, k <= n, by the Pascal recurrence."""
    if s < 0:
        raise ValueError("degree must be >= 0")
    _require_invertible_range(n, modulus)
    mod = modulus.modulus
    inv = inverse_table(n, modulus)
    rows = [[0] * (n + 1) for _ in range(s + 1)]
    rows[0] = [1] * (n + 1)
    for k in range(1, n + 1):
        ik = inv[k]
        # descending degree so row t-1 still holds the k-1 prefix
        for t in range(min(s, k), 0, -1):
            rows[t][k] = (rows[t][k - 1] + ik * rows[t - 1][k - 1]) % mod
    return SymTable(s, modulus, tuple(tuple(r) for r in rows))


def elem_sym_exact(s: int, n: int) -> list[list[Fraction]]:
    """Exact rows of the Pascal recurrence; rows[t][k] = e_t over 1..1/k."""
    if n > EXACT_LENGTH_CAP:
        raise ValueError(f"exact symmetric table capped at {EXACT_LENGTH_CAP}")
    rows = [[Fraction(0)] * (n + 1) for _ in range(s + 1)]
    rows[0] = [Fraction(1)] * (n + 1)
    for k in range(1, n + 1):
        ik = Fraction(1, k)
        for t in range(min(s, k), 0, -1):
            rows[t][k] = rows[t][k - 1] + ik * rows[t - 1][k - 1]
    return rows


def elem_sym_bruteforce(s: int, k: int) -> Fraction:
    """e_s over {1, 1/2, ..., 1/k} by explicit subset enumeration (oracle)."""
    if s == 0:
        return Fraction(1)
    if s > k:
        return Fraction(0)
    total = Fraction(0)
    for subset in combinations(range(1, k + 1), s):
        prod = Fraction(1)
        for i in subset:
            prod /= i
        total += prod
    return total


def mixed_sum_2_8(k: int, modulus: PrimePowerModulus) -> Residue:
    """sum over i<j<=k of 1/(i j^2) + 1/(i^2 j), via H_k H_k^(2) - H_k^(3)."""
    _require_invertible_range(k, modulus)
    mod = modulus.modulus
    inv = inverse_table(k, modulus)
    h1 = h2 = h3 = 0
    for i in range(1, k + 1):
        x = inv[i]
        x2 = x * x % mod
        h1 = (h1 + x) % mod
        h2 = (h2 + x2) % mod
        h3 = (h3 + x2 * x) % mod
    return Residue((h1 * h2 - h3) % mod, modulus)


def mixed_sum_2_8_exact(k: int) -> Fraction:
    h1 = sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))
    h2 = sum((Fraction(1, i**2) for i in range(1, k + 1)), Fraction(0))
    h3 = sum((Fraction(1, i**3) for i in range(1, k + 1)), Fraction(0))
    return h1 * h2 - h3


def mixed_sum_bruteforce(k: int) -> Fraction:
    """Direct double loop over pairs i < j <= k (oracle for mixed_sum_2_8)."""
    total = Fraction(0)
    for j in range(2, k + 1):
        for i in range(1, j):
            total += Fraction(1, i * j * j) + Fraction(1, i * i * j)
    return total
