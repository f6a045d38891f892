"""Catalog of prime-power congruence statements and the verification engine.

Each catalog entry pins one congruence: a left-hand side computed by the
modular pipeline, a right-hand side (usually a closed form in Bernoulli
numbers), the hypotheses under which it is claimed, and the claimed p-adic
valuation of LHS - RHS. ``verify`` evaluates both sides with guard digits
beyond the claim and reports the observed valuation of the residual; a
failed congruence is a first-class result, never an exception.

Every statement also carries exact-rational evaluators so the whole modular
pipeline can be checked against an independent big-rational computation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

from .bernoulli import bernoulli_exact
from .fracbinom import binom_exact
from .modring import (
    NotDivisible,
    PrimePowerModulus,
    Residue,
    Valuation,
    from_rational,
    valuation_of,
)
from .seqsums import harmonic_exact

DEFAULT_GUARD = 2

Params = dict


class NotApplicable(Exception):
    """Parameters outside a statement's hypotheses (distinct from FAIL)."""


@dataclass(frozen=True)
class ParamPolicy:
    """Default parameter grids for range verification.

    Full coverage at small primes, capped elsewhere so a whole-catalog run
    over primes to 499 stays fast. The top two symmetric-function indices
    p-2 and p-1 are always included: those are the degenerate cells where
    the low-index Bernoulli values enter.
    """

    m_small_max: int = 12
    n_max: int = 10
    s_cap: int = 50
    s_full_below: int = 53
    k_cap: int = 50

    def m_values(self, p: int) -> list[int]:
        ms = {m for m in range(1, self.m_small_max + 1) if m % p != 0}
        ms.update((p - 1, p + 1))
        return sorted(ms)

    def n_values(self, p: int) -> list[int]:
        return list(range(1, min(self.n_max, (p - 3) // 2) + 1))

    def s_values(self, p: int) -> list[int]:
        top = p - 2 if p <= self.s_full_below else min(p - 2, self.s_cap)
        return list(range(1, top + 1))

    def k_values(self, p: int) -> list[int]:
        ks = set(range(1, min(p - 1, self.k_cap) + 1))
        ks.update((p - 2, p - 1))
        return sorted(k for k in ks if k >= 1)


DEFAULT_POLICY = ParamPolicy()


# ---------------------------------------------------------------------------
# Per-prime computation context: shared tables for all statements at one p.
# ---------------------------------------------------------------------------


class PrimeContext:
    """Caches inverse tables, harmonic tables, symmetric-function tables and
    binomial family values for a single prime across many verifications."""

    def __init__(self, p: int, policy: ParamPolicy = DEFAULT_POLICY):
        if p < 2:
            raise ValueError("p must be prime")
        self.p = p
        self.policy = policy
        self._moduli: dict[int, PrimePowerModulus] = {}
        self._inv: dict[int, list[int]] = {}
        self._inv_pows: dict[int, list[list[int]]] = {}
        self._harmonic: dict[tuple[int, int], list[int]] = {}
        self._family: dict[tuple[int, int], list[int]] = {}
        self._sym_prefix: dict[int, list[int]] = {}
        self._full_sym: dict[int, dict[int, int]] = {}
        self._bern: dict[tuple[int, int], int] = {}

    def modulus(self, e: int) -> PrimePowerModulus:
        if e not in self._moduli:
            self._moduli[e] = PrimePowerModulus(self.p, e)
        return self._moduli[e]

    def inv(self, e: int) -> list[int]:
        """Inverses of 1..p-1 mod p^e (index 0 unused)."""
        if e not in self._inv:
            p, mod = self.p, self.p**e
            prefix = [1] * p
            for k in range(1, p):
                prefix[k] = prefix[k - 1] * k % mod
            running = pow(prefix[p - 1], -1, mod)
            out = [0] * p
            for k in range(p - 1, 0, -1):
                out[k] = running * prefix[k - 1] % mod
                running = running * k % mod
            self._inv[e] = out
        return self._inv[e]

    def inv_pows(self, e: int, jmax: int) -> list[list[int]]:
        """Rows r[j][k] = k^{-j} mod p^e for 0 <= j <= jmax."""
        rows = self._inv_pows.setdefault(e, [[1] * self.p, list(self.inv(e))])
        mod = self.p**e
        inv = rows[1]
        while len(rows) <= jmax:
            prev = rows[-1]
            rows.append([0] + [prev[k] * inv[k] % mod for k in range(1, self.p)])
        return rows

    def power_sum(self, s: int, e: int) -> int:
        """sum_{k=1..p-1} k^{-s} mod p^e."""
        row = self.inv_pows(e, s)[s]
        return sum(row[1:]) % self.p**e

    def harmonic_row(self, m: int, e: int) -> list[int]:
        """Prefix sums H_0^(m) .. H_{p-1}^(m) mod p^e."""
        key = (m, e)
        if key not in self._harmonic:
            mod = self.p**e
            row = self.inv_pows(e, m)[m]
            out = [0] * self.p
            acc = 0
            for k in range(1, self.p):
                acc = (acc + row[k]) % mod
                out[k] = acc
            self._harmonic[key] = out
        return self._harmonic[key]

    def h_last(self, m: int, e: int) -> int:
        return self.harmonic_row(m, e)[-1]

    def h_last_div_p(self, e: int, v: int = 1) -> int:
        """H_{p-1} / p^v mod p^e, computed with v extra inner digits."""
        raw = self.h_last(1, e + v)
        pv = self.p**v
        if raw % pv != 0:
            raise NotDivisible(f"H_(p-1) not divisible by p^{v} at p={self.p}")
        return raw // pv % self.p**e

    def weighted_harmonic_sum(self, m: int, j: int, e: int) -> int:
        """sum_{k=1..p-1} H_k^(m) k^{-j} mod p^e."""
        mod = self.p**e
        h = self.harmonic_row(m, e)
        w = self.inv_pows(e, j)[j]
        return sum(h[k] * w[k] for k in range(1, self.p)) % mod

    def weighted_harmonic_sq_sum(self, j: int, e: int) -> int:
        """sum_{k=1..p-1} H_k^2 k^{-j} mod p^e."""
        mod = self.p**e
        h = self.harmonic_row(1, e)
        w = self.inv_pows(e, j)[j]
        return sum(h[k] * h[k] % mod * w[k] for k in range(1, self.p)) % mod

    def harmonic_total(self, m: int, e: int) -> int:
        """sum_{k=1..p-1} H_k^(m) mod p^e."""
        return sum(self.harmonic_row(m, e)[1:]) % self.p**e

    def mixed_total(self, e: int) -> int:
        """sum_{k=1..p-1} (H_k H_k^(2) - H_k^(3)) mod p^e."""
        mod = self.p**e
        h1 = self.harmonic_row(1, e)
        h2 = self.harmonic_row(2, e)
        h3 = self.harmonic_row(3, e)
        return sum(h1[k] * h2[k] - h3[k] for k in range(1, self.p)) % mod

    def sym_prefix_total(self, s: int, e: int) -> int:
        """sum_{k=1..p-1} e_s(1, ..., 1/k) mod p^e, degrees s <= 4."""
        key = e
        if key not in self._sym_prefix:
            mod = self.p**e
            inv = self.inv(e)
            cur = [1, 0, 0, 0, 0]  # e_0..e_4 for the current prefix
            totals = [0, 0, 0, 0, 0]
            for k in range(1, self.p):
                ik = inv[k]
                for t in range(min(4, k), 0, -1):
                    cur[t] = (cur[t] + ik * cur[t - 1]) % mod
                for t in range(1, 5):
                    totals[t] = (totals[t] + cur[t]) % mod
            self._sym_prefix[key] = totals
        return self._sym_prefix[key][s]

    def _full_sym_pass(self, cap: int, e: int) -> dict[int, int]:
        p, mod = self.p, self.p**e
        inv = self.inv(e)
        row = [1] + [0] * cap
        fact = 1
        for kk in range(1, p):
            ik = inv[kk]
            for t in range(min(cap, kk), 0, -1):
                row[t] = (row[t] + ik * row[t - 1]) % mod
            fact = fact * kk % mod
        values = {t: row[t] for t in range(1, min(cap, p - 1) + 1)}
        # factorial closed forms for the top two degrees
        inv_fact = pow(fact, -1, mod)
        values[p - 1] = inv_fact
        if p > 2:
            values[p - 2] = p * (p - 1) // 2 * inv_fact % mod
        return values

    def full_sym_value(self, k: int, e: int) -> int:
        """e_k(1, 1/2, ..., 1/(p-1)) mod p^e.

        Degrees up to the policy cap come from one degree-capped Pascal
        pass over the full length; the top two degrees have factorial
        closed forms e_{p-1} = 1/(p-1)! and e_{p-2} = (p(p-1)/2)/(p-1)!.
        Other degrees are computed on demand.
        """
        if not 1 <= k <= self.p - 1:
            raise ValueError(f"degree {k} outside 1..{self.p - 1}")
        if e not in self._full_sym:
            self._full_sym[e] = self._full_sym_pass(
                min(self.p - 1, self.policy.k_cap), e)
        values = self._full_sym[e]
        if k not in values:
            values.update(self._full_sym_pass(k, e))
        return values[k]

    def family_values(self, m: int, e: int) -> list[int]:
        """t_k = (-1)^{km} C(p/m - 1, k)^m mod p^e for k = 0..p-1."""
        key = (m, e)
        if key not in self._family:
            p, mod = self.p, self.p**e
            inv = self.inv(e)
            x = (p * pow(m, -1, mod) - 1) % mod
            out = [1]
            b = 1
            xk = x  # x - k + 1 for the upcoming step
            odd_m = m % 2 == 1
            for k in range(1, p):
                b = b * xk % mod * inv[k] % mod
                t = pow(b, m, mod)
                if odd_m and k % 2 == 1:
                    t = mod - t if t else 0
                out.append(t)
                xk = (xk - 1) % mod
            self._family[key] = out
        return self._family[key]

    def family_sum(self, m: int, e: int) -> int:
        return sum(self.family_values(m, e)) % self.p**e

    def weighted_family_sum(self, m: int, j: int, e: int) -> int:
        """sum_{k=1..p-1} t_k k^{-j} mod p^e."""
        mod = self.p**e
        t = self.family_values(m, e)
        w = self.inv_pows(e, j)[j]
        return sum(t[k] * w[k] for k in range(1, self.p)) % mod

    def bern(self, n: int, e: int) -> int:
        key = (n, e)
        if key not in self._bern:
            b = bernoulli_exact(n)
            mod = self.p**e
            self._bern[key] = b.numerator * pow(b.denominator, -1, mod) % mod
        return self._bern[key]

    def reduce(self, q: Fraction | int, e: int) -> int:
        q = Fraction(q)
        mod = self.p**e
        return q.numerator * pow(q.denominator, -1, mod) % mod


# ---------------------------------------------------------------------------
# Statement catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Statement:
    """One verifiable congruence: hypotheses, claim, and both evaluators."""

    id: str
    summary: str
    param_names: tuple[str, ...]
    applies: Callable[[Params], bool]
    claimed: Callable[[Params], int]
    lhs_mod: Callable[[PrimeContext, Params, int], int]
    rhs_mod: Callable[[PrimeContext, Params, int], int]
    lhs_exact: Callable[[Params], Fraction]
    rhs_exact: Callable[[Params], Fraction]
    param_iter: Callable[[int, ParamPolicy], Iterator[Params]]
    structural_zero: Callable[[Params], bool] = lambda params: False

    def param_key(self, params: Params) -> tuple:
        return tuple(params[name] for name in self.param_names)


@dataclass(frozen=True)
class CongruenceReport:
    statement_id: str
    params: Params
    working_precision: int
    residual: Residue
    computed: Valuation
    claimed: int
    passed: bool
    wall_time: float

    def margin(self) -> int:
        """observed - claimed (a lower bound when observed is AtLeast)."""
        return self.computed.amount - self.claimed


# -- exact-side helpers ------------------------------------------------------


def _family_terms_exact(p: int, m: int) -> list[Fraction]:
    x = Fraction(p, m) - 1
    sign = -1 if m % 2 == 1 else 1
    out = [Fraction(1)]
    b = Fraction(1)
    for k in range(1, p):
        b *= (x - k + 1) / k
        out.append(b**m if (sign == 1 or k % 2 == 0) else -(b**m))
    return out


def _family_sum_exact(p: int, m: int) -> Fraction:
    return sum(_family_terms_exact(p, m))


def _weighted_family_sum_exact(p: int, m: int, j: int) -> Fraction:
    terms = _family_terms_exact(p, m)
    return sum(terms[k] / Fraction(k**j) for k in range(1, p))


def _weighted_harmonic_sum_exact(p: int, m: int, j: int) -> Fraction:
    h = harmonic_exact(p - 1, m)
    return sum(h[k] / Fraction(k**j) for k in range(1, p))


def _elem_sym_full_exact(p: int, k: int) -> Fraction:
    # degree-k elementary symmetric value over {1, 1/2, ..., 1/(p-1)}
    row = [Fraction(1)] + [Fraction(0)] * k
    for i in range(1, p):
        xi = Fraction(1, i)
        for t in range(min(k, i), 0, -1):
            row[t] = row[t] + xi * row[t - 1]
    return row[k]


def _sym_prefix_total_exact(p: int, s: int) -> Fraction:
    cur = [Fraction(1)] + [Fraction(0)] * s
    total = Fraction(0)
    for k in range(1, p):
        xk = Fraction(1, k)
        for t in range(min(s, k), 0, -1):
            cur[t] = cur[t] + xk * cur[t - 1]
        total += cur[s]
    return total


def _h_exact(p: int, m: int = 1) -> Fraction:
    return harmonic_exact(p - 1, m)[p - 1]


# -- catalog construction ----------------------------------------------------


def _only_p(p: int, policy: ParamPolicy) -> Iterator[Params]:
    yield {"p": p}


def _p_and_m(p: int, policy: ParamPolicy) -> Iterator[Params]:
    for m in policy.m_values(p):
        yield {"p": p, "m": m}


def _p_m_n(p: int, policy: ParamPolicy) -> Iterator[Params]:
    for m in policy.m_values(p):
        for n in policy.n_values(p):
            yield {"p": p, "m": m, "n": n}


def _p_and_n(p: int, policy: ParamPolicy) -> Iterator[Params]:
    for n in policy.n_values(p):
        yield {"p": p, "n": n}


def _p_and_k(p: int, policy: ParamPolicy) -> Iterator[Params]:
    for k in policy.k_values(p):
        yield {"p": p, "k": k}


def _p_and_s(p: int, policy: ParamPolicy) -> Iterator[Params]:
    for s in policy.s_values(p):
        yield {"p": p, "s": s}


def _p_n_morder_a(p: int, policy: ParamPolicy) -> Iterator[Params]:
    for n in policy.n_values(p):
        for m in range(1, 2 * n + 2):
            yield {"p": p, "m": m, "n": n}


def _p_n_morder_b(p: int, policy: ParamPolicy) -> Iterator[Params]:
    for n in policy.n_values(p):
        for m in range(1, 2 * n):
            yield {"p": p, "m": m, "n": n}


def _wolstenholme_parts(p: int, policy: ParamPolicy) -> Iterator[Params]:
    yield {"p": p, "part": 1}
    yield {"p": p, "part": 2}


def _b_idx(params: Params) -> int:
    return params["p"] - 1 - 2 * params["n"]


def _t138_rhs_fraction(params: Params) -> Fraction:
    p, m, n = params["p"], params["m"], params["n"]
    factor = 1 + Fraction((1 - m) * (2 * n + 1), 2 * m)
    return factor * Fraction(p * p * n, 2 * n + 1) * bernoulli_exact(p - 1 - 2 * n)


def _l2_2_rhs_fraction(params: Params) -> Fraction:
    p, k = params["p"], params["k"]
    sign = 1 if (k - 1) % 2 == 0 else -1
    return sign * Fraction(p, k + 1) * bernoulli_exact(p - 1 - k)


def _l3_1a_rhs_fraction(params: Params) -> Fraction:
    p, m, n = params["p"], params["m"], params["n"]
    sign = 1 if (m - 1) % 2 == 0 else -1
    return Fraction(sign * comb(2 * n + 1, m), 2 * n + 1) * bernoulli_exact(p - 1 - 2 * n)


def _l3_1b_rhs_fraction(params: Params) -> Fraction:
    p, m, n = params["p"], params["m"], params["n"]
    sign = 1 if m % 2 == 0 else -1
    inner = n + sign * Fraction(n - m, m + 1) * comb(2 * n + 1, m)
    return Fraction(p, 2 * n + 1) * bernoulli_exact(p - 1 - 2 * n) * inner


def _zero_exact(params: Params) -> Fraction:
    return Fraction(0)


def _make_catalog() -> dict[str, Statement]:
    s: list[Statement] = []

    s.append(Statement(
        id="T1_1",
        summary="sum_{k<p} C(-1/(p+1), k)^(p+1) == 0 (mod p^5)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 5,
        lhs_mod=lambda ctx, pr, e: ctx.family_sum(pr["p"] + 1, e),
        rhs_mod=lambda ctx, pr, e: 0,
        lhs_exact=lambda pr: _family_sum_exact(pr["p"], pr["p"] + 1),
        rhs_exact=_zero_exact,
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="R1_4",
        summary="sum_{k<p} C(-1/(p+1), k)^(p+1) == p^5/18 B_{p-3} (mod p^6)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 5,
        claimed=lambda pr: 6,
        lhs_mod=lambda ctx, pr, e: ctx.family_sum(pr["p"] + 1, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            Fraction(pr["p"] ** 5, 18) * bernoulli_exact(pr["p"] - 3), e),
        lhs_exact=lambda pr: _family_sum_exact(pr["p"], pr["p"] + 1),
        rhs_exact=lambda pr: Fraction(pr["p"] ** 5, 18) * bernoulli_exact(pr["p"] - 3),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="T1_2",
        summary="sum_{k<p} (-1)^{km} C(p/m - 1, k)^m == 0 (mod p^4)",
        param_names=("p", "m"),
        applies=lambda pr: pr["p"] > 3 and pr["m"] >= 1 and pr["m"] % pr["p"] != 0,
        claimed=lambda pr: 4,
        lhs_mod=lambda ctx, pr, e: ctx.family_sum(pr["m"], e),
        rhs_mod=lambda ctx, pr, e: 0,
        lhs_exact=lambda pr: _family_sum_exact(pr["p"], pr["m"]),
        rhs_exact=_zero_exact,
        param_iter=_p_and_m,
        structural_zero=lambda pr: pr["m"] == 1,
    ))
    s.append(Statement(
        id="C1_3",
        summary="sum_{k<p} C(1/(p-1), k)^(p-1) == 0 (mod p^4)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 4,
        lhs_mod=lambda ctx, pr, e: ctx.family_sum(pr["p"] - 1, e),
        rhs_mod=lambda ctx, pr, e: 0,
        lhs_exact=lambda pr: _family_sum_exact(pr["p"], pr["p"] - 1),
        rhs_exact=_zero_exact,
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="R1_5",
        summary="sum_{k<p} C(1/(p-1), k)^(p-1) == (2/3) p^4 B_{p-3} (mod p^5)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 5,
        lhs_mod=lambda ctx, pr, e: ctx.family_sum(pr["p"] - 1, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            Fraction(2 * pr["p"] ** 4, 3) * bernoulli_exact(pr["p"] - 3), e),
        lhs_exact=lambda pr: _family_sum_exact(pr["p"], pr["p"] - 1),
        rhs_exact=lambda pr: Fraction(2 * pr["p"] ** 4, 3) * bernoulli_exact(pr["p"] - 3),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="T1_3_6",
        summary="sum_{0<k<p} (-1)^{km}/k^2 C(p/m - 1, k)^m == H_{p-1}/p (mod p^3)",
        param_names=("p", "m"),
        applies=lambda pr: pr["p"] > 5 and pr["m"] >= 1 and pr["m"] % pr["p"] != 0,
        claimed=lambda pr: 3,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_family_sum(pr["m"], 2, e),
        rhs_mod=lambda ctx, pr, e: ctx.h_last_div_p(e, 1),
        lhs_exact=lambda pr: _weighted_family_sum_exact(pr["p"], pr["m"], 2),
        rhs_exact=lambda pr: _h_exact(pr["p"]) / pr["p"],
        param_iter=_p_and_m,
    ))
    s.append(Statement(
        id="T1_3_7",
        summary="sum_{0<k<p} (-1)^{km}/k^{2n} C(p/m-1, k)^m == -p B_{p-1-2n}/(2n+1) (mod p^2)",
        param_names=("p", "m", "n"),
        applies=lambda pr: (
            pr["p"] > 3 and pr["m"] >= 1 and pr["m"] % pr["p"] != 0
            and 1 <= pr["n"] <= (pr["p"] - 3) // 2),
        claimed=lambda pr: 2,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_family_sum(pr["m"], 2 * pr["n"], e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            -Fraction(pr["p"], 2 * pr["n"] + 1) * bernoulli_exact(_b_idx(pr)), e),
        lhs_exact=lambda pr: _weighted_family_sum_exact(pr["p"], pr["m"], 2 * pr["n"]),
        rhs_exact=lambda pr: -Fraction(pr["p"], 2 * pr["n"] + 1) * bernoulli_exact(_b_idx(pr)),
        param_iter=_p_m_n,
    ))
    s.append(Statement(
        id="T1_3_8",
        summary="sum_{0<k<p} (-1)^{km}/k^{2n-1} C(p/m-1, k)^m == "
                "(1 + (1-m)(2n+1)/(2m)) p^2 n B_{p-1-2n}/(2n+1) (mod p^3)",
        param_names=("p", "m", "n"),
        applies=lambda pr: (
            pr["p"] > 3 and pr["m"] >= 1 and pr["m"] % pr["p"] != 0
            and 1 <= pr["n"] <= (pr["p"] - 3) // 2),
        claimed=lambda pr: 3,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_family_sum(pr["m"], 2 * pr["n"] - 1, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(_t138_rhs_fraction(pr), e),
        lhs_exact=lambda pr: _weighted_family_sum_exact(pr["p"], pr["m"], 2 * pr["n"] - 1),
        rhs_exact=_t138_rhs_fraction,
        param_iter=_p_m_n,
    ))
    s.append(Statement(
        id="R1_9",
        summary="sum_{0<k<p} C(1/(p-1), k)^(p-1)/k^{2n-1} == "
                "-2 p^2 n^2 B_{p-1-2n}/(2n+1) (mod p^3)",
        param_names=("p", "n"),
        applies=lambda pr: pr["n"] >= 1 and pr["p"] > 2 * pr["n"] + 1,
        claimed=lambda pr: 3,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_family_sum(pr["p"] - 1, 2 * pr["n"] - 1, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            -Fraction(2 * pr["p"] ** 2 * pr["n"] ** 2, 2 * pr["n"] + 1)
            * bernoulli_exact(_b_idx(pr)), e),
        lhs_exact=lambda pr: _weighted_family_sum_exact(pr["p"], pr["p"] - 1, 2 * pr["n"] - 1),
        rhs_exact=lambda pr: (
            -Fraction(2 * pr["p"] ** 2 * pr["n"] ** 2, 2 * pr["n"] + 1)
            * bernoulli_exact(_b_idx(pr))),
        param_iter=_p_and_n,
    ))
    s.append(Statement(
        id="R1_10",
        summary="sum_{0<k<p} C(-1/(p+1), k)^(p+1)/k^{2n-1} == "
                "p^2 n B_{p-1-2n}/(2n+1) (mod p^3)",
        param_names=("p", "n"),
        applies=lambda pr: pr["n"] >= 1 and pr["p"] > 2 * pr["n"] + 1,
        claimed=lambda pr: 3,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_family_sum(pr["p"] + 1, 2 * pr["n"] - 1, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            Fraction(pr["p"] ** 2 * pr["n"], 2 * pr["n"] + 1) * bernoulli_exact(_b_idx(pr)), e),
        lhs_exact=lambda pr: _weighted_family_sum_exact(pr["p"], pr["p"] + 1, 2 * pr["n"] - 1),
        rhs_exact=lambda pr: (
            Fraction(pr["p"] ** 2 * pr["n"], 2 * pr["n"] + 1) * bernoulli_exact(_b_idx(pr))),
        param_iter=_p_and_n,
    ))
    s.append(Statement(
        id="L2_1a",
        summary="H_{p-1} == -(p^2/3) B_{p-3} (mod p^3)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 3,
        lhs_mod=lambda ctx, pr, e: ctx.h_last(1, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            -Fraction(pr["p"] ** 2, 3) * bernoulli_exact(pr["p"] - 3), e),
        lhs_exact=lambda pr: _h_exact(pr["p"], 1),
        rhs_exact=lambda pr: -Fraction(pr["p"] ** 2, 3) * bernoulli_exact(pr["p"] - 3),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="L2_1b",
        summary="H_{p-1}^(2) == (2p/3) B_{p-3} (mod p^2)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 2,
        lhs_mod=lambda ctx, pr, e: ctx.h_last(2, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            Fraction(2 * pr["p"], 3) * bernoulli_exact(pr["p"] - 3), e),
        lhs_exact=lambda pr: _h_exact(pr["p"], 2),
        rhs_exact=lambda pr: Fraction(2 * pr["p"], 3) * bernoulli_exact(pr["p"] - 3),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="L2_2",
        summary="e_k(1, 1/2, ..., 1/(p-1)) == (-1)^{k-1} p B_{p-1-k}/(k+1) (mod p^2)",
        param_names=("p", "k"),
        applies=lambda pr: pr["p"] > 3 and 1 <= pr["k"] <= pr["p"] - 1,
        claimed=lambda pr: 2,
        lhs_mod=lambda ctx, pr, e: ctx.full_sym_value(pr["k"], e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(_l2_2_rhs_fraction(pr), e),
        lhs_exact=lambda pr: _elem_sym_full_exact(pr["p"], pr["k"]),
        rhs_exact=_l2_2_rhs_fraction,
        param_iter=_p_and_k,
    ))
    s.append(Statement(
        id="L2_3",
        summary="sum_{0<k<p} H_k == -(p^3/3) B_{p-3} - p + 1 (mod p^4)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 4,
        lhs_mod=lambda ctx, pr, e: ctx.harmonic_total(1, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            -Fraction(pr["p"] ** 3, 3) * bernoulli_exact(pr["p"] - 3) - pr["p"] + 1, e),
        lhs_exact=lambda pr: sum(harmonic_exact(pr["p"] - 1, 1)[1:], Fraction(0)),
        rhs_exact=lambda pr: (
            -Fraction(pr["p"] ** 3, 3) * bernoulli_exact(pr["p"] - 3) - pr["p"] + 1),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="L2_4a",
        summary="sum_{0<k<p} H_k^(2) == 0 (mod p^2)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 2,
        lhs_mod=lambda ctx, pr, e: ctx.harmonic_total(2, e),
        rhs_mod=lambda ctx, pr, e: 0,
        lhs_exact=lambda pr: sum(harmonic_exact(pr["p"] - 1, 2)[1:], Fraction(0)),
        rhs_exact=_zero_exact,
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="L2_4b",
        summary="sum_{0<k<p} H_k^(3) == 0 (mod p)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 1,
        lhs_mod=lambda ctx, pr, e: ctx.harmonic_total(3, e),
        rhs_mod=lambda ctx, pr, e: 0,
        lhs_exact=lambda pr: sum(harmonic_exact(pr["p"] - 1, 3)[1:], Fraction(0)),
        rhs_exact=_zero_exact,
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="L2_5",
        summary="sum_{0<k<p} e_2^(k) == -(2/3) p^2 B_{p-3} + p - 1 (mod p^3)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 3,
        lhs_mod=lambda ctx, pr, e: ctx.sym_prefix_total(2, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            -Fraction(2 * pr["p"] ** 2, 3) * bernoulli_exact(pr["p"] - 3) + pr["p"] - 1, e),
        lhs_exact=lambda pr: _sym_prefix_total_exact(pr["p"], 2),
        rhs_exact=lambda pr: (
            -Fraction(2 * pr["p"] ** 2, 3) * bernoulli_exact(pr["p"] - 3) + pr["p"] - 1),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="L2_6",
        summary="sum_{0<k<p} e_3^(k) == -(p/3) B_{p-3} - p + 1 (mod p^2)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 2,
        lhs_mod=lambda ctx, pr, e: ctx.sym_prefix_total(3, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            -Fraction(pr["p"], 3) * bernoulli_exact(pr["p"] - 3) - pr["p"] + 1, e),
        lhs_exact=lambda pr: _sym_prefix_total_exact(pr["p"], 3),
        rhs_exact=lambda pr: (
            -Fraction(pr["p"], 3) * bernoulli_exact(pr["p"] - 3) - pr["p"] + 1),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="L2_7",
        summary="sum_{0<k<p} e_4^(k) == -1 (mod p)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 1,
        lhs_mod=lambda ctx, pr, e: ctx.sym_prefix_total(4, e),
        rhs_mod=lambda ctx, pr, e: (-1) % pr["p"] ** e,
        lhs_exact=lambda pr: _sym_prefix_total_exact(pr["p"], 4),
        rhs_exact=lambda pr: Fraction(-1),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="L2_8",
        summary="sum_{0<k<p} sum_{i<j<=k} (1/(i j^2) + 1/(i^2 j)) == 0 (mod p)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 1,
        lhs_mod=lambda ctx, pr, e: ctx.mixed_total(e),
        rhs_mod=lambda ctx, pr, e: 0,
        lhs_exact=lambda pr: sum(
            (harmonic_exact(pr["p"] - 1, 1)[k] * harmonic_exact(pr["p"] - 1, 2)[k]
             - harmonic_exact(pr["p"] - 1, 3)[k] for k in range(1, pr["p"])),
            Fraction(0)),
        rhs_exact=_zero_exact,
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="L3_1a",
        summary="sum_{0<k<p} H_k^(m)/k^{2n+1-m} == "
                "(-1)^{m-1} C(2n+1, m) B_{p-1-2n}/(2n+1) (mod p)",
        param_names=("p", "m", "n"),
        applies=lambda pr: (
            pr["m"] >= 1 and pr["n"] >= 1 and pr["m"] <= 2 * pr["n"] + 1
            and pr["p"] > 2 * pr["n"] + 1),
        claimed=lambda pr: 1,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_harmonic_sum(
            pr["m"], 2 * pr["n"] + 1 - pr["m"], e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(_l3_1a_rhs_fraction(pr), e),
        lhs_exact=lambda pr: _weighted_harmonic_sum_exact(
            pr["p"], pr["m"], 2 * pr["n"] + 1 - pr["m"]),
        rhs_exact=_l3_1a_rhs_fraction,
        param_iter=_p_n_morder_a,
    ))
    s.append(Statement(
        id="L3_1b",
        summary="sum_{0<k<p} H_k^(m)/k^{2n-m} == "
                "(p B_{p-1-2n}/(2n+1)) (n + (-1)^m C(2n+1, m)(n-m)/(m+1)) (mod p^2)",
        param_names=("p", "m", "n"),
        applies=lambda pr: (
            pr["m"] >= 1 and pr["n"] >= 1 and pr["m"] < 2 * pr["n"]
            and pr["p"] > 2 * pr["n"] + 1),
        claimed=lambda pr: 2,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_harmonic_sum(
            pr["m"], 2 * pr["n"] - pr["m"], e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(_l3_1b_rhs_fraction(pr), e),
        lhs_exact=lambda pr: _weighted_harmonic_sum_exact(
            pr["p"], pr["m"], 2 * pr["n"] - pr["m"]),
        rhs_exact=_l3_1b_rhs_fraction,
        param_iter=_p_n_morder_b,
    ))
    s.append(Statement(
        id="E3_3",
        summary="sum_{0<k<p} 1/k^s == p s B_{p-1-s}/(s+1) (mod p^2)",
        param_names=("p", "s"),
        applies=lambda pr: pr["p"] > 3 and 1 <= pr["s"] <= pr["p"] - 2,
        claimed=lambda pr: 2,
        lhs_mod=lambda ctx, pr, e: ctx.power_sum(pr["s"], e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            Fraction(pr["p"] * pr["s"], pr["s"] + 1)
            * bernoulli_exact(pr["p"] - 1 - pr["s"]), e),
        lhs_exact=lambda pr: sum(
            (Fraction(1, k ** pr["s"]) for k in range(1, pr["p"])), Fraction(0)),
        rhs_exact=lambda pr: (
            Fraction(pr["p"] * pr["s"], pr["s"] + 1)
            * bernoulli_exact(pr["p"] - 1 - pr["s"])),
        param_iter=_p_and_s,
    ))
    s.append(Statement(
        id="L3_2",
        summary="sum_{0<k<p} (1 - p H_k)/k^2 == H_{p-1}/p (mod p^3)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 5,
        claimed=lambda pr: 3,
        lhs_mod=lambda ctx, pr, e: (
            ctx.power_sum(2, e) - pr["p"] * ctx.weighted_harmonic_sum(1, 2, e)
        ) % pr["p"] ** e,
        rhs_mod=lambda ctx, pr, e: ctx.h_last_div_p(e, 1),
        lhs_exact=lambda pr: (
            sum((Fraction(1, k * k) for k in range(1, pr["p"])), Fraction(0))
            - pr["p"] * _weighted_harmonic_sum_exact(pr["p"], 1, 2)),
        rhs_exact=lambda pr: _h_exact(pr["p"]) / pr["p"],
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="R3_1a",
        summary="sum_{0<k<p} H_k/k^2 == B_{p-3} (mod p)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 3,
        claimed=lambda pr: 1,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_harmonic_sum(1, 2, e),
        rhs_mod=lambda ctx, pr, e: ctx.bern(pr["p"] - 3, e),
        lhs_exact=lambda pr: _weighted_harmonic_sum_exact(pr["p"], 1, 2),
        rhs_exact=lambda pr: bernoulli_exact(pr["p"] - 3),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="R3_1b",
        summary="sum_{0<k<p} H_k/k^3 == -p B_{p-5}/10 (mod p^2)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 5,
        claimed=lambda pr: 2,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_harmonic_sum(1, 3, e),
        rhs_mod=lambda ctx, pr, e: ctx.reduce(
            -Fraction(pr["p"], 10) * bernoulli_exact(pr["p"] - 5), e),
        lhs_exact=lambda pr: _weighted_harmonic_sum_exact(pr["p"], 1, 3),
        rhs_exact=lambda pr: -Fraction(pr["p"], 10) * bernoulli_exact(pr["p"] - 5),
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="A_SU3",
        summary="sum_{0<k<p} H_k^2/k^2 == 0 (mod p)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 5,
        claimed=lambda pr: 1,
        lhs_mod=lambda ctx, pr, e: ctx.weighted_harmonic_sq_sum(2, e),
        rhs_mod=lambda ctx, pr, e: 0,
        lhs_exact=lambda pr: sum(
            (harmonic_exact(pr["p"] - 1, 1)[k] ** 2 / Fraction(k * k)
             for k in range(1, pr["p"])), Fraction(0)),
        rhs_exact=_zero_exact,
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="A_T23",
        summary="sum_{j<k<p} 1/(j k^2) == -3 H_{p-1}/p^2 (mod p^2)",
        param_names=("p",),
        applies=lambda pr: pr["p"] > 5,
        claimed=lambda pr: 2,
        lhs_mod=lambda ctx, pr, e: (
            ctx.weighted_harmonic_sum(1, 2, e) - ctx.power_sum(3, e)
        ) % pr["p"] ** e,
        rhs_mod=lambda ctx, pr, e: (-ctx.h_last_div_p(e, 2) * 3) % pr["p"] ** e,
        lhs_exact=lambda pr: (
            _weighted_harmonic_sum_exact(pr["p"], 1, 2)
            - sum((Fraction(1, k**3) for k in range(1, pr["p"])), Fraction(0))),
        rhs_exact=lambda pr: -3 * _h_exact(pr["p"]) / pr["p"] ** 2,
        param_iter=_only_p,
    ))
    s.append(Statement(
        id="W_PAIR",
        summary="H_{p-1} == 0 (mod p^2); C(2p-1, p-1) == 1 (mod p^3)",
        param_names=("p", "part"),
        applies=lambda pr: pr["p"] > 3 and pr["part"] in (1, 2),
        claimed=lambda pr: 2 if pr["part"] == 1 else 3,
        lhs_mod=lambda ctx, pr, e: (
            ctx.h_last(1, e) if pr["part"] == 1
            else comb(2 * pr["p"] - 1, pr["p"] - 1) % pr["p"] ** e),
        rhs_mod=lambda ctx, pr, e: 0 if pr["part"] == 1 else 1,
        lhs_exact=lambda pr: (
            _h_exact(pr["p"]) if pr["part"] == 1
            else Fraction(comb(2 * pr["p"] - 1, pr["p"] - 1))),
        rhs_exact=lambda pr: Fraction(0) if pr["part"] == 1 else Fraction(1),
        param_iter=_wolstenholme_parts,
    ))

    return {stmt.id: stmt for stmt in s}


CATALOG: dict[str, Statement] = _make_catalog()
STATEMENT_IDS: tuple[str, ...] = tuple(CATALOG)
_STATEMENT_INDEX = {sid: i for i, sid in enumerate(STATEMENT_IDS)}


def falsified(stmt: Statement) -> Statement:
    """A copy of the statement claiming one more p-adic digit than stated.

    Diagnostic: with honest arithmetic this must FAIL somewhere unless the
    residual is structurally zero, proving the suite verifies congruences
    at exactly their claimed strength.
    """
    base = stmt.claimed
    return Statement(
        id=stmt.id,
        summary=stmt.summary + " [claim + 1]",
        param_names=stmt.param_names,
        applies=stmt.applies,
        claimed=lambda pr: base(pr) + 1,
        lhs_mod=stmt.lhs_mod,
        rhs_mod=stmt.rhs_mod,
        lhs_exact=stmt.lhs_exact,
        rhs_exact=stmt.rhs_exact,
        param_iter=stmt.param_iter,
        structural_zero=stmt.structural_zero,
    )


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


def _resolve(statement: Statement | str) -> Statement:
    if isinstance(statement, Statement):
        return statement
    try:
        return CATALOG[statement]
    except KeyError:
        raise KeyError(f"unknown statement id {statement!r}") from None


def verify(
    statement: Statement | str,
    params: Params,
    guard: int = DEFAULT_GUARD,
    ctx: PrimeContext | None = None,
) -> CongruenceReport:
    """Evaluate LHS - RHS mod p^(claim + guard) and report its valuation."""
    stmt = _resolve(statement)
    if guard < 0:
        raise ValueError("guard must be >= 0")
    missing = [k for k in stmt.param_names if k not in params]
    if missing:
        raise NotApplicable(f"{stmt.id} missing parameters {missing}")
    params = {k: params[k] for k in stmt.param_names}
    if not stmt.applies(params):
        raise NotApplicable(f"{stmt.id} hypotheses exclude {params}")
    p = params["p"]
    if ctx is None or ctx.p != p:
        ctx = PrimeContext(p)
    start = time.perf_counter()
    claim = stmt.claimed(params)
    w = claim + guard
    modulus = ctx.modulus(w)
    lhs = stmt.lhs_mod(ctx, params, w)
    rhs = stmt.rhs_mod(ctx, params, w)
    residual = Residue((lhs - rhs) % modulus.modulus, modulus)
    computed = valuation_of(residual)
    return CongruenceReport(
        statement_id=stmt.id,
        params=params,
        working_precision=w,
        residual=residual,
        computed=computed,
        claimed=claim,
        passed=computed.meets(claim),
        wall_time=time.perf_counter() - start,
    )


def modular_exact_match(
    statement: Statement | str,
    params: Params,
    guard: int = DEFAULT_GUARD,
    ctx: PrimeContext | None = None,
) -> bool:
    """Oracle equivalence for one cell: each side of the congruence computed
    modularly must equal its exact big-rational value reduced into the
    working ring."""
    stmt = _resolve(statement)
    params = {k: params[k] for k in stmt.param_names}
    if not stmt.applies(params):
        raise NotApplicable(f"{stmt.id} hypotheses exclude {params}")
    p = params["p"]
    if ctx is None or ctx.p != p:
        ctx = PrimeContext(p)
    w = stmt.claimed(params) + guard
    lhs = stmt.lhs_mod(ctx, params, w)
    rhs = stmt.rhs_mod(ctx, params, w)
    return lhs == ctx.reduce(stmt.lhs_exact(params), w) and rhs == ctx.reduce(
        stmt.rhs_exact(params), w
    )


@dataclass
class RangeSummary:
    records: int = 0
    passed: int = 0
    failed: int = 0
    min_margin: int | None = None
    failures: list[CongruenceReport] = field(default_factory=list)

    def absorb(self, report: CongruenceReport) -> None:
        self.records += 1
        if report.passed:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(report)
        margin = report.margin()
        if self.min_margin is None or margin < self.min_margin:
            self.min_margin = margin


def report_sort_key(report: CongruenceReport) -> tuple:
    return (
        _STATEMENT_INDEX.get(report.statement_id, len(_STATEMENT_INDEX)),
        CATALOG[report.statement_id].param_key(report.params)
        if report.statement_id in CATALOG
        else tuple(sorted(report.params.items())),
    )


def verify_prime(
    p: int,
    statements: list[Statement] | None = None,
    guard: int = DEFAULT_GUARD,
    policy: ParamPolicy = DEFAULT_POLICY,
) -> list[CongruenceReport]:
    """All applicable catalog cells at one prime, in catalog order."""
    stmts = statements if statements is not None else list(CATALOG.values())
    ctx = PrimeContext(p, policy)
    out = []
    for stmt in stmts:
        for params in stmt.param_iter(p, policy):
            if stmt.applies(params):
                out.append(verify(stmt, params, guard, ctx))
    return out


def verify_range(
    statement: Statement | str,
    primes: list[int],
    guard: int = DEFAULT_GUARD,
    policy: ParamPolicy = DEFAULT_POLICY,
) -> tuple[list[CongruenceReport], RangeSummary]:
    """One statement over a prime range; failures are data, never raised."""
    stmt = _resolve(statement)
    reports: list[CongruenceReport] = []
    summary = RangeSummary()
    for p in sorted(primes):
        ctx = PrimeContext(p, policy)
        for params in stmt.param_iter(p, policy):
            if not stmt.applies(params):
                continue
            report = verify(stmt, params, guard, ctx)
            reports.append(report)
            summary.absorb(report)
    return reports, summary


def cross_consistency(p: int, guard: int = DEFAULT_GUARD,
                      policy: ParamPolicy = DEFAULT_POLICY) -> list[dict]:
    """The m = p-1 and m = p+1 generic-family sums agree with the sums built
    directly on the fractional upper arguments 1/(p-1) and -1/(p+1).

    This exercises the identities p/(p-1) - 1 = 1/(p-1) and
    p/(p+1) - 1 = -1/(p+1) through two independent code paths (the engine's
    raw family loop vs the public padded binomial stream); it holds whether
    or not any congruence in the catalog is true.
    """
    from .fracbinom import binom_stream  # local import avoids a cycle

    ctx = PrimeContext(p, policy)
    e = 3 + guard
    modulus = ctx.modulus(e)
    mod = modulus.modulus
    direct = {}
    for m, upper in ((p - 1, Fraction(1, p - 1)), (p + 1, Fraction(-1, p + 1))):
        stream = binom_stream(from_rational(upper, modulus), p - 1, e)
        direct[m] = [stream[k].value for k in range(p)]
    out = []
    for n in policy.n_values(p):
        j = 2 * n - 1
        wj = ctx.inv_pows(e, j)[j]
        rows = {}
        for m in (p - 1, p + 1):
            # (-1)^{km} = 1 for m = p -+ 1 with p odd
            rows[m] = sum(
                pow(direct[m][k], m, mod) * wj[k] for k in range(1, p)) % mod
        out.append({
            "p": p,
            "n": n,
            "minus_family_equal": rows[p - 1] == ctx.weighted_family_sum(p - 1, j, e),
            "plus_family_equal": rows[p + 1] == ctx.weighted_family_sum(p + 1, j, e),
        })
    return out
