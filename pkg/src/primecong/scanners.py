"""Partial-sum valuation scans and the composite-counterexample search.

The binomial partial-sum scans ride on exact upper arguments: each
C(x, k) is carried as p^e * unit with the unit at a small fixed precision
(see fracbinom.rational_binom_units), so scanning n far beyond p needs no
precision padding. The composite search evaluates sums as exact rationals
over a common denominator and classifies each n from prime-power
valuations of the numerator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .fracbinom import rational_binom_units
from .modring import Valuation
from .primes import factorize, int_valuation, is_prime, prime_range

FAMILY_PLUS = "plus"  # exponent n+1, upper argument -1/(n+1)
FAMILY_MINUS = "minus"  # exponent n-1, upper argument 1/(n-1)

HOLDS = "Holds"
VIOLATED = "Violated"
UNDEFINED = "Undefined"

TARGET_CONJ1_1 = "conj1_1"
TARGET_CONJ1_2_I = "conj1_2i"
TARGET_CONJ1_2_II = "conj1_2ii"
TARGET_COMPOSITES = "composites"


@dataclass(frozen=True)
class ScanConfig:
    target: str
    primes: tuple[int, ...] = ()
    n_max: int | None = None
    a_max: int | None = None
    b_max: int = 4
    m_values: tuple[int, ...] = tuple(range(2, 9))
    r_values: tuple[int, ...] | None = None
    p_max: int = 1000
    composite_lo: int = 4
    composite_hi: int = 120
    families: tuple[str, ...] = (FAMILY_PLUS, FAMILY_MINUS)
    guard: int = 2

    def __post_init__(self):
        if self.guard < 0:
            raise ValueError("guard must be >= 0")
        if self.composite_lo < 2 or self.composite_hi < self.composite_lo:
            raise ValueError("composite range must be nonempty and start >= 2")


@dataclass(frozen=True)
class ScanRecord:
    target: str
    params: dict
    required: int
    observed: Valuation | None
    verdict: str
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Partial-sum valuation scan
# ---------------------------------------------------------------------------


def partial_sum_bound_factor(n: int, p: int) -> int:
    """floor((nu_p(n) + 1) / 2)."""
    return (int_valuation(n, p) + 1) // 2


def required_partial_valuation(n: int, p: int, family: str) -> int:
    if family == FAMILY_PLUS:
        c_p = 1 if p == 2 else 3 if p == 3 else 5
    elif family == FAMILY_MINUS:
        c_p = 4
    else:
        raise ValueError(f"unknown family {family!r}")
    return c_p * partial_sum_bound_factor(n, p)


def _family_fraction(p: int, family: str) -> tuple[Fraction, int]:
    """Upper argument and exponent of the scanned power family."""
    if family == FAMILY_PLUS:
        return Fraction(-1, p + 1), p + 1
    return Fraction(1, p - 1), p - 1


def conj_1_1_grid(p: int, n_max: int | None = None, a_max: int | None = None,
                  b_max: int = 4) -> list[int]:
    """Dense prefix up to 4p^2 plus the p-power-divisible points a*p^b."""
    dense_top = 4 * p * p if n_max is None else n_max
    grid = set(range(1, dense_top + 1))
    a_top = p if a_max is None else a_max
    for b in range(1, b_max + 1):
        step = p**b
        for a in range(1, a_top + 1):
            grid.add(a * step)
    return sorted(grid)


def scan_conj_1_1(
    p: int,
    n_max: int | None = None,
    family: str = FAMILY_PLUS,
    a_max: int | None = None,
    b_max: int = 4,
    guard: int = 2,
) -> list[ScanRecord]:
    """Observed vs required valuation of every gridded partial sum.

    The conjectured bound is c_p * floor((nu_p(n)+1)/2) with c_p in
    {1, 3, 5} by p for the (p+1)-power family, and 4 for the (p-1)-power
    family (primes p > 3 only).
    """
    if family == FAMILY_MINUS and p <= 3:
        raise ValueError("the (p-1)-power family is conjectured for p > 3 only")
    grid = conj_1_1_grid(p, n_max, a_max, b_max)
    n_top = grid[-1]
    precision = max(required_partial_valuation(n, p, family) for n in grid) + guard
    x, exponent = _family_fraction(p, family)
    mod = p**precision

    records: list[ScanRecord] = []
    grid_set = set(grid)
    partial = 0

    def record(n: int, value: int) -> None:
        required = required_partial_valuation(n, p, family)
        if value == 0:
            observed = Valuation.at_least(precision)
        else:
            observed = Valuation.exact(int_valuation(value, p))
        verdict = HOLDS if observed.meets(required) else VIOLATED
        records.append(ScanRecord(
            target=TARGET_CONJ1_1,
            params={"p": p, "family": family, "n": n},
            required=required,
            observed=observed,
            verdict=verdict,
            meta={"working_precision": precision},
        ))

    for k, e, u in rational_binom_units(x, p, precision, n_top - 1):
        if k in grid_set:
            record(k, partial)
        if e is None:
            term = 0
        else:
            shift = e * exponent
            term = pow(u, exponent, mod) * p**shift % mod if shift < precision else 0
        partial = (partial + term) % mod
    record(n_top, partial)
    return records


def partial_sum_exact(p: int, n: int, family: str = FAMILY_PLUS) -> Fraction:
    """Exact rational partial sum (oracle for small n)."""
    x, exponent = _family_fraction(p, family)
    total = Fraction(0)
    b = Fraction(1)
    for k in range(n):
        if k > 0:
            b *= (x - k + 1) / k
        total += b**exponent
    return total


# ---------------------------------------------------------------------------
# Alternating-family conjecture scan
# ---------------------------------------------------------------------------


def admissible_r_part_i(m: int) -> list[tuple[int, str]]:
    """Candidate r for the odd/even alternating family, labeled by boundary
    reading: 'strict' satisfies 2r >= -m; for odd m the half-integer lower
    bound is ambiguous, so r = -(m+1)/2 is scanned too, labeled 'extended'.
    """
    out = []
    for r in range(-m, m + 1):
        if (m - r) % 2 == 0:  # needs m and r of opposite parity
            continue
        if 2 * r >= -m:
            out.append((r, "strict"))
        elif m % 2 == 1 and 2 * r == -(m + 1):
            out.append((r, "extended"))
    return out


def admissible_r_part_ii(m: int) -> list[tuple[int, str]]:
    return [(r, "strict") for r in range(-m, m + 1)]


def scan_conj_1_2(
    part: str,
    m: int,
    r: int,
    prime_bound: int,
    guard: int = 2,
    hypothesis: str = "strict",
) -> list[ScanRecord]:
    """Scan one (m, r) pair of the alternating binomial-power families.

    part 'i':  sum_{k<p} (-1)^{km} C(r/m, k)^m, claimed 0 mod p^3, for
               primes p == r (mod m); hypotheses m > 2, m and r of opposite
               parity, 2r >= -m.
    part 'ii': sum_{k<p} (-1)^k C(r/m, k)^{2n+1}, claimed 0 mod p^2 for
               every n = 1..m-1, for primes p == r (mod 2m), r >= -m.

    Each record carries the claimed-modulus residual plus an 'easy layer'
    companion record for the same sum mod p. Primes p | m or p <= r are
    skipped, never recorded.
    """
    if part not in ("i", "ii"):
        raise ValueError("part must be 'i' or 'ii'")
    if m < 2:
        raise ValueError("m must be >= 2")
    if part == "i":
        if m == 2:
            raise ValueError("part i requires m > 2")
        if (m - r) % 2 == 0:
            raise ValueError("part i requires m and r of opposite parity")
        if 2 * r < -(m + 1):
            raise ValueError(f"r = {r} below the boundary -m/2 for m = {m}")
    elif r < -m:
        raise ValueError(f"part ii requires r >= -m, got r = {r}")
    records: list[ScanRecord] = []
    x = Fraction(r, m)
    for p in prime_range(3, prime_bound):
        if m % p == 0 or p <= r:
            continue
        if part == "i":
            if p % m != r % m:
                continue
            required = 3
            precision = required + guard
            mod = p**precision
            total = 0
            sign_flip = m % 2 == 1
            for k, e, u in rational_binom_units(x, p, precision, p - 1):
                if e is None:
                    continue
                shift = e * m
                if shift >= precision:
                    continue
                term = pow(u, m, mod) * p**shift % mod
                if sign_flip and k % 2 == 1:
                    term = -term
                total = (total + term) % mod
            records.extend(_conj12_records(
                part, p, m, r, None, total, required, precision, hypothesis))
        else:
            if p % (2 * m) != r % (2 * m):
                continue
            required = 2
            precision = required + guard
            mod = p**precision
            units = list(rational_binom_units(x, p, precision, p - 1))
            for n in range(1, m):
                t = 2 * n + 1
                total = 0
                for k, e, u in units:
                    if e is None:
                        continue
                    shift = e * t
                    if shift >= precision:
                        continue
                    term = pow(u, t, mod) * p**shift % mod
                    if k % 2 == 1:
                        term = -term
                    total = (total + term) % mod
                records.extend(_conj12_records(
                    part, p, m, r, n, total, required, precision, hypothesis))
    return records


def _conj12_records(part, p, m, r, n, total, required, precision, hypothesis):
    params = {"p": p, "m": m, "r": r}
    if n is not None:
        params["n"] = n
    if total == 0:
        observed = Valuation.at_least(precision)
    else:
        observed = Valuation.exact(int_valuation(total, p))
    target = TARGET_CONJ1_2_I if part == "i" else TARGET_CONJ1_2_II
    main = ScanRecord(
        target=target,
        params=params,
        required=required,
        observed=observed,
        verdict=HOLDS if observed.meets(required) else VIOLATED,
        meta={"working_precision": precision, "hypothesis": hypothesis, "layer": "full"},
    )
    easy_val = total % p
    easy_obs = Valuation.at_least(1) if easy_val == 0 else Valuation.exact(0)
    easy = ScanRecord(
        target=target,
        params=params,
        required=1,
        observed=easy_obs,
        verdict=HOLDS if easy_obs.meets(1) else VIOLATED,
        meta={"working_precision": 1, "hypothesis": hypothesis, "layer": "easy"},
    )
    return [main, easy]


def scan_conj_1_2_all(
    part: str, m_values=range(2, 9), prime_bound: int = 1000, guard: int = 2
) -> list[ScanRecord]:
    """All admissible (m, r) pairs for one part, boundary readings labeled."""
    records: list[ScanRecord] = []
    for m in m_values:
        if part == "i" and m <= 2:
            continue
        pairs = admissible_r_part_i(m) if part == "i" else admissible_r_part_ii(m)
        for r, hypothesis in pairs:
            records.extend(scan_conj_1_2(part, m, r, prime_bound, guard, hypothesis))
    return records


# ---------------------------------------------------------------------------
# Composite-counterexample search
# ---------------------------------------------------------------------------

EXACT_RESIDUAL_DIGIT_CAP = 2000


def _composite_family_data(n: int, family: str) -> tuple[int, int, int, int]:
    """(numerator R, denominator M, exponent E, required factor) of the shape
    sum_{k<n} C(R/M, k)^E compared against modulus n^required_factor."""
    if family == FAMILY_PLUS:
        return -1, n + 1, n + 1, 5
    if family == FAMILY_MINUS:
        return 1, n - 1, n - 1, 4
    raise ValueError(f"unknown family {family!r}")


def composite_partial_sum(n: int, family: str) -> tuple[int, int, dict[int, int]]:
    """The full sum as (numerator, common denominator, denominator factorization
    restricted to primes dividing n).

    All terms share the denominator (M^(n-1) (n-1)!)^E, so the sum is a
    single integer numerator over it; gcd(M, n) = 1 always, hence the
    denominator's q-valuation for q | n is E * nu_q((n-1)!).
    """
    r, mdenom, exponent, _ = _composite_family_data(n, family)
    fact = [factorial(j) for j in range(n)]
    num_total = 0
    nk = 1  # product of the factor numerators r + mdenom*(1 - j)
    for k in range(n):
        if k > 0:
            nk *= r - mdenom * (k - 1)
        scaled = nk * mdenom ** (n - 1 - k) * (fact[n - 1] // fact[k])
        num_total += scaled**exponent
    den = (mdenom ** (n - 1) * fact[n - 1]) ** exponent
    den_vals = {}
    for q in factorize(n):
        den_vals[q] = exponent * _factorial_valuation(n - 1, q)
    return num_total, den, den_vals


def _factorial_valuation(n: int, p: int) -> int:
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def classify_composite(n: int, family: str) -> ScanRecord:
    """Classify one n: the congruence 'holds at n' iff the exact sum has a
    denominator coprime to n and nu_q(sum) >= required * a for every prime
    power q^a || n. A shared factor between denominator and n makes the
    congruence undefined rather than violated."""
    _, _, _, required_factor = _composite_family_data(n, family)
    num, den, den_vals = composite_partial_sum(n, family)
    factors = factorize(n)
    per_q = {}
    defined = True
    verdict = HOLDS
    binding_q = None
    min_margin = None
    for q, a in sorted(factors.items()):
        nu_num = int_valuation(num, q) if num != 0 else None
        nu_den = den_vals[q]
        nu_sum = None if nu_num is None else nu_num - nu_den
        required = required_factor * a
        per_q[q] = {"exponent": a, "valuation": nu_sum, "required": required}
        if nu_sum is not None and nu_sum < 0:
            defined = False
        margin = None if nu_sum is None else nu_sum - required
        if margin is not None and (min_margin is None or margin < min_margin):
            min_margin = margin
            binding_q = q
        if nu_sum is not None and nu_sum < required:
            verdict = VIOLATED
    if not defined:
        verdict = UNDEFINED
    if num == 0:
        # exactly zero sum satisfies any valuation bound
        verdict = HOLDS
        observed = None
    elif binding_q is None:
        observed = None
    else:
        observed = Valuation.exact(per_q[binding_q]["valuation"])
    meta = {
        "family": family,
        "factors": factors,
        "per_prime": per_q,
        "is_prime": is_prime(n),
        "numerator_bits": num.bit_length(),
        "denominator_bits": den.bit_length(),
    }
    # reduce only when small enough to be worth printing (gcd on huge
    # numerators is the one expensive step here)
    if num.bit_length() + den.bit_length() <= 4 * EXACT_RESIDUAL_DIGIT_CAP:
        residual = Fraction(num, den)
        if (len(str(residual.numerator)) + len(str(residual.denominator))
                <= EXACT_RESIDUAL_DIGIT_CAP):
            meta["residual"] = f"{residual.numerator}/{residual.denominator}"
    req = (required_factor * per_q[binding_q]["exponent"]) if binding_q else required_factor
    return ScanRecord(
        target=TARGET_COMPOSITES,
        params={"n": n, "family": family},
        required=req,
        observed=observed,
        verdict=verdict,
        meta=meta,
    )


def search_composites(
    lo: int = 4, hi: int = 120, families=(FAMILY_PLUS, FAMILY_MINUS)
) -> list[ScanRecord]:
    """Classify every n in [lo, hi]; primes ride along as controls.

    The reportable anomaly is a composite n with verdict Holds (none are
    conjectured to exist); a prime > 3 with any other verdict would indicate
    an engine defect, since those are proved cases.
    """
    records = []
    for n in range(lo, hi + 1):
        for family in families:
            if family == FAMILY_MINUS and n <= 2:
                continue
            records.append(classify_composite(n, family))
    return records


def composite_anomalies(records: list[ScanRecord]) -> list[ScanRecord]:
    """Records contradicting the expected picture (see search_composites)."""
    out = []
    for rec in records:
        if rec.target != TARGET_COMPOSITES:
            continue
        n = rec.params["n"]
        if rec.meta.get("is_prime"):
            if n > 3 and rec.verdict != HOLDS:
                out.append(rec)
        elif rec.verdict == HOLDS:
            out.append(rec)
    return out
