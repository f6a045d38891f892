from fractions import Fraction
from math import comb

import pytest

from primecong.bernoulli import (
    BernoulliCache,
    CacheBoundExceeded,
    IrregularCache,
    IrregularReduction,
    bernoulli_exact,
    bernoulli_mod,
    load_cache,
    save_cache,
    vsc_denominator,
)


def test_base_values():
    assert bernoulli_exact(0) == 1
    assert bernoulli_exact(1) == Fraction(-1, 2)
    assert bernoulli_exact(2) == Fraction(1, 6)
    assert bernoulli_exact(4) == Fraction(-1, 30)
    assert bernoulli_exact(12) == Fraction(-691, 2730)
    assert bernoulli_exact(7) == 0


def test_defining_recurrence_holds():
    # the recurrence itself, rechecked directly on cache output
    for n in range(1, 40):
        total = sum(comb(n + 1, k) * bernoulli_exact(k) for k in range(n + 1))
        assert total == 0, n


def test_vsc_examples():
    assert vsc_denominator(2) == 6
    assert vsc_denominator(4) == 30
    assert vsc_denominator(12) == 2730
    with pytest.raises(ValueError):
        vsc_denominator(3)


def test_denominators_match_vsc():
    for n in range(2, 121, 2):
        assert bernoulli_exact(n).denominator == vsc_denominator(n), n


def test_mod_examples():
    assert bernoulli_mod(2, 5, 1).value == 1  # 1/6 == 1 (mod 5)
    # extended-gcd oracle for -1/30 mod 49: 30*18 = 540 == 1 (mod 49)
    assert (30 * 18) % 49 == 1
    assert bernoulli_mod(4, 7, 2).value == (-18) % 49
    with pytest.raises(IrregularReduction):
        bernoulli_mod(4, 5, 1)  # (5-1) | 4: 5 divides the denominator 30


def test_cache_bound():
    cache = BernoulliCache(bound=10)
    with pytest.raises(CacheBoundExceeded):
        cache.exact(12)


def test_persistence_roundtrip(tmp_path):
    path = tmp_path / "bern.txt"
    save_cache(str(path), 40)
    cache = load_cache(str(path))
    for n in range(41):
        assert cache.exact(n) == bernoulli_exact(n)


def test_corrupted_cache_rejected(tmp_path):
    path = tmp_path / "bern.txt"
    save_cache(str(path), 40)
    lines = path.read_text().splitlines()
    lines[12] = "12 -691 2731"  # denominator off by one
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(IrregularCache):
        load_cache(str(path))


def test_malformed_cache_rejected(tmp_path):
    path = tmp_path / "bern.txt"
    path.write_text("0 1 1\nnot a record\n")
    with pytest.raises(IrregularCache):
        load_cache(str(path))
    with pytest.raises(IrregularCache):
        load_cache(str(tmp_path / "missing.txt"))


def test_inverse_power_sum_consumer_crosscheck():
    # independent consumer check: for 5 < p <= 499 and s in {2, 4}, the
    # inverse power sum equals p*s/(s+1) * B_{p-1-s} modulo p^2
    from primecong.modring import PrimePowerModulus, from_rational
    from primecong.primes import prime_range
    from primecong.seqsums import inv_power_sum

    for p in prime_range(7, 499):
        m = PrimePowerModulus(p, 2)
        for s in (2, 4):
            lhs = inv_power_sum(s, m)
            rhs = from_rational(
                Fraction(p * s, s + 1) * bernoulli_exact(p - 1 - s), m)
            assert lhs == rhs, (p, s)
