import pytest

from primecong.primes import (
    factorize,
    int_valuation,
    is_prime,
    legendre_factorial_valuation,
    prime_range,
    primes_up_to,
    split_p_part,
)


def trial_division(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def test_agrees_with_trial_division_small():
    for n in range(10_000):
        assert is_prime(n) == trial_division(n), n


@pytest.mark.parametrize("n, factors", [
    (3215031751, (151, 751, 28351)),           # strong pseudoprime to 2,3,5,7
    (3825123056546413051, (149491, 747451, 34233211)),  # spsp to first 9 primes
])
def test_known_strong_pseudoprimes(n, factors):
    prod = 1
    for f in factors:
        prod *= f
    assert prod == n  # the exhibited factorization proves compositeness
    assert not is_prime(n)


@pytest.mark.parametrize("n", [2_147_483_647, 2_305_843_009_213_693_951])
def test_known_mersenne_primes(n):
    assert is_prime(n)


def test_rejects_out_of_range():
    with pytest.raises(ValueError):
        is_prime(1 << 64)
    with pytest.raises(ValueError):
        is_prime(-7)


def test_sieve_matches_point_tests():
    ps = primes_up_to(2000)
    assert ps == [n for n in range(2001) if is_prime(n)]
    assert prime_range(5, 30) == [5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []


def test_valuations():
    assert int_valuation(250, 5) == 3
    assert int_valuation(7, 5) == 0
    assert split_p_part(-50, 5) == (2, -2)
    with pytest.raises(ValueError):
        int_valuation(0, 3)


def test_factorize():
    assert factorize(1) == {}
    assert factorize(120) == {2: 3, 3: 1, 5: 1}
    assert factorize(97) == {97: 1}


def test_legendre():
    # independent oracle: direct valuation of the factorial
    from math import factorial

    for n in (0, 1, 5, 26, 100):
        for p in (2, 3, 5, 7):
            expected = int_valuation(factorial(n), p) if n > 1 else 0
            assert legendre_factorial_valuation(n, p) == expected
