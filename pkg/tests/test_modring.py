from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primecong.modring import (
    DenominatorNotCoprime,
    ModulusMismatch,
    NotDivisible,
    NotInvertible,
    PrecisionExhausted,
    PrimePowerModulus,
    Residue,
    Valuation,
    exact_div_by_p,
    from_rational,
    inverse_table,
    rational_valuation,
    valuation_of,
)


def egcd_inverse(a: int, m: int) -> int:
    """Extended-gcd oracle, independent of pow(a, -1, m)."""
    old_r, r = a % m, m
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    assert old_r == 1, "not invertible"
    return old_s % m


M32 = PrimePowerModulus(2, 5)
M125 = PrimePowerModulus(5, 3)


def test_modulus_construction():
    m = PrimePowerModulus(7, 4)
    assert m.modulus == 2401
    with pytest.raises(ValueError):
        PrimePowerModulus(6, 2)
    with pytest.raises(ValueError):
        PrimePowerModulus(5, 0)


def test_ring_ops_examples():
    assert (M32.residue(3) + M32.residue(30)).value == 1  # 33 mod 32
    assert (M32.residue(11) * M32.residue(3)).value == 1  # 33 = 1 mod 32
    x = PrimePowerModulus(7, 3).residue(123)
    one = PrimePowerModulus(7, 3).residue(1)
    assert (x * one) == x


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        M32.residue(1) + M125.residue(1)


def test_inverse_examples():
    assert M32.residue(3).inverse().value == 11
    assert M125.residue(7).inverse().value == 18
    with pytest.raises(NotInvertible):
        PrimePowerModulus(5, 2).residue(5).inverse()


def test_from_rational_examples():
    # oracle: 6 * 521 = 3126 == 1 (mod 3125), so -1/6 -> 3125 - 521 = 2604
    m = PrimePowerModulus(5, 5)
    assert egcd_inverse(6, 3125) == 521
    assert from_rational(Fraction(-1, 6), m).value == 3125 - 521
    assert from_rational(Fraction(0, 1), m).value == 0
    with pytest.raises(DenominatorNotCoprime):
        from_rational(Fraction(1, 5), PrimePowerModulus(5, 2))


def test_pow_examples():
    m7 = PrimePowerModulus(7, 4)
    assert (m7.residue(123) ** 0).value == 1
    m3 = PrimePowerModulus(3, 7)
    assert (m3.residue(2) ** 10).value == 1024  # 1024 < 2187
    # (-1/6)^6 against the exact-rational oracle
    m = PrimePowerModulus(5, 6)
    lhs = from_rational(Fraction(-1, 6), m) ** 6
    assert lhs == from_rational(Fraction(1, 6**6), m)
    with pytest.raises(ValueError):
        m.residue(2) ** -1


def test_exact_div_examples():
    m = PrimePowerModulus(5, 4)
    out = exact_div_by_p(m.residue(50), 2)
    assert out.value == 2 and out.modulus.c == 2
    with pytest.raises(NotDivisible):
        exact_div_by_p(m.residue(3), 1)
    with pytest.raises(PrecisionExhausted):
        exact_div_by_p(m.residue(125), 4)
    # H_6 = 49/20 mod 7^4, divided by 7, equals the exact rational H_6/7 mod 7^3
    h6 = sum((Fraction(1, k) for k in range(1, 7)), Fraction(0))
    m7 = PrimePowerModulus(7, 4)
    got = exact_div_by_p(from_rational(h6, m7), 1)
    assert got == from_rational(h6 / 7, PrimePowerModulus(7, 3))


def test_valuation_examples():
    m = PrimePowerModulus(5, 6)
    assert valuation_of(m.residue(250)) == Valuation.exact(3)
    assert valuation_of(m.residue(0)) == Valuation.at_least(6)
    assert valuation_of(m.residue(7)) == Valuation.exact(0)
    assert Valuation.at_least(6).meets(5) and not Valuation.exact(4).meets(5)


def test_rational_valuation_examples():
    assert rational_valuation(Fraction(25, 12), 5) == 2
    assert rational_valuation(Fraction(25, 12), 2) == -2
    assert rational_valuation(Fraction(77, 12), 7) == 1
    assert rational_valuation(0, 7) == float("inf")


def test_inverse_table_matches_pointwise():
    m = PrimePowerModulus(97, 3)
    table = inverse_table(96, m)
    for k in (1, 2, 50, 96):
        assert table[k] == egcd_inverse(k, m.modulus)
    with pytest.raises(DenominatorNotCoprime):
        inverse_table(97, m)


# -- property tests ----------------------------------------------------------

units = st.integers(min_value=0, max_value=7**4 - 1).filter(lambda v: v % 7 != 0)
values = st.integers(min_value=0, max_value=7**4 - 1)
M7 = PrimePowerModulus(7, 4)

rationals = st.builds(
    Fraction,
    st.integers(min_value=-500, max_value=500),
    st.integers(min_value=1, max_value=500).filter(lambda d: d % 7 != 0),
)


@given(units)
def test_inverse_roundtrip(v):
    a = M7.residue(v)
    assert (a * a.inverse()).value == 1


@given(rationals, rationals)
@settings(max_examples=60)
def test_from_rational_is_homomorphism(q1, q2):
    add = from_rational(q1, M7) + from_rational(q2, M7)
    assert add == from_rational(q1 + q2, M7)
    mul = from_rational(q1, M7) * from_rational(q2, M7)
    assert mul == from_rational(q1 * q2, M7)


@given(values, st.integers(min_value=0, max_value=40), st.integers(min_value=0, max_value=40))
@settings(max_examples=60)
def test_pow_is_additive_in_exponent(v, e1, e2):
    a = M7.residue(v)
    assert a ** (e1 + e2) == (a**e1) * (a**e2)


@given(st.integers(min_value=0, max_value=7**2 - 1), st.integers(min_value=1, max_value=2))
def test_exact_div_roundtrip(v, drop):
    small = PrimePowerModulus(7, 4 - drop)
    a = M7.residue(v * 7**drop)
    assert exact_div_by_p(a, drop).value == v % small.modulus


@given(st.integers(min_value=1, max_value=10**6))
def test_valuation_agrees_with_rational_valuation(n):
    m = PrimePowerModulus(7, 12)  # 7^12 > 10^6: valuations are exact
    assert valuation_of(m.residue(n)).amount == rational_valuation(Fraction(n), 7)
