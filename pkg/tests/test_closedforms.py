"""Closed-form constants: universal, divisor-weighted, and the Artin chain."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummerconst.arith import factorize
from kummerconst.closedforms import (
    a_sf,
    artin_A,
    artin_delta,
    artin_E,
    artin_E_product_form,
    titchmarsh_closed,
    universal_constant,
)
from kummerconst.engine import builtin_family, correction_factor
from kummerconst.errors import DomainError, PrecisionNotReached
from kummerconst.kummer import Case, decompose

# 30+ digit reference values, computed independently from prime-zeta series
# (mpmath, dps=40) before this module existed
U_STR = "2.20385659643785978787282831647979"
A_STR = "0.3739558136192022880547280543464164151122"
C2_STR = "2.25895301134880628256964902439"  # (41/40) * universal
CM4_STR = "2.86501357536921772423661350276"  # value at a = -4


def within(enc, digits: str, slack: Fraction = Fraction(1, 10**25)) -> bool:
    v = Fraction(digits)
    return enc.lo <= v + slack and v - slack <= enc.hi


def test_universal_constant_tight():
    enc = universal_constant(Fraction(1, 10**6))
    assert enc.width_within(Fraction(1, 10**6))
    assert within(enc, U_STR)


def test_universal_constant_loose_still_contains():
    enc = universal_constant(Fraction(1, 100))
    assert within(enc, U_STR)
    assert enc.width_within(Fraction(1, 100))


def test_universal_unreachable_target():
    with pytest.raises(PrecisionNotReached) as info:
        universal_constant(Fraction(1, 10**9), P_max=10**5)
    assert info.value.result is not None
    assert within(info.value.result, U_STR)


def test_titchmarsh_base_two():
    for a in (2, -2):
        res = titchmarsh_closed(a, Fraction(1, 10**6))
        assert res.correction == Fraction(41, 40)
        assert res.value.width_within(Fraction(1, 10**6))
        assert within(res.value, C2_STR)
    assert titchmarsh_closed(2, Fraction(1, 10**4)).case is Case.ODD_EXPONENT


def test_titchmarsh_twisted():
    res = titchmarsh_closed(-4, Fraction(1, 10**6))
    assert res.correction == Fraction(13, 11)
    assert res.case is Case.TWISTED
    assert within(res.value, CM4_STR)


def test_titchmarsh_odd_discriminant():
    res = titchmarsh_closed(5, Fraction(1, 10**6))
    assert res.correction == Fraction(103, 101)
    # e = 1: the base product is the universal constant itself
    lo = Fraction(U_STR) - Fraction(1, 10**25)
    hi = Fraction(U_STR) + Fraction(1, 10**25)
    assert res.value.overlaps(
        type(res.value)(lo * Fraction(103, 101), hi * Fraction(103, 101) + Fraction(1, 10**6))
    )


def test_titchmarsh_corrections_by_hand():
    assert titchmarsh_closed(8, Fraction(1, 100)).correction == Fraction(41, 40)
    assert titchmarsh_closed(36, Fraction(1, 100)).correction == Fraction(535, 532)


def test_titchmarsh_matches_engine_correction():
    one = builtin_family("one")
    for a in (2, -2, 3, 5, -5, 8, -8, 36, -4, -9):
        assert titchmarsh_closed(a, Fraction(1, 100)).correction == correction_factor(
            one, decompose(a)
        ), a


def test_titchmarsh_bad_inputs():
    with pytest.raises(DomainError):
        titchmarsh_closed(2, Fraction(0))
    with pytest.raises(DomainError):
        titchmarsh_closed(2**101, P_max=50)  # exponent prime 101 above the cutoff
    with pytest.raises(PrecisionNotReached):
        titchmarsh_closed(2, Fraction(1, 10**9), P_max=10**5)


# ----------------------------------------------------------------------
# Artin chain


def test_a_sf():
    assert a_sf(8) == 2
    assert a_sf(-8) == -2
    assert a_sf(45) == 5
    assert a_sf(-4) == -1
    with pytest.raises(DomainError):
        a_sf(0)


def test_artin_A_base_two():
    enc = artin_A(2, Fraction(1, 10**6))
    assert enc.width_within(Fraction(1, 10**6))
    assert within(enc, A_STR)


def test_artin_A_odd_h_rescales():
    # h = 3 swaps the factor at p = 3: (1 - 1/2) / (1 - 1/6) = 3/5
    enc = artin_A(8, Fraction(1, 10**6))
    assert within(enc, str(Fraction(A_STR) * Fraction(3, 5)))


def test_artin_A_even_h_is_zero():
    for a in (16, 36, 64):
        enc = artin_A(a)
        assert enc.lo == enc.hi == 0


def test_artin_E_values():
    assert artin_E(5) == Fraction(20, 19)
    assert artin_E(-3) == Fraction(6, 5)
    assert artin_E(21) == Fraction(204, 205)
    assert artin_E(-7) == Fraction(42, 41)
    with pytest.raises(DomainError):
        artin_E(2)


@settings(max_examples=120)
@given(st.integers(min_value=-199, max_value=199))
def test_artin_E_product_form_agrees(a):
    if a % 4 != 1 or a == 1:
        return
    if any(k > 1 for _, k in factorize(abs(a)).factors):
        return
    assert artin_E_product_form(a) == artin_E(a)


def test_artin_E_product_form_domain():
    with pytest.raises(DomainError):
        artin_E_product_form(3)
    with pytest.raises(DomainError):
        artin_E_product_form(9)  # kernel 1: no quadratic field


def test_artin_delta_combines():
    d5 = artin_delta(5, Fraction(1, 10**6))
    assert within(d5, str(Fraction(A_STR) * Fraction(20, 19)))
    assert d5.width_within(Fraction(1, 10**6))
    d2 = artin_delta(2, Fraction(1, 10**6))
    assert within(d2, A_STR)
    assert artin_delta(36).lo == artin_delta(36).hi == 0
