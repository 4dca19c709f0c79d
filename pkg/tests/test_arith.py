"""Number theory and interval layer, checked against naive reimplementations."""

from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummerconst.arith import (
    Enclosure,
    canonical_fraction,
    dyadic_bounds,
    enclosure_product,
    euler_phi,
    factorize,
    fraction_add,
    fraction_div,
    fraction_mul,
    fraction_product,
    fraction_sub,
    is_prime,
    log_integral,
    mobius,
    multiplicative_order,
    pow_bounds,
    primes_up_to,
    squarefree_kernel,
    unreduced_product,
)
from kummerconst.errors import DomainError, IntegrityError


def naive_is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def naive_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def naive_mobius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def naive_kernel(a: int) -> int:
    sign = -1 if a < 0 else 1
    a = abs(a)
    for d in range(isqrt(a), 0, -1):
        if a % (d * d) == 0:
            return sign * a // (d * d)
    return sign * a


rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=10**6
)


# ----------------------------------------------------------------------
# primes, factorization, multiplicative functions


def test_primes_up_to_small():
    assert list(primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert list(primes_up_to(1)) == []
    assert list(primes_up_to(2)) == [2]


def test_primes_up_to_against_naive():
    got = list(primes_up_to(2000))
    assert got == [n for n in range(2, 2001) if naive_is_prime(n)]


@given(st.integers(min_value=0, max_value=5000))
def test_is_prime_matches_naive(n):
    assert is_prime(n) == naive_is_prime(n)


def test_is_prime_large_strong_pseudoprime_candidates():
    # Carmichael numbers and near-prime composites
    for n in (561, 1105, 1729, 2465, 2821, 6601, 25326001, 3215031751):
        assert not is_prime(n)
    for n in (2**31 - 1, 10**9 + 7, 10**9 + 9):
        assert is_prime(n)


@given(st.integers(min_value=1, max_value=100000))
def test_factorize_reconstructs(n):
    fac = factorize(n)
    prod = 1
    for p, k in fac.factors:
        assert is_prime(p)
        assert k >= 1
        prod *= p**k
    assert prod == n
    assert [p for p, _ in fac.factors] == sorted({p for p, _ in fac.factors})


@given(st.integers(min_value=1, max_value=3000))
def test_euler_phi_matches_naive(n):
    assert euler_phi(n) == naive_phi(n)


@given(st.integers(min_value=1, max_value=2000))
def test_mobius_matches_naive(n):
    assert mobius(n) == naive_mobius(n)


@given(st.integers(min_value=2, max_value=3000).filter(lambda a: a not in (0,)))
def test_squarefree_kernel_matches_naive(a):
    assert squarefree_kernel(a) == naive_kernel(a)
    assert squarefree_kernel(-a) == naive_kernel(-a)


@given(st.integers(min_value=2, max_value=500), st.integers(min_value=2, max_value=500))
def test_multiplicative_order_definition(a, p):
    if not naive_is_prime(p) or a % p == 0:
        return
    d = multiplicative_order(a, p)
    assert pow(a, d, p) == 1
    assert all(pow(a, j, p) != 1 for j in range(1, d))
    assert (p - 1) % d == 0


def test_multiplicative_order_rejects_bad_input():
    with pytest.raises(DomainError):
        multiplicative_order(2, 10)
    with pytest.raises(DomainError):
        multiplicative_order(14, 7)


# ----------------------------------------------------------------------
# reduced-fraction fast paths


@given(rationals, rationals)
def test_fraction_ops_match_stdlib(x, y):
    assert fraction_add(x, y) == x + y
    assert fraction_sub(x, y) == x - y
    assert fraction_mul(x, y) == x * y
    if y != 0:
        assert fraction_div(x, y) == x / y


@given(rationals, rationals)
def test_fraction_ops_return_normalized(x, y):
    for out in (fraction_mul(x, y),) + ((fraction_div(x, y),) if y else ()):
        assert out.denominator > 0
        assert gcd(out.numerator, out.denominator) == 1


def test_fraction_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        fraction_div(Fraction(1), Fraction(0))


@given(st.lists(rationals.filter(lambda q: q != 0), max_size=30))
def test_fraction_product_matches_loop(qs):
    expected = Fraction(1)
    for q in qs:
        expected *= q
    assert fraction_product(qs) == expected


@given(
    st.lists(
        st.tuples(
            st.integers(min_value=-10**6, max_value=10**6),
            st.integers(min_value=1, max_value=10**6),
        ),
        max_size=30,
    )
)
def test_unreduced_product_matches_fraction_product(pairs):
    n, d = unreduced_product(pairs)
    expected = Fraction(1)
    for a, b in pairs:
        expected *= Fraction(a, b)
    assert Fraction(int(n), int(d)) == expected
    assert canonical_fraction(n, d) == expected


@given(
    st.integers(min_value=-10**30, max_value=10**30),
    st.integers(min_value=1, max_value=10**30),
)
def test_dyadic_bounds_contains_value(n, d):
    enc = dyadic_bounds(n, d, bits=64)
    v = Fraction(n, d)
    assert enc.lo <= v <= enc.hi
    assert enc.width <= Fraction(abs(n) + d, d) / Fraction(2**60)


def test_dyadic_bounds_exact_for_dyadics():
    assert dyadic_bounds(3, 4).width == 0
    assert dyadic_bounds(-7, 8).lo == Fraction(-7, 8)
    with pytest.raises(ZeroDivisionError):
        dyadic_bounds(1, 0)


@given(
    st.integers(min_value=2, max_value=10**6),
    st.fractions(min_value=Fraction(-6), max_value=Fraction(6), max_denominator=8),
)
def test_pow_bounds_bracket(base, expo):
    lo, hi = pow_bounds(base, expo)
    assert 0 < lo <= hi
    # exact cross-check: lo^v <= base^u <= hi^v without leaving the rationals
    u, v = expo.numerator, expo.denominator
    if u >= 0:
        assert lo**v <= Fraction(base) ** u <= hi**v
    else:
        assert lo**v <= Fraction(1, base) ** (-u) <= hi**v
    assert hi - lo <= hi / Fraction(1 << 20)


def test_pow_bounds_integer_exponents_exact():
    lo, hi = pow_bounds(7, Fraction(3))
    assert lo == hi == 343
    lo, hi = pow_bounds(10, Fraction(-2))
    assert lo == hi == Fraction(1, 100)
    with pytest.raises(DomainError):
        pow_bounds(1, Fraction(1, 2))


# ----------------------------------------------------------------------
# enclosures


def test_enclosure_rejects_inverted():
    with pytest.raises(IntegrityError):
        Enclosure(Fraction(1), Fraction(0))


@given(rationals, rationals, rationals, rationals)
def test_enclosure_mul_contains_products(a, b, c, d):
    A = Enclosure(min(a, b), max(a, b))
    B = Enclosure(min(c, d), max(c, d))
    P = A * B
    for x in (A.lo, A.hi, A.midpoint):
        for y in (B.lo, B.hi, B.midpoint):
            assert P.lo <= x * y <= P.hi


@given(rationals, rationals, rationals, rationals)
def test_enclosure_div_contains_quotients(a, b, c, d):
    A = Enclosure(min(a, b), max(a, b))
    B = Enclosure(min(c, d), max(c, d))
    if B.lo <= 0 <= B.hi:
        with pytest.raises(DomainError):
            A / B
        return
    Q = A / B
    for x in (A.lo, A.hi):
        for y in (B.lo, B.hi):
            assert Q.lo <= x / y <= Q.hi


@given(rationals, rationals)
def test_enclosure_width_within_is_exact(a, b):
    A = Enclosure(min(a, b), max(a, b))
    for bound in (A.width, A.width * 2, A.width / 2 if A.width else Fraction(1)):
        assert A.width_within(bound) == (A.width <= bound)


@given(rationals, rationals)
def test_round_out_widens_outward(a, b):
    A = Enclosure(min(a, b), max(a, b))
    R = A.round_out(24)
    assert R.lo <= A.lo and A.hi <= R.hi
    assert R.width <= A.width + Fraction(2, 1 << 24)


def test_enclosure_contains_and_overlaps():
    A = Enclosure(Fraction(1, 3), Fraction(1, 2))
    assert A.contains(Fraction(2, 5))
    assert not A.contains(Fraction(3, 5))
    assert A.overlaps(Enclosure(Fraction(1, 2), Fraction(1)))
    assert not A.overlaps(Enclosure(Fraction(3, 5), Fraction(1)))


def test_enclosure_product_mixes_scalars():
    got = enclosure_product([Fraction(2, 3), Enclosure(Fraction(1), Fraction(2)), 3])
    assert got.lo == 2 and got.hi == 4


def test_decimal_str():
    assert Enclosure.point(Fraction(1, 4)).decimal_str(4) == "0.2500"
    e = Enclosure(Fraction("2.2038565964"), Fraction("2.2038565965"))
    assert e.decimal_str().startswith("2.203856596")
    assert e.decimal_str().endswith("...")


# ----------------------------------------------------------------------
# logarithmic integral from 2


def test_log_integral_frozen_values():
    # mpmath oracle: mp.dps=30; li(x) - li(2)
    li6 = log_integral(10**6, Fraction(1, 10**9))
    assert li6.contains(Fraction("78626.503995682064427"))
    assert li6.width <= Fraction(1, 10**9)
    li2 = log_integral(100, Fraction(1, 10**9))
    assert li2.contains(Fraction("29.080977803962137141"))


def test_log_integral_edges():
    assert log_integral(2).width == 0 and log_integral(2).lo == 0
    with pytest.raises(DomainError):
        log_integral(1)
    with pytest.raises(DomainError):
        log_integral(10, Fraction(0))


@settings(max_examples=20)
@given(st.integers(min_value=3, max_value=10**7))
def test_log_integral_monotone_and_tight(x):
    a = log_integral(x, Fraction(1, 10**6))
    b = log_integral(2 * x, Fraction(1, 10**6))
    assert a.width <= Fraction(1, 10**6)
    assert b.lo > a.hi - Fraction(1, 10**5)  # integrand positive
