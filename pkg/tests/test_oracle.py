"""Brute-force cross checks: group enumeration, partial sums, prime scans."""

from fractions import Fraction

import pytest

from kummerconst.engine import builtin_family, evaluate_constant
from kummerconst.errors import DomainError, FamilyError, ResourceLimit
from kummerconst.kummer import decompose
from kummerconst.oracle import (
    GroupElement,
    enumerate_A,
    group_identity,
    group_inverse,
    group_mul,
    partial_sum,
    prime_scan,
    residual_index,
    serre_partial_sum,
    verify_group,
)
from kummerconst.serre import serre_constant

MU = builtin_family("moebius")
ONE = builtin_family("one")


def test_enumerate_twisted_base():
    # a = -4 = -(2^2): the twist ties the character of d to the translation b
    els = enumerate_A(decompose(-4), 2, 2)
    assert sorted((e.b, e.d) for e in els) == [(0, 1), (1, 3), (2, 1), (3, 3)]


def test_enumerate_untwisted_base_is_full_group():
    els = enumerate_A(decompose(2), 2, 2)
    assert len(els) == 8
    assert sorted((e.b, e.d) for e in els) == [
        (b, d) for b in range(4) for d in (1, 3)
    ]


def test_group_law():
    x = GroupElement(1, 3, 8)
    y = GroupElement(2, 5, 8)
    assert group_mul(x, y) == GroupElement(7, 7, 8)
    assert group_mul(x, group_inverse(x)) == group_identity(8)
    with pytest.raises(DomainError):
        group_mul(x, GroupElement(0, 1, 4))


def test_verify_group_report_fields():
    rep = verify_group(decompose(-4), 2, 2)
    assert rep.size == rep.expected_size == 4
    assert rep.closure_mode == "exhaustive"
    assert rep.reduction_checked
    assert rep.fiber_size == 2


def test_verify_group_sampled_mode():
    # 5^7 * 4 elements: far beyond the default exhaustive cutoff
    rep = verify_group(decompose(2), 5, 4)
    assert rep.size == rep.expected_size == 312500
    assert rep.closure_mode.startswith("sampled:")


def test_enumerate_resource_limit():
    with pytest.raises(ResourceLimit):
        enumerate_A(decompose(2), 2, 17)


def test_residual_index():
    # 2 has order 3 mod 7, so the index is (7-1)/3 = 2
    assert residual_index(2, 7) == 2
    assert residual_index(2, 31) == 6
    assert residual_index(2, 3) == 1
    with pytest.raises(DomainError):
        residual_index(2, 2)


def naive_scan(a: int, x: int):
    """Trial-division recomputation of all three scan weights."""
    from kummerconst.arith import factorize, multiplicative_order

    totals = {"primitive": Fraction(0), "inverse-index": Fraction(0), "divisor-count": Fraction(0)}
    scanned = 0
    for p in range(3, x + 1):
        if any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            continue
        if a % p == 0:
            continue
        scanned += 1
        idx = (p - 1) // multiplicative_order(a, p)
        totals["primitive"] += 1 if idx == 1 else 0
        totals["inverse-index"] += Fraction(1, idx)
        tau = 1
        for _, k in factorize(idx).factors:
            tau *= k + 1
        totals["divisor-count"] += tau
    return scanned, totals


@pytest.mark.parametrize("a", [2, -3, 5])
def test_prime_scan_matches_naive(a):
    scanned, totals = naive_scan(a, 200)
    for weight in ("primitive", "inverse-index", "divisor-count"):
        res = prime_scan(a, 200, weight=weight)
        assert res.scanned == scanned
        assert res.total == totals[weight], (a, weight)
        assert res.li.lo > 0
        assert res.ratio.contains(res.total / res.li.midpoint) or res.ratio.overlaps(
            type(res.ratio)(res.total / res.li.hi, res.total / res.li.lo)
        )


def test_prime_scan_rejects():
    with pytest.raises(DomainError):
        prime_scan(2, 200, weight="nope")
    with pytest.raises(DomainError):
        prime_scan(1, 200)
    with pytest.raises(DomainError):
        prime_scan(2, 2)


def test_partial_sum_tracks_engine():
    ps = partial_sum(MU, 2, 2000)
    res = evaluate_constant(MU, decompose(2), target_error=Fraction(1, 10**4))
    assert ps.enclosure().overlaps(res.value)
    assert ps.tail > 0
    # more terms shrink the stated tail bound
    assert partial_sum(MU, 2, 8000).tail < ps.tail


def test_partial_sum_square_base_straddles_zero():
    # truncations of the vanishing case are small but not exactly zero
    ps = partial_sum(MU, 36, 1000)
    assert abs(ps.value) < Fraction(1, 10**4)
    assert ps.enclosure().contains(Fraction(0))


def test_partial_sum_rejects_tiny_N():
    with pytest.raises(DomainError):
        partial_sum(MU, 2, 4)


def test_partial_sum_needs_decaying_family():
    from kummerconst.engine import GFamily, GrowthBound

    fat = GFamily("fat", lambda p, k: Fraction(p), GrowthBound(Fraction(1), Fraction(1)))
    with pytest.raises(FamilyError):
        partial_sum(fat, 2, 100)


def test_serre_partial_sum_tracks_constant():
    for delta in (37, -432):
        ps = serre_partial_sum(MU, delta, 600)
        res = serre_constant(MU, delta, target_error=Fraction(1, 1000))
        assert ps.enclosure().overlaps(res.value), delta
