"""Brute-force cross-checks for the structural claims.

Everything here recomputes quantities from first principles: the local groups
are enumerated element by element and their axioms checked, residual indices
are measured by scanning actual primes, and the target constants are
approximated by literally summing g(n)/deg(n) with a proven bound on what the
truncation discards.  None of it shares code paths with the closed forms it
is checking.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from gmpy2 import mpq

from .arith import Enclosure, factorize, log_integral, multiplicative_order, pow_bounds, primes_up_to
from .errors import DomainError, FamilyError, ResourceLimit, VerificationFailure
from .kummer import (
    EntanglementProfile,
    KummerDecomposition,
    card_A,
    decompose,
    entanglement_profile,
    kummer_degree,
)
from .engine import GFamily
from .serre import gl2_order, serre_profile

__all__ = [
    "GroupElement",
    "GroupReport",
    "PartialSum",
    "ScanResult",
    "enumerate_A",
    "group_identity",
    "group_inverse",
    "group_mul",
    "partial_sum",
    "prime_scan",
    "residual_index",
    "serre_partial_sum",
    "verify_group",
]

ENUM_MODULUS_BUDGET = 10**5
ENUM_SIZE_BUDGET = 2 * 10**6


@dataclass(frozen=True)
class GroupElement:
    """Pair (b, d) modulo p^k with law (b1,d1)*(b2,d2) = (b1 + d1 b2, d1 d2)."""

    b: int
    d: int
    modulus: int


def group_mul(x: GroupElement, y: GroupElement) -> GroupElement:
    if x.modulus != y.modulus:
        raise DomainError("elements live modulo different prime powers")
    m = x.modulus
    return GroupElement((x.b + x.d * y.b) % m, (x.d * y.d) % m, m)


def group_identity(modulus: int) -> GroupElement:
    return GroupElement(0, 1, modulus)


def group_inverse(x: GroupElement) -> GroupElement:
    dinv = pow(x.d, -1, x.modulus)
    return GroupElement((-x.b * dinv) % x.modulus, dinv % x.modulus, x.modulus)


def enumerate_A(
    dec: KummerDecomposition,
    p: int,
    k: int,
    *,
    modulus_budget: int = ENUM_MODULUS_BUDGET,
    size_budget: int = ENUM_SIZE_BUDGET,
) -> list[GroupElement]:
    """All (b, d) mod p^k satisfying the congruence constraint, d a unit.

    Untwisted: d = b + 1 mod p^min(k, v) where v is the exponent valuation;
    twisted at p = 2: d = 2b + 1 mod 2^min(k, v+1).  Listed by stepping d
    through its residue class, so the cost is proportional to the output.
    """
    if k < 1:
        raise DomainError("enumeration needs k >= 1")
    m = p**k
    if m > modulus_budget:
        raise ResourceLimit(f"modulus {p}^{k} exceeds the enumeration budget {modulus_budget}")
    nu = dec.nu_e(p)
    twisted_here = p == 2 and dec.twisted
    if card_A(dec, p, k) > size_budget:
        raise ResourceLimit(f"group of size {card_A(dec, p, k)} exceeds {size_budget}")
    out: list[GroupElement] = []
    if twisted_here:
        step = 2 ** min(k, nu + 1)
        for b in range(m):
            for d in range((2 * b + 1) % step, m, step):
                out.append(GroupElement(b, d, m))
    elif nu >= 1:
        step = p ** min(k, nu)
        for b in range(m):
            if (b + 1) % p == 0:
                continue
            for d in range((b + 1) % step, m, step):
                out.append(GroupElement(b, d, m))
    else:
        units = [d for d in range(1, m) if d % p != 0]
        for b in range(m):
            for d in units:
                out.append(GroupElement(b, d, m))
    return out


@dataclass(frozen=True)
class GroupReport:
    p: int
    k: int
    size: int
    expected_size: int
    closure_mode: str
    reduction_checked: bool
    fiber_size: int | None


def verify_group(
    dec: KummerDecomposition,
    p: int,
    k: int,
    *,
    exhaustive_limit: int = 1500,
    closure_samples: int = 20000,
) -> GroupReport:
    """Check the enumerated set is a group of the predicted size.

    Closure is exhaustive for small groups; above exhaustive_limit elements a
    fixed-seed sample of pairs is multiplied instead (deterministic run to
    run).  Raises VerificationFailure with a counterexample on any violation.
    """
    elems = enumerate_A(dec, p, k)
    m = p**k
    key = {(g.b, g.d) for g in elems}
    if len(key) != len(elems):
        raise VerificationFailure("enumeration produced duplicates")
    expected = card_A(dec, p, k)
    if len(elems) != expected:
        raise VerificationFailure(
            f"group size {len(elems)} != predicted {expected}",
            counterexample=(p, k, len(elems), expected),
        )
    if (0, 1) not in key:
        raise VerificationFailure("identity (0, 1) missing")
    for g in elems:
        inv = group_inverse(g)
        if (inv.b, inv.d) not in key:
            raise VerificationFailure("inverse escapes the set", counterexample=(g.b, g.d))
    if len(elems) <= exhaustive_limit:
        mode = "exhaustive"
        for x in elems:
            for y in elems:
                z = group_mul(x, y)
                if (z.b, z.d) not in key:
                    raise VerificationFailure(
                        "product escapes the set",
                        counterexample=((x.b, x.d), (y.b, y.d), (z.b, z.d)),
                    )
    else:
        mode = f"sampled:{closure_samples}"
        rng = random.Random(0x5EED)
        for _ in range(closure_samples):
            x = elems[rng.randrange(len(elems))]
            y = elems[rng.randrange(len(elems))]
            z = group_mul(x, y)
            if (z.b, z.d) not in key:
                raise VerificationFailure(
                    "product escapes the set",
                    counterexample=((x.b, x.d), (y.b, y.d), (z.b, z.d)),
                )
    reduction_checked = False
    fiber = None
    if k >= 2:
        reduction_checked = True
        small = {(g.b, g.d) for g in enumerate_A(dec, p, k - 1)}
        mm = p ** (k - 1)
        fibers = Counter((g.b % mm, g.d % mm) for g in elems)
        if set(fibers) != small:
            missing = small.symmetric_difference(fibers)
            raise VerificationFailure(
                "reduction image differs from the level below",
                counterexample=next(iter(missing)),
            )
        fiber = len(elems) // len(small)
        bad = [pt for pt, c in fibers.items() if c != fiber]
        if bad:
            raise VerificationFailure(
                f"reduction fibers are not uniform (expected {fiber})",
                counterexample=(bad[0], fibers[bad[0]]),
            )
    return GroupReport(p, k, len(elems), expected, mode, reduction_checked, fiber)


# ----------------------------------------------------------------------
# residual index statistics


def residual_index(a: int, p: int) -> int:
    """(p - 1) / ord_p(a): how far a falls short of generating mod p."""
    order = multiplicative_order(a, p)
    return (p - 1) // order


@dataclass(frozen=True)
class ScanResult:
    a: int
    x: int
    scanned: int
    excluded: int
    total: Fraction
    li: Enclosure
    ratio: Enclosure


def _divisor_count(i: int) -> Fraction:
    count = 1
    for _, k in factorize(i).factors:
        count *= k + 1
    return Fraction(count)


_WEIGHTS: dict[str, Callable[[int], Fraction]] = {
    "primitive": lambda i: Fraction(1) if i == 1 else Fraction(0),
    "inverse-index": lambda i: Fraction(1, i),
    "divisor-count": _divisor_count,
}


def prime_scan(
    a: int,
    x: int,
    weight: str | Callable[[int], Fraction] = "primitive",
    *,
    li_error=Fraction(1, 100),
) -> ScanResult:
    """Sum a weight of the residual index over primes p <= x, p not dividing 2a.

    The ratio against the logarithmic integral of x is the empirical density
    estimate that the closed-form constants predict asymptotically.
    """
    if x < 3:
        raise DomainError("scan needs x >= 3")
    if a in (0, 1, -1):
        raise DomainError("base must have |a| >= 2")
    if isinstance(weight, str):
        if weight not in _WEIGHTS:
            raise DomainError(f"unknown weight {weight!r}; choose from {sorted(_WEIGHTS)}")
        f = _WEIGHTS[weight]
    else:
        f = weight
    total = mpq(0)
    scanned = 0
    excluded = 0
    for p in primes_up_to(x):
        if (2 * a) % p == 0:
            excluded += 1
            continue
        scanned += 1
        w = f(residual_index(a, p))
        if w:
            total += mpq(w.numerator, w.denominator)
    li = log_integral(x, li_error)
    tot = Fraction(total)
    return ScanResult(a, x, scanned, excluded, tot, li, Enclosure.point(tot) / li)


# ----------------------------------------------------------------------
# direct partial sums of the defining series


@dataclass(frozen=True)
class PartialSum:
    """Exact head sum_{n <= N} g(n)/deg(n) and a proven bound on the tail."""

    N: int
    value: Fraction
    tail: Fraction

    def enclosure(self) -> Enclosure:
        return Enclosure(self.value - self.tail, self.value + self.tail)


def _smallest_factor_table(N: int) -> list[int]:
    spf = list(range(N + 1))
    i = 2
    while i * i <= N:
        if spf[i] == i:
            for j in range(i * i, N + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def _factored(n: int, spf: list[int]) -> list[tuple[int, int]]:
    out = []
    while n > 1:
        p = spf[n]
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        out.append((p, k))
    return out


def _growth_lambda(C: Fraction) -> Fraction:
    # C^omega(n) <= n^lambda with lambda >= log2(C); 2(C-1) >= log2(C) for C >= 1
    return 2 * (C - 1) if C > 1 else Fraction(0)


def _power_tail(N: int, eta: Fraction) -> Fraction:
    # sum_{n > N} n^eta <= integral_N^inf x^eta dx, needs eta < -1
    return pow_bounds(N, eta + 1)[1] / (-1 - eta)


def partial_sum(
    fam: GFamily,
    a: int,
    N: int,
    *,
    profile: EntanglementProfile | None = None,
) -> PartialSum:
    """Direct summation against radical-cyclotomic degrees for base a.

    Tail: deg(n) >= n*phi(n)/(2e) and phi(n) > sqrt(n) for n > 6, so the
    discarded terms are at most 2e * sum_{n > N} |g(n)| n^(-3/2).
    """
    if N < 8:
        raise DomainError("partial sums need N >= 8")
    dec = decompose(a)
    if profile is None:
        profile = entanglement_profile(dec)
    C, alpha = fam.growth.C, fam.growth.alpha
    eta = alpha + _growth_lambda(C) - Fraction(3, 2)
    if eta >= -1:
        raise FamilyError("growth bound too weak for a brute-force tail")
    spf = _smallest_factor_table(N)
    card_cache: dict[tuple[int, int], int] = {}
    total = mpq(0)
    for n in range(1, N + 1):
        fac = _factored(n, spf)
        g = Fraction(1)
        deg = 1
        for p, k in fac:
            g *= fam.g(p, k)
            if g == 0:
                break
            if (p, k) not in card_cache:
                card_cache[(p, k)] = card_A(dec, p, k)
            deg *= card_cache[(p, k)]
        if g == 0:
            continue
        if n % profile.n_a == 0:
            deg //= 2
        total += mpq(g.numerator, g.denominator) / deg
    tail = 2 * dec.e * C * _power_tail(N, eta)
    return PartialSum(N, Fraction(total), tail)


def serre_partial_sum(fam: GFamily, delta: int, N: int) -> PartialSum:
    """Direct summation against division-field degrees for discriminant delta.

    Tail: #GL2(Z/n) >= n^3 phi(n) / 2 since prod_{p|n} (1 - p^-2) >= 1/2, so
    deg(n) >= n^3 phi(n) / 4 and the discarded terms are at most
    4 * sum_{n > N} |g(n)| n^(-7/2).
    """
    if N < 8:
        raise DomainError("partial sums need N >= 8")
    profile = serre_profile(delta)
    C, alpha = fam.growth.C, fam.growth.alpha
    eta = alpha + _growth_lambda(C) - Fraction(7, 2)
    if eta >= -1:
        raise FamilyError("growth bound too weak for a brute-force tail")
    spf = _smallest_factor_table(N)
    total = mpq(0)
    for n in range(1, N + 1):
        fac = _factored(n, spf)
        g = Fraction(1)
        for p, k in fac:
            g *= fam.g(p, k)
            if g == 0:
                break
        if g == 0:
            continue
        deg = gl2_order(n)
        if n % profile.n_a == 0:
            deg //= 2
        total += mpq(g.numerator, g.denominator) / deg
    tail = 4 * C * _power_tail(N, eta)
    return PartialSum(N, Fraction(total), tail)
