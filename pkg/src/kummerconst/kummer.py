"""Kummer-family fingerprints.

For a fixed rational base a (not 0 or +-1) this module computes the maximal
power decomposition of a, the quadratic entanglement data (fundamental
discriminant, per-prime entanglement levels, conductor-like modulus n_a), and
exact cardinalities of the attached local groups together with the degrees of
the radical-cyclotomic fields they control.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd

from .arith import Factorization, euler_phi, factorize, squarefree_kernel
from .errors import DomainError, IntegrityError

__all__ = [
    "Case",
    "EntanglementProfile",
    "KummerDecomposition",
    "card_A",
    "card_A_n",
    "decompose",
    "entanglement_profile",
    "k_prime",
    "kummer_degree",
]


class Case(str, Enum):
    """Shape of the base: odd maximal exponent, even-and-positive, even-and-negative."""

    ODD_EXPONENT = "odd-exponent"
    SQUARE = "square"
    TWISTED = "twisted"


@dataclass(frozen=True)
class KummerDecomposition:
    """a = +-a0^e with e maximal; h is the largest exact power degree of a itself."""

    a: int
    a0: int
    e: int
    h: int
    case: Case
    s: int
    e_factors: tuple[tuple[int, int], ...] = field(repr=False)

    def nu_e(self, p: int) -> int:
        """Exponent of p in e."""
        for q, k in self.e_factors:
            if q == p:
                return k
        return 0

    @property
    def twisted(self) -> bool:
        return self.case is Case.TWISTED


def decompose(a: int) -> KummerDecomposition:
    """Maximal power decomposition of a, with the 2-adic depth parameter s."""
    a = int(a)
    if a in (0, 1, -1):
        raise DomainError("base must not be 0 or +-1")
    fac = factorize(abs(a))
    e = 0
    for _, k in fac.factors:
        e = gcd(e, k)
    a0 = 1
    for p, k in fac.factors:
        a0 *= p ** (k // e)
    if a < 0:
        a0 = -a0
    nu2 = 0
    m = e
    while m % 2 == 0:
        nu2 += 1
        m //= 2
    if e % 2 == 1:
        case, s, h = Case.ODD_EXPONENT, 1, e
    elif a > 0:
        case, s, h = Case.SQUARE, nu2 + 1, e
    else:
        case, s, h = Case.TWISTED, nu2 + 2, e >> nu2  # largest odd divisor of e
    return KummerDecomposition(a, a0, e, h, case, s, factorize(e).factors)


@dataclass(frozen=True)
class EntanglementProfile:
    """Quadratic entanglement data: discriminant D, levels on p | 2D, modulus n_a."""

    D: int
    levels: dict[int, int]
    n_a: int

    def level(self, p: int) -> int:
        return self.levels.get(p, 0)


def entanglement_profile(dec: KummerDecomposition) -> EntanglementProfile:
    m = squarefree_kernel(dec.a0)
    D = m if m % 4 == 1 else 4 * m
    nu2_e = dec.nu_e(2)
    absD = abs(D)
    if absD % 2 == 1:
        l2 = dec.s
    elif absD % 8 == 4:
        l2 = max(2, dec.s)
    elif nu2_e == 1 and dec.a < 0:
        l2 = 2
    else:
        l2 = max(3, dec.s)
    levels = {2: l2}
    d = absD
    while d % 2 == 0:
        d //= 2
    for p, _ in factorize(d).factors:
        levels[p] = 1
    n_a = 1
    for p, l in sorted(levels.items()):
        n_a *= p**l
    return EntanglementProfile(D, dict(sorted(levels.items())), n_a)


def k_prime(dec: KummerDecomposition, p: int, k: int) -> int:
    """Excess exponent in #A(p^k) = p^(k + k' - 1)(p-1) over the cyclic part."""
    if k < 0:
        raise DomainError("k must be >= 0")
    if k == 0:
        return 0
    nu = dec.nu_e(p)
    if k > nu:
        return k - nu
    if p == 2 and dec.twisted:
        return 1
    return 0


def card_A(dec: KummerDecomposition, p: int, k: int) -> int:
    """#A(p^k), the local group order at the prime power p^k."""
    if k == 0:
        return 1
    return p ** (k + k_prime(dec, p, k) - 1) * (p - 1)


def card_A_n(dec: KummerDecomposition, n: int) -> int:
    """#A(n) for any n >= 1, multiplicatively from the prime powers."""
    if n < 1:
        raise DomainError("n must be >= 1")
    out = 1
    for p, k in factorize(n).factors:
        out *= card_A(dec, p, k)
    return out


def kummer_degree(
    dec: KummerDecomposition, n: int, profile: EntanglementProfile | None = None
) -> int:
    """Degree over Q of the n-th radical-cyclotomic field for the base a.

    Equals #A(n), halved exactly when the entanglement modulus n_a divides n.
    """
    if profile is None:
        profile = entanglement_profile(dec)
    d = card_A_n(dec, n)
    if n % profile.n_a == 0:
        if d % 2:
            raise IntegrityError(f"odd #A({n}) = {d} cannot be halved")
        d //= 2
    return d
