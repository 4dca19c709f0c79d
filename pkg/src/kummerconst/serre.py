"""Division-field analogue: constants over GL2-image degrees.

For a curve whose mod-n image is as large as the quadratic obstruction
allows, the degree of the n-division field is #GL2(Z/n), halved exactly when
the entanglement modulus divides n.  The same two-product identity holds with
denominators growing like p^(4k), so the generic evaluator applies with a
quartic local model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, squarefree_kernel
from .engine import DEFAULT_PMAX, DEFAULT_TARGET, ConstantResult, GFamily, _evaluate
from .errors import DomainError
from .kummer import EntanglementProfile

__all__ = [
    "SerreInput",
    "card_aut",
    "gl2_order",
    "serre_constant",
    "serre_degree",
    "serre_profile",
    "weierstrass_discriminant",
]


def weierstrass_discriminant(a1: int, a2: int, a3: int, a4: int, a6: int) -> int:
    """Discriminant of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class SerreInput:
    """A curve given either by its discriminant or by Weierstrass coefficients."""

    delta: int | None = None
    coefficients: tuple[int, int, int, int, int] | None = None

    def resolved_delta(self) -> int:
        if (self.delta is None) == (self.coefficients is None):
            raise DomainError("give exactly one of delta or coefficients")
        if self.delta is not None:
            return self.delta
        return weierstrass_discriminant(*self.coefficients)


def serre_profile(delta: int) -> EntanglementProfile:
    """Entanglement data (D, per-prime levels, modulus) from the discriminant."""
    if delta == 0:
        raise DomainError("discriminant must be nonzero")
    m = squarefree_kernel(delta)
    if m == 1:
        raise DomainError(
            "square discriminant: the quadratic obstruction degenerates and the "
            "maximal-image model does not apply"
        )
    D = m if m % 4 == 1 else 4 * m
    levels: dict[int, int] = {}
    aD = abs(D)
    v2 = 0
    while aD % 2 == 0:
        aD //= 2
        v2 += 1
    levels[2] = 1 if v2 == 0 else (2 if v2 == 2 else 3)
    for p, _ in factorize(D).factors:
        if p != 2:
            levels[p] = 1
    n_entangle = 1
    for p, lv in levels.items():
        n_entangle *= p**lv
    return EntanglementProfile(D=D, levels=levels, n_a=n_entangle)


def card_aut(p: int, k: int) -> int:
    """#GL2(Z/p^k) = p^(4k-3) (p^2-1)(p-1)."""
    if k < 0:
        raise DomainError("exponent must be >= 0")
    if k == 0:
        return 1
    return p ** (4 * k - 3) * (p * p - 1) * (p - 1)


def gl2_order(n: int) -> int:
    if n < 1:
        raise DomainError("n must be >= 1")
    out = 1
    for p, k in factorize(n).factors:
        out *= card_aut(p, k)
    return out


def serre_degree(delta: int, n: int, profile: EntanglementProfile | None = None) -> int:
    """Degree of the n-division field: #GL2(Z/n), halved iff n_E | n."""
    if profile is None:
        profile = serre_profile(delta)
    order = gl2_order(n)
    if n % profile.n_a == 0:
        assert order % 2 == 0
        return order // 2
    return order


class SerreLocalModel:
    """Denominators #GL2(Z/p^k); geometric with ratio p^4 from k = 1."""

    growth_exp = 4
    alpha_max = Fraction(4)

    def __init__(self, profile: EntanglementProfile):
        self.profile = profile

    def card(self, p: int, k: int) -> int:
        return card_aut(p, k)

    def geo_start(self, p: int) -> int:
        return 1

    def ratio(self, p: int) -> int:
        return p**4

    def kappa(self, m: int) -> Fraction:
        return Fraction(m**3, (m * m - 1) * (m - 1))

    def entangled(self) -> list[int]:
        return sorted(self.profile.levels)

    def level(self, p: int) -> int:
        return self.profile.level(p)

    def special_primes(self) -> list[int]:
        return []


def serre_constant(
    fam: GFamily,
    delta: int,
    *,
    target_error=DEFAULT_TARGET,
    P_max: int = DEFAULT_PMAX,
) -> ConstantResult:
    """Enclosure of sum_n g(n)/[n-division-field degree] for discriminant delta."""
    profile = serre_profile(delta)
    return _evaluate(fam, SerreLocalModel(profile), target_error, P_max)
