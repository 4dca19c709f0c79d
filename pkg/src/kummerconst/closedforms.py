"""Closed-form evaluations that bypass the generic engine.

For the constant-one numerator the local sums collapse to explicit rationals
(1 + B_p), the entangled bracket collapses to an exact correction prefactor,
and the tail over omitted primes admits a much sharper bound than the generic
growth-bound argument: the omitted factors are monotone in the same direction,
so summing the exact partial-fraction bound over odd integers gives one-sided
enclosures.  The Artin density chain (A_a, the entanglement ratio E_a, and the
density itself) is handled here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    Enclosure,
    _primes_array,
    dyadic_bounds,
    factorize,
    fraction_product,
    squarefree_kernel,
    unreduced_product,
)
from .errors import DomainError, PrecisionNotReached
from .kummer import (
    Case,
    EntanglementProfile,
    KummerDecomposition,
    decompose,
    entanglement_profile,
    kummer_degree,
)

__all__ = [
    "TitchmarshResult",
    "a_sf",
    "artin_A",
    "artin_E",
    "artin_E_product_form",
    "artin_delta",
    "titchmarsh_closed",
    "universal_constant",
]

DEFAULT_TARGET = Fraction(1, 10**6)
DEFAULT_PMAX = 1 << 27


def _upper_tail(P: int) -> Fraction:
    """Bound for sum over odd m > P of m/((m-1)^2 (m+1)).

    Partial fractions give (1/4)/(m-1) + (1/2)/(m-1)^2 - (1/4)/(m+1); writing
    m = 2j+1 the first and last telescope to 1/(8J) and the middle is at most
    (1/8)/(J-1), where J is the smallest j with 2j+1 > P.
    """
    J = (P - 1) // 2 + 1
    if J < 2:
        raise DomainError("tail bound needs P >= 3")
    return Fraction(1, 8) * (Fraction(1, J) + Fraction(1, J - 1))


def _lower_tail(P: int) -> Fraction:
    """Bound for -log prod over odd m > P of (1 - 1/(m(m-1)))."""
    J = (P - 1) // 2 + 1
    if J < 2:
        raise DomainError("tail bound needs P >= 3")
    fmax = Fraction(1, (P + 1) * P)
    return Fraction(1, 4 * (J - 1)) / (1 - fmax)


def _one_factor_pair(p: int, nu: int) -> tuple:
    # 1 + B_p where B_p = (p^(nu+2) + p^(nu+1) - p^2) / (p^nu (p-1)(p^2-1)),
    # as an unreduced integer pair for the product tree
    q = p**nu
    den = q * (p - 1) * (p * p - 1)
    return den + q * p * p + q * p - p * p, den


def _one_factor(p: int, nu: int) -> Fraction:
    return Fraction(*_one_factor_pair(p, nu))


def _bracket_ratio(p: int, nu: int) -> Fraction:
    q = p**nu
    return Fraction(q * p * p + q * p - p * p, q * p**3 + q - p * p)


def universal_constant(
    target_error=DEFAULT_TARGET, *, P_max: int = DEFAULT_PMAX
) -> Enclosure:
    """Enclosure of prod_p (1 + p/((p-1)^2 (p+1))), the squarefree-base constant."""
    target_error = Fraction(target_error)
    if target_error <= 0:
        raise DomainError("target_error must be positive")
    P = max(64, min(P_max, int(1.3 / float(target_error)) + 64))
    best = None
    while True:
        pri = _primes_array(P).tolist()
        N, D = unreduced_product(
            (p * p * p - p * p + 1, (p - 1) * (p - 1) * (p + 1)) for p in pri
        )
        T = _upper_tail(P)
        if T < 1:
            # every omitted factor exceeds 1, so N/D is a lower bound and
            # (N/D)/(1-T) an upper one; divide without ever reducing N/D
            tn, td = T.numerator, T.denominator
            best = Enclosure(
                dyadic_bounds(N, D).lo, dyadic_bounds(N * td, D * (td - tn)).hi
            )
            if best.width_within(target_error):
                return best
        if P >= P_max:
            raise PrecisionNotReached(
                f"universal constant: width target {target_error} not reached at P={P}",
                result=best,
            )
        P = min(P_max, 2 * P)


@dataclass(frozen=True)
class TitchmarshResult:
    """Average-divisor-weight constant with its exact correction prefactor."""

    value: Enclosure
    correction: Fraction
    case: Case
    P_used: int


def titchmarsh_closed(
    a: int, target_error=DEFAULT_TARGET, *, P_max: int = DEFAULT_PMAX
) -> TitchmarshResult:
    """Constant-one numerator constant for base a, via explicit local formulas.

    The entangled bracket reduces to 1 + c0/(3*2^t - 2) * prod ratios over the
    primes of 2D (odd primes of D in the twisted case), with c0 a power of 2
    read off the 2-adic shape of D and of the exponent.
    """
    target_error = Fraction(target_error)
    if target_error <= 0:
        raise DomainError("target_error must be positive")
    dec = decompose(a)
    profile = entanglement_profile(dec)
    nu_e = dict(dec.e_factors)
    nu2 = dec.nu_e(2)
    v2D = 0
    aD = abs(profile.D)
    while aD % 2 == 0:
        aD //= 2
        v2D += 1

    if dec.case is Case.TWISTED:
        c0 = Fraction(4) if (v2D == 3 and nu2 == 1) else Fraction(1)
        odd_D = [p for p, _ in factorize(profile.D).factors if p != 2]
        correction = 1 + c0 / (3 * 2 ** (nu2 + 2) - 2) * fraction_product(
            _bracket_ratio(p, dec.nu_e(p)) for p in odd_D
        )
        two_factor = 1 + Fraction(2 ** (nu2 + 2) - 2**nu2 - 1, 3 * 2**nu2)
    else:
        c0 = Fraction(1)
        if v2D == 2 and nu2 == 0:
            c0 = Fraction(1, 4)
        elif v2D == 3 and nu2 == 1:
            c0 = Fraction(1, 4)
        elif v2D == 3 and nu2 == 0:
            c0 = Fraction(1, 16)
        pris_2D = [p for p, _ in factorize(2 * profile.D).factors]
        correction = 1 + c0 / (3 * 2**nu2 - 2) * fraction_product(
            _bracket_ratio(p, dec.nu_e(p)) for p in pris_2D
        )
        two_factor = None  # the 2-factor sits inside the main product

    P_floor = max([64] + [p for p in nu_e])
    if P_max < P_floor:
        raise DomainError(
            f"P_max={P_max} is below {P_floor}, the largest prime dividing the exponent"
        )
    P = max(P_floor, min(P_max, int(1.7 / float(target_error)) + 64))
    best = None
    while True:
        pri = _primes_array(P).tolist()
        pairs = [
            _one_factor_pair(p, nu_e.get(p, 0))
            for p in pri
            if not (two_factor is not None and p == 2)
        ]
        if two_factor is not None:
            pairs.append((two_factor.numerator, two_factor.denominator))
        pairs.append((correction.numerator, correction.denominator))
        N, D = unreduced_product(pairs)
        T = _upper_tail(P)
        if T < 1:
            tn, td = T.numerator, T.denominator
            best = Enclosure(
                dyadic_bounds(N, D).lo, dyadic_bounds(N * td, D * (td - tn)).hi
            )
            if best.width_within(target_error):
                return TitchmarshResult(best, correction, dec.case, P)
        if P >= P_max:
            raise PrecisionNotReached(
                f"width target {target_error} not reached at P={P}",
                result=TitchmarshResult(best, correction, dec.case, P) if best else None,
            )
        P = min(P_max, 2 * P)


# ----------------------------------------------------------------------
# Artin density chain


def a_sf(a: int) -> int:
    """Signed squarefree kernel of a (the base's quadratic fingerprint)."""
    if a == 0:
        raise DomainError("a must be nonzero")
    return squarefree_kernel(a)


def artin_A(a: int, target_error=DEFAULT_TARGET, *, P_max: int = DEFAULT_PMAX) -> Enclosure:
    """Enclosure of the h-adjusted primitive-root product for base a.

    Factors are 1 - 1/(p-1) at primes dividing h and 1 - 1/(p(p-1)) elsewhere;
    all lie in (0, 1], so omitted primes only pull the product down and the
    enclosure is one-sided.
    """
    target_error = Fraction(target_error)
    if target_error <= 0:
        raise DomainError("target_error must be positive")
    dec = decompose(a)
    h = dec.h
    if h % 2 == 0:
        # the factor at p = 2 is 1 - 1/(2-1) = 0
        return Enclosure(Fraction(0), Fraction(0))
    P = max(64, min(P_max, int(0.3 / float(target_error)) + 64))
    best = None
    while True:
        pri = _primes_array(P).tolist()
        N, D = unreduced_product(
            (p - 2, p - 1) if h % p == 0 else (p * p - p - 1, p * p - p) for p in pri
        )
        T = _lower_tail(P)
        if T < 1:
            # factors sit in (0, 1): omitted primes pull the value down, so
            # N/D is the upper bound and the tail scales the lower one
            tn, td = T.numerator, T.denominator
            best = Enclosure(
                dyadic_bounds(N * (td - tn), D * td).lo, dyadic_bounds(N, D).hi
            )
            if best.width_within(target_error):
                return best
        if P >= P_max:
            raise PrecisionNotReached(
                f"width target {target_error} not reached at P={P}", result=best
            )
        P = min(P_max, 2 * P)


def artin_E(a: int) -> Fraction:
    """Exact entanglement ratio for bases whose squarefree kernel is 1 mod 4."""
    asf = a_sf(a)
    if asf % 4 != 1:
        raise DomainError("entanglement ratio needs a squarefree kernel = 1 mod 4")
    dec = decompose(a)
    fac = factorize(abs(asf))
    mu = (-1) ** len(fac.factors) if all(k == 1 for _, k in fac.factors) else 0
    prod = fraction_product(
        Fraction(1, p - 2) if dec.h % p == 0 else Fraction(1, p * p - p - 1)
        for p, _ in fac.factors
    )
    return 1 - mu * prod


def artin_E_product_form(a: int) -> Fraction:
    """Same ratio written as 1 + prod over p | 2d of -1/(deg(p) - 1).

    d is the discriminant of Q(sqrt(a)); requires d odd, i.e. squarefree
    kernel 1 mod 4, so that the primes of 2d are 2 and the primes of d.
    """
    asf = a_sf(a)
    if asf % 4 != 1:
        raise DomainError("product form needs an odd quadratic discriminant")
    if asf == 1:
        raise DomainError("a is a perfect square: the quadratic field degenerates")
    dec = decompose(a)
    profile = entanglement_profile(dec)
    pris = [p for p, _ in factorize(2 * asf).factors]
    return 1 + fraction_product(
        Fraction(-1, kummer_degree(dec, p, profile) - 1) for p in pris
    )


def artin_delta(a: int, target_error=DEFAULT_TARGET, *, P_max: int = DEFAULT_PMAX) -> Enclosure:
    """Density of primes with residual index 1 for base a (GRH-conditional value)."""
    target_error = Fraction(target_error)
    asf = a_sf(a)
    if asf % 4 == 1:
        E = artin_E(a)
        scale = E if E > 0 else Fraction(1)
        A = artin_A(a, target_error / scale, P_max=P_max)
        return A * Enclosure.point(E)
    return artin_A(a, target_error, P_max=P_max)
