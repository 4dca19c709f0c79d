"""Evaluator for constants of the form sum_{n>=1} g(n)/deg(n).

The sum over all n factors into two Euler products: a product of complete
local sums F_p(0) plus a product where each entangled prime is truncated at
its entanglement level.  This module computes exact local sums for
multiplicative numerator families g, evaluates the factorized form over
primes up to an adaptive cutoff P, and wraps the omitted primes in a rigorous
interval derived from the family's growth bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import (
    Enclosure,
    _primes_array,
    canonical_fraction,
    dyadic_bounds,
    enclosure_product,
    fraction_product,
    pow_bounds,
    unreduced_product,
)
from .errors import DomainError, FamilyError, PrecisionNotReached
from .kummer import (
    EntanglementProfile,
    KummerDecomposition,
    card_A,
    entanglement_profile,
)

__all__ = [
    "NOT_CORRECTABLE",
    "NOT_DEFINED",
    "ConstantResult",
    "GFamily",
    "GrowthBound",
    "KummerLocalModel",
    "LocalSum",
    "Vanishing",
    "builtin_family",
    "correction_factor",
    "evaluate_constant",
    "family_from_json",
    "local_sum",
    "mobius_inverse_family",
    "vanishing_check",
]

DEFAULT_TARGET = Fraction(1, 10**6)
DEFAULT_PMAX = 1 << 24


@dataclass(frozen=True)
class GrowthBound:
    """|g(p^k)| <= C * p^(alpha*k) for every prime power."""

    C: Fraction
    alpha: Fraction


class GFamily:
    """Multiplicative family given on prime powers, g(1) = 1.

    ``geo_from`` (when present) certifies that g(p^k) = coef(p)*ratio(p)^k
    exactly for all k >= t(p); local sums are then exact rationals.  Families
    without it (Mobius inversions, tabulated families) get truncated local
    sums with growth-bound tails.
    """

    def __init__(
        self,
        name: str,
        g: Callable[[int, int], Fraction],
        growth: GrowthBound,
        *,
        geo_from: Callable[[int], tuple[int, Fraction, Fraction]] | None = None,
        k_known: Callable[[int], int | None] | None = None,
        table_limit: int | None = None,
        kummer_generic: Callable[[int], tuple[int, int]] | None = None,
    ):
        self.name = name
        self._g = g
        self.growth = growth
        self._geo_from = geo_from
        self._k_known = k_known
        self.table_limit = table_limit
        # exact unreduced (num, den) for F_p(0) at a prime with generic
        # denominators p^(2k-1)(p-1); lets the evaluator skip per-prime
        # Fraction work on the millions of untangled primes
        self.kummer_generic = kummer_generic

    def __repr__(self):
        return f"GFamily({self.name!r})"

    @property
    def exact(self) -> bool:
        return self._geo_from is not None

    def g(self, p: int, k: int) -> Fraction:
        if k < 0:
            raise DomainError("prime-power exponent must be >= 0")
        if k == 0:
            return Fraction(1)
        return self._g(p, k)

    def geo_tail(self, p: int) -> tuple[int, Fraction, Fraction]:
        return self._geo_from(p)

    def k_known(self, p: int) -> int | None:
        return self._k_known(p) if self._k_known is not None else None

    def check_growth(self, alpha_max: Fraction) -> None:
        gb = self.growth
        if gb is None:
            raise FamilyError(f"family {self.name!r} has no growth bound")
        if gb.C <= 0:
            raise FamilyError("growth constant C must be positive")
        if gb.alpha >= alpha_max:
            raise FamilyError(
                f"growth exponent alpha={gb.alpha} >= {alpha_max}: local sums diverge"
            )


def builtin_family(spec: str, z=None) -> GFamily:
    """Built-in families: moebius (mu), one, laxton, power:<z> (integer z >= 1)."""
    name = spec.strip().lower()
    if ":" in name:
        name, _, arg = name.partition(":")
        if z is not None:
            raise FamilyError("pass the power exponent either inline or as z, not both")
        z = arg
    if name == "mu":
        name = "moebius"
    if name == "moebius":
        return GFamily(
            "moebius",
            lambda p, k: Fraction(-1) if k == 1 else Fraction(0),
            GrowthBound(Fraction(1), Fraction(0)),
            geo_from=lambda p: (2, Fraction(0), Fraction(0)),
            kummer_generic=lambda p: (p * p - p - 1, p * p - p),
        )
    if name == "one":
        return GFamily(
            "one",
            lambda p, k: Fraction(1),
            GrowthBound(Fraction(1), Fraction(0)),
            geo_from=lambda p: (0, Fraction(1), Fraction(1)),
            kummer_generic=lambda p: (
                p * p * p - p * p + 1,
                (p - 1) * (p - 1) * (p + 1),
            ),
        )
    if name == "laxton":
        return GFamily(
            "laxton",
            lambda p, k: Fraction(1, p**k) - Fraction(1, p ** (k - 1)),
            GrowthBound(Fraction(1), Fraction(0)),
            geo_from=lambda p: (1, Fraction(-(p - 1)), Fraction(1, p)),
            kummer_generic=lambda p: (p * p * p - p - 1, p * p * p - 1),
        )
    if name == "power":
        if z is None:
            raise FamilyError("power family needs an exponent, e.g. power:2")
        zq = Fraction(z)
        if zq <= 0:
            raise FamilyError("power exponent must be positive")
        if zq.denominator != 1:
            raise FamilyError(
                "power exponent must be an integer: non-integer exponents leave "
                "the rational-valued domain of this evaluator"
            )
        zi = int(zq)

        def _power_generic(p: int, zi: int = zi) -> tuple[int, int]:
            den = (p - 1) * (p ** (zi + 2) - 1)
            return den + p, den

        return GFamily(
            f"power:{zi}",
            lambda p, k: Fraction(1, p ** (k * zi)),
            GrowthBound(Fraction(1), Fraction(-zi)),
            geo_from=lambda p: (0, Fraction(1), Fraction(1, p**zi)),
            kummer_generic=_power_generic,
        )
    raise FamilyError(f"unknown family {spec!r}")


def mobius_inverse_family(
    name: str, f_local: Callable[[int, int], Fraction], growth: GrowthBound
) -> GFamily:
    """Family with g(p^k) = f(p^k) - f(p^(k-1)), so that sum_{d|n} g(d) = f(n)."""
    if growth is None:
        raise FamilyError("a Mobius-inverted family needs an explicit growth bound")

    def g(p: int, k: int) -> Fraction:
        prev = Fraction(1) if k == 1 else Fraction(f_local(p, k - 1))
        return Fraction(f_local(p, k)) - prev

    return GFamily(name, g, growth)


def family_from_json(doc: dict) -> GFamily:
    """Tabulated family from {"name", "growth": {"C","alpha"}, "values": [{p,k,g}]}."""
    try:
        name = doc["name"]
        growth = GrowthBound(Fraction(str(doc["growth"]["C"])), Fraction(str(doc["growth"]["alpha"])))
        table: dict[tuple[int, int], Fraction] = {}
        kmax: dict[int, int] = {}
        for row in doc["values"]:
            p, k = int(row["p"]), int(row["k"])
            if k < 1:
                raise FamilyError("tabulated exponents must be >= 1")
            table[(p, k)] = Fraction(str(row["g"]))
            kmax[p] = max(kmax.get(p, 0), k)
    except (KeyError, TypeError, ValueError) as exc:
        raise FamilyError(f"malformed family document: {exc}") from exc
    if not kmax:
        raise FamilyError("family document lists no values")

    def g(p: int, k: int) -> Fraction:
        cap = kmax.get(p)
        if cap is None or k > cap:
            raise FamilyError(f"g({p}^{k}) is not tabulated for family {name!r}")
        return table.get((p, k), Fraction(0))

    return GFamily(
        str(name),
        g,
        growth,
        k_known=lambda p: kmax.get(p, 0),
        table_limit=max(kmax),
    )


# ----------------------------------------------------------------------
# local sums


@dataclass(frozen=True)
class LocalSum:
    """F_p(L) = value +- tail; tail is 0 for closed-form families."""

    value: Fraction
    tail: Fraction

    @property
    def exact(self) -> bool:
        return self.tail == 0

    def enclosure(self) -> Enclosure:
        return Enclosure(self.value - self.tail, self.value + self.tail)


class KummerLocalModel:
    """Denominators #A(p^k) for a Kummer fingerprint; growth p^(2k)."""

    growth_exp = 2
    alpha_max = Fraction(2)

    def __init__(self, dec: KummerDecomposition, profile: EntanglementProfile):
        self.dec = dec
        self.profile = profile

    def card(self, p: int, k: int) -> int:
        return card_A(self.dec, p, k)

    def geo_start(self, p: int) -> int:
        nu = self.dec.nu_e(p)
        if p == 2 and self.dec.twisted:
            return nu + 1
        return max(1, nu)

    def ratio(self, p: int) -> int:
        return p * p

    def kappa(self, m: int) -> Fraction:
        # 1/card(m, k) <= kappa(m) * m^(-2k) for the generic shape; decreasing in m
        return Fraction(m, m - 1)

    def entangled(self) -> list[int]:
        return sorted(self.profile.levels)

    def level(self, p: int) -> int:
        return self.profile.level(p)

    def special_primes(self) -> list[int]:
        return [p for p, _ in self.dec.e_factors if p not in self.profile.levels]


def _local_sum(fam: GFamily, model, p: int, L: int, tail_budget: Fraction | None = None) -> LocalSum:
    if L < 0:
        raise DomainError("local sums start at a level >= 0")
    if fam.exact:
        t, coef, ratio = fam.geo_tail(p)
        k0 = model.geo_start(p)
        K = max(L, t, k0)
        val = Fraction(0)
        for k in range(L, K):
            val += fam.g(p, k) / model.card(p, k)
        if coef:
            Q = Fraction(model.ratio(p))
            x = ratio / Q
            val += coef * x**K * Fraction(model.ratio(p) ** k0, model.card(p, k0)) / (1 - x)
        return LocalSum(val, Fraction(0))

    C, alpha = fam.growth.C, fam.growth.alpha
    k0 = model.geo_start(p)
    Q = model.ratio(p)
    rho_hi = pow_bounds(p, alpha)[1] / Q
    if rho_hi >= 1:
        raise FamilyError(f"cannot bound local tail at p={p}: growth too close to p^{model.growth_exp}k")
    head = Fraction(Q**k0, model.card(p, k0))
    budget = tail_budget if tail_budget is not None else Fraction(1, 10**12)
    cap = fam.k_known(p)
    K = max(L, k0)
    while True:
        tail = C * head * rho_hi ** (K + 1) / (1 - rho_hi)
        if tail <= budget or (cap is not None and K >= cap):
            break
        K += 4
    if cap is not None:
        K = min(K, max(cap, L))
        tail = C * head * rho_hi ** (K + 1) / (1 - rho_hi)
    val = Fraction(0)
    for k in range(L, K + 1):
        val += fam.g(p, k) / model.card(p, k)
    return LocalSum(val, tail)


def local_sum(
    fam: GFamily,
    dec: KummerDecomposition,
    p: int,
    L: int,
    profile: EntanglementProfile | None = None,
) -> LocalSum:
    """F_p(L) = sum_{k >= L} g(p^k)/#A(p^k) for the given Kummer fingerprint."""
    if profile is None:
        profile = entanglement_profile(dec)
    return _local_sum(fam, KummerLocalModel(dec, profile), p, L)


# ----------------------------------------------------------------------
# global evaluation


@dataclass(frozen=True)
class Vanishing:
    kind: str  # "none" | "local" | "global"
    p: int | None = None

    def __bool__(self):
        return self.kind != "none"


NON_VANISHING = Vanishing("none")
VANISH_GLOBAL = Vanishing("global")


class _Sentinel:
    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


NOT_CORRECTABLE = _Sentinel("NOT_CORRECTABLE")
NOT_DEFINED = _Sentinel("NOT_DEFINED")


@dataclass(frozen=True)
class ConstantResult:
    """Rigorous enclosure plus the exact pieces that produced it."""

    family: str
    value: Enclosure
    finite_part: Fraction
    correction: Fraction | None
    P_used: int
    vanishing: Vanishing


def _tail_log_bound(model, growth: GrowthBound, P: int) -> Fraction | None:
    """Upper bound for |log prod_{p > P} F_p(0)|, or None if it diverges.

    Termwise |F_m(0) - 1| <= C*kappa(m)*m^(alpha-c)/(1 - m^(alpha-c)), doubled
    to bound |log|, summed over all integers m > P (integral comparison).
    """
    C, alpha = growth.C, growth.alpha
    c = model.growth_exp
    beta = c - 1 - alpha  # integer-sum exponent; must be > 0 to converge
    if beta <= 0:
        return None
    rho_hi = pow_bounds(P + 1, alpha - c)[1]
    if rho_hi >= 1:
        return None
    integral = pow_bounds(P, -beta)[1] / beta
    return 2 * C * model.kappa(P + 1) * integral / (1 - rho_hi)


def _per_prime_rel(model, growth: GrowthBound, P: int) -> Fraction | None:
    """Bound for |F_p(0) - 1| valid for every generic prime p > P."""
    C, alpha = growth.C, growth.alpha
    rho_hi = pow_bounds(P + 1, alpha - model.growth_exp)[1]
    if rho_hi >= 1:
        return None
    return C * model.kappa(P + 1) * rho_hi / (1 - rho_hi)


def _evaluate(fam: GFamily, model, target_error, P_max: int) -> ConstantResult:
    target_error = Fraction(target_error)
    if target_error <= 0:
        raise DomainError("target_error must be positive")
    fam.check_growth(model.alpha_max)
    ent = model.entangled()
    ent_set = set(ent)
    P_floor = max(ent + model.special_primes() + [13])
    if P_max < P_floor:
        raise FamilyError(
            f"P_max={P_max} is below {P_floor}, the largest entangled/special prime: "
            "the finite part would silently drop non-generic factors"
        )
    P_cap = P_max
    if fam.table_limit is not None:
        if fam.table_limit < P_floor:
            raise FamilyError(
                f"family {fam.name!r} is tabulated only to p <= {fam.table_limit} "
                f"but primes up to {P_floor} are structurally required"
            )
        P_cap = min(P_cap, fam.table_limit)

    loc_budget = target_error / (1 << 22)
    f0 = {p: _local_sum(fam, model, p, 0, loc_budget) for p in ent}
    fl = {p: _local_sum(fam, model, p, model.level(p), loc_budget) for p in ent}
    bracket_enc = enclosure_product(f0[p].enclosure() for p in ent) + enclosure_product(
        fl[p].enclosure() for p in ent
    )
    locals_exact = all(f0[p].exact and fl[p].exact for p in ent)
    bracket_mid = fraction_product(f0[p].value for p in ent) + fraction_product(
        fl[p].value for p in ent
    )
    naive_den = fraction_product(f0[p].value for p in ent)
    correction = bracket_mid / naive_den if (locals_exact and naive_den != 0) else None

    if locals_exact and bracket_mid == 0:
        return ConstantResult(
            fam.name,
            Enclosure(Fraction(0), Fraction(0)),
            Fraction(0),
            correction,
            P_floor,
            VANISH_GLOBAL,
        )

    P = min(P_cap, max(2 * P_floor, 4096))
    fast = fam.kummer_generic if isinstance(model, KummerLocalModel) else None
    special = set(model.special_primes())
    gen_num, gen_den = 1, 1  # cumulative unreduced product over generic primes
    gen_tail_enc = Enclosure.point(1)  # extra interval factor for truncated families
    gen_done = 0
    zero_at: int | None = None

    def extend(upto: int):
        nonlocal gen_done, gen_tail_enc, zero_at, gen_num, gen_den
        chunk: list[tuple] = []
        for q in _primes_array(upto)[gen_done:].tolist():
            gen_done += 1
            if q in ent_set:
                continue
            if fast is not None and q not in special:
                pair = fast(q)
                if pair[0] == 0 and zero_at is None:
                    zero_at = q
                chunk.append(pair)
                continue
            ls = _local_sum(fam, model, q, 0, loc_budget)
            chunk.append((ls.value.numerator, ls.value.denominator))
            if ls.value == 0 and ls.exact and zero_at is None:
                zero_at = q
            if not ls.exact:
                if ls.value <= ls.tail:
                    raise PrecisionNotReached(
                        f"local sum at p={q} is not certified away from zero"
                    )
                rel = ls.tail / ls.value
                gen_tail_enc = gen_tail_enc * Enclosure(1 - rel, 1 + rel)
        cn, cd = unreduced_product(chunk)
        gen_num *= cn
        gen_den *= cd

    def finish(value: Enclosure, P: int) -> ConstantResult:
        # one canonicalizing gcd at exit; the per-stage loop never reduces
        finite = canonical_fraction(
            gen_num * bracket_mid.numerator, gen_den * bracket_mid.denominator
        )
        return ConstantResult(fam.name, value, finite, correction, P, NON_VANISHING)

    extend(P)
    while True:
        if zero_at is not None:
            return ConstantResult(
                fam.name,
                Enclosure(Fraction(0), Fraction(0)),
                Fraction(0),
                correction,
                P,
                Vanishing("local", zero_at),
            )
        T = _tail_log_bound(model, fam.growth, P)
        rel = _per_prime_rel(model, fam.growth, P)
        value = None
        if T is not None and T < 1 and rel is not None and rel <= Fraction(1, 2):
            value = (
                dyadic_bounds(gen_num, gen_den)
                * gen_tail_enc
                * bracket_enc
                * Enclosure(1 - T, 1 / (1 - T))
            ).round_out(192)
            if value.width_within(target_error):
                return finish(value, P)
        if P >= P_cap:
            raise PrecisionNotReached(
                f"width target {target_error} not reached at prime cutoff {P}"
                + ("" if T is not None else " (growth bound makes the integer tail diverge)"),
                result=finish(value, P) if value is not None else None,
            )
        nxt = 2 * P
        if value is not None:
            # tail width scales like P^-(c-1-alpha); jump near the projected
            # cutoff instead of doubling all the way up
            beta = float(model.growth_exp - 1 - fam.growth.alpha)
            w = float(value.width)
            if w > 0 and beta > 0:
                try:
                    nxt = max(nxt, int(P * (w / float(target_error)) ** (1.0 / beta) * 1.25))
                except OverflowError:
                    pass
        P = min(P_cap, nxt)
        extend(P)


def evaluate_constant(
    fam: GFamily,
    dec: KummerDecomposition,
    profile: EntanglementProfile | None = None,
    *,
    target_error=DEFAULT_TARGET,
    P_max: int = DEFAULT_PMAX,
) -> ConstantResult:
    """Enclosure of sum_n g(n)/[radical-cyclotomic degree at n] for the base of dec."""
    if profile is None:
        profile = entanglement_profile(dec)
    return _evaluate(fam, KummerLocalModel(dec, profile), target_error, P_max)


def correction_factor(
    fam: GFamily,
    dec: KummerDecomposition,
    profile: EntanglementProfile | None = None,
):
    """Exact ratio of the full constant to the naive product of local sums.

    (prod_{p|2D} F_p(0) + prod_{p|2D} F_p(level(p))) / prod_{p|2D} F_p(0);
    NOT_CORRECTABLE when the denominator vanishes but the bracket does not,
    NOT_DEFINED when both vanish.
    """
    if profile is None:
        profile = entanglement_profile(dec)
    model = KummerLocalModel(dec, profile)
    if not fam.exact:
        raise FamilyError("correction factors are only exact for closed-form families")
    ent = model.entangled()
    f0 = [_local_sum(fam, model, p, 0) for p in ent]
    fl = [_local_sum(fam, model, p, model.level(p)) for p in ent]
    den = fraction_product(s.value for s in f0)
    num = den + fraction_product(s.value for s in fl)
    if den != 0:
        return num / den
    return NOT_CORRECTABLE if num != 0 else NOT_DEFINED


def vanishing_check(
    fam: GFamily,
    dec: KummerDecomposition,
    profile: EntanglementProfile | None = None,
) -> Vanishing:
    """Certified vanishing diagnosis for closed-form families.

    Local factors at generic primes p > P0 satisfy |F_p(0) - 1| <= 1/2 by the
    growth bound, so only p <= P0 need explicit zero checks.
    """
    if profile is None:
        profile = entanglement_profile(dec)
    model = KummerLocalModel(dec, profile)
    if not fam.exact:
        raise FamilyError("vanishing can only be certified for closed-form families")
    fam.check_growth(model.alpha_max)
    ent = set(model.entangled())
    P0 = max([64] + list(ent) + model.special_primes())
    while _per_prime_rel(model, fam.growth, P0) is None or _per_prime_rel(
        model, fam.growth, P0
    ) > Fraction(1, 2):
        P0 *= 2
        if P0 > 1 << 26:
            raise FamilyError("growth bound too weak to certify non-vanishing")
    for q in _primes_array(P0).tolist():
        if q in ent:
            continue
        if _local_sum(fam, model, q, 0).value == 0:
            return Vanishing("local", q)
    f0 = fraction_product(_local_sum(fam, model, p, 0).value for p in sorted(ent))
    fl = fraction_product(
        _local_sum(fam, model, p, model.level(p)).value for p in sorted(ent)
    )
    if f0 + fl == 0:
        return VANISH_GLOBAL
    return NON_VANISHING
