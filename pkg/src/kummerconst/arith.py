"""Exact arithmetic substrate: factorization, multiplicative functions,
segmented prime generation, rational intervals, and a rigorously enclosed
logarithmic integral.

All rationals are ``fractions.Fraction`` (always reduced, positive
denominator).  Interval endpoints are exact rationals, so interval arithmetic
here is outward by construction; ``Enclosure.round_out`` exists to keep
denominators small in long pipelines without losing rigor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

import gmpy2
import numpy as np
from gmpy2 import mpq, mpz

from .errors import DomainError, FactorizationTimeout, IntegrityError, ResourceLimit

__all__ = [
    "Enclosure",
    "Factorization",
    "canonical_fraction",
    "dyadic_bounds",
    "enclosure_product",
    "euler_phi",
    "factorize",
    "fraction_add",
    "fraction_div",
    "fraction_mul",
    "fraction_product",
    "fraction_sub",
    "is_prime",
    "log_integral",
    "mobius",
    "multiplicative_order",
    "pow_bounds",
    "primes_up_to",
    "squarefree_kernel",
    "unreduced_product",
]

DEFAULT_SIEVE_BUDGET = 1 << 28  # covers scans to 1e8 with headroom
DEFAULT_FACTOR_BUDGET = 2_000_000  # rho iterations; ample for |n| <= 10^18

_SEGMENT = 1 << 20


# ----------------------------------------------------------------------
# rational intervals


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # floats are exact dyadic rationals
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (mpz, mpq)) or hasattr(x, "numerator"):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def _q(x) -> mpq:
    # stdlib Fraction arithmetic reduces with math.gcd, which is quadratic-ish
    # and ruins multi-megabit Euler-product endpoints; GMP rationals do not
    return mpq(x.numerator, x.denominator)


def _raw_fraction(n, d) -> Fraction:
    # bypass the normalizing constructor; caller guarantees d > 0, gcd(n,d) = 1
    out = Fraction.__new__(Fraction)
    out._numerator = int(n)
    out._denominator = int(d)
    return out


def fraction_add(a, b) -> Fraction:
    return Fraction(_q(a) + _q(b))


def fraction_sub(a, b) -> Fraction:
    return Fraction(_q(a) - _q(b))


def fraction_mul(a, b) -> Fraction:
    # both inputs are reduced, so gcd(an*bn, ad*bd) splits into the two cross
    # gcds; each is cheap whenever either operand is small
    an, ad = a.numerator, a.denominator
    bn, bd = b.numerator, b.denominator
    g1 = gmpy2.gcd(an, bd)
    g2 = gmpy2.gcd(bn, ad)
    return _raw_fraction((an // g1) * (bn // g2), (ad // g2) * (bd // g1))


def fraction_div(a, b) -> Fraction:
    if b == 0:
        raise ZeroDivisionError("rational division by zero")
    an, ad = a.numerator, a.denominator
    bn, bd = b.numerator, b.denominator
    if bn < 0:
        an, bn = -an, -bn
    g1 = gmpy2.gcd(an, bn)
    g2 = gmpy2.gcd(bd, ad)
    return _raw_fraction((an // g1) * (bd // g2), (ad // g2) * (bn // g1))


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval [lo, hi] guaranteed to contain a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise IntegrityError(f"inverted enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, v) -> "Enclosure":
        v = _as_fraction(v)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return fraction_sub(self.hi, self.lo)

    def width_within(self, bound) -> bool:
        """width <= bound by cross multiplication; no reduction of endpoints."""
        bound = _as_fraction(bound)
        ln, ld = mpz(self.lo.numerator), mpz(self.lo.denominator)
        hn, hd = mpz(self.hi.numerator), mpz(self.hi.denominator)
        return (hn * ld - ln * hd) * bound.denominator <= bound.numerator * hd * ld

    @property
    def midpoint(self) -> Fraction:
        return Fraction((_q(self.lo) + _q(self.hi)) / 2)

    def contains(self, x) -> bool:
        x = _as_fraction(x)
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(fraction_add(self.lo, other.lo), fraction_add(self.hi, other.hi))
        q = _as_fraction(other)
        return Enclosure(fraction_add(self.lo, q), fraction_add(self.hi, q))

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Enclosure) else -_as_fraction(other))

    def __mul__(self, other):
        if not isinstance(other, Enclosure):
            other = Enclosure.point(other)
        if self.lo >= 0 and other.lo >= 0:
            return Enclosure(fraction_mul(self.lo, other.lo), fraction_mul(self.hi, other.hi))
        c = (
            fraction_mul(self.lo, other.lo),
            fraction_mul(self.lo, other.hi),
            fraction_mul(self.hi, other.lo),
            fraction_mul(self.hi, other.hi),
        )
        return Enclosure(min(c), max(c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Enclosure):
            other = Enclosure.point(other)
        if other.lo <= 0 <= other.hi:
            raise DomainError("division by an enclosure containing zero")
        if self.lo >= 0 and other.lo > 0:
            return Enclosure(fraction_div(self.lo, other.hi), fraction_div(self.hi, other.lo))
        c = (
            fraction_div(self.lo, other.lo),
            fraction_div(self.lo, other.hi),
            fraction_div(self.hi, other.lo),
            fraction_div(self.hi, other.hi),
        )
        return Enclosure(min(c), max(c))

    def round_out(self, bits: int = 96) -> "Enclosure":
        """Widen outward to dyadic endpoints with ~bits fractional bits."""
        scale = 1 << bits
        lo = Fraction(_floor_div(self.lo.numerator * scale, self.lo.denominator), scale)
        hi = Fraction(-_floor_div(-self.hi.numerator * scale, self.hi.denominator), scale)
        return Enclosure(lo, hi)

    def decimal_str(self, max_digits: int = 17) -> str:
        """Digits certain for every point of the interval, dots if inexact."""
        lo, hi = self.lo, self.hi
        if hi < 0:
            return "-" + Enclosure(-hi, -lo).decimal_str(max_digits)
        if lo < 0:
            return "~" + repr(float(self.midpoint))
        for k in range(max_digits, -1, -1):
            scale = 10**k
            a = _floor_div(lo.numerator * scale, lo.denominator)
            b = _floor_div(hi.numerator * scale, hi.denominator)
            if a == b:
                exact = lo == hi and lo * scale == a
                s = str(a).rjust(k + 1, "0")
                out = s[:-k] + "." + s[-k:] if k else s
                return out if exact else out + "..."
        return "~" + repr(float(self.midpoint))


def _floor_div(a: int, b: int) -> int:
    return a // b


def enclosure_product(factors: Iterable) -> Enclosure:
    """Product of enclosures (or exact rationals), outward-exact."""
    out = Enclosure.point(1)
    for f in factors:
        out = out * f
    return out


def fraction_product(items: Iterable[Fraction]) -> Fraction:
    """Exact product, computed with unreduced gmpy2 product trees.

    One canonicalizing gcd at the end instead of per-step reductions; this is
    what keeps 10^5-factor Euler products inside the acceptance budgets.
    """
    nums, dens = [], []
    for q in items:
        nums.append(mpz(q.numerator))
        dens.append(mpz(q.denominator))
    if not nums:
        return Fraction(1)
    return Fraction(mpq(_prod_tree(nums), _prod_tree(dens)))


def _prod_tree(xs: list) -> mpz:
    while len(xs) > 1:
        nxt = [xs[i] * xs[i + 1] for i in range(0, len(xs) - 1, 2)]
        if len(xs) % 2:
            nxt.append(xs[-1])
        xs = nxt
    return xs[0] if xs else mpz(1)


def unreduced_product(pairs: Iterable[tuple]) -> tuple:
    """Product of (num, den) integer pairs as unreduced gmpy2 mpz pair.

    No gcd at all; feed the result to dyadic_bounds (or one final Fraction)
    instead of reducing multi-megabit numerators.
    """
    nums, dens = [], []
    for n, d in pairs:
        nums.append(mpz(n))
        dens.append(mpz(d))
    return _prod_tree(nums), _prod_tree(dens)


def canonical_fraction(num, den) -> Fraction:
    """Reduce an unreduced integer pair with a single GMP gcd."""
    return Fraction(mpq(mpz(num), mpz(den)))


def dyadic_bounds(num, den, bits: int = 192) -> "Enclosure":
    """Enclose num/den between dyadic rationals with ~bits significant bits.

    Endpoint bit-length stays small however huge the unreduced inputs are,
    so downstream interval arithmetic never touches giant operands.
    """
    num = mpz(num)
    den = mpz(den)
    if den == 0:
        raise ZeroDivisionError("dyadic_bounds with zero denominator")
    if den < 0:
        num, den = -num, -den
    if num == 0:
        return Enclosure.point(0)
    if num < 0:
        flipped = dyadic_bounds(-num, den, bits)
        return Enclosure(-flipped.hi, -flipped.lo)
    shift = bits - (num.bit_length() - den.bit_length())
    if shift >= 0:
        q, r = gmpy2.f_divmod(num << shift, den)
        lo = Fraction(int(q), 1 << shift)
        hi = lo if r == 0 else Fraction(int(q) + 1, 1 << shift)
    else:
        q, r = gmpy2.f_divmod(num, den << -shift)
        lo = Fraction(int(q) << -shift)
        hi = lo if r == 0 else Fraction((int(q) + 1) << -shift)
    return Enclosure(lo, hi)


def pow_bounds(base: int, expo: Fraction, bits: int = 24) -> tuple[Fraction, Fraction]:
    """Rational lo/hi bounds for base**expo, base >= 2, rational expo.

    Relative slack about 2^-bits, from an integer root of the 2^(bits*v)
    scaled power; exact for integer exponents.
    """
    if base < 2:
        raise DomainError("pow_bounds needs an integer base >= 2")
    expo = _as_fraction(expo)
    if expo == 0:
        return Fraction(1), Fraction(1)
    if expo < 0:
        lo, hi = pow_bounds(base, -expo, bits)
        return 1 / hi, 1 / lo
    u, v = expo.numerator, expo.denominator
    if v == 1:
        exact = Fraction(base**u)
        return exact, exact
    t = (mpz(base) ** u) << (bits * v)
    r, is_exact = gmpy2.iroot(t, v)
    scale = 1 << bits
    if is_exact:
        q = Fraction(int(r), scale)
        return q, q
    return Fraction(int(r), scale), Fraction(int(r) + 1, scale)


# ----------------------------------------------------------------------
# primes

_prime_cache = np.array([2, 3, 5, 7, 11, 13], dtype=np.int64)
_prime_cache_limit = 13


def _simple_sieve(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _extend_prime_cache(limit: int) -> None:
    global _prime_cache, _prime_cache_limit
    if limit <= _prime_cache_limit:
        return
    limit = max(limit, 2 * _prime_cache_limit, 1 << 16)
    if limit <= 1 << 22:
        _prime_cache = _simple_sieve(limit)
    else:
        base = _simple_sieve(int(limit**0.5) + 1)
        lo = 2
        out = []
        while lo <= limit:
            hi = min(lo + _SEGMENT, limit + 1)
            out.append(_sieve_segment(lo, hi, base))
            lo = hi
        _prime_cache = np.concatenate(out)
    _prime_cache_limit = limit


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    flags = np.ones(hi - lo, dtype=bool)
    if lo <= 1:
        flags[: max(0, 2 - lo)] = False
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        flags[start - lo :: p] = False
    return (np.flatnonzero(flags) + lo).astype(np.int64)


def _primes_array(limit: int) -> np.ndarray:
    """Cached ascending primes <= limit (grows the shared cache)."""
    _extend_prime_cache(limit)
    idx = np.searchsorted(_prime_cache, limit, side="right")
    return _prime_cache[:idx]


def primes_up_to(x: int, *, budget: int = DEFAULT_SIEVE_BUDGET) -> Iterator[int]:
    """Ascending primes <= x via a segmented sieve (2^20-entry segments)."""
    x = int(x)
    if x > budget:
        raise ResourceLimit(f"sieve bound {x} exceeds budget {budget}")
    if x < 2:
        return iter(())
    if x <= 1 << 24:
        return iter(int(p) for p in _primes_array(x))

    def gen():
        base = _simple_sieve(int(x**0.5) + 1)
        lo = 2
        while lo <= x:
            hi = min(lo + _SEGMENT, x + 1)
            for p in _sieve_segment(lo, hi, base):
                yield int(p)
            lo = hi

    return gen()


# ----------------------------------------------------------------------
# factorization

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic < 3.3e24


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers the |n| <= 1e18 domain)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """sign * prod(p^k) == n, primes strictly increasing, exponents >= 1."""

    n: int
    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        v = self.sign
        for p, k in self.factors:
            v *= p**k
        if v != self.n:
            raise IntegrityError(f"factorization of {self.n} reconstructs to {v}")

    def nu(self, p: int) -> int:
        for q, k in self.factors:
            if q == p:
                return k
        return 0


def _rho_brent(n: int, counter: list, budget: int) -> int:
    """One nontrivial factor of odd composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in itertools.count(1):
        y, m, g, r, q = 2, 128, 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                counter[0] += min(m, r - k)
                if counter[0] > budget:
                    raise FactorizationTimeout(f"factor budget {budget} exhausted on {n}")
                g = gmpy2.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gmpy2.gcd(abs(x - ys), n)
                counter[0] += 1
                if counter[0] > budget:
                    raise FactorizationTimeout(f"factor budget {budget} exhausted on {n}")
        if g != n:
            return int(g)


def factorize(n: int, *, budget: int = DEFAULT_FACTOR_BUDGET) -> Factorization:
    """Trial division by primes <= 10^6, then Brent rho + Miller-Rabin."""
    n = int(n)
    if n == 0:
        raise DomainError("0 has no factorization")
    sign, m = (1, n) if n > 0 else (-1, -n)
    out: dict[int, int] = {}
    if m > 1:
        bound = min(1_000_000, gmpy2.isqrt(m))
        for p in _primes_array(max(int(bound), 13)):
            p = int(p)
            if p * p > m:
                break
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
        counter = [0]
        stack = [m] if m > 1 else []
        while stack:
            v = stack.pop()
            if v == 1:
                continue
            if v < 1_000_000_000_000 and gmpy2.is_square(v):
                r = int(gmpy2.isqrt(v))
                stack.extend((r, r))
                continue
            if is_prime(v):
                out[v] = out.get(v, 0) + 1
                continue
            d = _rho_brent(v, counter, budget)
            stack.extend((d, v // d))
    fac = Factorization(n, sign, tuple(sorted(out.items())))
    return fac


def squarefree_kernel(n: int) -> int:
    """Largest squarefree m with n = m * (square); keeps the sign of n."""
    f = factorize(n)
    m = f.sign
    for p, k in f.factors:
        if k % 2:
            m *= p
    return m


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError("euler_phi needs n >= 1")
    out = 1
    for p, k in factorize(n).factors:
        out *= p ** (k - 1) * (p - 1)
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError("mobius needs n >= 1")
    f = factorize(n)
    if any(k > 1 for _, k in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def multiplicative_order(a: int, p: int) -> int:
    """Order of a in (Z/pZ)^* for prime p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    a %= p
    if a == 0:
        raise DomainError(f"{p} divides the base")
    order = p - 1
    for q, _ in factorize(p - 1).factors:
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


# ----------------------------------------------------------------------
# natural log with rational bounds, and the logarithmic integral from 2

_LN_PREC = 112  # fractional bits kept in cached log endpoints


def _atanh_bounds(y: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """[lo, hi] for atanh(y), 0 <= y <= 1/3."""
    if y == 0:
        return Fraction(0), Fraction(0)
    y2 = y * y
    term = y
    s = Fraction(0)
    j = 0
    tol = Fraction(1, 1 << (bits + 4))
    while True:
        s += term / (2 * j + 1)
        j += 1
        term *= y2
        # remaining sum <= term/(2j+1) * 1/(1-y^2)
        rem = term / ((2 * j + 1) * (1 - y2))
        if rem < tol:
            return s, s + rem


def _ln2_bounds() -> tuple[Fraction, Fraction]:
    lo, hi = _atanh_bounds(Fraction(1, 3), _LN_PREC + 16)
    return 2 * lo, 2 * hi


_LN2 = _ln2_bounds()


def _ln_bounds(t: Fraction, bits: int = _LN_PREC) -> tuple[Fraction, Fraction]:
    """Rational enclosure of ln t for rational t > 0."""
    if t <= 0:
        raise DomainError("log of a non-positive value")
    if t == 1:
        return Fraction(0), Fraction(0)
    if t < 1:
        lo, hi = _ln_bounds(1 / t, bits)
        return -hi, -lo
    m = t.numerator.bit_length() - t.denominator.bit_length()
    r = t / Fraction(1 << m) if m >= 0 else t * (1 << -m)
    while r >= 2:
        r /= 2
        m += 1
    while r < 1:
        r *= 2
        m -= 1
    alo, ahi = _atanh_bounds((r - 1) / (r + 1), bits)
    l2lo, l2hi = _LN2
    if m >= 0:
        enc = Enclosure(m * l2lo + 2 * alo, m * l2hi + 2 * ahi)
    else:
        enc = Enclosure(m * l2hi + 2 * alo, m * l2lo + 2 * ahi)
    enc = enc.round_out(bits)
    return enc.lo, enc.hi


def log_integral(x, target_error=Fraction(1, 100), *, max_terms: int = 100_000) -> Enclosure:
    """Enclosure of the integral of dt/ln t from 2 to x, width <= target_error.

    li(x) = gamma + ln ln x + sum_k (ln x)^k / (k k!) for x > 1; the value
    from 2 is li(x) - li(2), which cancels gamma and leaves a series of
    nonnegative terms plus an explicitly bounded remainder.
    """
    x = _as_fraction(x)
    target_error = _as_fraction(target_error)
    if x < 2:
        raise DomainError("log_integral is defined on x >= 2")
    if target_error <= 0:
        raise DomainError("target_error must be positive")
    if x == 2:
        return Enclosure(Fraction(0), Fraction(0))

    bits = max(
        160,
        target_error.denominator.bit_length() - target_error.numerator.bit_length() + 80,
    )
    Lx = Enclosure(*_ln_bounds(x, bits))
    L2 = Enclosure(*_LN2)
    llx = Enclosure(_ln_bounds(Lx.lo, bits)[0], _ln_bounds(Lx.hi, bits)[1])
    ll2 = Enclosure(_ln_bounds(L2.lo, bits)[0], _ln_bounds(L2.hi, bits)[1])
    lo = fraction_sub(llx.lo, ll2.hi)
    hi = fraction_sub(llx.hi, ll2.lo)
    px = Enclosure.point(1)
    p2 = Enclosure.point(1)
    kfact = 1
    k = 0
    tol = target_error / 4
    while True:
        k += 1
        if k > max_terms:
            raise ResourceLimit(f"log_integral needed more than {max_terms} series terms")
        kfact *= k
        px = (px * Lx).round_out(bits)
        p2 = (p2 * L2).round_out(bits)
        den = k * kfact
        lo = fraction_add(lo, Fraction(fraction_sub(px.lo, p2.hi), den))
        hi = fraction_add(hi, Fraction(fraction_sub(px.hi, p2.lo), den))
        if k + 2 > Lx.hi:
            # sum_{j>k} L^j/(j j!) <= L^(k+1)/(k+1)! * 1/(1 - L/(k+2))
            ratio = Lx.hi / (k + 2)
            tail = px.hi * Lx.hi / ((k + 1) * kfact) / (1 - ratio)
            if tail < tol:
                return Enclosure(lo, fraction_add(hi, tail)).round_out(bits)
