"""Division-field constants for two classical curves, with brute-force checks."""

from fractions import Fraction

from kummerconst.engine import builtin_family
from kummerconst.oracle import serre_partial_sum
from kummerconst.serre import serre_profile, serre_constant, weierstrass_discriminant

# y^2 + y = x^3 - x has discriminant 37; y^2 = x^3 + 1 has -432
for coeffs in [(0, 0, 1, -1, 0), (0, 0, 0, 0, 1)]:
    delta = weierstrass_discriminant(*coeffs)
    prof = serre_profile(delta)
    print(f"coefficients {coeffs}: delta = {delta}, D = {prof.D}, n_E = {prof.n_a}")

print()
for delta in (37, -432):
    for name in ("one", "moebius"):
        fam = builtin_family(name)
        res = serre_constant(fam, delta, target_error=Fraction(1, 10**6))
        ps = serre_partial_sum(fam, delta, 2000)
        print(
            f"delta={delta:>5}, g={name:<8} constant {res.value.decimal_str(12):<20}"
            f" partial-sum check: {ps.enclosure().overlaps(res.value)}"
        )
