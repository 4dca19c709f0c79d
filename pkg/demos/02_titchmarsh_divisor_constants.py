"""Closed-form constants for the divisor-of-the-index sum, several bases."""

from fractions import Fraction

from kummerconst.closedforms import titchmarsh_closed, universal_constant

target = Fraction(1, 10**6)

u = universal_constant(target)
print("universal constant  u =", u.decimal_str(14))
print()

print(f"{'a':>4}  {'correction':>12}  value")
for a in [2, -2, 3, 5, 8, 36, -4, -9]:
    res = titchmarsh_closed(a, target)
    print(f"{a:>4}  {str(res.correction):>12}  {res.value.decimal_str(14)}")

# the base-2 constant is exactly (41/40) u; check the enclosures agree
res2 = titchmarsh_closed(2, target)
scaled = u * type(u)(Fraction(41, 40), Fraction(41, 40))
print()
print("41/40 * u =", scaled.decimal_str(14), "overlaps:", res2.value.overlaps(scaled))
