"""Primitive-root densities: closed form vs the general engine, side by side."""

from fractions import Fraction

from kummerconst.closedforms import artin_delta
from kummerconst.engine import builtin_family, evaluate_constant
from kummerconst.kummer import decompose

mu = builtin_family("moebius")
target = Fraction(1, 10**6)

print(f"{'a':>4}  {'closed form':<22}  {'engine':<22}  overlap")
for a in [2, 3, 5, -3, 8, -8, 36, -4]:
    closed = artin_delta(a, target)
    eng = evaluate_constant(mu, decompose(a), target_error=target)
    print(
        f"{a:>4}  {closed.decimal_str(12):<22}  {eng.value.decimal_str(12):<22}"
        f"  {closed.overlaps(eng.value)}"
    )

print()
res5 = evaluate_constant(mu, decompose(5), target_error=target)
print("a=5 correction from the engine:", res5.correction)  # 20/19, Hooley's value
