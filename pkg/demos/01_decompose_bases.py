"""Walk a panel of integer bases through decomposition and entanglement."""

from kummerconst.kummer import decompose, entanglement_profile, kummer_degree

panel = [2, -2, 3, 5, -5, 8, -8, 16, 36, -36, 64, -4, -9]

print(f"{'a':>5}  {'a0':>4}  {'e':>2}  {'h':>2}  {'case':<12}  {'D':>4}  {'n_a':>4}")
for a in panel:
    dec = decompose(a)
    prof = entanglement_profile(dec)
    print(
        f"{a:>5}  {dec.a0:>4}  {dec.e:>2}  {dec.h:>2}  {dec.case.value:<12}"
        f"  {prof.D:>4}  {prof.n_a:>4}"
    )

print()
print("degrees for a = 2 (halving kicks in at multiples of 8):")
dec = decompose(2)
for n in [2, 3, 4, 6, 8, 12, 16, 24, 64]:
    print(f"  n={n:>2}: [Q(zeta_n, 2^(1/n)) : Q] = {kummer_degree(dec, n)}")
