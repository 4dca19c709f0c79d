"""Enumerate the mod-p^k Galois groups and check them against the formulas."""

from kummerconst.kummer import card_A, decompose
from kummerconst.oracle import enumerate_A, verify_group

# the twisted base -4 has only half the affine pairs at modulus 4
dec = decompose(-4)
els = enumerate_A(dec, 2, 2)
print("a = -4, modulus 4:", sorted((e.b, e.d) for e in els))
print("predicted size:", card_A(dec, 2, 2))
print()

for a in [2, 8, -4, -9, 36]:
    dec = decompose(a)
    for p, k in [(2, 3), (3, 2), (5, 1)]:
        rep = verify_group(dec, p, k)
        print(
            f"a={a:>3}, p={p}, k={k}: size {rep.size:>6}"
            f"  (mode {rep.closure_mode}, fiber {rep.fiber_size})"
        )
