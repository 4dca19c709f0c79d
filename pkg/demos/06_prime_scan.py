"""Empirical densities over primes up to 10^6 against the predicted constants."""

from kummerconst.closedforms import artin_delta, titchmarsh_closed
from kummerconst.oracle import prime_scan

x = 10**6

scan = prime_scan(2, x, weight="primitive")
pred = artin_delta(2)
print(f"primes <= {x} with 2 a primitive root: {int(scan.total)} of {scan.scanned}")
print("  observed density:", scan.ratio.decimal_str(8))
print("  predicted:       ", pred.decimal_str(8))

print()
scan = prime_scan(2, x, weight="divisor-count")
pred = titchmarsh_closed(2)
print("divisor-of-index sum / li(x):", scan.ratio.decimal_str(8))
print("  predicted:                 ", pred.value.decimal_str(8))
