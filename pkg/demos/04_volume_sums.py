"""
Volume sums over subsets of the naturals
========================================

Summing vol(P_M) over M gives slowly converging constants. Everything is
exact; the printed digits are truncations of the partial sums.
"""
from natpoly import ratio_to_e, volume_sum
from natpoly.arith import decimal_render
from natpoly.constants import claimed_digits

s, stable = claimed_digits("naturals", 100)
print(decimal_render(s.value, 20), stable, "digits stable")
print(ratio_to_e(s, 12))

# over 1 and the primes the polytopes are simplices, and the sum is the series for e
e_like = volume_sum("one-and-primes", 113)
print(decimal_render(e_like.value, 40))

for kind in ("one-evens-odd-primes", "two-and-odds"):
    t = volume_sum(kind, 100)
    print(kind, decimal_render(t.value, 12), ratio_to_e(t, 12))

print(decimal_render(volume_sum("squares", 50**2).value, 10))
