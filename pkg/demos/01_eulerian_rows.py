"""Walk through Eulerian rows and their multi-descent generalization.

Prints a few classic rows, then the r = 2 rows, and shows that the lift
recurrence, the closed sum and brute-force permutation counting all agree.
"""
from __future__ import annotations

from eulerchi import eulerian

print("classic Eulerian rows")
for n in range(1, 8):
    print(f"  n={n}: {eulerian.eulerian_row(n)}")

print("\nrows with two marked descent classes (r = 2)")
for n in range(2, 8):
    print(f"  n={n}: {eulerian.generalized_eulerian_row(2, n)}")

r, n = 2, 5
print(f"\nthree routes at r={r}, n={n}")
print("  lift recurrence:", eulerian.generalized_eulerian_row(r, n))
print("  closed sum:     ", eulerian.generalized_eulerian_row_via_sum(r, n))
print("  brute force:    ", tuple(eulerian.brute_force_generalized(r, n, k) for k in range(n - r + 1)))

props = eulerian.check_row_properties(3, 20)
print(f"\nr=3, n=20 row symmetric: {props.symmetric}, log-concave: {props.log_concave}")
