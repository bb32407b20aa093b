"""Compute twisted Euler characteristics from intersection numbers.

Builds a profile where every divisor lies in one class, computes the chi
sequence by two independent routes and checks the numerical condition.
"""
from __future__ import annotations

from eulerchi import chi

profile = chi.IntersectionProfile.same_class(2, 4, (1, 1), 1)
via_products = chi.chi_from_profile(profile)
via_recurrence = chi.chi_via_recurrence(profile)
print("chi via Eulerian products:", via_products.values)
print("chi via wedge recurrence: ", via_recurrence.values)
print("numerical condition holds:", chi.numerical_condition(via_products))

for d in ((1, 1), (2, 1), (3, 2)):
    seq = chi.chi_same_class(chi.DegreeProfile(2, 6, d, 1))
    print(f"degrees {d}: {seq.values}  condition: {chi.numerical_condition(seq)}")

quad = chi.dim4_quadratic_check()
print("\nfour-fold quadratic forms dominated:", quad.dominated)
